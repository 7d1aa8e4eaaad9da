#include "rmt/deformed_mp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmt {

Population::Population(std::vector<double> sigmas) : sigmas_(std::move(sigmas)) {
    if (sigmas_.empty()) throw std::invalid_argument("Population: empty spectrum");
    std::sort(sigmas_.begin(), sigmas_.end());
    if (sigmas_.front() <= 0.0) throw std::invalid_argument("Population: sigmas must be positive");
}

Population Population::identity(int m) {
    return Population(std::vector<double>(static_cast<std::size_t>(m), 1.0));
}

namespace {

Complex mfc_rhs(const Population& pop, double xi, Complex z, Complex m) {
    Complex integral = 0.0;
    for (const double t : pop.sigmas()) integral += 1.0 / (t * m + 1.0);
    integral /= static_cast<double>(pop.size());
    return 1.0 / (-z + integral / xi);
}

// Newton iteration on F(m) = m - rhs(m) at fixed z, with a damped
// fixed-point fallback when a Newton step misbehaves.
Complex mfc_at(const Population& pop, double xi, Complex z, Complex m0, double tol) {
    Complex m = m0;
    double resid = 1.0;
    for (int it = 0; it < 500; ++it) {
        const Complex rhs = mfc_rhs(pop, xi, z, m);
        resid = std::abs(rhs - m);
        if (resid < tol) return m;
        Complex sp = 0.0;
        for (const double t : pop.sigmas()) sp -= t / ((t * m + 1.0) * (t * m + 1.0));
        sp /= static_cast<double>(pop.size());
        const Complex dF = 1.0 + rhs * rhs * sp / xi; // d/dm (m - rhs)
        const Complex step = (m - rhs) / dF;
        Complex cand = m - step;
        if (!std::isfinite(cand.real()) || !std::isfinite(cand.imag()) ||
            std::abs(mfc_rhs(pop, xi, z, cand) - cand) > resid)
            cand = 0.5 * (m + rhs); // fall back to damping
        m = cand;
    }
    throw std::runtime_error("solve_mfc: no convergence, residual " + std::to_string(resid));
}

} // namespace

Complex solve_mfc(const Population& pop, double xi, Complex z, double tol) {
    if (!(z.imag() > 0.0)) throw std::invalid_argument("solve_mfc: need Im z > 0");
    // continuation from high above the axis, where -1/z is a good start
    const double eta_hi = std::max(10.0, 2.0 * z.imag());
    Complex zc(z.real(), eta_hi);
    Complex m = -1.0 / zc;
    m = mfc_at(pop, xi, zc, m, tol);
    while (zc.imag() > z.imag()) {
        zc = Complex(z.real(), std::max(z.imag(), zc.imag() * 0.5));
        m = mfc_at(pop, xi, zc, m, tol);
    }
    if (m.imag() < -10.0 * tol) throw std::runtime_error("solve_mfc: negative imaginary part");
    return m;
}

double fc_density(const DeformedLaw& law, double e, double eta_limit) {
    const double eta1 = eta_limit, eta2 = 0.5 * eta_limit;
    const double f1 = solve_mfc(law.population, law.xi, Complex(e, eta1), law.solver_tol).imag();
    const double f2 = solve_mfc(law.population, law.xi, Complex(e, eta2), law.solver_tol).imag();
    // leading error is linear in eta
    return std::max(0.0, (2.0 * f2 - f1) / M_PI);
}

namespace {

double xi_plus_lhs(const Population& pop, double x) {
    return pop.esd_mean([x](double t) {
        const double r = t * x / (1.0 - t * x);
        return r * r;
    });
}

} // namespace

double solve_xi_plus(const Population& pop, double xi) {
    const double cap = 1.0 / pop.max();
    // global scan for the last sign change of lhs - xi, then bisection;
    // "largest solution" rules out local descent
    constexpr int kScan = 10000;
    double lo = -1.0, hi = -1.0;
    double prev_x = cap * (1.0 - 1.0 / kScan) * 1e-9;
    double prev_f = xi_plus_lhs(pop, prev_x) - xi;
    for (int i = 1; i < kScan; ++i) {
        const double x = cap * static_cast<double>(i) / kScan;
        const double f = xi_plus_lhs(pop, x) - xi;
        if (f == 0.0) return x;
        if (prev_f * f < 0.0) {
            lo = prev_x;
            hi = x;
        }
        prev_x = x;
        prev_f = f;
    }
    if (lo < 0.0) throw std::runtime_error("solve_xi_plus: no root in (0, 1/sigma_max); population assumption violated");
    const bool lo_neg = xi_plus_lhs(pop, lo) - xi < 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = xi_plus_lhs(pop, mid) - xi;
        if (f == 0.0) return mid;
        ((f < 0.0) == lo_neg ? lo : hi) = mid;
        if (hi - lo < 1e-15 * cap) break;
    }
    return 0.5 * (lo + hi);
}

double right_endpoint(const Population& pop, double xi, double xi_plus) {
    const double integral = pop.esd_mean([xi_plus](double t) { return t * xi_plus / (1.0 - t * xi_plus); });
    return (1.0 + integral / xi) / xi_plus;
}

double scaling_gamma0(const Population& pop, double xi, double xi_plus, bool cubed) {
    const double integral = pop.esd_mean([xi_plus, cubed](double t) {
        const double r = t / (1.0 - t * xi_plus);
        return cubed ? r * r * r : r;
    });
    const double inv_cubed = integral / xi + 1.0 / (xi_plus * xi_plus * xi_plus);
    return std::cbrt(1.0 / inv_cubed);
}

DeformedLaw make_deformed_law(Population pop, double xi, double tol) {
    const double xp = solve_xi_plus(pop, xi);
    const double ep = right_endpoint(pop, xi, xp);
    const double g0 = scaling_gamma0(pop, xi, xp);
    return DeformedLaw{xi, std::move(pop), xp, ep, g0, tol};
}

std::vector<double> population_flow(const Population& pop, double t) {
    if (t < 0.0) throw std::invalid_argument("population_flow: t >= 0");
    std::vector<double> out;
    out.reserve(pop.sigmas().size());
    const double decay = std::exp(-t);
    for (const double s : pop.sigmas()) out.push_back(1.0 / (decay / s + (1.0 - decay)));
    return out;
}

} // namespace rmt
