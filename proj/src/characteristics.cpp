#include "rmt/characteristics.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace rmt {

namespace {

// sqrt((z^2 - l-)(z^2 - l+)) as a product of four branch-point-anchored
// roots; the cuts collapse onto the two support segments and the product
// behaves like z^2 at infinity.
Complex edge_root4(Complex z, const SpectralLaw& law) {
    Complex p = std::sqrt(z - law.sqrt_edge_minus()) * std::sqrt(z - law.sqrt_edge_plus()) *
                std::sqrt(z + law.sqrt_edge_minus()) * std::sqrt(z + law.sqrt_edge_plus());
    return p;
}

bool on_support(Complex z, const SpectralLaw& law) {
    if (z.imag() != 0.0) return false;
    double ax = std::abs(z.real());
    return ax >= law.sqrt_edge_minus() - 1e-300 && ax <= law.sqrt_edge_plus() + 1e-300;
}

} // namespace

Complex VelocityField::velocity(Complex z) const {
    if (kind == FieldKind::general) {
        if (on_support(z, law)) throw std::domain_error("velocity evaluated on the support");
        return ((1.0 - xi) + edge_root4(z, law)) / (2.0 * xi * z);
    }
    // comparison field sqrt((z-1)^2 - xi)/xi, cut on [1-sqrt(xi), 1+sqrt(xi)]
    return branch_sqrt2(z - 1.0, -std::sqrt(xi), std::sqrt(xi)) / xi;
}

CharPath flow(const VelocityField& field, Complex z0, double t_end, int n_record, double tol) {
    namespace ode = boost::numeric::odeint;
    using State = std::array<double, 2>;
    if (!(z0.imag() > 0.0)) throw std::domain_error("flow requires Im z0 > 0");

    auto rhs = [&](const State& s, State& dsdt, double) {
        if (s[1] < 1e-14)
            throw std::runtime_error("characteristic path collapsed onto the real axis");
        Complex g = field.velocity(Complex(s[0], s[1]));
        dsdt = {g.real(), g.imag()};
    };

    CharPath path;
    path.z0 = z0;
    path.tol = tol;
    path.times.resize(n_record + 1);
    for (int i = 0; i <= n_record; ++i) path.times[i] = t_end * i / n_record;

    auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_dopri5<State>());
    State s{z0.real(), z0.imag()};
    ode::integrate_times(
        stepper, rhs, s, path.times.begin(), path.times.end(), t_end > 0 ? t_end / 256 : 1e-3,
        [&](const State& st, double) { path.points.emplace_back(st[0], st[1]); });
    return path;
}

Complex sc_flow_exact(double xi, Complex z0, double t) {
    double r = std::sqrt(xi);
    Complex w = z0 - 1.0;
    Complex phi0 = w + branch_sqrt2(w, -r, r);
    Complex phit = phi0 * std::exp(t / xi);
    return 1.0 + 0.5 * (phit + xi / phit);
}

double phi_param(double n) {
    static const double c0 = std::log(8.0) / std::pow(std::log(std::log(100.0)), 2);
    double ll = std::log(std::log(n));
    return std::exp(c0 * ll * ll);
}

Complex EdgeCurveS::at(double e) const {
    double kappa = law->edge_distances(Complex(e, 0.0)).kappa;
    return {e, phi * phi / (n * std::sqrt(kappa))};
}

double EdgeCurveS::e_min() const {
    double off = phi * phi * std::pow(n, -2.0 / 3.0);
    return law->sqrt_edge_minus() == 0.0 ? 0.0 : law->sqrt_edge_minus() + off;
}

double EdgeCurveS::e_max() const {
    return law->sqrt_edge_plus() - phi * phi * std::pow(n, -2.0 / 3.0);
}

EdgeCurveS edge_curve(const SpectralLaw& law, double n) {
    EdgeCurveS c{n, phi_param(n), &law};
    if (!(c.e_max() > c.e_min()))
        throw std::invalid_argument("edge curve is empty at this N (offset exceeds support)");
    return c;
}

AsymptoticsReport verify_characteristics_asymptotics(const VelocityField& field,
                                                     const std::vector<Complex>& z0s,
                                                     const std::vector<double>& t_grid) {
    AsymptoticsReport rep;
    rep.pass = true;
    for (Complex z0 : z0s) {
        auto d = field.law.edge_distances(z0);
        double sqk = std::sqrt(d.kappa);
        for (double t : t_grid) {
            Complex zt = flow(field, z0, t, 8).points.back();
            double re_model = t * d.a / sqk + t * t;
            double im_model = t * d.b / sqk;
            AsymptoticsReport::Row row;
            row.z0 = z0;
            row.t = t;
            row.re_ratio = (zt.real() - z0.real()) / re_model;
            row.im_ratio = (zt.imag() - z0.imag()) / im_model;
            rep.pass = rep.pass && row.re_ratio >= rep.band_lo && row.re_ratio <= rep.band_hi &&
                       row.im_ratio >= rep.band_lo && row.im_ratio <= rep.band_hi;
            rep.rows.push_back(row);
        }
    }
    return rep;
}

AsymptoticsReport verify_bulk_asymptotics(const VelocityField& field,
                                          const std::vector<Complex>& z0s,
                                          const std::vector<double>& t_grid) {
    AsymptoticsReport rep;
    rep.pass = true;
    for (Complex z0 : z0s) {
        for (double t : t_grid) {
            Complex zt = flow(field, z0, t, 8).points.back();
            AsymptoticsReport::Row row;
            row.z0 = z0;
            row.t = t;
            row.re_ratio = 1.0; // the bulk claim constrains the imaginary part only
            row.im_ratio = (zt.imag() - z0.imag()) / t;
            rep.pass = rep.pass && row.im_ratio >= rep.band_lo && row.im_ratio <= rep.band_hi;
            rep.rows.push_back(row);
        }
    }
    return rep;
}

namespace {

// inner integral int d rho(x) / (|z - x|^4 max(kappa(x), s^2)), computed per
// support segment with the x = x* + eta tan(theta) substitution that resolves
// the |z - x|^-4 peak of width eta
double inner_integral(Complex z, double s2, const SpectralLaw& law) {
    double xs = z.real(), eta = z.imag();
    double total = 0.0;
    const double lo0 = law.sqrt_edge_minus(), hi0 = law.sqrt_edge_plus();
    const std::array<std::pair<double, double>, 2> segments{{{lo0, hi0}, {-hi0, -lo0}}};
    for (auto [lo, hi] : segments) {
        if (!(hi > lo)) continue;
        double th_lo = std::atan((lo - xs) / eta);
        double th_hi = std::atan((hi - xs) / eta);
        auto f = [&](double th) {
            double c = std::cos(th);
            double x = xs + eta * std::tan(th);
            double kx = law.edge_distances(Complex(std::abs(x), 0.0)).kappa;
            return law.sv_density(x) * c * c / std::max(kx, s2);
        };
        total += integrate(f, th_lo, th_hi, 1e-10) / (eta * eta * eta);
    }
    return total;
}

} // namespace

double integral_bound_check(const VelocityField& field, const EdgeCurveS& curve, double e,
                            double t) {
    Complex z0 = curve.at(e);
    double kappa_e = field.law.edge_distances(Complex(e, 0.0)).kappa;

    // path values z_{t-s} at the outer quadrature nodes
    auto gl = gauss_legendre(32);
    std::vector<double> s_nodes(gl.nodes.size());
    for (std::size_t i = 0; i < gl.nodes.size(); ++i)
        s_nodes[i] = 0.5 * t * (gl.nodes[i] + 1.0);
    std::vector<double> taus(s_nodes.size());
    for (std::size_t i = 0; i < s_nodes.size(); ++i) taus[i] = t - s_nodes[i];
    // integrate once to t and sample; taus are decreasing, so flow each
    // needed time from scratch (paths are cheap at this size)
    double lhs = 0.0;
    for (std::size_t i = 0; i < s_nodes.size(); ++i) {
        Complex zt = taus[i] == 0.0 ? z0 : flow(field, z0, taus[i], 4).points.back();
        double s = s_nodes[i];
        lhs += gl.weights[i] * inner_integral(zt, s * s, *curve.law);
    }
    lhs *= 0.5 * t; // Jacobian of [-1,1] -> [0,t]
    lhs *= std::pow(curve.phi, 4) / (curve.n * curve.n);

    double rhs = kappa_e / std::max(kappa_e, t * t);
    return lhs / rhs;
}

} // namespace rmt
