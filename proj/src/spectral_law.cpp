#include "rmt/spectral_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rmt {

AspectRatio AspectRatio::from_dims(int n, int m) {
    if (n < 1 || m < n) throw std::invalid_argument("AspectRatio: need 1 <= N <= M");
    return {static_cast<double>(n) / static_cast<double>(m), n, m};
}

AspectRatio AspectRatio::from_xi(double xi) {
    if (!(xi > 0.0) || xi > 1.0) throw std::invalid_argument("AspectRatio: xi must be in (0,1]");
    return {xi, 0, 0};
}

SpectralLaw::SpectralLaw(AspectRatio ratio) : xi_(ratio.xi) {
    const double r = std::sqrt(xi_);
    lm_ = (1.0 - r) * (1.0 - r);
    lp_ = (1.0 + r) * (1.0 + r);
    sqlm_ = std::abs(1.0 - r);
    sqlp_ = 1.0 + r;
}

double SpectralLaw::mp_density(double x) const {
    if (x <= 0.0) {
        if (x == 0.0 && lm_ == 0.0) return std::numeric_limits<double>::infinity();
        return 0.0;
    }
    if (x <= lm_ || x >= lp_) return 0.0;
    return std::sqrt((x - lm_) * (lp_ - x)) / (2.0 * M_PI * xi_ * x);
}

double SpectralLaw::sv_density(double x) const {
    const double x2 = x * x;
    if (x2 >= lp_) return 0.0;
    if (x2 <= lm_) {
        // hard edge: the 1/|x| singularity cancels when lambda_- = 0
        if (x2 == lm_ && lm_ == 0.0) return std::sqrt(lp_) / (2.0 * M_PI * xi_);
        return 0.0;
    }
    if (lm_ == 0.0) return std::sqrt(lp_ - x2) / (2.0 * M_PI * xi_);
    return std::sqrt((x2 - lm_) * (lp_ - x2)) / (2.0 * M_PI * xi_ * std::abs(x));
}

Complex SpectralLaw::mp_stieltjes(Complex z) const {
    if (z.imag() == 0.0) {
        const double e = z.real();
        if (e >= lm_ && e <= lp_)
            throw std::domain_error("mp_stieltjes: z on the support, evaluate via inversion limit instead");
        if (e == 0.0) throw std::domain_error("mp_stieltjes: z = 0");
    }
    const Complex s = branch_sqrt2(z, lm_, lp_);
    Complex m = (1.0 - xi_ - z + s) / (2.0 * xi_ * z);
    // anchored roots put the cut on the support; fix the residual sign so the
    // transform maps the upper half plane to itself
    if ((z.imag() > 0.0 && m.imag() <= 0.0) || (z.imag() < 0.0 && m.imag() >= 0.0))
        m = (1.0 - xi_ - z - s) / (2.0 * xi_ * z);
    return m;
}

Complex SpectralLaw::sv_stieltjes(Complex z) const {
    if (z.imag() == 0.0) throw std::domain_error("sv_stieltjes: need Im z != 0");
    return z * mp_stieltjes(z * z);
}

double SpectralLaw::mp_cdf(double x) const {
    if (x <= lm_) return 0.0;
    if (x >= lp_) return 1.0;
    const double width = lp_ - lm_;
    const double theta_x = std::asin(std::min(1.0, std::sqrt((x - lm_) / width)));
    // x = lambda_- + width sin^2(theta) removes both edge singularities and,
    // when lambda_- = 0, also the hard-edge 1/x singularity
    auto h = [&](double theta) {
        const double st = std::sin(theta), ct = std::cos(theta);
        if (lm_ == 0.0) return lp_ * ct * ct / (M_PI * xi_);
        const double xx = lm_ + width * st * st;
        return width * width * st * st * ct * ct / (M_PI * xi_ * xx);
    };
    return integrate(h, 0.0, theta_x, 1e-13);
}

double SpectralLaw::sv_cdf(double x) const {
    if (x >= 0.0) return 0.5 + 0.5 * mp_cdf(x * x);
    return 0.5 - 0.5 * mp_cdf(x * x);
}

std::vector<double> SpectralLaw::typical_locations(int n) const {
    if (n < 1) throw std::invalid_argument("typical_locations: n >= 1");
    std::vector<double> gamma(static_cast<std::size_t>(n));
    gamma.back() = sqlp_; // full-mass quantile is exact
    for (int k = 1; k < n; ++k) {
        const double p = static_cast<double>(k) / n;
        double lo = lm_, hi = lp_;
        while (hi - lo > 1e-12 * (lp_ - lm_)) {
            const double mid = 0.5 * (lo + hi);
            (mp_cdf(mid) < p ? lo : hi) = mid;
        }
        double q = 0.5 * (lo + hi);
        const double rho = mp_density(q);
        if (rho > 0.0 && std::isfinite(rho)) q -= (mp_cdf(q) - p) / rho;
        gamma[static_cast<std::size_t>(k - 1)] = std::sqrt(q);
    }
    return gamma;
}

EdgeDistances SpectralLaw::edge_distances(Complex z) const {
    EdgeDistances d{};
    d.kappa = std::min(std::abs(z - sqlm_), std::abs(z - sqlp_));
    const double e = z.real();
    const double y = std::abs(z.imag());
    if (e < sqlm_)
        d.a = std::hypot(sqlm_ - e, y);
    else if (e > sqlp_)
        d.a = std::hypot(e - sqlp_, y);
    else
        d.a = y;
    if (e <= sqlm_ || e >= sqlp_)
        d.b = y;
    else
        d.b = std::min(std::hypot(e - sqlm_, y), std::hypot(sqlp_ - e, y));
    return d;
}

Complex empirical_stieltjes(std::span<const double> svals, Complex z) {
    if (svals.empty()) throw std::invalid_argument("empirical_stieltjes: empty sample");
    const Complex z2 = z * z;
    Complex sum = 0.0;
    for (const double s : svals) {
        const Complex d = s * s - z2;
        if (std::abs(d) < 1e-300) throw std::domain_error("empirical_stieltjes: z hits a singular value");
        sum += z / d;
    }
    return sum / static_cast<double>(svals.size());
}

} // namespace rmt
