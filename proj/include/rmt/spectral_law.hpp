#pragma once

#include "rmt/numerics.hpp"

#include <span>
#include <vector>

namespace rmt {

// Aspect ratio xi = N/M, kept as the exact rational when built from
// dimensions so downstream modules never disagree on its value.
struct AspectRatio {
    double xi;
    int n = 0;
    int m = 0;

    static AspectRatio from_dims(int n, int m);
    static AspectRatio from_xi(double xi);
};

struct EdgeDistances {
    double kappa; // min distance to a singular-value edge
    double a;     // dist(z, [sqrt(lambda_-), sqrt(lambda_+)])
    double b;     // dist(z, complement of that interval in R)
};

// Closed-form Marchenko-Pastur law for aspect ratio xi in (0,1], together
// with the symmetrized singular-value counterpart. Immutable; all members
// are pure functions.
class SpectralLaw {
  public:
    explicit SpectralLaw(AspectRatio ratio);
    explicit SpectralLaw(double xi) : SpectralLaw(AspectRatio::from_xi(xi)) {}

    double xi() const { return xi_; }
    double lambda_minus() const { return lm_; }
    double lambda_plus() const { return lp_; }
    double sqrt_edge_minus() const { return sqlm_; }
    double sqrt_edge_plus() const { return sqlp_; }

    // Eigenvalue density; +infinity at x = 0 when xi = 1 (integrable).
    double mp_density(double x) const;
    // Symmetrized singular-value density, even in x.
    double sv_density(double x) const;

    // Stieltjes transforms; branch such that Im m > 0 in the upper half
    // plane. Throws if z sits on the support.
    Complex mp_stieltjes(Complex z) const;
    Complex sv_stieltjes(Complex z) const;

    // CDFs by adaptive quadrature with the sin^2 edge substitution.
    double mp_cdf(double x) const;
    double sv_cdf(double x) const;

    // gamma_1 < ... < gamma_n solving sv_cdf(gamma_k) = (n+k)/(2n).
    std::vector<double> typical_locations(int n) const;

    EdgeDistances edge_distances(Complex z) const;

  private:
    double xi_, lm_, lp_, sqlm_, sqlp_;
};

// m_N(z) = (1/N) sum z/(s_k^2 - z^2) over the positive singular values.
// Throws if z coincides with +-s_k.
Complex empirical_stieltjes(std::span<const double> svals, Complex z);

} // namespace rmt
