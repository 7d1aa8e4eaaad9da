#pragma once

#include "rmt/numerics.hpp"

#include <vector>

namespace rmt {

// Population spectrum sigma_1 <= ... <= sigma_M (all positive) and its
// empirical measure (1/M) sum delta_{sigma_j}.
class Population {
  public:
    explicit Population(std::vector<double> sigmas);
    static Population identity(int m);

    const std::vector<double>& sigmas() const { return sigmas_; }
    double min() const { return sigmas_.front(); }
    double max() const { return sigmas_.back(); }
    int size() const { return static_cast<int>(sigmas_.size()); }

    // mean of f over the empirical spectral distribution
    template <typename F>
    double esd_mean(F&& f) const {
        double s = 0.0;
        for (const double t : sigmas_) s += f(t);
        return s / static_cast<double>(sigmas_.size());
    }

  private:
    std::vector<double> sigmas_;
};

struct DeformedLaw {
    double xi;
    Population population;
    double xi_plus;
    double e_plus;
    double gamma0;
    double solver_tol;
};

// Self-consistent Stieltjes transform of the deformed MP law:
//   m = 1 / (-z + xi^{-1} \int drho(t) / (t m + 1)),   Im m >= 0, Im z > 0.
// Damped fixed point, warm-started by continuation in Im z.
Complex solve_mfc(const Population& pop, double xi, Complex z, double tol = 1e-11);

// Density via Stieltjes inversion with Richardson extrapolation in eta.
double fc_density(const DeformedLaw& law, double e, double eta_limit = 1e-5);

// Largest root of \int (t xi_+ / (1 - t xi_+))^2 drho(t) = xi in (0, 1/sigma_M).
double solve_xi_plus(const Population& pop, double xi);

// E_+ = (1/xi_+)(1 + xi^{-1} \int t xi_+/(1 - t xi_+) drho(t)).
double right_endpoint(const Population& pop, double xi, double xi_plus);

// 1/gamma_0^3 = xi^{-1} \int (t/(1 - t xi_+))^3 drho(t) + 1/xi_+^3. The cubed
// integrand is the variant consistent with the identity-population closed
// form; `cubed = false` keeps the first-power variant for audit.
double scaling_gamma0(const Population& pop, double xi, double xi_plus, bool cubed = true);

DeformedLaw make_deformed_law(Population pop, double xi, double tol = 1e-11);

// Harmonic interpolation of the population toward the identity:
// 1/sigma_j(t) = e^{-t}/sigma_j(0) + (1 - e^{-t}).
std::vector<double> population_flow(const Population& pop, double t);

} // namespace rmt
