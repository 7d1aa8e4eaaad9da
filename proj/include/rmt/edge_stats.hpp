#pragma once

#include "rmt/deformed_mp.hpp"
#include "rmt/ensembles.hpp"
#include "rmt/spectral_law.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace rmt {

// Scale applied to N^{2/3}(lambda_N - lambda_+) so the statistic is standard
// Tracy-Widom (beta = 1): sigma_xi = sqrt(xi) (1 + sqrt(xi))^{4/3}; equals
// 2^{4/3} at xi = 1. Printed in every manifest — conventions drift silently
// otherwise.
double sigma_xi(double xi);

struct EdgeSampleSet {
    double xi = 1.0;
    int n = 0;
    double rescale_constant = 1.0;
    std::vector<double> samples; // sorted ascending
};

EdgeSampleSet rescale_extremes(const std::vector<double>& lambda_max, const SpectralLaw& law,
                               int n);

struct KsResult {
    double delta;
    double dkw_halfwidth;
};

// Exact sup over the sorted sample of max(|i/n - F(x_i)|, |(i-1)/n - F(x_i)|),
// with the Dvoretzky-Kiefer-Wolfowitz half-width sqrt(ln(2/alpha)/(2n)).
KsResult kolmogorov_distance(std::vector<double> samples,
                             const std::function<double(double)>& cdf, double alpha = 0.05);

double two_sample_ks(std::vector<double> a, std::vector<double> b);

// Asymptotic two-sample Kolmogorov-Smirnov p-value.
double ks_p_value(double d, std::size_t n, std::size_t m);

struct RigidityReport {
    // xi != 1: max_k N^{2/3} khat^{1/3} |s_k - gamma_k| vs phi^{1/2};
    // xi == 1: soft regime restricted to k >= (1-omega)N with weight
    // (N-k+1)^{1/3} vs N^eps, plus the hard-edge statistic
    // max_{k <= (1-omega)N} N |s_k - gamma_k| vs N^eps.
    double soft_stat = 0.0;
    double soft_threshold = 0.0;
    double hard_stat = 0.0;
    double hard_threshold = 0.0;
    bool soft_pass = false;
    bool hard_pass = true; // trivially true when xi != 1
    bool pass = false;
};

RigidityReport rigidity_check(std::span<const double> svals, const SpectralLaw& law, double phi,
                              double epsilon = 0.1, double omega = 0.1);

struct RatePoint {
    double n;
    double delta;
    double dkw;
};

struct RateFit {
    std::vector<RatePoint> points;
    double slope = 0.0;
    double intercept = 0.0;
    double bound_respect = 0.0; // max over N of delta * N^bound_exponent
    double bound_exponent = 2.0 / 9.0;
};

// Weighted least squares of log delta on log N; weights are the inverse
// variances (delta/dkw)^2 implied by the DKW half-widths.
RateFit rate_fit(const std::vector<RatePoint>& points, double bound_exponent = 2.0 / 9.0);

// Monte-Carlo edge experiments ------------------------------------------

// Replicas are keyed by index, so fan-out over `workers` threads is
// order-independent and bitwise reproducible.
EdgeSampleSet null_edge_samples(double xi, int n, int reps, std::uint64_t seed,
                                const EntryDistribution& dist, int workers = 1);

RateFit null_rate_experiment(double xi, const std::vector<int>& ns, int reps, std::uint64_t seed,
                             const EntryDistribution& dist, int workers = 1);

// Separable-population variant: statistic gamma0 N^{2/3}(mu_N/xi - E_plus)
// with gamma0, E_plus from the deformed law (population ESD convention).
EdgeSampleSet separable_edge_samples(const Population& pop, double xi, int n, int reps,
                                     std::uint64_t seed, const EntryDistribution& dist,
                                    int workers = 1);

RateFit separable_edge_experiment(const Population& pop, double xi, const std::vector<int>& ns,
                                  int reps, std::uint64_t seed, const EntryDistribution& dist,
                                  double bound_exponent = 1.0 / 57.0, int workers = 1);

} // namespace rmt
