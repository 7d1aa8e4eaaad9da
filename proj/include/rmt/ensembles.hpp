#pragma once

#include "rmt/rng.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <vector>

namespace rmt {

enum class EntryKind { gaussian, rademacher, uniform, two_point_matched };

// Standardized entry law: mean 0, variance 1, sub-exponential. theta is the
// tail constant of the assumption P(|q| > u) <= theta^{-1} exp(-u^theta);
// it is metadata only, nothing downstream consumes it quantitatively.
struct EntryDistribution {
    EntryKind kind;
    double theta;
    std::array<double, 4> moments; // first four standardized moments
    double fourth = 3.0;           // tunable fourth moment (two_point_matched)

    static EntryDistribution gaussian();
    static EntryDistribution rademacher();
    static EntryDistribution uniform();
    // symmetric three-point law {-a, 0, +a} matching the Gaussian's first
    // three moments with E q^4 = fourth (requires fourth >= 1)
    static EntryDistribution two_point_matched(double fourth);

    double sample(CounterRng& rng) const;
};

// M x N data matrix with entries x_ij = M^{-1/2} q_ij, reproducible from
// (seed, replica): entry (i,j) is keyed by its flat index.
struct DataMatrix {
    Eigen::MatrixXd entries;
    std::uint64_t seed = 0;
    std::uint64_t replica = 0;
    EntryDistribution dist = EntryDistribution::gaussian();

    int m() const { return static_cast<int>(entries.rows()); }
    int n() const { return static_cast<int>(entries.cols()); }
};

DataMatrix sample_data(int m, int n, const EntryDistribution& dist, std::uint64_t seed,
                       std::uint64_t replica = 0);

struct CovarianceSample {
    std::vector<double> eigenvalues;      // sorted ascending
    std::vector<double> singular_values;  // null model only
};

// Full symmetric eigendecomposition of H = X^T X.
CovarianceSample covariance(const DataMatrix& x);
// Q = X^T diag(sigma) X with a positive diagonal population.
CovarianceSample separable(const DataMatrix& x, const std::vector<double>& sigma_diag);

// 2N x 2N block matrix [[0, X^T], [X, 0]] (square case only); its spectrum
// is the symmetrized singular values of X.
Eigen::MatrixXd symmetrized_block(const DataMatrix& x);

// Entrywise mix e^{-t/2} X_0 + (1-e^{-t})^{1/2} X_G toward the Gaussian.
DataMatrix gaussian_divisible(const DataMatrix& x0, double t);

struct MomentGap {
    int matched_up_to;
    double fourth_gap;
};
MomentGap moment_gap(const EntryDistribution& a, const EntryDistribution& b);

struct RotationReport {
    double ks_statistic;
    double p_value;
    bool pass;
    std::uint64_t seed;
};

// Gaussian invariance check: largest-eigenvalue samples of X* Sigma X vs
// X* D X (D = spectrum of Sigma) compared by a two-sample KS test.
RotationReport rotate_population_test(const Eigen::MatrixXd& sigma_full, int n, int reps,
                                      std::uint64_t seed, double level = 0.01);

// All eigenvalues of a symmetric matrix, ascending (LAPACK dsyevd).
std::vector<double> sym_eigenvalues(Eigen::MatrixXd a);

} // namespace rmt
