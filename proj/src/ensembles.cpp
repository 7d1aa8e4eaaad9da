#include "rmt/ensembles.hpp"

#include "rmt/edge_stats.hpp"

#include <lapacke.h>

#include <cmath>
#include <stdexcept>

namespace rmt {

EntryDistribution EntryDistribution::gaussian() {
    return {EntryKind::gaussian, 2.0, {0.0, 1.0, 0.0, 3.0}};
}

EntryDistribution EntryDistribution::rademacher() {
    return {EntryKind::rademacher, 1e9, {0.0, 1.0, 0.0, 1.0}};
}

EntryDistribution EntryDistribution::uniform() {
    return {EntryKind::uniform, 1e9, {0.0, 1.0, 0.0, 9.0 / 5.0}};
}

EntryDistribution EntryDistribution::two_point_matched(double fourth) {
    if (fourth < 1.0) throw std::invalid_argument("two_point_matched: fourth moment >= 1");
    return {EntryKind::two_point_matched, 1e9, {0.0, 1.0, 0.0, fourth}, fourth};
}

double EntryDistribution::sample(CounterRng& rng) const {
    switch (kind) {
        case EntryKind::gaussian:
            return rng.normal();
        case EntryKind::rademacher:
            return rng.uniform() < 0.5 ? -1.0 : 1.0;
        case EntryKind::uniform:
            return std::sqrt(3.0) * (2.0 * rng.uniform() - 1.0);
        case EntryKind::two_point_matched: {
            // P(+-a) = 1/(2a^2), a = sqrt(fourth); variance 1, E q^4 = a^2
            const double a = std::sqrt(fourth);
            const double p = 1.0 / (2.0 * a * a);
            const double u = rng.uniform();
            if (u < p) return a;
            if (u < 2.0 * p) return -a;
            return 0.0;
        }
    }
    throw std::logic_error("EntryDistribution: unknown kind");
}

DataMatrix sample_data(int m, int n, const EntryDistribution& dist, std::uint64_t seed,
                       std::uint64_t replica) {
    if (n < 1 || m < n) throw std::invalid_argument("sample_data: need M >= N >= 1 (regime xi <= 1)");
    DataMatrix x;
    x.entries.resize(m, n);
    x.seed = seed;
    x.replica = replica;
    x.dist = dist;
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) {
            const std::uint64_t entry = static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(i);
            CounterRng rng(seed, replica, entry);
            x.entries(i, j) = scale * dist.sample(rng);
        }
    }
    return x;
}

std::vector<double> sym_eigenvalues(Eigen::MatrixXd a) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw std::invalid_argument("sym_eigenvalues: square matrix required");
    if (!a.allFinite()) throw std::invalid_argument("sym_eigenvalues: non-finite entries");
    std::vector<double> w(static_cast<std::size_t>(n));
    const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data());
    if (info != 0) throw std::runtime_error("dsyevd failed, info=" + std::to_string(info));
    return w;
}

CovarianceSample covariance(const DataMatrix& x) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(x.n(), x.n());
    h.selfadjointView<Eigen::Lower>().rankUpdate(x.entries.transpose());
    CovarianceSample s;
    s.eigenvalues = sym_eigenvalues(std::move(h));
    s.singular_values.reserve(s.eigenvalues.size());
    for (const double lam : s.eigenvalues) s.singular_values.push_back(std::sqrt(std::max(0.0, lam)));
    return s;
}

CovarianceSample separable(const DataMatrix& x, const std::vector<double>& sigma_diag) {
    if (static_cast<int>(sigma_diag.size()) != x.m())
        throw std::invalid_argument("separable: population size must equal M");
    Eigen::MatrixXd scaled = x.entries;
    for (int i = 0; i < x.m(); ++i) {
        if (sigma_diag[static_cast<std::size_t>(i)] <= 0.0)
            throw std::invalid_argument("separable: population must be positive");
        scaled.row(i) *= std::sqrt(sigma_diag[static_cast<std::size_t>(i)]);
    }
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(x.n(), x.n());
    q.selfadjointView<Eigen::Lower>().rankUpdate(scaled.transpose());
    CovarianceSample s;
    s.eigenvalues = sym_eigenvalues(std::move(q));
    return s;
}

Eigen::MatrixXd symmetrized_block(const DataMatrix& x) {
    if (x.m() != x.n()) throw std::invalid_argument("symmetrized_block: square case (M = N) only");
    const int n = x.n();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    h.topRightCorner(n, n) = x.entries.transpose();
    h.bottomLeftCorner(n, n) = x.entries;
    return h;
}

DataMatrix gaussian_divisible(const DataMatrix& x0, double t) {
    if (t < 0.0) throw std::invalid_argument("gaussian_divisible: t >= 0");
    DataMatrix x = x0;
    const double keep = std::exp(-0.5 * t);
    const double add = std::sqrt(1.0 - std::exp(-t));
    const int m = x.m(), n = x.n();
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    // Gaussian component keyed past the data-entry stream range
    const std::uint64_t salt = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) {
            const std::uint64_t entry = static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(i);
            CounterRng rng(x.seed, x.replica, salt + entry);
            x.entries(i, j) = keep * x.entries(i, j) + add * scale * rng.normal();
        }
    }
    return x;
}

MomentGap moment_gap(const EntryDistribution& a, const EntryDistribution& b) {
    MomentGap g{0, std::abs(a.moments[3] - b.moments[3])};
    for (int k = 0; k < 4; ++k) {
        if (std::abs(a.moments[static_cast<std::size_t>(k)] - b.moments[static_cast<std::size_t>(k)]) > 1e-12) break;
        g.matched_up_to = k + 1;
    }
    return g;
}

RotationReport rotate_population_test(const Eigen::MatrixXd& sigma_full, int n, int reps,
                                      std::uint64_t seed, double level) {
    const int m = static_cast<int>(sigma_full.rows());
    if (sigma_full.cols() != m) throw std::invalid_argument("rotate_population_test: Sigma must be square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma_full);
    if (es.info() != Eigen::Success) throw std::runtime_error("rotate_population_test: eigensolve failed");
    const Eigen::VectorXd d = es.eigenvalues();
    if (d.minCoeff() <= 0.0) throw std::invalid_argument("rotate_population_test: Sigma must be positive definite");

    const auto dist = EntryDistribution::gaussian();
    std::vector<double> diag(d.data(), d.data() + m);
    std::vector<double> arm_full(static_cast<std::size_t>(reps));
    std::vector<double> arm_diag(static_cast<std::size_t>(reps));
    for (int r = 0; r < reps; ++r) {
        const DataMatrix xa = sample_data(m, n, dist, seed, static_cast<std::uint64_t>(r));
        Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
        Eigen::MatrixXd sx = sigma_full.llt().matrixL().transpose() * xa.entries;
        q.selfadjointView<Eigen::Lower>().rankUpdate(sx.transpose());
        arm_full[static_cast<std::size_t>(r)] = sym_eigenvalues(std::move(q)).back();

        const DataMatrix xb = sample_data(m, n, dist, seed, static_cast<std::uint64_t>(reps + r));
        arm_diag[static_cast<std::size_t>(r)] = separable(xb, diag).eigenvalues.back();
    }
    RotationReport rep{};
    rep.ks_statistic = two_sample_ks(arm_full, arm_diag);
    rep.p_value = ks_p_value(rep.ks_statistic, arm_full.size(), arm_diag.size());
    rep.pass = rep.p_value > level;
    rep.seed = seed;
    return rep;
}

} // namespace rmt
