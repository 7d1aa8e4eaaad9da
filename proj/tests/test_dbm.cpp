#include "rmt/dbm.hpp"

#include "rmt/edge_stats.hpp"
#include "rmt/ensembles.hpp"
#include "rmt/spectral_law.hpp"

#include <doctest.h>

#include <cmath>

using namespace rmt;

namespace {

SymmetrizedConfig random_config(int n, std::uint64_t seed) {
    CounterRng rng(seed, 0, 0);
    SymmetrizedConfig cfg;
    double s = 0.2 * rng.uniform();
    for (int k = 0; k < n; ++k) {
        s += 0.05 + rng.uniform();
        cfg.s.push_back(s);
    }
    return cfg;
}

SymmetrizedConfig wishart_config(int n, double xi, std::uint64_t seed, std::uint64_t replica = 0,
                                 EntryDistribution dist = EntryDistribution::gaussian()) {
    const int m = static_cast<int>(std::lround(n / xi));
    SymmetrizedConfig cfg;
    cfg.s = covariance(sample_data(m, n, dist, seed, replica)).singular_values;
    return cfg;
}

} // namespace

TEST_SUITE("dbm") {

TEST_CASE("single-pair drift hand value") {
    SymmetrizedConfig cfg;
    cfg.s = {1.0};
    auto d = drift(cfg, 1.0);
    // l != +-k leaves no interaction for N=1; only -s/2 survives at xi=1
    CHECK(d[0] == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("full-index drift is antisymmetric and consistent with the positive half") {
    auto cfg = random_config(12, 5);
    std::vector<double> full;
    for (auto it = cfg.s.rbegin(); it != cfg.s.rend(); ++it) full.push_back(-*it);
    for (double s : cfg.s) full.push_back(s);
    for (double xi : {0.3, 1.0}) {
        auto df = drift_full(full, xi);
        auto dp = drift(cfg, xi);
        for (int k = 0; k < 12; ++k) {
            CHECK(std::abs(df[12 + k] + df[11 - k]) < 1e-14);
            CHECK(std::abs(df[12 + k] - dp[k]) < 1e-12);
        }
    }
}

TEST_CASE("ito change of variables maps to the eigenvalue drift") {
    // lambda = s^2: 2 s drift_s + 1/N must equal the eigenvalue-process
    // drift M/N + (1/N) sum (l_k + l_l)/(l_k - l_l) minus the OU pullback
    // lambda/xi (the s-dynamics is the OU form of the flow)
    for (double xi : {0.25, 0.5, 1.0}) {
        auto cfg = random_config(15, 9);
        const int n = cfg.n();
        auto d = drift(cfg, xi);
        for (int k = 0; k < n; ++k) {
            double lk = cfg.s[k] * cfg.s[k];
            double lhs = 2.0 * cfg.s[k] * d[k] + 1.0 / n;
            double inter = 0.0;
            for (int l = 0; l < n; ++l) {
                if (l == k) continue;
                double ll = cfg.s[l] * cfg.s[l];
                inter += (lk + ll) / (lk - ll);
            }
            double rhs = 1.0 / xi + inter / n - lk / xi;
            CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(rhs)));
        }
    }
}

TEST_CASE("collision guard names the offending indices") {
    SymmetrizedConfig cfg;
    cfg.s = {1.0, 1.0 + 1e-9, 2.0};
    CHECK_THROWS_WITH_AS(static_cast<void>(drift(cfg, 0.5, 1e-3 / 3)),
                         doctest::Contains("indices 1 and 2"), std::runtime_error);
}

TEST_CASE("zero-noise single particle follows the scalar ODE") {
    SymmetrizedConfig cfg;
    cfg.s = {1.0};
    DbmOptions opt;
    opt.dt = 1e-5;
    opt.zero_noise = true;
    CounterRng rng(0, 0, 0);
    auto out = evolve(cfg, 1.0, 0.1, rng, opt);
    CHECK(std::abs(out.s[0] - std::exp(-0.05)) < 1e-5);
    CHECK(out.time == doctest::Approx(0.1));
}

TEST_CASE("ordering preserved over random noisy runs") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto cfg = wishart_config(10, 0.5, 1000 + seed);
        CounterRng rng(seed, 0, 1);
        DbmOptions opt;
        opt.dt = 1e-4;
        auto out = evolve(cfg, 0.5, 0.05, rng, opt);
        for (int k = 1; k < out.n(); ++k) CHECK(out.s[k] > out.s[k - 1]);
        CHECK(out.s[0] > 0.0);
    }
}

TEST_CASE("wishart initial data stays in the stationary class") {
    const double xi = 0.5;
    auto cfg = wishart_config(100, xi, 31415);
    CounterRng rng(9, 0, 0);
    DbmOptions opt;
    opt.dt = 2e-5;
    auto out = evolve(cfg, xi, 0.5, rng, opt);
    SpectralLaw law(AspectRatio::from_dims(100, 200));
    auto ks = kolmogorov_distance(out.s, [&](double s) { return law.mp_cdf(s * s); });
    CHECK(ks.delta < 0.05);
}

TEST_CASE("coupling with identical inputs is exact; interpolation endpoints hold") {
    auto a = wishart_config(12, 1.0, 2);
    auto rec = couple(a, a, 1.0, 0.02, 77, {0.0, 0.01, 0.02});
    for (double g : rec.max_gap) CHECK(g == 0.0);

    SymmetrizedConfig p, q;
    p.s = {1.0};
    q.s = {3.0};
    CHECK(interpolate_init(p, q, 0.5).s[0] == doctest::Approx(2.0));
    CHECK(interpolate_init(p, q, 1.0).s[0] == doctest::Approx(3.0));
    CHECK(interpolate_init(p, q, 0.0).s[0] == doctest::Approx(1.0));
}

TEST_CASE("coupled gap starts at the initial-data gap and shrinks") {
    auto a = wishart_config(30, 1.0, 4, 0);
    auto b = wishart_config(30, 1.0, 4, 1, EntryDistribution::rademacher());
    double init_gap = 0.0;
    for (int k = 0; k < 30; ++k) init_gap = std::max(init_gap, std::abs(a.s[k] - b.s[k]));
    DbmOptions opt;
    opt.dt = 5e-5;
    auto rec = couple(a, b, 1.0, 0.3, 11, {0.0, 0.3}, opt);
    CHECK(rec.max_gap.front() == doctest::Approx(init_gap).epsilon(1e-14));
    CHECK(rec.max_gap.back() < rec.max_gap.front());
}

TEST_CASE("v-flow: zero and constant profiles are fixed points at xi = 1") {
    auto cfg = random_config(8, 17);
    CounterRng rng(3, 0, 0);
    DbmOptions opt;
    opt.dt = 1e-4;
    opt.zero_noise = true;
    auto traj = record_trajectory(cfg, 1.0, 0.02, rng, opt);

    auto zero = evolve_v(std::vector<double>(8, 0.0), traj, 1.0);
    for (double v : zero.vmax) CHECK(v == 0.0);

    auto constant = evolve_v(std::vector<double>(8, 0.7), traj, 1.0);
    CHECK(std::abs(constant.vmax.back() - 0.7) < 1e-13);
    CHECK(std::abs(constant.vmin.back() - 0.7) < 1e-13);
}

TEST_CASE("v-flow maximum principle on noisy trajectories") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto cfg = wishart_config(20, 0.5, 600 + seed);
        CounterRng rng(seed, 1, 0);
        DbmOptions opt;
        opt.dt = 1e-4;
        auto traj = record_trajectory(cfg, 0.5, 0.02, rng, opt);
        CounterRng vr(seed, 2, 0);
        std::vector<double> v0(20);
        for (auto& v : v0) v = vr.uniform();
        auto vs = evolve_v(v0, traj, 0.5);
        double top = vs.vmax.front();
        for (std::size_t i = 1; i < vs.vmax.size(); ++i) {
            CHECK(vs.vmax[i] <= top * (1.0 + 1e-9));
            CHECK(vs.vmin[i] >= -1e-9 * top);
            top = std::max(top, vs.vmax[i]); // guards against drift of the bound
        }
    }
}

TEST_CASE("observable hand case and positivity") {
    SymmetrizedConfig cfg;
    cfg.s = {1.0};
    auto sample = observable(cfg, {1.0}, Complex(0.0, 1.0), 0.0, 1.0);
    CHECK(std::abs(sample.f - Complex(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(sample.s_of_z - Complex(0.0, 0.5)) < 1e-15);

    auto cfg2 = random_config(9, 23);
    std::vector<double> v(9, 0.3);
    auto s2 = observable(cfg2, v, Complex(0.4, 0.8), 0.1, 0.5);
    CHECK(s2.f.imag() >= 0.0);
}

TEST_CASE("drift identity residual") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto cfg = random_config(10, 40 + seed);
        CounterRng rng(seed, 7, 0);
        std::vector<double> v(10);
        for (auto& x : v) x = rng.uniform();
        for (Complex z : {Complex(1.0, 0.3), Complex(-0.4, 0.9), Complex(0.2, -0.5)}) {
            auto r = drift_identity_check(cfg, v, z, 0.5);
            CHECK(r.residual < 1e-11 * r.scale);
            // symmetry z -> -conj(z)
            auto rm = drift_identity_check(cfg, v, -std::conj(z), 0.5);
            CHECK(std::abs(rm.residual - r.residual) < 1e-10 * r.scale);
        }
        std::vector<double> zeros(10, 0.0);
        auto r0 = drift_identity_check(cfg, zeros, Complex(0.3, 0.4), 0.5);
        CHECK(r0.residual == 0.0);
        CHECK(r0.scale == 0.0);
    }
}

} // TEST_SUITE
