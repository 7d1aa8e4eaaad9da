#include "rmt/edge_stats.hpp"

#include "rmt/rng.hpp"
#include "rmt/tracy_widom.hpp"

#include <doctest.h>

#include <cmath>

using namespace rmt;

TEST_SUITE("edge_stats") {

TEST_CASE("rescaling constant") {
    CHECK(sigma_xi(1.0) == doctest::Approx(std::pow(2.0, 4.0 / 3.0)).epsilon(1e-14));
    CHECK(sigma_xi(0.25) == doctest::Approx(0.5 * std::pow(1.5, 4.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("rescale_extremes applies an affine map") {
    SpectralLaw law(1.0);
    std::vector<double> raw{4.0, 4.1, 3.9};
    auto set = rescale_extremes(raw, law, 100);
    CHECK(set.rescale_constant == doctest::Approx(std::pow(2.0, 4.0 / 3.0)));
    CHECK(set.samples[1] == doctest::Approx(0.0).epsilon(1e-12));
    // a constant shift of the inputs shifts every sample identically
    std::vector<double> shifted{4.2, 4.3, 4.1};
    auto sset = rescale_extremes(shifted, law, 100);
    double d = sset.samples[0] - set.samples[0];
    for (int i = 0; i < 3; ++i) CHECK(sset.samples[i] - set.samples[i] == doctest::Approx(d));
}

TEST_CASE("kolmogorov distance hand cases") {
    auto uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
    auto r = kolmogorov_distance({0.25, 0.75}, uniform_cdf);
    CHECK(r.delta == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(r.dkw_halfwidth == doctest::Approx(std::sqrt(std::log(40.0) / 4.0)).epsilon(1e-12));
}

TEST_CASE("dkw self-calibration") {
    auto uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
    int covered = 0;
    const int trials = 40, n = 10000;
    for (int t = 0; t < trials; ++t) {
        CounterRng rng(500 + t, 0, 0);
        std::vector<double> xs(n);
        for (auto& x : xs) x = rng.uniform();
        auto r = kolmogorov_distance(std::move(xs), uniform_cdf);
        if (r.delta <= r.dkw_halfwidth) ++covered;
    }
    CHECK(covered >= 36); // 95% guarantee, DKW is conservative
}

TEST_CASE("two-sample statistic and p-value") {
    std::vector<double> a{1, 2, 3, 4}, b{10, 11, 12, 13};
    CHECK(two_sample_ks(a, b) == doctest::Approx(1.0));
    CHECK(ks_p_value(1.0, 4, 4) < 0.05);
    CHECK(two_sample_ks(a, a) == doctest::Approx(0.0));
    CHECK(ks_p_value(0.01, 1000, 1000) > 0.9);
}

TEST_CASE("rigidity with exact typical locations passes with zero margins") {
    for (double xi : {0.25, 1.0}) {
        SpectralLaw law(xi);
        auto gamma = law.typical_locations(60);
        auto rep = rigidity_check(gamma, law, 8.0, 0.1, 0.1);
        CHECK(rep.soft_stat == 0.0);
        CHECK(rep.hard_stat == 0.0);
        CHECK(rep.pass);
    }
}

TEST_CASE("rate fit recovers a synthetic power law exactly") {
    std::vector<RatePoint> pts;
    for (double n : {50.0, 100.0, 200.0, 400.0, 800.0})
        pts.push_back({n, 3.0 * std::pow(n, -1.0 / 3.0), 0.02});
    auto fit = rate_fit(pts);
    CHECK(std::abs(fit.slope + 1.0 / 3.0) < 1e-12);
    CHECK(std::abs(fit.intercept - std::log(3.0)) < 1e-12);
    CHECK(fit.bound_respect > 0.0);
    CHECK_THROWS_AS(static_cast<void>(rate_fit({pts[0], pts[1]})), std::invalid_argument);
    pts[1].delta = 0.0;
    CHECK_THROWS_AS(static_cast<void>(rate_fit(pts)), std::invalid_argument);
}

TEST_CASE("null edge samples center near the reference mean") {
    auto set = null_edge_samples(1.0, 120, 300, 2024, EntryDistribution::gaussian());
    double mean = 0.0;
    for (double s : set.samples) mean += s;
    mean /= set.samples.size();
    CHECK(std::abs(mean - tw1_reference().mean) < 0.2);
}

TEST_CASE("separable samples with identity population match the null statistic") {
    auto pop = Population::identity(8);
    auto sep = separable_edge_samples(pop, 0.5, 60, 50, 77, EntryDistribution::gaussian());
    auto nul = null_edge_samples(0.5, 60, 50, 77, EntryDistribution::gaussian());
    REQUIRE(sep.samples.size() == nul.samples.size());
    for (std::size_t i = 0; i < sep.samples.size(); ++i)
        CHECK(sep.samples[i] == doctest::Approx(nul.samples[i]).epsilon(1e-8));
}

} // TEST_SUITE
