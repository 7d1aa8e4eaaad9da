#include "rmt/ensembles.hpp"

#include <doctest.h>

#include <cmath>

using namespace rmt;

TEST_SUITE("ensembles") {

TEST_CASE("entry distributions are standardized") {
    CounterRng rng(3, 0, 0);
    for (auto dist : {EntryDistribution::gaussian(), EntryDistribution::rademacher(),
                      EntryDistribution::uniform(), EntryDistribution::two_point_matched(5.0)}) {
        const int n = 200000;
        double m1 = 0, m2 = 0, m3 = 0, m4 = 0;
        for (int i = 0; i < n; ++i) {
            double q = dist.sample(rng);
            m1 += q;
            m2 += q * q;
            m3 += q * q * q;
            m4 += q * q * q * q;
        }
        CHECK(std::abs(m1 / n) < 0.02);
        CHECK(std::abs(m2 / n - 1.0) < 0.03);
        CHECK(std::abs(m3 / n - dist.moments[2]) < 0.1);
        CHECK(std::abs(m4 / n - dist.moments[3]) < 0.3);
    }
}

TEST_CASE("sampling is reproducible and replica-keyed") {
    auto a = sample_data(20, 10, EntryDistribution::rademacher(), 99, 4);
    auto b = sample_data(20, 10, EntryDistribution::rademacher(), 99, 4);
    auto c = sample_data(20, 10, EntryDistribution::rademacher(), 99, 5);
    CHECK(a.entries == b.entries);
    CHECK(a.entries != c.entries);
}

TEST_CASE("covariance spectrum basics") {
    auto x = sample_data(80, 40, EntryDistribution::gaussian(), 7);
    auto cov = covariance(x);
    REQUIRE(cov.eigenvalues.size() == 40);
    double tr = x.entries.squaredNorm();
    double sum = 0.0;
    for (double l : cov.eigenvalues) {
        CHECK(l >= -1e-12);
        sum += l;
    }
    CHECK(std::abs(sum - tr) < 1e-9 * tr);
    for (std::size_t i = 0; i < cov.singular_values.size(); ++i)
        CHECK(cov.singular_values[i] ==
              doctest::Approx(std::sqrt(cov.eigenvalues[i])).epsilon(1e-12));
}

TEST_CASE("separable with unit population equals the null model") {
    auto x = sample_data(50, 25, EntryDistribution::gaussian(), 13);
    auto plain = covariance(x);
    auto sep = separable(x, std::vector<double>(50, 1.0));
    for (std::size_t i = 0; i < plain.eigenvalues.size(); ++i)
        CHECK(sep.eigenvalues[i] == doctest::Approx(plain.eigenvalues[i]).epsilon(1e-10));
}

TEST_CASE("symmetrized block spectrum is the mirrored singular values") {
    auto x = sample_data(30, 30, EntryDistribution::gaussian(), 21);
    auto sv = covariance(x).singular_values;
    auto spec = sym_eigenvalues(symmetrized_block(x));
    REQUIRE(spec.size() == 60);
    for (int k = 0; k < 30; ++k) {
        CHECK(spec[30 + k] == doctest::Approx(sv[k]).epsilon(1e-9));
        CHECK(spec[29 - k] == doctest::Approx(-sv[k]).epsilon(1e-9));
    }
}

TEST_CASE("gaussian-divisible interpolation endpoints") {
    auto x = sample_data(30, 15, EntryDistribution::rademacher(), 5);
    auto still = gaussian_divisible(x, 0.0);
    CHECK(still.entries == x.entries);
    auto far = gaussian_divisible(x, 50.0);
    // the original contribution is suppressed by e^{-25}
    CHECK((far.entries - std::exp(-25.0) * x.entries).norm() ==
          doctest::Approx((far.entries).norm()).epsilon(1e-8));
    // mixing preserves the entry variance scale 1/M approximately
    double var = far.entries.squaredNorm() / (30.0 * 15.0);
    CHECK(std::abs(var - 1.0 / 30.0) < 0.01);
}

TEST_CASE("moment gap bookkeeping") {
    auto g = EntryDistribution::gaussian();
    auto matched = EntryDistribution::two_point_matched(3.0);
    auto gap0 = moment_gap(g, matched);
    CHECK(gap0.matched_up_to == 4);
    CHECK(gap0.fourth_gap == doctest::Approx(0.0));
    auto gap2 = moment_gap(g, EntryDistribution::rademacher());
    CHECK(gap2.matched_up_to == 3);
    CHECK(gap2.fourth_gap == doctest::Approx(2.0));
}

TEST_CASE("gaussian rotation invariance of the separable model") {
    // conjugated two-atom population vs its diagonal spectrum
    const int m = 24;
    Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) diag(i, i) = (i < m / 2) ? 1.0 : 2.0;
    // fixed rotation from the QR of a seeded Gaussian matrix
    CounterRng rng(1234, 0, 0);
    Eigen::MatrixXd g(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd sigma = q * diag * q.transpose();

    auto rep = rotate_population_test(sigma, 12, 250, 777);
    CHECK(rep.pass);
}

} // TEST_SUITE
