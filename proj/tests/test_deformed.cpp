#include "rmt/deformed_mp.hpp"

#include "rmt/spectral_law.hpp"

#include <doctest.h>

#include <cmath>

using namespace rmt;

TEST_SUITE("deformed_mp") {

TEST_CASE("identity population reproduces the closed forms") {
    for (double xi : {0.25, 0.5, 1.0}) {
        auto law = make_deformed_law(Population::identity(64), xi);
        double r = std::sqrt(xi);
        CHECK(std::abs(law.xi_plus - r / (1.0 + r)) < 1e-10);
        CHECK(std::abs(law.e_plus - (1.0 + r) * (1.0 + r) / xi) < 1e-9);
        CHECK(std::abs(law.gamma0 - r * std::pow(1.0 + r, -4.0 / 3.0)) < 1e-10);
    }
}

TEST_CASE("identity population self-consistent transform matches the explicit law") {
    // with Sigma = Id the deformed law is the MP law scaled by 1/xi:
    // mhat(z) = xi * m_MP(xi z)
    double xi = 0.36;
    SpectralLaw mp(xi);
    Population pop = Population::identity(16);
    for (Complex z : {Complex(2.0, 0.3), Complex(5.0, 0.05), Complex(9.0, 1.0)}) {
        Complex mhat = solve_mfc(pop, xi, z);
        CHECK(std::abs(mhat - xi * mp.mp_stieltjes(xi * z)) < 1e-8);
    }
    auto law = make_deformed_law(pop, xi);
    for (double e : {1.0, 3.0, 6.0}) {
        CHECK(std::abs(fc_density(law, e) - xi * mp.mp_density(xi * e)) < 1e-4);
    }
}

TEST_CASE("two-atom population produces an admissible law") {
    Population pop({1.0, 2.0});
    double xi = 0.5;
    auto law = make_deformed_law(pop, xi);
    CHECK(law.xi_plus > 0.0);
    CHECK(law.xi_plus < 1.0 / pop.max());
    CHECK(law.e_plus > 0.0);
    CHECK(law.gamma0 > 0.0);
    // density nonnegative below the endpoint, negligible above it
    CHECK(fc_density(law, 0.9 * law.e_plus) > 0.0);
    CHECK(fc_density(law, 1.2 * law.e_plus) < 1e-3);
    // total mass via quadrature on a generous interval
    double mass = 0.0;
    const int n = 4000;
    double hi = 1.1 * law.e_plus;
    for (int i = 0; i < n; ++i) mass += fc_density(law, (i + 0.5) * hi / n) * hi / n;
    CHECK(std::abs(mass - 1.0) < 5e-3);
}

TEST_CASE("xi_plus solves its defining moment equation") {
    Population pop({0.5, 1.0, 1.5, 3.0});
    double xi = 0.4;
    double xp = solve_xi_plus(pop, xi);
    double lhs = pop.esd_mean([&](double t) {
        double u = t * xp / (1.0 - t * xp);
        return u * u;
    });
    CHECK(std::abs(lhs - xi) < 1e-9);
}

TEST_CASE("population flow interpolates toward the identity") {
    Population pop({0.5, 2.0});
    auto at0 = population_flow(pop, 0.0);
    CHECK(at0[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(at0[1] == doctest::Approx(2.0).epsilon(1e-14));
    auto late = population_flow(pop, 40.0);
    CHECK(std::abs(late[0] - 1.0) < 1e-12);
    CHECK(std::abs(late[1] - 1.0) < 1e-12);
    // harmonic interpolation, checked at one interior time
    auto mid = population_flow(pop, 0.7);
    double expect = 1.0 / (std::exp(-0.7) / 0.5 + (1.0 - std::exp(-0.7)));
    CHECK(mid[0] == doctest::Approx(expect).epsilon(1e-13));
}

} // TEST_SUITE
