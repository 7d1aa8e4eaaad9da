#include "rmt/airy.hpp"

#include <boost/math/special_functions/airy.hpp>
#include <doctest.h>

#include <cmath>

using namespace rmt;

TEST_SUITE("airy") {

TEST_CASE("matches the independent reference across all regimes") {
    for (double x = -30.0; x <= 12.0; x += 0.0371) {
        double ref = boost::math::airy_ai(x);
        double refp = boost::math::airy_ai_prime(x);
        CHECK(std::abs(airy_ai(x) - ref) <= 1e-13 + 1e-10 * std::abs(ref));
        CHECK(std::abs(airy_ai_prime(x) - refp) <= 1e-12 + 1e-10 * std::abs(refp));
    }
}

TEST_CASE("known values at zero") {
    CHECK(airy_ai(0.0) == doctest::Approx(0.3550280538878172).epsilon(1e-14));
    CHECK(airy_ai_prime(0.0) == doctest::Approx(-0.2588194037928068).epsilon(1e-14));
}

TEST_CASE("ODE residual via central differences") {
    for (double x : {-7.3, -2.0, 0.5, 3.1, 5.9}) {
        double h = 1e-4;
        double second = (airy_ai(x + h) - 2.0 * airy_ai(x) + airy_ai(x - h)) / (h * h);
        CHECK(std::abs(second - x * airy_ai(x)) < 1e-5);
    }
}

} // TEST_SUITE
