#include "rmt/characteristics.hpp"

#include <doctest.h>

#include <cmath>

using namespace rmt;

TEST_SUITE("characteristics") {

TEST_CASE("square-case field is the pure square root") {
    VelocityField f(1.0);
    Complex z(0.0, 2.0);
    CHECK(std::abs(f.velocity(z) - Complex(0.0, std::sqrt(2.0))) < 1e-12);
    // general reduction sqrt(z^2 - 4)/2 on a grid
    for (double re : {-1.5, 0.3, 2.2})
        for (double im : {0.2, 1.0, 3.0}) {
            Complex w(re, im);
            CHECK(std::abs(f.velocity(w) - branch_sqrt2(w, -2.0, 2.0) / 2.0) < 1e-12);
        }
}

TEST_CASE("velocity equals the stieltjes drift g = m + z/(2 xi)") {
    for (double xi : {0.25, 0.64, 1.0}) {
        VelocityField f(xi);
        for (double re : {-2.0, -0.7, 0.4, 1.3, 2.6}) {
            for (double im : {0.05, 0.6, 2.5}) {
                Complex z(re, im);
                Complex g = f.velocity(z);
                CHECK(std::abs(g - f.law.sv_stieltjes(z) - z / (2.0 * xi)) < 1e-12);
                CHECK(g.imag() > 0.0);
            }
        }
    }
}

TEST_CASE("velocity rejects points on the support") {
    VelocityField f(0.25);
    CHECK_THROWS_AS(static_cast<void>(f.velocity(Complex(1.0, 0.0))), std::domain_error);
}

TEST_CASE("flow matches the closed-form comparison solution") {
    for (double xi : {0.25, 1.0}) {
        VelocityField f(xi, FieldKind::semicircle_comparison);
        for (Complex z0 : {Complex(1.0 + std::sqrt(xi) - 0.05, 0.02),
                           Complex(1.0 + std::sqrt(xi) + 0.1, 0.3)}) {
            for (double t : {0.0, 0.1, 0.7}) {
                Complex numeric =
                    t == 0.0 ? flow(f, z0, 0.0, 1).points.back() : flow(f, z0, t).points.back();
                CHECK(std::abs(numeric - sc_flow_exact(xi, z0, t)) < 1e-9);
            }
        }
    }
}

TEST_CASE("general and comparison increments agree within a factor of 4 near the edge") {
    double xi = 0.25;
    VelocityField gen(xi), sc(xi, FieldKind::semicircle_comparison);
    Complex z0(gen.law.sqrt_edge_plus() - 0.02, 0.01);
    for (double t : {0.05, 0.3, 0.9}) {
        Complex dg = flow(gen, z0, t).points.back() - z0;
        Complex dsc = flow(sc, z0, t).points.back() - z0;
        double ratio = std::abs(dg) / std::abs(dsc);
        CHECK(ratio > 0.25);
        CHECK(ratio < 4.0);
    }
}

TEST_CASE("imaginary part grows monotonically along paths") {
    VelocityField f(0.5);
    auto path = flow(f, Complex(1.2, 0.01), 0.8, 64);
    for (std::size_t i = 1; i < path.points.size(); ++i)
        CHECK(path.points[i].imag() > path.points[i - 1].imag());
}

TEST_CASE("phi parameter is pinned at N = 100") {
    CHECK(phi_param(100.0) == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(phi_param(1e6) > 8.0);
}

TEST_CASE("edge-lemma ratio bands") {
    double xi = 0.25;
    // The square-root comparison field is the one whose edge increments carry
    // the t a/kappa^{1/2} + t^2 scaling; the general field adds a constant
    // transport (1 - sqrt(xi))/(2 xi) at the edge for xi != 1, which the
    // factor-4 comparison test covers instead.
    VelocityField f(xi, FieldKind::semicircle_comparison);
    SpectralLaw law(xi);
    // points at kappa = 0.01 from the upper edge, on and above the curve S
    double e = law.sqrt_edge_plus() - 0.01;
    EdgeCurveS curve = edge_curve(law, 1e21);
    std::vector<Complex> z0s{curve.at(e), Complex(e, 0.002), Complex(e, 0.01)};
    auto rep = verify_characteristics_asymptotics(f, z0s, {0.01, 0.1, 0.5});
    CHECK(rep.pass);
    for (const auto& row : rep.rows) {
        CHECK(row.re_ratio >= rep.band_lo);
        CHECK(row.re_ratio <= rep.band_hi);
        CHECK(row.im_ratio >= rep.band_lo);
        CHECK(row.im_ratio <= rep.band_hi);
    }

    // bulk point: Im increment comparable to t (general field)
    VelocityField gen(xi);
    Complex mid(0.5 * (law.sqrt_edge_minus() + law.sqrt_edge_plus()), 0.05);
    auto bulk = verify_bulk_asymptotics(gen, {mid}, {0.05, 0.2, 0.6});
    CHECK(bulk.pass);
}

TEST_CASE("nested integral bound") {
    double xi = 0.25;
    VelocityField f(xi);
    SpectralLaw law(xi);
    EdgeCurveS curve = edge_curve(law, 1e21);
    double e = law.sqrt_edge_plus() - 0.01; // kappa = 0.01
    double small_t = 0.05;                  // t^2 < kappa regime
    double large_t = 0.5;
    double r_small = integral_bound_check(f, curve, e, small_t);
    double r_large = integral_bound_check(f, curve, e, large_t);
    CHECK(r_small <= 64.0);
    CHECK(r_large <= 64.0);
    CHECK(r_small > 0.0);
    CHECK(r_large > 0.0);
    // mid-grid point in the crossover region stays bounded as well
    CHECK(integral_bound_check(f, curve, e, 0.1) <= 64.0);
}

} // TEST_SUITE
