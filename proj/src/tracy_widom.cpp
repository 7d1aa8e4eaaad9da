#include "rmt/tracy_widom.hpp"

#include "rmt/airy.hpp"

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace rmt {

namespace {

constexpr double kSLo = -12.0;
constexpr double kSHi = 8.0;
constexpr int kGridN = 2000; // step 0.01

std::vector<double> make_grid() {
    std::vector<double> s(kGridN + 1);
    for (int i = 0; i <= kGridN; ++i) s[i] = kSHi - 0.01 * i; // descending
    return s;
}

// ---- Painleve II route -------------------------------------------------

// state: (q, q', I, K, J) with I = int_s^inf q, K = int_s^inf q^2,
// J = int_s^inf (x - s) q^2; dI/ds = -q, dK/ds = -q^2, dJ/ds = -K.
using PState = std::array<long double, 5>;

std::vector<double> painleve_f1(const std::vector<double>& grid) {
    namespace ode = boost::numeric::odeint;

    auto rhs = [](const PState& y, PState& dyds, long double s) {
        if (std::abs(static_cast<double>(y[0])) > 25.0)
            throw std::runtime_error("Painleve II solution blew up (connection constant)");
        dyds[0] = y[1];
        dyds[1] = s * y[0] + 2.0L * y[0] * y[0] * y[0];
        dyds[2] = -y[0];
        dyds[3] = -y[0] * y[0];
        dyds[4] = -y[3];
    };

    // seed at s = 8 with the Airy boundary condition and its tail integrals
    PState y;
    y[0] = static_cast<long double>(airy_ai(kSHi));
    y[1] = static_cast<long double>(airy_ai_prime(kSHi));
    y[2] = static_cast<long double>(
        integrate([](double x) { return airy_ai(x); }, kSHi, 40.0, 1e-18));
    y[3] = static_cast<long double>(
        integrate([](double x) { double a = airy_ai(x); return a * a; }, kSHi, 40.0, 1e-18));
    y[4] = static_cast<long double>(integrate(
        [](double x) { double a = airy_ai(x); return (x - kSHi) * a * a; }, kSHi, 40.0, 1e-18));

    std::vector<long double> times(grid.begin(), grid.end()); // descending
    std::vector<double> f1;
    f1.reserve(grid.size());
    auto stepper =
        ode::make_controlled(1e-16L, 1e-16L, ode::runge_kutta_fehlberg78<PState, long double>());
    ode::integrate_times(stepper, rhs, y, times.begin(), times.end(), -1e-4L,
                         [&](const PState& st, long double) {
                             f1.push_back(static_cast<double>(
                                 std::exp(-0.5L * st[4] - 0.5L * st[2])));
                         });
    return f1;
}

// ---- Fredholm determinant route ----------------------------------------

// det(I - K1) on L^2(s, inf), K1(x,y) = Ai((x+y)/2)/2, via Nystrom with
// Gauss-Legendre nodes mapped by x = s + c (1+u)/(1-u).
double fredholm_f1_at(double s, const GaussLegendre& gl, double c) {
    const int n = static_cast<int>(gl.nodes.size());
    std::vector<double> x(n), sw(n);
    for (int i = 0; i < n; ++i) {
        double u = gl.nodes[i];
        x[i] = s + c * (1.0 + u) / (1.0 - u);
        double jac = 2.0 * c / ((1.0 - u) * (1.0 - u));
        sw[i] = std::sqrt(gl.weights[i] * jac);
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double k = 0.5 * airy_ai(0.5 * (x[i] + x[j]));
            m(i, j) -= sw[i] * sw[j] * k;
            if (j != i) m(j, i) = m(i, j);
        }
    return m.partialPivLu().determinant();
}

std::vector<double> fredholm_f1(const std::vector<double>& grid) {
    auto gl = gauss_legendre(120);
    std::vector<double> f1(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) f1[i] = fredholm_f1_at(grid[i], gl, 10.0);
    return f1;
}

// mean and variance by Simpson on the tabulated CDF:
// E[X]   = int_0^inf (1 - F) - int_-inf^0 F,
// E[X^2] = int_0^inf 2x (1 - F) + int_-inf^0 (-2x) F.
void moments(const std::vector<double>& s_asc, const std::vector<double>& f_asc, double& mean,
             double& var) {
    // the two integrands differ by a constant across s = 0, so integrate the
    // halves separately (the grid contains 0 at an even panel boundary)
    auto simpson = [&](std::size_t lo, std::size_t hi, auto g) {
        double acc = 0.0;
        for (std::size_t i = lo; i + 2 <= hi; i += 2) {
            double h = s_asc[i + 1] - s_asc[i];
            acc += h / 3.0 * (g(i) + 4.0 * g(i + 1) + g(i + 2));
        }
        return acc;
    };
    const std::size_t iz = static_cast<std::size_t>(
        std::min_element(s_asc.begin(), s_asc.end(),
                         [](double a, double b) { return std::abs(a) < std::abs(b); }) -
        s_asc.begin());
    const std::size_t last = s_asc.size() - 1;
    mean = simpson(iz, last, [&](std::size_t i) { return 1.0 - f_asc[i]; }) +
           simpson(0, iz, [&](std::size_t i) { return -f_asc[i]; });
    double m2 = simpson(iz, last, [&](std::size_t i) { return 2.0 * s_asc[i] * (1.0 - f_asc[i]); }) +
                simpson(0, iz, [&](std::size_t i) { return -2.0 * s_asc[i] * f_asc[i]; });
    var = m2 - mean * mean;
}

} // namespace

double TWReference::cdf(double x) const {
    if (x <= s.front()) return 0.0;
    if (x >= s.back()) return 1.0;
    return interp_(x);
}

TWReference build_tw_reference(TWMethod method) {
    auto grid_desc = make_grid();
    std::vector<double> f_desc =
        method == TWMethod::painleve ? painleve_f1(grid_desc) : fredholm_f1(grid_desc);

    TWReference ref;
    ref.method = method;
    ref.s.assign(grid_desc.rbegin(), grid_desc.rend());
    ref.f1.assign(f_desc.rbegin(), f_desc.rend());
    for (auto& v : ref.f1) v = std::clamp(v, 0.0, 1.0);
    ref.interp_ = MonotoneCubic(ref.s, ref.f1);
    moments(ref.s, ref.f1, ref.mean, ref.variance);
    return ref;
}

const TWReference& tw1_reference() {
    static TWReference ref = [] {
        TWReference fred = build_tw_reference(TWMethod::fredholm);
        TWReference pain = build_tw_reference(TWMethod::painleve);
        double err = 0.0;
        for (std::size_t i = 0; i < fred.f1.size(); ++i)
            err = std::max(err, std::abs(fred.f1[i] - pain.f1[i]));
        fred.est_error = err;
        return fred;
    }();
    return ref;
}

double tw1_cdf(double s) { return tw1_reference().cdf(s); }

} // namespace rmt
