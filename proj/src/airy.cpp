#include "rmt/airy.hpp"

#include <cmath>

namespace rmt {

namespace {

// Series window [-9, 6]: cancellation stays below the long double headroom
// there, and the asymptotic error e^{-2 zeta} is already < 1e-8 at the seams.
constexpr double kSeriesLo = -9.0;
constexpr double kSeriesHi = 6.0;

constexpr long double kAi0 = 0.35502805388781723926L;   // 3^{-2/3}/Gamma(2/3)
constexpr long double kAip0 = -0.25881940379280679841L; // -3^{-1/3}/Gamma(1/3)

// Power series of the Airy ODE y'' = x y around 0: a_{n+3} = a_n/((n+3)(n+2)).
void ai_series(double x, double& ai, double& aip) {
    const long double lx = static_cast<long double>(x);
    long double a0 = kAi0;  // chain with a_n, n = 0 mod 3
    long double a1 = kAip0; // n = 1 mod 3
    long double s = a0 + a1 * lx;
    long double sp = a1;
    long double xp = 1.0L; // x^{3(k-1)} at loop entry
    for (int k = 1; k <= 200; ++k) {
        const int n0 = 3 * k, n1 = 3 * k + 1;
        a0 /= static_cast<long double>(n0) * (n0 - 1);
        a1 /= static_cast<long double>(n1) * (n1 - 1);
        const long double xpm = xp * lx * lx; // x^{3k-1}
        const long double xp0 = xpm * lx;     // x^{3k}
        const long double t0 = a0 * xp0;
        const long double t1 = a1 * xp0 * lx;
        s += t0 + t1;
        sp += a0 * n0 * xpm + a1 * n1 * xp0;
        xp = xp0;
        if (std::abs(t0) + std::abs(t1) < 1e-25L * (std::abs(s) + 1e-30L) && k > 4) break;
    }
    ai = static_cast<double>(s);
    aip = static_cast<double>(sp);
}

// u_k / v_k coefficients of the asymptotic expansions (DLMF 9.7).
constexpr int kMaxAsym = 40;

void ai_asym_pos(double x, double& ai, double& aip) {
    const long double zeta = (2.0L / 3.0L) * std::pow(static_cast<long double>(x), 1.5L);
    long double u = 1.0L, su = 1.0L, sv = 1.0L;
    long double zp = 1.0L;
    long double prev = 1e300L;
    for (int k = 1; k <= kMaxAsym; ++k) {
        u *= static_cast<long double>(6 * k - 5) * (6 * k - 1) / (72.0L * k);
        const long double v = u * (6 * k + 1) / (1.0L - 6 * k);
        zp *= -1.0L / zeta;
        const long double tu = u * zp;
        if (std::abs(tu) > prev) break; // divergent tail
        prev = std::abs(tu);
        su += tu;
        sv += v * zp;
        if (std::abs(tu) < 1e-20L) break;
    }
    const long double pre = std::exp(-zeta) / (2.0L * std::sqrt(static_cast<long double>(M_PI)));
    const long double x14 = std::pow(static_cast<long double>(x), 0.25L);
    ai = static_cast<double>(pre / x14 * su);
    aip = static_cast<double>(-pre * x14 * sv);
}

void ai_asym_neg(double x, double& ai, double& aip) {
    const long double t = static_cast<long double>(-x);
    const long double zeta = (2.0L / 3.0L) * std::pow(t, 1.5L);
    // split the u_k / v_k sums into even and odd parts
    long double u = 1.0L;
    long double su_e = 1.0L, su_o = 0.0L, sv_e = 1.0L, sv_o = 0.0L;
    long double zp = 1.0L; // (1/zeta)^k with alternating sign folded in below
    long double prev = 1e300L;
    for (int k = 1; k <= kMaxAsym; ++k) {
        u *= static_cast<long double>(6 * k - 5) * (6 * k - 1) / (72.0L * k);
        const long double v = u * (6 * k + 1) / (1.0L - 6 * k);
        zp /= zeta;
        const long double mag = u * zp;
        if (mag > prev) break;
        prev = mag;
        const long double sgn = ((k / 2) % 2 == 0) ? 1.0L : -1.0L; // (-1)^{floor(k/2)}
        if (k % 2 == 0) {
            su_e += sgn * u * zp;
            sv_e += sgn * v * zp;
        } else {
            su_o += sgn * u * zp;
            sv_o += sgn * v * zp;
        }
        if (mag < 1e-20L) break;
    }
    const long double c = std::cos(zeta - static_cast<long double>(M_PI) / 4.0L);
    const long double s = std::sin(zeta - static_cast<long double>(M_PI) / 4.0L);
    const long double x14 = std::pow(t, 0.25L);
    const long double sqrt_pi = std::sqrt(static_cast<long double>(M_PI));
    ai = static_cast<double>((c * su_e + s * su_o) / (sqrt_pi * x14));
    aip = static_cast<double>(x14 / sqrt_pi * (s * sv_e - c * sv_o));
}

void ai_pair(double x, double& ai, double& aip) {
    if (x > kSeriesHi)
        ai_asym_pos(x, ai, aip);
    else if (x < kSeriesLo)
        ai_asym_neg(x, ai, aip);
    else
        ai_series(x, ai, aip);
}

} // namespace

double airy_ai(double x) {
    double ai, aip;
    ai_pair(x, ai, aip);
    return ai;
}

double airy_ai_prime(double x) {
    double ai, aip;
    ai_pair(x, ai, aip);
    return aip;
}

} // namespace rmt
