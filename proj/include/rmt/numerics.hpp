#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace rmt {

using Complex = std::complex<double>;

// sqrt(z - e1) * sqrt(z - e2) with a principal square root per factor, so the
// cut of the product lies on the real segment [e1, e2] instead of wherever
// the principal root of the product happens to put it.
Complex branch_sqrt2(Complex z, double e1, double e2);

// Adaptive Gauss-Kronrod on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12);

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

// Monotone piecewise-cubic interpolant (Fritsch-Carlson) on a uniform or
// non-uniform grid. Used for CDF tables; preserves monotonicity.
class MonotoneCubic {
  public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);
    double operator()(double x) const;

  private:
    std::vector<double> x_, y_, m_;
};

// Weighted least squares y = a + b x; returns {intercept a, slope b}.
struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& w);

} // namespace rmt
