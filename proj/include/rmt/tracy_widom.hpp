#pragma once

#include "rmt/numerics.hpp"

#include <vector>

namespace rmt {

enum class TWMethod { painleve, fredholm };

// beta = 1 Tracy-Widom CDF tabulated on [-12, 8], step 0.01, built from
// scratch by one of two independent routes:
//  - painleve: Hastings-McLeod solution of q'' = s q + 2 q^3 integrated
//    backward from s = 8 with an Airy seed, F1 = exp(-J/2 - I/2) from the
//    co-integrated tail integrals;
//  - fredholm: Nystrom determinant of the rank-structured kernel
//    K1(x, y) = Ai((x+y)/2)/2 on (s, infinity).
struct TWReference {
    TWMethod method;
    std::vector<double> s;
    std::vector<double> f1;
    double est_error = 0.0; // max |painleve - fredholm| when cross-checked
    double mean = 0.0;
    double variance = 0.0;

    double cdf(double x) const; // clamped to exact 0/1 outside the grid

  private:
    friend TWReference build_tw_reference(TWMethod);
    MonotoneCubic interp_;
};

TWReference build_tw_reference(TWMethod method);

// Cached Fredholm reference with est_error filled in from the Painleve
// cross-check; built on first use.
const TWReference& tw1_reference();

double tw1_cdf(double s);

} // namespace rmt
