#pragma once

namespace rmt {

// Airy Ai and Ai' on the real line. Maclaurin series (long double internals)
// on the central window, asymptotic expansions outside; the two regimes are
// cross-validated in the test suite against an independent implementation.
double airy_ai(double x);
double airy_ai_prime(double x);

} // namespace rmt
