#pragma once

#include <cstdint>

namespace usp::specfun {

// Value of a series/iteration together with the absolute error bound the
// evaluation method claims for it.
struct SpecFunResult {
  double value = 0.0;
  double est_error = 0.0;
};

// Bessel function J_n(x) of integer order n in [0, 8], |x| <= 50,
// absolute error below 1e-12. Ascending series for |x| <= 16, Hankel
// asymptotics for J_0, J_1 beyond with upward recurrence for n >= 2
// (stable there since n < x). Throws std::invalid_argument for
// unsupported orders.
double bessel_j(int order, double x);

// Gamma function by the Lanczos rational approximation (g = 7, 9 terms),
// reflection formula for x < 1/2. Poles (non-positive integers) throw
// std::domain_error.
double gamma_fn(double x);

// Digamma for x > 0: recurrence up to x >= 8, then the Bernoulli
// asymptotic series.
double digamma(double x);

// Gauss hypergeometric 2F1(a,b;c;z) on z in [0,1].
//   z <= 0.75          direct series
//   z in (0.75, 1)     linear transformation z -> 1-z; the degenerate
//                      case c-a-b = m a nonnegative integer uses the
//                      logarithmic connection formula
//   z = 1              Gauss summation, requires c-a-b > 0
// Relative error below 1e-12. Terminating (polynomial) cases are summed
// directly for any z. Throws std::domain_error on divergent parameter
// combinations.
double gauss_2f1(double a, double b, double c, double z);

// Direct partial-sum evaluation with a geometric tail bound; exposed so
// the tail-bound claim itself is testable. Requires |z| < 1.
SpecFunResult gauss_2f1_series(double a, double b, double c, double z);

struct EllipticKE {
  double K = 0.0;
  double E = 0.0;
};

// Complete elliptic integrals in the parameter convention (argument m,
// not the modulus k). AGM iteration; m < 0 is mapped to a positive
// parameter by the imaginary-modulus transformation. K diverges as
// m -> 1, so elliptic_ke throws std::domain_error for m >= 1;
// elliptic_e alone accepts m <= 1.
EllipticKE elliptic_ke(double m);
double elliptic_e(double m);

// Associated Legendre function of the first kind, degree 1/2, integer
// order in {-2, 2}, on z > 1. Order -2 goes through the 2F1 definition
// (Pfaff-transformed so the argument lies in [0,1)); order 2 follows by
// the reflection Gamma(7/2)/Gamma(-1/2) = -15/16.
double legendre_p_half(int order, double z);

// Normalized Chebyshev polynomial c_n with c_n(u + 1/u) = u^n + u^{-n}
// for n >= 1 and the convention c_0 = 1.
double chebyshev_c(int n, double u);

// n-th Catalan number, exact; n <= 33 fits in 64 bits, larger n throws
// std::range_error.
long long catalan(int n);

// Legendre orthogonal polynomial P_n(x) by the three-term recurrence.
double legendre_poly(int n, double x);

}  // namespace usp::specfun
