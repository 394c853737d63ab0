#include "usp/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace usp::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// ascending power series, long double accumulation; fine up to |x| ~ 14
double bessel_series(int n, double x) {
  const long double half = 0.5L * static_cast<long double>(x);
  long double term = 1.0L;
  for (int k = 1; k <= n; ++k) term *= half / k;  // (x/2)^n / n!
  long double sum = term;
  const long double h2 = half * half;
  for (int k = 0; k < 80; ++k) {
    term *= -h2 / ((k + 1.0L) * (n + k + 1.0L));
    sum += term;
    if (std::fabs(static_cast<double>(term)) < 1e-25) break;
  }
  return static_cast<double>(sum);
}

// Hankel asymptotic expansion for n <= 1; truncated at its smallest term,
// which sits near exp(-2x), below 2e-15 for x >= 16
double bessel_asymptotic(int n, double x) {
  const double mu = 4.0 * n * n;
  long double p = 1.0L, q = 0.0L;
  long double t = 1.0L;
  for (int k = 1; k <= 30; ++k) {
    const long double prev = t;
    t *= (mu - (2.0L * k - 1) * (2.0L * k - 1)) / (8.0L * x * k);
    if (std::fabs(static_cast<double>(t)) > std::fabs(static_cast<double>(prev)))
      break;  // passed the smallest term
    const int phase = (k / 2) % 2;  // sign (-1)^{k/2} resp. (-1)^{(k-1)/2}
    if (k % 2 == 1) {
      q += phase ? -t : t;
    } else {
      p += phase ? -t : t;
    }
    if (std::fabs(static_cast<double>(t)) < 1e-20) break;
  }
  const double chi = x - (0.5 * n + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) *
         (static_cast<double>(p) * std::cos(chi) -
          static_cast<double>(q) * std::sin(chi));
}

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

}  // namespace

double bessel_j(int order, double x) {
  if (order < 0 || order > 8)
    throw std::invalid_argument("bessel_j: unsupported order " +
                                std::to_string(order));
  if (!std::isfinite(x)) throw std::invalid_argument("bessel_j: x not finite");
  double sign = 1.0;
  if (x < 0) {
    x = -x;
    if (order % 2 == 1) sign = -1.0;
  }
  if (x <= 16.0) return sign * bessel_series(order, x);
  const double j0 = bessel_asymptotic(0, x);
  const double j1 = bessel_asymptotic(1, x);
  if (order == 0) return sign * j0;
  double jm = j0, jc = j1;
  for (int k = 1; k < order; ++k) {
    const double jn = (2.0 * k / x) * jc - jm;
    jm = jc;
    jc = jn;
  }
  return sign * jc;
}

double gamma_fn(double x) {
  if (is_nonpositive_integer(x))
    throw std::domain_error("gamma_fn: pole at non-positive integer");
  // Lanczos, g = 7, 9 coefficients
  static const double c[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
  const double z = x - 1.0;
  double a = c[0];
  for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
  const double t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

double digamma(double x) {
  if (x <= 0.0) throw std::domain_error("digamma: requires x > 0");
  double acc = 0.0;
  while (x < 8.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // asymptotic series with even Bernoulli numbers
  static const double b[7] = {1.0 / 6,   -1.0 / 30, 1.0 / 42, -1.0 / 30,
                              5.0 / 66,  -691.0 / 2730, 7.0 / 6};
  const double inv2 = 1.0 / (x * x);
  double series = 0.0, p = inv2;
  for (int k = 0; k < 7; ++k) {
    series += b[k] / (2.0 * (k + 1)) * p;
    p *= inv2;
  }
  return acc + std::log(x) - 0.5 / x - series;
}

SpecFunResult gauss_2f1_series(double a, double b, double c, double z) {
  if (std::fabs(z) >= 1.0)
    throw std::domain_error("gauss_2f1_series: requires |z| < 1");
  long double term = 1.0L, sum = 1.0L;
  double tail = 0.0;
  const int kMax = 2000;
  for (int n = 0; n < kMax; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0L)) * z;
    sum += term;
    if (term == 0.0L) {  // terminating (polynomial) case
      tail = 0.0;
      break;
    }
    // once the term ratio has settled below 1, bound the remaining
    // geometric tail
    const double ratio =
        std::fabs((a + n + 1) * (b + n + 1) / ((c + n + 1) * (n + 2.0)) * z);
    if (ratio < 0.9) {
      tail = std::fabs(static_cast<double>(term)) * ratio / (1.0 - ratio);
      if (tail < 1e-17 * std::fabs(static_cast<double>(sum))) break;
    }
  }
  SpecFunResult r;
  r.value = static_cast<double>(sum);
  r.est_error = tail + 1e-15 * std::fabs(r.value);
  return r;
}

namespace {

// Gauss summation at z = 1 (needs c-a-b > 0)
double gauss_2f1_at_one(double a, double b, double c) {
  if (c - a - b <= 0.0)
    throw std::domain_error("gauss_2f1: divergent at z = 1 (c-a-b <= 0)");
  return gamma_fn(c) * gamma_fn(c - a - b) / (gamma_fn(c - a) * gamma_fn(c - b));
}

// connection formula z -> 1-z when c-a-b = m is a nonnegative integer
// (the logarithmic case); w = 1-z in (0, 0.25]
double gauss_2f1_near1_integer(double a, double b, int m, double w) {
  long double s1 = 0.0L;
  if (m > 0) {
    long double term = 1.0L;
    s1 = term;
    for (int n = 1; n < m; ++n) {
      term *= (a + n - 1) * (b + n - 1) / ((1.0L - m + n - 1) * n) * w;
      s1 += term;
    }
    s1 *= gamma_fn(m) * gamma_fn(a + b + m) /
          (gamma_fn(a + m) * gamma_fn(b + m));
  }
  const double lnw = std::log(w);
  long double s2 = 0.0L;
  long double coeff = 1.0L;
  for (int k = 1; k <= m; ++k) coeff /= k;  // 1/m!
  for (int n = 0; n < 500; ++n) {
    const double psi = lnw - digamma(n + 1.0) - digamma(n + m + 1.0) +
                       digamma(a + m + n) + digamma(b + m + n);
    const long double t = coeff * psi;
    s2 += t;
    coeff *= (a + m + n) * (b + m + n) / ((n + 1.0L) * (n + m + 1.0L)) * w;
    if (std::fabs(static_cast<double>(coeff)) <
        1e-18 * (std::fabs(static_cast<double>(s2)) + 1.0))
      break;
  }
  const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
  s2 *= sgn * gamma_fn(a + b + m) / (gamma_fn(a) * gamma_fn(b)) *
        std::pow(w, m);
  return static_cast<double>(s1 - s2);
}

// standard z -> 1-z transformation for non-integer c-a-b
double gauss_2f1_near1_generic(double a, double b, double c, double w) {
  const double s = c - a - b;
  const double t1 = gamma_fn(c) * gamma_fn(s) / (gamma_fn(c - a) * gamma_fn(c - b)) *
                    gauss_2f1_series(a, b, 1.0 - s, w).value;
  const double t2 = gamma_fn(c) * gamma_fn(-s) / (gamma_fn(a) * gamma_fn(b)) *
                    std::pow(w, s) *
                    gauss_2f1_series(c - a, c - b, 1.0 + s, w).value;
  return t1 + t2;
}

}  // namespace

double gauss_2f1(double a, double b, double c, double z) {
  if (is_nonpositive_integer(c))
    throw std::domain_error("gauss_2f1: c is a non-positive integer");
  if (z < 0.0 || z > 1.0)
    throw std::domain_error("gauss_2f1: z outside [0,1]");
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
    // terminating series, exact for any z
    if (z == 1.0) z = std::nextafter(1.0, 0.0);
    return gauss_2f1_series(a, b, c, z).value;
  }
  if (z == 1.0) return gauss_2f1_at_one(a, b, c);
  if (z <= 0.75) return gauss_2f1_series(a, b, c, z).value;
  const double s = c - a - b;
  const double sr = std::round(s);
  if (std::fabs(s - sr) < 1e-12 && sr >= 0.0)
    return gauss_2f1_near1_integer(a, b, static_cast<int>(sr), 1.0 - z);
  if (std::fabs(s - sr) < 1e-12 && sr < 0.0)
    throw std::domain_error("gauss_2f1: unsupported integer c-a-b < 0 near z=1");
  return gauss_2f1_near1_generic(a, b, c, 1.0 - z);
}

namespace {

// AGM loop for m in [0, 1)
EllipticKE agm_ke(double m) {
  double an = 1.0, bn = std::sqrt(1.0 - m);
  double csum = 0.5 * m;  // 2^{-1} c_0^2 with c_0 = sqrt(m)
  double pow2 = 0.5;
  for (int n = 1; n <= 60; ++n) {
    const double cn = 0.5 * (an - bn);
    const double a1 = 0.5 * (an + bn);
    bn = std::sqrt(an * bn);
    an = a1;
    pow2 *= 2.0;
    csum += pow2 * cn * cn;
    if (std::fabs(cn) < 1e-17 * an) break;
  }
  EllipticKE r;
  r.K = kPi / (2.0 * an);
  r.E = r.K * (1.0 - csum);
  return r;
}

}  // namespace

EllipticKE elliptic_ke(double m) {
  if (m >= 1.0) throw std::domain_error("elliptic_ke: K diverges for m >= 1");
  if (m >= 0.0) return agm_ke(m);
  // imaginary-modulus transformation to a parameter in (0,1)
  const double mu = -m;
  const EllipticKE base = agm_ke(mu / (1.0 + mu));
  EllipticKE r;
  const double root = std::sqrt(1.0 + mu);
  r.K = base.K / root;
  r.E = base.E * root;
  return r;
}

double elliptic_e(double m) {
  if (m > 1.0) throw std::domain_error("elliptic_e: requires m <= 1");
  if (m == 1.0) return 1.0;
  return elliptic_ke(m).E;
}

double legendre_p_half(int order, double z) {
  if (order != -2 && order != 2)
    throw std::invalid_argument("legendre_p_half: order must be -2 or 2");
  if (z <= 1.0) throw std::domain_error("legendre_p_half: requires z > 1");
  // P^{-2}_{1/2}(z) = (1/Gamma(3)) ((z+1)/(z-1))^{-1} 2F1(-1/2,3/2;3;(1-z)/2)
  // Pfaff-transformed so the 2F1 argument is (z-1)/(z+1) in [0,1)
  const double arg = (z - 1.0) / (z + 1.0);
  const double f = gauss_2f1(-0.5, 1.5, 3.0, arg);
  const double p_m2 = 0.5 * arg * std::sqrt(0.5 * (z + 1.0)) * f;
  if (order == -2) return p_m2;
  // reflection: P^{2}_{1/2} = Gamma(7/2)/Gamma(-1/2) P^{-2}_{1/2} = -15/16 ...
  return -15.0 / 16.0 * p_m2;
}

double chebyshev_c(int n, double u) {
  if (n < 0) throw std::invalid_argument("chebyshev_c: negative degree");
  if (n == 0) return 1.0;  // convention: c_0 = 1, not 2
  double prev = 2.0, cur = u;
  for (int k = 1; k < n; ++k) {
    const double next = u * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

long long catalan(int n) {
  if (n < 0) throw std::invalid_argument("catalan: negative index");
  if (n > 33) throw std::range_error("catalan: result exceeds 64 bits");
  unsigned __int128 c = 1;
  for (int k = 1; k <= n; ++k) c = c * (2 * (2 * k - 1)) / (k + 1);
  return static_cast<long long>(c);
}

double legendre_poly(int n, double x) {
  if (n < 0) throw std::invalid_argument("legendre_poly: negative degree");
  if (n == 0) return 1.0;
  double pm = 1.0, pc = x;
  for (int k = 1; k < n; ++k) {
    const double pn = ((2.0 * k + 1.0) * x * pc - k * pm) / (k + 1.0);
    pm = pc;
    pc = pn;
  }
  return pc;
}

}  // namespace usp::specfun
