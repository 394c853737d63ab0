#include "usp/distribution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <map>
#include <stdexcept>

#include "usp/quadrature.hpp"
#include "usp/specfun.hpp"
#include "usp/weyl.hpp"

namespace usp::distribution {

namespace sf = usp::specfun;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTau2Switch = 0.05;  // closed form loses precision below

double sq(double x) { return x * x; }

}  // namespace

const char* character_name(Character c) {
  switch (c) {
    case Character::tau_g1: return "tau_g1";
    case Character::tau_g2: return "tau_g2";
    case Character::tau_g3: return "tau_g3";
    case Character::rho: return "rho";
    case Character::tau2: return "tau2";
    case Character::chi2: return "chi2";
  }
  return "?";
}

const char* method_name(Method m) {
  switch (m) {
    case Method::hypergeometric: return "hypergeometric";
    case Method::legendre: return "legendre";
    case Method::elliptic: return "elliptic";
    case Method::meijer: return "meijer";
    case Method::slice: return "slice";
    case Method::auto_: return "auto";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// f_tau_g2: the four closed forms plus the slicing integral
// ---------------------------------------------------------------------------

namespace {

double f_tau_g2_hyp(double x) {
  const double m = 1.0 - x * x / 16.0;
  return 1.0 / (4.0 * kPi) * m * m * m * m * sf::gauss_2f1(1.5, 2.5, 5.0, m);
}

double f_tau_g2_elliptic(double x) {
  const double m = 1.0 - x * x / 16.0;
  if (m >= 1.0) return 64.0 / (15.0 * kPi * kPi);  // x = 0 limit
  const sf::EllipticKE ke = sf::elliptic_ke(m);
  return 64.0 / (15.0 * kPi * kPi) *
         ((m * m - 16.0 * m + 16.0) * ke.E - 8.0 * (m * m - 3.0 * m + 2.0) * ke.K);
}

double f_tau_g2_legendre(double x) {
  x = std::fabs(x);  // even in x; the formula is stated for x > 0
  if (x < 1e-150) return 64.0 / (15.0 * kPi * kPi);  // sqrt(x) P -> -1/pi
  const double z = (x * x + 16.0) / (8.0 * x);
  const double p = sf::legendre_p_half(2, z);
  return -64.0 / (15.0 * kPi) * std::sqrt(x) * sq(1.0 - x * x / 16.0) * p;
}

double f_tau_g2_meijer(double x) {
  x = std::fabs(x);
  if (x < 1e-150) return 64.0 / (15.0 * kPi * kPi);
  const double z = x * x / 16.0;
  const double arg = (z + 1.0) / (2.0 * std::sqrt(z));
  const double g = 4.0 / 3.0 * sq(1.0 - z) * std::pow(z, 0.25) *
                   sf::legendre_p_half(-2, arg);
  return 6.0 / kPi * g;
}

// smooth reparametrization of the slice integral
//   f(x) = (1/4pi^2) int_{2x-4}^{x^2/4} sqrt(((y+4)^2-4x^2)(x^2-4y)) dy
// by y = m + h sin t, which absorbs both square-root endpoints
double f_tau_g2_slice(double x, double tol) {
  x = std::fabs(x);
  if (x >= 4.0) return 0.0;
  const double a = 2.0 * x - 4.0, b = x * x / 4.0;
  const double mid = 0.5 * (a + b), h = 0.5 * (b - a);
  auto integrand = [&](double t) {
    const double st = std::sin(t), ct = std::cos(t);
    const double y = mid + h * st;
    return ct * ct * std::sqrt(std::max(0.0, y + 4.0 + 2.0 * x));
  };
  std::vector<double> xs, ws;
  double prev = 0.0;
  for (int n = 24;; n *= 2) {
    quad::gauss_legendre(n, xs, ws);
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
      sum += ws[i] * integrand(0.5 * kPi * xs[i]);
    sum *= 0.5 * kPi;
    const double value = 2.0 * h * h * sum / (4.0 * kPi * kPi);
    if (n > 24 && std::fabs(value - prev) < tol) return value;
    if (n >= 768)
      throw AccuracyError("f_tau_g2 slice tolerance not reached", value,
                          std::fabs(value - prev));
    prev = value;
  }
}

}  // namespace

double f_tau_g2(double x, Method method) {
  if (std::fabs(x) >= 4.0) return 0.0;
  switch (method) {
    case Method::hypergeometric: return f_tau_g2_hyp(x);
    case Method::legendre: return f_tau_g2_legendre(x);
    case Method::elliptic: return f_tau_g2_elliptic(x);
    case Method::meijer: return f_tau_g2_meijer(x);
    case Method::slice: return f_tau_g2_slice(x, 1e-11);
    case Method::auto_:
      return std::fabs(x) <= 3.5 ? f_tau_g2_elliptic(x) : f_tau_g2_hyp(x);
  }
  throw std::invalid_argument("f_tau_g2: bad method");
}

double f_tau_g1(double x) {
  if (std::fabs(x) >= 2.0) return 0.0;
  return std::sqrt(4.0 - x * x) / (2.0 * kPi);
}

double f_rho(double x) {
  if (std::fabs(x) >= 4.0) return 0.0;
  const double m = 1.0 - x * x / 16.0;
  return 1.0 / (2.0 * kPi) * m * m * sf::gauss_2f1(0.5, 1.5, 3.0, m);
}

// ---------------------------------------------------------------------------
// f_tau2 (law of s_2) and chi2
// ---------------------------------------------------------------------------

namespace {

// slicing integral for the s_2 law; sin substitution keeps the integrand
// smooth on both branch layouts
double f_tau2_slice(double x) {
  const double c = 0.5 * (x + 4.0);
  std::vector<double> xs, ws;
  auto integrate_smooth = [&](auto&& fn) {
    double prev = 0.0;
    for (int n = 32;; n *= 2) {
      quad::gauss_legendre(n, xs, ws);
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += ws[i] * fn(0.5 * kPi * xs[i]);
      sum *= 0.5 * kPi;
      if (n > 32 && std::fabs(sum - prev) < 1e-12) return sum;
      if (n >= 1024) return sum;
      prev = sum;
    }
  };
  if (x < 0.0) {
    // I_- = (-c, c); z = c sin t
    auto fn = [&](double t) {
      const double st = std::sin(t), ct = std::cos(t);
      return ct * ct * std::sqrt(c * c * st * st - 4.0 * x);
    };
    return 2.0 * c * c * integrate_smooth(fn) / (4.0 * kPi * kPi);
  }
  // I_+ = (2 sqrt x, c) twice by symmetry; z = m + h sin t
  const double r = 2.0 * std::sqrt(x);
  if (r >= c) return 0.0;
  const double mid = 0.5 * (r + c), h = 0.5 * (c - r);
  auto fn = [&](double t) {
    const double st = std::sin(t), ct = std::cos(t);
    const double z = mid + h * st;
    return ct * ct * std::sqrt(std::max(0.0, (z + r) * (c + z)));
  };
  return 4.0 * h * h * integrate_smooth(fn) / (4.0 * kPi * kPi);
}

double f_tau2_closed(double x) {
  // elliptic closed form; the printed statement is mirrored in x relative
  // to its own slicing integral, so evaluate it at -x
  const double y = -x;
  const double m = 1.0 - 16.0 / (y * y);
  const sf::EllipticKE ke = sf::elliptic_ke(m);
  const double sgn = (y > 0) ? 1.0 : -1.0;
  return sgn / (24.0 * kPi * kPi) *
         (y * (y * y - 24.0 * y + 16.0) * ke.E +
          4.0 * (3.0 * y * y - 8.0 * y + 48.0) * ke.K);
}

}  // namespace

double f_tau2(double x) {
  if (std::fabs(x) >= 4.0) return 0.0;
  if (std::fabs(x) < kTau2Switch) return f_tau2_slice(x);
  return f_tau2_closed(x);
}

double f_chi2(double x) { return f_tau2(x - 1.0); }

// ---------------------------------------------------------------------------
// nu_g and trace slices
// ---------------------------------------------------------------------------

double nu_density(const symmetric::SymmetricPoint& p) {
  const symmetric::MembershipReport r = symmetric::in_sigma(p);
  if (!r.in_sigma) return 0.0;
  const double d0 = r.minors[p.g - 1];
  const double d1v = symmetric::d1(p);
  const double prod = d0 * d1v;
  if (prod <= 0.0) return 0.0;
  return std::sqrt(prod) / std::pow(2.0 * kPi, p.g);
}

namespace {

// g = 3 slice: for fixed (x, s2) the s3 section is the intersection of
// the d_0 >= 0 root interval with the L_3 strip; both vanishing factors
// are quadratics in s3, so the sin substitution keeps the inner
// integrand bounded and smooth
double slice3_inner(double x, double s2, int order, std::vector<double>& xs,
                    std::vector<double>& ws) {
  const double B = 18.0 * x * s2 - 4.0 * x * x * x;
  const double C = x * x * s2 * s2 - 4.0 * s2 * s2 * s2;
  const double disc = B * B + 108.0 * C;
  if (disc <= 0.0) return 0.0;
  const double rt = std::sqrt(disc);
  const double rlo = (B - rt) / 54.0, rhi = (B + rt) / 54.0;
  const double lo3 = -(2.0 * s2 + 4.0 * x + 8.0);
  const double hi3 = 2.0 * s2 - 4.0 * x + 8.0;
  const double a = std::max(rlo, lo3), b = std::min(rhi, hi3);
  if (b <= a) return 0.0;
  const double mid = 0.5 * (a + b), h = 0.5 * (b - a);
  quad::gauss_legendre(order, xs, ws);
  double sum = 0.0;
  for (int i = 0; i < order; ++i) {
    const double t = 0.5 * kPi * xs[i];
    const double s3 = mid + h * std::sin(t);
    const double d0 = 27.0 * (s3 - rlo) * (rhi - s3);
    const double d1v = (hi3 - s3) * (s3 - lo3);
    const double w = ws[i] * 0.5 * kPi * h * std::cos(t);
    sum += w * std::sqrt(std::max(0.0, d0 * d1v));
  }
  return sum / (8.0 * kPi * kPi * kPi);
}

double f_tau_slice3(double x, double tol) {
  if (std::fabs(x) >= 6.0) return 0.0;
  const double lo2 = std::max(-12.0, 4.0 * std::fabs(x) - 12.0);
  const double hi2 = std::min(12.0, x * x / 3.0);
  if (hi2 <= lo2) return 0.0;
  std::vector<double> xs, ws;
  auto outer = [&](double s2) { return slice3_inner(x, s2, 48, xs, ws); };
  return quad::adaptive(outer, lo2, hi2, tol);
}

}  // namespace

double f_tau_slice(int g, double x, double tol) {
  if (g == 2) {
    if (std::fabs(x) >= 4.0) return 0.0;
    return f_tau_g2_slice(x, tol);
  }
  if (g == 3) return f_tau_slice3(x, tol);
  throw std::invalid_argument("f_tau_slice: g must be 2 or 3");
}

// ---------------------------------------------------------------------------
// characteristic functions
// ---------------------------------------------------------------------------

double charfn_tau_g2_series(double t) {
  // 1F2(3/2; 3, 4; -4 t^2)
  const long double z = -4.0L * t * t;
  long double term = 1.0L, sum = 1.0L;
  for (int n = 0; n < 400; ++n) {
    term *= (1.5L + n) / ((3.0L + n) * (4.0L + n) * (n + 1.0L)) * z;
    sum += term;
    if (std::fabs(static_cast<double>(term)) < 1e-20 * (1.0 + std::fabs(static_cast<double>(sum))))
      break;
  }
  return static_cast<double>(sum);
}

namespace {

double charfn_tau_g2_bessel(double t) {
  const double j1 = sf::bessel_j(1, 2.0 * t), j2 = sf::bessel_j(2, 2.0 * t);
  const double t2 = t * t;
  return 4.0 * j1 * j1 / t2 - 6.0 * j1 * j2 / (t2 * t) + 4.0 * j2 * j2 / t2;
}

double charfn_rho_series(double t) {
  // (J_1(2t)/t)^2 via the series of J_1(2t)/t
  long double term = 1.0L, sum = 1.0L;
  const long double z = -static_cast<long double>(t) * t;
  for (int k = 0; k < 200; ++k) {
    term *= z / ((k + 1.0L) * (k + 2.0L));
    sum += term;
    if (std::fabs(static_cast<double>(term)) < 1e-20) break;
  }
  return static_cast<double>(sum * sum);
}

// Taylor coefficients c_n of the g = 3 characteristic function
// (sum c_n y^{2n}), from Cauchy products of the J_1(2y)/y and J_2(2y)/y^2
// series; also the source of the exact tau_g3 moments
const std::vector<long double>& g3_charfn_taylor() {
  static const std::vector<long double> coeffs = [] {
    const int N = 28;
    std::vector<long double> A(N), B(N);
    long double fa = 1.0L, fb = 2.0L;  // k!(k+1)!, k!(k+2)!
    for (int k = 0; k < N; ++k) {
      const long double sgn = (k % 2 == 0) ? 1.0L : -1.0L;
      A[k] = sgn / fa;
      B[k] = sgn / fb;
      fa *= (k + 1.0L) * (k + 2.0L);
      fb *= (k + 1.0L) * (k + 3.0L);
    }
    auto conv = [N](const std::vector<long double>& u,
                    const std::vector<long double>& v) {
      std::vector<long double> w(N, 0.0L);
      for (int i = 0; i < N; ++i)
        for (int j = 0; i + j < N; ++j) w[i + j] += u[i] * v[j];
      return w;
    };
    const auto A2 = conv(A, A), A3 = conv(A2, A);
    const auto B2 = conv(B, B), B3 = conv(B2, B);
    const auto A2B = conv(A2, B), AB2 = conv(A, B2);
    // f = 24 [ (-4A^3 + 11A^2B - 6AB^2)/y^2 + (-4AB^2 + 5B^3) ]
    std::vector<long double> s1(N), s2(N);
    for (int k = 0; k < N; ++k) {
      s1[k] = -4.0L * A3[k] + 11.0L * A2B[k] - 6.0L * AB2[k];
      s2[k] = -4.0L * AB2[k] + 5.0L * B3[k];
    }
    std::vector<long double> c(N - 1);
    for (int k = 0; k + 1 < N; ++k) c[k] = 24.0L * (s1[k + 1] + s2[k]);
    return c;
  }();
  return coeffs;
}

double charfn_tau_g3_bessel(double y) {
  const double j1 = sf::bessel_j(1, 2.0 * y), j2 = sf::bessel_j(2, 2.0 * y);
  const double y2 = y * y, y5 = y2 * y2 * y, y6 = y5 * y, y7 = y6 * y;
  // note (3 + 2y^2): the printed form carries (3 + y^2), which fails both
  // the y -> 0 normalization and the quadrature cross-check
  return 24.0 * (-4.0 * j1 * j1 * j1 / y5 + 11.0 * j1 * j1 * j2 / y6 -
                 2.0 * (3.0 + 2.0 * y2) * j1 * j2 * j2 / y7 +
                 5.0 * j2 * j2 * j2 / y6);
}

double charfn_tau_g3_series(double y) {
  const auto& c = g3_charfn_taylor();
  const long double y2 = static_cast<long double>(y) * y;
  long double sum = 0.0L, p = 1.0L;
  for (std::size_t k = 0; k < c.size(); ++k) {
    sum += c[k] * p;
    p *= y2;
  }
  return static_cast<double>(sum);
}

}  // namespace

double charfn(Character which, double t) {
  t = std::fabs(t);  // even: the laws are symmetric
  switch (which) {
    case Character::tau_g2:
      return t < 0.5 ? charfn_tau_g2_series(t) : charfn_tau_g2_bessel(t);
    case Character::rho: {
      if (t < 0.5) return charfn_rho_series(t);
      const double j1 = sf::bessel_j(1, 2.0 * t);
      return j1 * j1 / (t * t);
    }
    case Character::tau_g3:
      return t < 0.5 ? charfn_tau_g3_series(t) : charfn_tau_g3_bessel(t);
    default:
      throw std::invalid_argument("charfn: supported for tau_g2, tau_g3, rho");
  }
}

// ---------------------------------------------------------------------------
// moments
// ---------------------------------------------------------------------------

namespace {

long long mihailovs_even(int n) {
  // M_{2n} = 6 (2n)! (2n+2)! / (n!(n+1)!(n+2)!(n+3)!), by the exact ratio
  // M_{2(n+1)}/M_{2n} = 4(2n+1)(2n+3)/((n+3)(n+4))
  unsigned __int128 m = 1;
  for (int k = 0; k < n; ++k) {
    m = m * 4 * (2 * k + 1) * (2 * k + 3);
    m /= static_cast<unsigned>((k + 3) * (k + 4));
  }
  return static_cast<long long>(m);
}

// 3-d Weyl quadrature of E[(s_1)^{2n}] for tau_g3, one tensor pass
std::vector<double> g3_even_moments_quadrature(int nmax) {
  std::vector<double> acc(nmax + 1, 0.0);
  std::vector<double> xs, ws;
  quad::gauss_legendre(64, xs, ws);
  const int N = 64;
  std::vector<double> th(N), w(N);
  for (int i = 0; i < N; ++i) {
    th[i] = 0.5 * kPi * (xs[i] + 1.0);
    w[i] = 0.5 * kPi * ws[i];
  }
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        const double t1 = 2.0 * std::cos(th[i]), t2 = 2.0 * std::cos(th[j]),
                     t3 = 2.0 * std::cos(th[k]);
        double dens = (2.0 / kPi) * sq(std::sin(th[i])) * (2.0 / kPi) *
                      sq(std::sin(th[j])) * (2.0 / kPi) * sq(std::sin(th[k]));
        dens *= sq(t2 - t1) * sq(t3 - t1) * sq(t3 - t2) / 6.0;
        dens *= w[i] * w[j] * w[k];
        const double tr = t1 + t2 + t3;
        const double tr2 = tr * tr;
        double p = 1.0;
        for (int n = 0; n <= nmax; ++n) {
          acc[n] += p * dens;
          p *= tr2;
        }
      }
  return acc;
}

std::vector<long long> g3_moments(int upto) {
  const int nmax = upto / 2;
  if (2 * nmax > 18)
    throw std::invalid_argument("moments(tau_g3): supported up to order 18");
  static std::vector<double> quad_vals;
  static std::once_flag flag;
  std::call_once(flag, [] { quad_vals = g3_even_moments_quadrature(9); });
  const auto& taylor = g3_charfn_taylor();
  std::vector<long long> out(upto + 1, 0);
  out[0] = 1;
  long double fact = 1.0L;  // (2n)!
  for (int n = 1; n <= nmax; ++n) {
    fact *= (2.0L * n - 1) * (2.0L * n);
    const double by_series =
        static_cast<double>(((n % 2 == 0) ? 1.0L : -1.0L) * taylor[n] * fact);
    const double by_quadrature = quad_vals[n];
    if (std::fabs(by_series - by_quadrature) >
        1e-6 * std::max(1.0, std::fabs(by_series)))
      throw std::logic_error("moments(tau_g3): quadrature/series mismatch");
    out[2 * n] = std::llround(by_series);
  }
  return out;
}

}  // namespace

MomentSequence moments(Character which, int upto) {
  if (upto < 0) throw std::invalid_argument("moments: upto < 0");
  MomentSequence seq;
  seq.which = which;
  seq.values.assign(upto + 1, 0);
  seq.values[0] = 1;
  switch (which) {
    case Character::tau_g1:
      for (int n = 2; n <= upto; n += 2) seq.values[n] = sf::catalan(n / 2);
      break;
    case Character::tau_g2:
      if (upto > 30) throw std::invalid_argument("moments(tau_g2): upto > 30");
      for (int n = 2; n <= upto; n += 2) seq.values[n] = mihailovs_even(n / 2);
      break;
    case Character::rho:
      if (upto > 30) throw std::invalid_argument("moments(rho): upto > 30");
      for (int n = 2; n <= upto; n += 2)
        seq.values[n] = sf::catalan(n / 2) * sf::catalan(n / 2 + 1);
      break;
    case Character::tau2:
      if (upto > 30) throw std::invalid_argument("moments(tau2): upto > 30");
      for (int n = 1; n <= upto; ++n) {
        if (n % 2 == 0)
          seq.values[n] = sf::catalan(n / 2) * sf::catalan(n / 2 + 1);
        else
          seq.values[n] = -sf::catalan((n + 1) / 2) * sf::catalan((n + 1) / 2);
      }
      break;
    case Character::chi2: {
      // chi_2 is tau2 shifted by +1: M_n = sum_k C(n,k) M_k(tau2)
      const MomentSequence base = moments(Character::tau2, upto);
      for (int n = 1; n <= upto; ++n) {
        __int128 m = 0;
        __int128 binom = 1;
        for (int k = 0; k <= n; ++k) {
          m += binom * base.values[k];
          binom = binom * (n - k) / (k + 1);
        }
        seq.values[n] = static_cast<long long>(m);
      }
      break;
    }
    case Character::tau_g3:
      seq.values = g3_moments(upto);
      break;
  }
  return seq;
}

// ---------------------------------------------------------------------------
// CDF of tau_g2 via a cached quadrature grid
// ---------------------------------------------------------------------------

namespace {

struct CdfGrid {
  static constexpr int kCells = 2048;
  std::array<double, kCells + 1> prefix{};
  double total = 0.0;

  CdfGrid() {
    auto f = [](double x) { return f_tau_g2(x, Method::auto_); };
    prefix[0] = 0.0;
    for (int i = 0; i < kCells; ++i) {
      const double a = -4.0 + 8.0 * i / kCells;
      const double b = -4.0 + 8.0 * (i + 1) / kCells;
      prefix[i + 1] = prefix[i] + quad::gk21(f, a, b).value;
    }
    total = prefix[kCells];
  }
};

}  // namespace

double cdf_tau_g2(double x) {
  static const CdfGrid grid;
  if (x <= -4.0) return 0.0;
  if (x >= 4.0) return 1.0;
  const double pos = (x + 4.0) / 8.0 * CdfGrid::kCells;
  int cell = static_cast<int>(pos);
  if (cell >= CdfGrid::kCells) cell = CdfGrid::kCells - 1;
  const double a = -4.0 + 8.0 * cell / CdfGrid::kCells;
  auto f = [](double u) { return f_tau_g2(u, Method::auto_); };
  const double value = grid.prefix[cell] + quad::gk21(f, a, x).value;
  return std::clamp(value / grid.total, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// g = 3 reconstruction from moments
// ---------------------------------------------------------------------------

namespace {

// Legendre coefficients c_k = (2k+1)/2 E[P_k(s_1/6)], all orders in one
// tensor pass over the angle box
std::vector<double> g3_legendre_coeffs(int order) {
  std::vector<double> acc(order + 1, 0.0);
  std::vector<double> xs, ws;
  const int N = 64;
  quad::gauss_legendre(N, xs, ws);
  std::vector<double> th(N), w(N), pk(order + 1);
  for (int i = 0; i < N; ++i) {
    th[i] = 0.5 * kPi * (xs[i] + 1.0);
    w[i] = 0.5 * kPi * ws[i];
  }
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        const double t1 = 2.0 * std::cos(th[i]), t2 = 2.0 * std::cos(th[j]),
                     t3 = 2.0 * std::cos(th[k]);
        double dens = (2.0 / kPi) * sq(std::sin(th[i])) * (2.0 / kPi) *
                      sq(std::sin(th[j])) * (2.0 / kPi) * sq(std::sin(th[k]));
        dens *= sq(t2 - t1) * sq(t3 - t1) * sq(t3 - t2) / 6.0;
        dens *= w[i] * w[j] * w[k];
        const double u = (t1 + t2 + t3) / 6.0;
        double pm = 1.0, pc = u;
        acc[0] += dens;
        if (order >= 1) acc[1] += dens * u;
        for (int d = 1; d < order; ++d) {
          const double pn = ((2.0 * d + 1.0) * u * pc - d * pm) / (d + 1.0);
          pm = pc;
          pc = pn;
          acc[d + 1] += dens * pc;
        }
      }
  for (int k = 0; k <= order; ++k) acc[k] *= (2.0 * k + 1.0) / 2.0;
  return acc;
}

std::mutex g_recon_mutex;
std::map<int, std::vector<double>> g_recon_cache;

}  // namespace

double f_tau_g3_reconstruct(double x, int order) {
  if (order < 0 || order > 60)
    throw std::invalid_argument("f_tau_g3_reconstruct: order outside [0,60]");
  if (std::fabs(x) > 6.0) return 0.0;
  std::vector<double> coeffs;
  {
    std::lock_guard<std::mutex> lock(g_recon_mutex);
    auto it = g_recon_cache.find(order);
    if (it == g_recon_cache.end())
      it = g_recon_cache.emplace(order, g3_legendre_coeffs(order)).first;
    coeffs = it->second;
  }
  const double u = x / 6.0;
  double sum = coeffs[0];
  double pm = 1.0, pc = u;
  if (order >= 1) sum += coeffs[1] * pc;
  for (int d = 1; d < order; ++d) {
    const double pn = ((2.0 * d + 1.0) * u * pc - d * pm) / (d + 1.0);
    pm = pc;
    pc = pn;
    sum += coeffs[d + 1] * pc;
  }
  return sum / 6.0;
}

// ---------------------------------------------------------------------------
// curves
// ---------------------------------------------------------------------------

void support_of(Character c, double& lo, double& hi) {
  switch (c) {
    case Character::tau_g1: lo = -2.0; hi = 2.0; return;
    case Character::tau_g2: lo = -4.0; hi = 4.0; return;
    case Character::tau_g3: lo = -6.0; hi = 6.0; return;
    case Character::rho: lo = -4.0; hi = 4.0; return;
    case Character::tau2: lo = -4.0; hi = 4.0; return;
    case Character::chi2: lo = -3.0; hi = 5.0; return;
  }
  throw std::invalid_argument("support_of: bad character");
}

DensityCurve density_curve(Character which, Method m, double xmin,
                           double xmax, int npoints) {
  if (npoints < 2) throw std::invalid_argument("density_curve: npoints < 2");
  DensityCurve curve;
  curve.which = which;
  curve.method = method_name(m);
  curve.xs.resize(npoints);
  curve.ys.resize(npoints);
  for (int i = 0; i < npoints; ++i) {
    const double x = xmin + (xmax - xmin) * i / (npoints - 1.0);
    curve.xs[i] = x;
    switch (which) {
      case Character::tau_g1: curve.ys[i] = f_tau_g1(x); break;
      case Character::tau_g2: curve.ys[i] = f_tau_g2(x, m); break;
      case Character::tau_g3:
        curve.ys[i] =
            m == Method::slice ? f_tau_slice(3, x, 1e-6)
                               : std::max(0.0, f_tau_g3_reconstruct(x));
        break;
      case Character::rho: curve.ys[i] = f_rho(x); break;
      case Character::tau2: curve.ys[i] = f_tau2(x); break;
      case Character::chi2: curve.ys[i] = f_chi2(x); break;
    }
  }
  return curve;
}

double trapezoid(const DensityCurve& curve) {
  double sum = 0.0;
  for (std::size_t i = 1; i < curve.xs.size(); ++i)
    sum += 0.5 * (curve.ys[i] + curve.ys[i - 1]) *
           (curve.xs[i] - curve.xs[i - 1]);
  return sum;
}

}  // namespace usp::distribution
