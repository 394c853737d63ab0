#include "usp/symmetric.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace usp::symmetric {

namespace {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void check_point(const SymmetricPoint& p) {
  if (p.g < 1 || static_cast<int>(p.s.size()) != p.g)
    throw std::invalid_argument("symmetric: malformed point");
}

}  // namespace

SymmetricPoint viete(const std::vector<double>& t) {
  const int g = static_cast<int>(t.size());
  if (g < 1) throw std::invalid_argument("viete: empty input");
  // coefficients of prod (u - t_j); c[k] holds (-1)^k s_k
  std::vector<double> c(g + 1, 0.0);
  c[0] = 1.0;
  for (int j = 0; j < g; ++j)
    for (int k = j + 1; k >= 1; --k) c[k] -= t[j] * c[k - 1];
  SymmetricPoint p;
  p.g = g;
  p.s.resize(g);
  for (int n = 1; n <= g; ++n) p.s[n - 1] = (n % 2 == 0 ? c[n] : -c[n]);
  return p;
}

std::vector<double> girard_power_sums(const SymmetricPoint& p, int upto) {
  check_point(p);
  if (upto < 0) throw std::invalid_argument("girard_power_sums: upto < 0");
  const int g = p.g;
  std::vector<double> out;
  out.reserve(upto);
  // u_n = (-1)^{n-1} s_n
  std::vector<double> u(g);
  for (int n = 1; n <= g; ++n) u[n - 1] = (n % 2 == 1 ? p.s[n - 1] : -p.s[n - 1]);

  // partition enumeration for n <= g (Girard's formula)
  std::vector<int> b(g, 0);
  for (int n = 1; n <= std::min(upto, g); ++n) {
    double sum = 0.0;
    // iterate over all b with sum i*b_i = n by odometer recursion
    std::function<void(int, int)> rec = [&](int part, int remaining) {
      if (part > g) {
        if (remaining != 0) return;
        int btot = 0;
        double den = 1.0, monom = 1.0;
        for (int i = 0; i < g; ++i) {
          btot += b[i];
          for (int k = 1; k <= b[i]; ++k) den *= k;
          for (int k = 0; k < b[i]; ++k) monom *= u[i];
        }
        if (btot == 0) return;
        double num = 1.0;
        for (int k = 2; k <= btot - 1; ++k) num *= k;  // (btot-1)!
        sum += num / den * monom;
        return;
      }
      for (int cnt = 0; cnt * part <= remaining; ++cnt) {
        b[part - 1] = cnt;
        rec(part + 1, remaining - cnt * part);
      }
      b[part - 1] = 0;
    };
    rec(1, n);
    out.push_back(n * sum);
  }

  // Newton recurrence extension for n > g (s_n = 0 beyond degree g)
  for (int n = g + 1; n <= upto; ++n) {
    double pn = 0.0;
    for (int j = 1; j <= g; ++j) {
      const double pmj = (n - j == 0) ? g : out[n - j - 1];
      pn += (j % 2 == 1 ? 1.0 : -1.0) * p.s[j - 1] * pmj;
    }
    out.push_back(pn);
  }
  return out;
}

double jacobian_factor(const std::vector<double>& t) {
  const int g = static_cast<int>(t.size());
  double prod = 1.0;
  for (int j = 0; j < g; ++j)
    for (int k = j + 1; k < g; ++k) prod *= std::fabs(t[k] - t[j]);
  return prod;
}

std::vector<double> bezoutian_minors(const SymmetricPoint& p) {
  check_point(p);
  const int g = p.g;
  const std::vector<double> ps = girard_power_sums(p, 2 * g - 2);
  auto hankel = [&](int i, int j) {
    const int k = i + j;
    return k == 0 ? static_cast<double>(g) : ps[k - 1];
  };
  std::vector<double> minors;
  minors.reserve(g);
  minors.push_back(hankel(0, 0));
  if (g >= 2)
    minors.push_back(hankel(0, 0) * hankel(1, 1) - hankel(0, 1) * hankel(1, 0));
  if (g >= 3) {
    const double a = hankel(0, 0), b = hankel(0, 1), c = hankel(0, 2);
    const double d = hankel(1, 1), e = hankel(1, 2), f = hankel(2, 2);
    minors.push_back(a * (d * f - e * e) - b * (b * f - e * c) +
                     c * (b * e - d * c));
  }
  return minors;
}

bool in_pi(const SymmetricPoint& p) {
  for (double m : bezoutian_minors(p))
    if (m < -kGeomTol) return false;
  return true;
}

std::vector<double> linear_forms(const SymmetricPoint& p) {
  check_point(p);
  const int g = p.g;
  std::vector<double> forms;
  forms.reserve(2 * g);
  for (int i = 1; i <= g; ++i) {
    double plus = 0.0, minus = 0.0;
    double lam = 1.0;  // 2^k
    for (int k = 0; k <= i; ++k) {
      const int idx = i - k;  // s_{i-k}, s_0 = 1
      const double s = idx == 0 ? 1.0 : p.s[idx - 1];
      const double coef = binom(g - i + k, k) * lam;
      plus += coef * s;
      minus += coef * (idx % 2 == 1 ? -s : s);
      lam *= 2.0;
    }
    forms.push_back(plus);
    forms.push_back(minus);
  }
  return forms;
}

MembershipReport in_sigma(const SymmetricPoint& p) {
  MembershipReport r;
  r.minors = bezoutian_minors(p);
  r.forms = linear_forms(p);
  r.in_pi = true;
  for (double m : r.minors)
    if (m < -kGeomTol) r.in_pi = false;
  r.in_theta = true;
  for (double f : r.forms)
    if (f < -kGeomTol) r.in_theta = false;
  r.in_sigma = r.in_pi && r.in_theta;
  return r;
}

double d1(const SymmetricPoint& p) {
  const std::vector<double> forms = linear_forms(p);
  return forms[2 * p.g - 2] * forms[2 * p.g - 1];
}

PalindromicPolynomial coeffs_from_sym(const SymmetricPoint& p) {
  check_point(p);
  const int g = p.g;
  PalindromicPolynomial poly;
  poly.g = g;
  poly.a.resize(g + 1);
  for (int n = 0; n <= g; ++n) {
    double an = 0.0;
    for (int j = 0; 2 * j <= n; ++j) {
      const int idx = n - 2 * j;
      const double s = idx == 0 ? 1.0 : p.s[idx - 1];
      an += binom(g + 2 * j - n, j) * s;
    }
    poly.a[n] = an;
  }
  return poly;
}

SymmetricPoint sym_from_coeffs(const PalindromicPolynomial& poly) {
  const int g = poly.g;
  if (g < 1 || static_cast<int>(poly.a.size()) != g + 1)
    throw std::invalid_argument("sym_from_coeffs: malformed polynomial");
  // coefficient arrays of c_k(u); the recurrence c_{k+1} = u c_k - c_{k-1}
  // is seeded with 2 and u, while the stored c_0 is 1 (paper convention)
  std::vector<std::vector<double>> cheb(g + 1);
  cheb[0] = {1.0};
  std::vector<double> rec_prev = {2.0};
  std::vector<double> rec_cur = {0.0, 1.0};
  cheb[1] = rec_cur;
  for (int k = 2; k <= g; ++k) {
    std::vector<double> next(k + 1, 0.0);
    for (std::size_t i = 0; i < rec_cur.size(); ++i) next[i + 1] += rec_cur[i];
    for (std::size_t i = 0; i < rec_prev.size(); ++i) next[i] -= rec_prev[i];
    rec_prev = std::move(rec_cur);
    rec_cur = next;
    cheb[k] = std::move(next);
  }

  // h(u) = sum_{n=0}^{g} (-1)^n a_n c_{g-n}(u)
  std::vector<double> h(g + 1, 0.0);
  for (int n = 0; n <= g; ++n) {
    const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    const std::vector<double>& ck = cheb[g - n];
    for (std::size_t i = 0; i < ck.size(); ++i) h[i] += sgn * poly.a[n] * ck[i];
  }
  // h(u) = u^g - s_1 u^{g-1} + s_2 u^{g-2} - ...
  SymmetricPoint p;
  p.g = g;
  p.s.resize(g);
  for (int n = 1; n <= g; ++n)
    p.s[n - 1] = (n % 2 == 1 ? -1.0 : 1.0) * h[g - n];
  return p;
}

double exterior_trace(const weyl::CoefficientVector& v, int n) {
  if (n < 0 || n > 2 * v.g)
    throw std::domain_error("exterior_trace: n outside [0, 2g]");
  if (n > v.g) n = 2 * v.g - n;  // tau_{2g-n} = tau_n
  if (n == 0) return 1.0;
  const SymmetricPoint p = viete(v.t);
  double an = 0.0;
  for (int j = 0; 2 * j <= n; ++j) {
    const int idx = n - 2 * j;
    const double s = idx == 0 ? 1.0 : p.s[idx - 1];
    an += binom(v.g + 2 * j - n, j) * s;
  }
  return an;
}

std::array<double, 2> delta3_forms(const SymmetricPoint& p) {
  if (p.g != 3) throw std::invalid_argument("delta3_forms: g must be 3");
  const double s1 = p.s[0], s2 = p.s[1], s3 = p.s[2];
  return {24.0 + 4.0 * s1 - 2.0 * s2 - 3.0 * s3,
          24.0 - 4.0 * s1 - 2.0 * s2 + 3.0 * s3};
}

}  // namespace usp::symmetric
