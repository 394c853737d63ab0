#include "usp/frobenius.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "usp/distribution.hpp"
#include "usp/rng.hpp"

namespace usp::frobenius {

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t m) {
  std::int64_t r = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = static_cast<__int128>(r) * base % m;
    base = static_cast<__int128>(base) * base % m;
    exp >>= 1;
  }
  return r;
}

}  // namespace

PrimeField::PrimeField(std::int64_t p) : p_(p) {
  if (p < 3 || p >= (1 << 20) || !is_prime(p))
    throw std::invalid_argument("PrimeField: p must be an odd prime < 2^20");
  chi_.assign(p, -1);
  chi_[0] = 0;
  for (std::int64_t x = 1; x < p; ++x) chi_[x * x % p] = 1;
  for (std::int64_t d = 2; d < p; ++d)
    if (chi_[d] == -1) {
      non_residue_ = d;
      break;
    }
}

QuadExtField::QuadExtField(const PrimeField& base)
    : p_(base.p()), d_(base.non_residue()) {
  if (mod_pow(d_, (p_ - 1) / 2, p_) != p_ - 1)
    throw std::logic_error("QuadExtField: d is not a non-residue");
  chi_.assign(static_cast<std::size_t>(p_) * p_, -1);
  chi_[0] = 0;
  for (std::int64_t u = 0; u < p_; ++u)
    for (std::int64_t v = 0; v < p_; ++v) {
      // (u + v sqrt d)^2 = u^2 + v^2 d + 2uv sqrt d
      const std::int64_t ru = (u * u + v * v % p_ * d_) % p_;
      const std::int64_t rv = 2 * u * v % p_;
      chi_[static_cast<std::size_t>(ru) * p_ + rv] = 1;
    }
  chi_[0] = 0;
}

bool is_squarefree(std::int64_t p, const std::vector<std::int64_t>& f) {
  // gcd(f, f') over F_p must be constant
  auto trim = [](std::vector<std::int64_t>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  };
  std::vector<std::int64_t> a = f;
  for (auto& c : a) c = ((c % p) + p) % p;
  std::vector<std::int64_t> b(a.size() > 1 ? a.size() - 1 : 0);
  for (std::size_t i = 1; i < a.size(); ++i)
    b[i - 1] = static_cast<std::int64_t>(i) % p * a[i] % p;
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b
    const std::int64_t lead_inv = mod_pow(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
      const std::int64_t q = a.back() * lead_inv % p;
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i)
        a[shift + i] = ((a[shift + i] - q * b[i]) % p + p) % p;
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.size() <= 1;
}

HyperellipticCurve make_curve(std::int64_t p, std::vector<std::int64_t> f) {
  const int deg = static_cast<int>(f.size()) - 1;
  if (deg != 5 && deg != 6)
    throw std::invalid_argument("make_curve: deg f must be 5 or 6");
  for (auto& c : f) c = ((c % p) + p) % p;
  if (f.back() == 0) throw std::invalid_argument("make_curve: leading coeff 0");
  if (!is_squarefree(p, f))
    throw std::invalid_argument("make_curve: f not squarefree (singular model)");
  return HyperellipticCurve{p, std::move(f)};
}

namespace {

std::int64_t eval_mod(const std::vector<std::int64_t>& f, std::int64_t x,
                      std::int64_t p) {
  std::int64_t r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = (r * x + f[i]) % p;
  return r;
}

std::int64_t affine_count_fp(const std::vector<std::int64_t>& f,
                             const PrimeField& fp) {
  const std::int64_t p = fp.p();
  std::int64_t n = 0;
  for (std::int64_t x = 0; x < p; ++x) n += 1 + fp.chi(eval_mod(f, x, p));
  return n;
}

std::int64_t affine_count_fp2(const std::vector<std::int64_t>& f,
                              const QuadExtField& fp2) {
  const std::int64_t p = fp2.p(), d = fp2.d();
  std::int64_t n = 0;
  // v = 0 row: every nonzero element of F_p is a square in F_{p^2}
  for (std::int64_t u = 0; u < p; ++u)
    n += eval_mod(f, u, p) == 0 ? 1 : 2;
  // conjugate rows pair up: f(u - v sqrt d) is the conjugate of
  // f(u + v sqrt d), and chi is conjugation-invariant
  for (std::int64_t v = 1; v <= (p - 1) / 2; ++v) {
    for (std::int64_t u = 0; u < p; ++u) {
      // Horner in F_{p^2}
      std::int64_t ru = 0, rv = 0;
      for (std::size_t i = f.size(); i-- > 0;) {
        const std::int64_t nu = (ru * u + rv * v % p * d + f[i]) % p;
        const std::int64_t nv = (ru * v + rv * u) % p;
        ru = nu;
        rv = nv;
      }
      n += 2 * (1 + fp2.chi(ru, rv));
    }
  }
  return n;
}

}  // namespace

std::int64_t count_points(const HyperellipticCurve& c, int ext_degree,
                          const PrimeField& fp, const QuadExtField* fp2) {
  if (fp.p() != c.p) throw std::invalid_argument("count_points: field mismatch");
  if (!is_squarefree(c.p, c.f))
    throw std::invalid_argument("count_points: singular model");
  if (ext_degree == 1) {
    std::int64_t inf = 1;
    if (c.degree() == 6) inf = fp.chi(c.f.back()) == 1 ? 2 : 0;
    return affine_count_fp(c.f, fp) + inf;
  }
  if (ext_degree == 2) {
    if (fp2 == nullptr || fp2->p() != c.p)
      throw std::invalid_argument("count_points: missing F_{p^2} tables");
    // deg 6: the leading coefficient lies in F_p*, always a square in F_{p^2}
    const std::int64_t inf = c.degree() == 6 ? 2 : 1;
    return affine_count_fp2(c.f, *fp2) + inf;
  }
  throw std::invalid_argument("count_points: ext_degree must be 1 or 2");
}

bool validate_weil(std::int64_t p, std::int64_t c1, std::int64_t c2) {
  // Sigma_2 membership of (s1, s2) = (c1/sqrt p, c2/p - 2), cleared of
  // the square root by squaring:
  //   L1:  c1^2 <= 16 p
  //   Pi:  c1^2 - 4 c2 + 8 p >= 0
  //   L2:  c2 + 2p >= 0  and  (c2 + 2p)^2 >= 4 p c1^2
  const __int128 c1s = static_cast<__int128>(c1) * c1;
  if (c1s > static_cast<__int128>(16) * p) return false;
  if (c1s - static_cast<__int128>(4) * c2 + static_cast<__int128>(8) * p < 0)
    return false;
  const __int128 l2 = static_cast<__int128>(c2) + 2 * p;
  if (l2 < 0) return false;
  if (l2 * l2 < static_cast<__int128>(4) * p * c1s) return false;
  return true;
}

bool validate_weil(const WeilData& w) { return validate_weil(w.p, w.c1, w.c2); }

WeilData weil_data(const HyperellipticCurve& c, const PrimeField& fp,
                   const QuadExtField& fp2) {
  WeilData w;
  w.p = c.p;
  w.n1 = count_points(c, 1, fp, &fp2);
  w.n2 = count_points(c, 2, fp, &fp2);
  w.c1 = c.p + 1 - w.n1;
  // power sums of the Frobenius roots: P1 = c1, P2 = c1^2 - 2 c2
  const std::int64_t s2 = c.p * c.p + 1 - w.n2;
  const std::int64_t num = w.c1 * w.c1 - s2;
  if (num % 2 != 0)
    throw std::logic_error("weil_data: counting bug (odd c1^2 - P2)");
  w.c2 = num / 2;
  const double rp = std::sqrt(static_cast<double>(c.p));
  w.a1 = w.c1 / rp;
  w.a2 = static_cast<double>(w.c2) / c.p;
  w.trace = w.a1;
  if (!validate_weil(w))
    throw std::logic_error("weil_data: counting bug (Weil validation failed)");
  return w;
}

// ---------------------------------------------------------------------------
// scanning
// ---------------------------------------------------------------------------

namespace {

// model index space: deg-5 models first (lead 1..p-1, low coeffs p^5),
// then deg-6 models
struct ModelSpace {
  std::int64_t p;
  std::uint64_t count5, count6;

  explicit ModelSpace(std::int64_t prime) : p(prime) {
    std::uint64_t p5 = 1;
    for (int i = 0; i < 5; ++i) p5 *= p;
    count5 = p5 * (p - 1);
    count6 = p5 * p * (p - 1);
  }
  std::uint64_t total() const { return count5 + count6; }

  std::vector<std::int64_t> coeffs(std::uint64_t index) const {
    int deg;
    if (index < count5) {
      deg = 5;
    } else {
      deg = 6;
      index -= count5;
    }
    std::vector<std::int64_t> f(deg + 1);
    for (int i = 0; i < deg; ++i) {
      f[i] = static_cast<std::int64_t>(index % p);
      index /= p;
    }
    f[deg] = static_cast<std::int64_t>(index) + 1;  // leading coeff in [1, p)
    return f;
  }
};

std::uint64_t pack_coeffs(const std::vector<std::int64_t>& f, std::int64_t p) {
  std::uint64_t packed = 0;
  for (std::size_t i = f.size(); i-- > 0;) packed = packed * p + f[i];
  return packed;
}

}  // namespace

double EmpiricalDistribution::mean_a1() const {
  long double s = 0.0L;
  for (float v : a1) s += v;
  return static_cast<double>(s / a1.size());
}

double EmpiricalDistribution::mean_a2() const {
  long double s = 0.0L;
  for (float v : a2) s += v;
  return static_cast<double>(s / a2.size());
}

double EmpiricalDistribution::mean_n1() const {
  long double s = 0.0L;
  for (std::int32_t v : n1) s += v;
  return static_cast<double>(s / n1.size());
}

double EmpiricalDistribution::moment_a1(int k) const {
  long double s = 0.0L;
  for (float v : a1) s += std::pow(static_cast<long double>(v), k);
  return static_cast<double>(s / a1.size());
}

ScanResult scan_curves(std::int64_t p, const ScanOptions& opts) {
  const PrimeField fp(p);
  const QuadExtField fp2(fp);
  const ModelSpace space(p);

  if (opts.exhaustive && p > 7)
    throw std::invalid_argument(
        "scan_curves: exhaustive scan refused for p > 7 (about " +
        std::to_string(space.total()) + " models); use sample mode");
  if (!opts.exhaustive && opts.n_samples == 0)
    throw std::invalid_argument("scan_curves: sample mode needs n_samples");

  int threads = opts.threads;
  if (threads <= 0)
    threads = std::max(1u, std::thread::hardware_concurrency());

  struct Chunk {
    std::vector<float> a1, a2;
    std::vector<std::int32_t> n1;
    std::vector<CurveRecord> curves;
  };
  std::vector<Chunk> chunks(threads);
  std::vector<std::exception_ptr> errors(threads);

  auto process_curve = [&](const std::vector<std::int64_t>& f, Chunk& out) {
    const HyperellipticCurve curve{p, f};
    const WeilData w = weil_data(curve, fp, fp2);
    out.a1.push_back(static_cast<float>(w.a1));
    out.a2.push_back(static_cast<float>(w.a2));
    out.n1.push_back(static_cast<std::int32_t>(w.n1));
    if (opts.keep_curves)
      out.curves.push_back({static_cast<std::int32_t>(curve.degree()),
                            pack_coeffs(f, p), static_cast<std::int32_t>(w.n1),
                            w.n2, static_cast<std::int32_t>(w.c1), w.c2});
  };

  auto worker = [&](int t) {
    try {
      Chunk& out = chunks[t];
      if (opts.exhaustive) {
        const std::uint64_t total = space.total();
        const std::uint64_t lo = total * t / threads;
        const std::uint64_t hi = total * (t + 1) / threads;
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
          const std::vector<std::int64_t> f = space.coeffs(idx);
          if (!is_squarefree(p, f)) continue;
          process_curve(f, out);
        }
      } else {
        const std::uint64_t lo = opts.n_samples * t / threads;
        const std::uint64_t hi = opts.n_samples * (t + 1) / threads;
        for (std::uint64_t i = lo; i < hi; ++i) {
          SplitMix64 rng = SplitMix64::stream(opts.seed, i);
          while (true) {
            const std::uint64_t idx = rng.next_below(space.total());
            const std::vector<std::int64_t> f = space.coeffs(idx);
            if (!is_squarefree(p, f)) continue;  // reject singular models
            process_curve(f, out);
            break;
          }
        }
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  ScanResult result;
  result.dist.p = p;
  result.dist.mode = opts.exhaustive ? "exhaustive" : "sample";
  result.dist.seed = opts.seed;
  for (Chunk& c : chunks) {
    result.dist.a1.insert(result.dist.a1.end(), c.a1.begin(), c.a1.end());
    result.dist.a2.insert(result.dist.a2.end(), c.a2.begin(), c.a2.end());
    result.dist.n1.insert(result.dist.n1.end(), c.n1.begin(), c.n1.end());
    result.curves.insert(result.curves.end(), c.curves.begin(),
                         c.curves.end());
  }
  return result;
}

ReportRecord compare_to_theory(const EmpiricalDistribution& e) {
  if (e.size() == 0)
    throw std::invalid_argument("compare_to_theory: empty distribution");
  ReportRecord r;
  r.p = e.p;
  r.models = e.size();
  r.mean_a1 = e.mean_a1();
  r.mean_a2 = e.mean_a2();
  r.mean_n1 = e.mean_n1();
  r.mean_tau2 = r.mean_a2 - 2.0;

  const distribution::MomentSequence theory =
      distribution::moments(distribution::Character::tau_g2, 6);
  for (int k = 1; k <= 6; ++k) {
    r.moments_a1.push_back(e.moment_a1(k));
    r.moments_theory.push_back(static_cast<double>(theory.values[k]));
  }

  // traces take few distinct values (c1 integral), so the sup distance
  // needs one CDF evaluation per distinct value only
  std::vector<float> sorted(e.a1);
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double sup = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double cdf = distribution::cdf_tau_g2(sorted[i]);
    sup = std::max(sup, std::fabs(cdf - i / n));
    sup = std::max(sup, std::fabs(cdf - j / n));
    i = j;
  }
  r.sup_cdf_distance = sup;

  const double rp = std::sqrt(static_cast<double>(e.p));
  r.resid_a1 = std::fabs(r.mean_a1) * rp;
  r.resid_a2 = std::fabs(r.mean_a2 - 1.0) * rp;
  r.resid_n1 = std::fabs(r.mean_n1 - e.p) / rp;
  return r;
}

}  // namespace usp::frobenius
