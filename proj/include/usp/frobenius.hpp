#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace usp::frobenius {

// Prime field F_p, odd p < 2^20. Carries the quadratic-residue table.
class PrimeField {
 public:
  explicit PrimeField(std::int64_t p);

  std::int64_t p() const { return p_; }
  // quadratic character: 0 at 0, +1 on squares, -1 on non-squares
  int chi(std::int64_t a) const { return chi_[a]; }
  std::int64_t non_residue() const { return non_residue_; }

 private:
  std::int64_t p_ = 0;
  std::int64_t non_residue_ = 0;
  std::vector<signed char> chi_;
};

// Quadratic extension F_{p^2} = F_p(sqrt d) with d the least non-residue.
// Elements are (u, v) for u + v sqrt d; the squares table is indexed by
// u * p + v.
class QuadExtField {
 public:
  explicit QuadExtField(const PrimeField& base);

  std::int64_t p() const { return p_; }
  std::int64_t d() const { return d_; }
  // chi over F_{p^2}: 0 at 0, +1 on squares, -1 otherwise
  int chi(std::int64_t u, std::int64_t v) const {
    return chi_[static_cast<std::size_t>(u) * p_ + v];
  }

 private:
  std::int64_t p_ = 0, d_ = 0;
  std::vector<signed char> chi_;
};

// Genus-2 hyperelliptic model y^2 = f(x) over F_p, deg f in {5, 6},
// f squarefree (checked on construction via gcd(f, f')).
struct HyperellipticCurve {
  std::int64_t p = 0;
  std::vector<std::int64_t> f;  // coefficients, constant first

  int degree() const { return static_cast<int>(f.size()) - 1; }
};

HyperellipticCurve make_curve(std::int64_t p, std::vector<std::int64_t> f);
bool is_squarefree(std::int64_t p, const std::vector<std::int64_t>& f);

// Projective point count of the smooth model over F_{p^ext}, ext in {1,2}:
// affine points by the quadratic character of f(x) plus the points at
// infinity (one for deg 5; for deg 6, two iff the leading coefficient is
// a square in the counting field).
std::int64_t count_points(const HyperellipticCurve& c, int ext_degree,
                          const PrimeField& fp, const QuadExtField* fp2);

// Frobenius data of a curve: counts, the integer coefficients of
// L(C,u) = u^4 - c1 u^3 + c2 u^2 - c1 p u + p^2, and the unitarized
// values a1 = c1/sqrt(p), a2 = c2/p.
struct WeilData {
  std::int64_t p = 0;
  std::int64_t n1 = 0, n2 = 0;
  std::int64_t c1 = 0, c2 = 0;
  double a1 = 0.0, a2 = 0.0;
  double trace = 0.0;
};

// Extracts WeilData from point counts; throws std::logic_error if the
// extracted polynomial fails validate_weil (an honest count cannot).
WeilData weil_data(const HyperellipticCurve& c, const PrimeField& fp,
                   const QuadExtField& fp2);

// True iff the unitarized palindromic quartic lies in Phi_4, i.e. the
// real Weil polynomial coordinates land in Sigma_2. Exact integer
// arithmetic (conditions scaled by powers of p).
bool validate_weil(std::int64_t p, std::int64_t c1, std::int64_t c2);
bool validate_weil(const WeilData& w);

// Empirical distribution of (a1, a2, N1) over scanned curve models.
struct EmpiricalDistribution {
  std::int64_t p = 0;
  std::string mode;           // "exhaustive" | "sample"
  std::uint64_t seed = 0;
  std::vector<float> a1;      // unitarized traces, one per model
  std::vector<float> a2;
  std::vector<std::int32_t> n1;

  std::size_t size() const { return a1.size(); }
  double mean_a1() const;
  double mean_a2() const;
  double mean_n1() const;
  double moment_a1(int k) const;
};

struct ScanOptions {
  bool exhaustive = true;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  int threads = 0;            // 0 = hardware
  bool keep_curves = false;   // retain per-curve records for CSV output
};

struct CurveRecord {
  std::int32_t deg = 0;
  std::uint64_t packed_f = 0;  // coefficients packed base p, constant first
  std::int32_t n1 = 0;
  std::int64_t n2 = 0;
  std::int32_t c1 = 0;
  std::int64_t c2 = 0;
};

struct ScanResult {
  EmpiricalDistribution dist;
  std::vector<CurveRecord> curves;  // filled when keep_curves
};

// Iterates squarefree models of degree 5 and 6 (all of them, or a
// uniform sample with rejection of singular f). Exhaustive mode is
// refused above p = 7 (the model space grows like p^7).
ScanResult scan_curves(std::int64_t p, const ScanOptions& opts);

// Comparison of an empirical trace distribution against the USp(4)
// theory: sup-CDF distance, moments, and q^{-1/2}-normalized residuals.
struct ReportRecord {
  std::int64_t p = 0;
  std::uint64_t models = 0;
  double sup_cdf_distance = 0.0;
  double mean_a1 = 0.0;
  double mean_a2 = 0.0;
  double mean_n1 = 0.0;
  double mean_tau2 = 0.0;              // a2 - 2, theory -1
  std::vector<double> moments_a1;      // empirical M_1..M_6
  std::vector<double> moments_theory;  // tau_g2 M_1..M_6
  double resid_a1 = 0.0;               // |mean a1| * sqrt(p)
  double resid_a2 = 0.0;               // |mean a2 - 1| * sqrt(p)
  double resid_n1 = 0.0;               // |mean N1 - p| / sqrt(p)
};

ReportRecord compare_to_theory(const EmpiricalDistribution& e);

}  // namespace usp::frobenius
