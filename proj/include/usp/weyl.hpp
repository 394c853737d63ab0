#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace usp::weyl {

// A conjugacy class of USp(2g), represented by its Frobenius angles in
// canonical order pi >= theta_1 >= ... >= theta_g >= 0.
struct ConjugacyClass {
  int g = 0;
  std::vector<double> theta;
};

// The same class in coefficient coordinates t_j = 2 cos theta_j, sorted
// ascending; each t_j lies in [-2, 2].
struct CoefficientVector {
  int g = 0;
  std::vector<double> t;
};

ConjugacyClass make_class(int g, std::vector<double> theta);

CoefficientVector angles_to_t(const ConjugacyClass& c);
ConjugacyClass t_to_angles(const CoefficientVector& v);

// Joint density delta_g(theta) of the Weyl measure on [0,pi]^g.
double density_theta(const ConjugacyClass& c);

// Joint density lambda_g(t) of the Weyl measure on [-2,2]^g. Throws
// std::domain_error if any |t_j| > 2.
double density_t(const CoefficientVector& v);

// Exact suprema of lambda_g over the alcove, used as rejection envelopes:
// 1/pi, 2/pi^2, 9/(2 pi^3) for g = 1, 2, 3.
double envelope_sup(int g);

// Integral of a symmetric continuous f against the Weyl measure,
//   int_{I_g} f(t) lambda_g(t) dt,
// evaluated in angle coordinates (the substitution t = 2 cos theta turns
// the square-root edge weight into the smooth delta_g form) with nested
// tensor Gauss rules, doubling the order until two refinements agree
// within tol. Throws AccuracyError with the best estimate on failure.
double integrate(const std::function<double(const std::vector<double>&)>& f,
                 int g, double tol);

struct SampleBatch {
  std::vector<ConjugacyClass> classes;
  std::uint64_t proposals = 0;  // total proposals across all draws
};

// n i.i.d. draws from the Weyl measure by rejection from the uniform law
// on I_g with the exact envelope sup. Every draw has its own counter
// stream derived from (seed, index), so output is identical for any
// thread count. Throws std::logic_error if a proposal ever exceeds the
// envelope (that would falsify the stated supremum).
SampleBatch sample(int g, std::size_t n, std::uint64_t seed, int threads = 0);

double trace_of(const ConjugacyClass& c);

}  // namespace usp::weyl
