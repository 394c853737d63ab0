#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "usp/quadrature.hpp"
#include "usp/rng.hpp"
#include "usp/symmetric.hpp"
#include "usp/weyl.hpp"

namespace weyl = usp::weyl;
namespace quad = usp::quad;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double delta2(double t1, double t2) {
  const double s1 = std::sin(t1), s2 = std::sin(t2);
  const double d = 2 * std::cos(t2) - 2 * std::cos(t1);
  return (2 / (kPi * kPi)) * s1 * s1 * s2 * s2 * d * d;
}

}  // namespace

TEST_CASE("angles_to_t: examples and round trip") {
  const auto c = weyl::make_class(2, {kPi, 0.0});
  const auto v = weyl::angles_to_t(c);
  CHECK(v.t[0] == doctest::Approx(-2.0));
  CHECK(v.t[1] == doctest::Approx(2.0));

  const auto c2 = weyl::make_class(2, {kPi / 2, kPi / 2});
  const auto v2 = weyl::angles_to_t(c2);
  CHECK(v2.t[0] == doctest::Approx(0.0));
  CHECK(v2.t[1] == doctest::Approx(0.0));

  usp::SplitMix64 rng(7);
  for (int g = 1; g <= 3; ++g)
    for (int i = 0; i < 333; ++i) {
      std::vector<double> th(g);
      for (double& x : th) x = rng.next_double(0.0, kPi);
      const auto cls = weyl::make_class(g, th);
      const auto back = weyl::t_to_angles(weyl::angles_to_t(cls));
      for (int j = 0; j < g; ++j)
        CHECK(back.theta[j] == doctest::Approx(cls.theta[j]).epsilon(1e-12));
    }
}

TEST_CASE("density_theta: stated maximum of delta_2") {
  // theta_m = (alpha, pi - alpha) with tan(alpha/2) = sqrt(2 + sqrt 3)
  const double alpha = 2.0 * std::atan(std::sqrt(2.0 + std::sqrt(3.0)));
  const auto c = weyl::make_class(2, {kPi - alpha, alpha});
  CHECK(weyl::density_theta(c) ==
        doctest::Approx(128.0 / (27.0 * kPi * kPi)).epsilon(1e-13));
}

TEST_CASE("density_theta: vanishes on the walls, normalizes to 1") {
  const auto c = weyl::make_class(2, {1.1, 1.1});
  CHECK(weyl::density_theta(c) == 0.0);

  // normalization oracle: iterated adaptive quadrature of delta_2
  const double total = quad::adaptive(
      [](double t1) {
        return quad::adaptive([&](double t2) { return delta2(t1, t2); }, 0.0,
                              kPi, 1e-10);
      },
      0.0, kPi, 1e-9);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("density_t: stated maxima and edge zeros") {
  const weyl::CoefficientVector t2{2, {-std::sqrt(2.0), std::sqrt(2.0)}};
  CHECK(weyl::density_t(t2) ==
        doctest::Approx(2.0 / (kPi * kPi)).epsilon(1e-13));

  const weyl::CoefficientVector t3{3, {-std::sqrt(3.0), 0.0, std::sqrt(3.0)}};
  CHECK(weyl::density_t(t3) ==
        doctest::Approx(9.0 / (2.0 * kPi * kPi * kPi)).epsilon(1e-13));

  CHECK(weyl::density_t(weyl::CoefficientVector{2, {-2.0, 0.7}}) == 0.0);
  CHECK_THROWS_AS(weyl::density_t(weyl::CoefficientVector{2, {-2.1, 0.0}}),
                  std::domain_error);
}

TEST_CASE("densities are symmetric under coordinate permutation") {
  usp::SplitMix64 rng(21);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> th = {rng.next_double(0.0, kPi),
                              rng.next_double(0.0, kPi),
                              rng.next_double(0.0, kPi)};
    const auto a = weyl::make_class(3, th);
    std::swap(th[0], th[2]);
    const auto b = weyl::make_class(3, th);
    CHECK(weyl::density_theta(a) == weyl::density_theta(b));
    CHECK(weyl::density_t(weyl::angles_to_t(a)) ==
          weyl::density_t(weyl::angles_to_t(b)));
  }
}

TEST_CASE("integrate: Haar normalization, variance, character means") {
  for (int g = 1; g <= 3; ++g) {
    CHECK(weyl::integrate([](const std::vector<double>&) { return 1.0; }, g,
                          1e-10) == doctest::Approx(1.0).epsilon(1e-10));
    // trace is standardized: mean 0, variance 1
    CHECK(weyl::integrate(
              [](const std::vector<double>& t) {
                double s = 0;
                for (double x : t) s += x;
                return s * s;
              },
              g, 1e-10) == doctest::Approx(1.0).epsilon(1e-9));
  }
  // int tau_n dm = eps_n
  for (int g = 2; g <= 3; ++g)
    for (int n = 1; n <= g; ++n) {
      const double want = n % 2 == 0 ? 1.0 : 0.0;
      const double got = weyl::integrate(
          [&](const std::vector<double>& t) {
            return usp::symmetric::exterior_trace(
                weyl::CoefficientVector{g, t}, n);
          },
          g, 1e-10);
      CHECK(std::fabs(got - want) < 1e-9);
    }
}

TEST_CASE("integrate: matches singular-weight quadrature in t coordinates") {
  // random low-degree symmetric polynomials against lambda_2 with its
  // sqrt edge weight, by iterated adaptive quadrature (independent route)
  usp::SplitMix64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const double c0 = rng.next_double(-1, 1), c1 = rng.next_double(-1, 1),
                 c2 = rng.next_double(-1, 1), c3 = rng.next_double(-1, 1);
    auto f = [&](double a, double b) {
      return c0 + c1 * (a + b) + c2 * a * b + c3 * (a * a + b * b);
    };
    auto lambda2 = [](double a, double b) {
      const double d0 = (a - b) * (a - b);
      const double d1 = (4 - a * a) * (4 - b * b);
      return d0 * std::sqrt(std::max(0.0, d1)) / (8 * kPi * kPi);
    };
    const double by_t = quad::adaptive(
        [&](double a) {
          return quad::adaptive(
              [&](double b) { return f(a, b) * lambda2(a, b); }, -2.0, 2.0,
              1e-9);
        },
        -2.0, 2.0, 1e-8);
    const double by_theta = weyl::integrate(
        [&](const std::vector<double>& t) { return f(t[0], t[1]); }, 2, 1e-9);
    CHECK(by_theta == doctest::Approx(by_t).epsilon(5e-7));
  }
}

TEST_CASE("integrate: unreachable tolerance raises with best estimate") {
  // a discontinuous integrand defeats the nested smooth rules
  try {
    weyl::integrate(
        [](const std::vector<double>& t) { return t[0] > 0.83 ? 1.0 : 0.0; },
        2, 1e-14);
    FAIL("expected AccuracyError");
  } catch (const usp::AccuracyError& e) {
    CHECK(std::isfinite(e.estimate()));
    CHECK(e.error_bound() > 1e-14);
  }
}

TEST_CASE("sample: law moments, envelope, acceptance rate") {
  const std::size_t n = 200000;
  for (int g = 2; g <= 3; ++g) {
    const auto batch = weyl::sample(g, n, 42);
    REQUIRE(batch.classes.size() == n);
    long double sum = 0, sum2 = 0, sum4 = 0;
    for (const auto& c : batch.classes) {
      const double tr = weyl::trace_of(c);
      sum += tr;
      sum2 += tr * tr;
      sum4 += tr * tr * tr * tr;
    }
    const double mean = static_cast<double>(sum / n);
    const double var = static_cast<double>(sum2 / n) - mean * mean;
    CHECK(std::fabs(mean) < 0.01);
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));
    if (g == 2)
      CHECK(static_cast<double>(sum4 / n) == doctest::Approx(3.0).epsilon(0.05));

    // acceptance probability 1/(M_g 4^g) within 10%
    const double expected = 1.0 / (weyl::envelope_sup(g) * std::pow(4.0, g));
    const double observed =
        static_cast<double>(n) / static_cast<double>(batch.proposals);
    CHECK(observed == doctest::Approx(expected).epsilon(0.1));
  }
}

TEST_CASE("sample: deterministic and thread-count invariant") {
  const auto a = weyl::sample(2, 5000, 99, 1);
  const auto b = weyl::sample(2, 5000, 99, 4);
  REQUIRE(a.classes.size() == b.classes.size());
  for (std::size_t i = 0; i < a.classes.size(); ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(a.classes[i].theta[j] == b.classes[i].theta[j]);
  const auto c = weyl::sample(2, 5000, 100, 4);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.classes.size(); ++i)
    if (a.classes[i].theta[0] != c.classes[i].theta[0]) any_diff = true;
  CHECK(any_diff);
}
