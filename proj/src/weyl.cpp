#include "usp/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "usp/quadrature.hpp"
#include "usp/rng.hpp"

namespace usp::weyl {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void check_g(int g) {
  if (g < 1 || g > 3) throw std::invalid_argument("weyl: g must be 1, 2 or 3");
}

double factorial(int g) { return g == 3 ? 6.0 : (g == 2 ? 2.0 : 1.0); }

}  // namespace

ConjugacyClass make_class(int g, std::vector<double> theta) {
  check_g(g);
  if (static_cast<int>(theta.size()) != g)
    throw std::invalid_argument("make_class: size mismatch");
  for (double& th : theta) {
    if (th < 0.0 || th > kPi)
      throw std::invalid_argument("make_class: angle outside [0, pi]");
  }
  std::sort(theta.begin(), theta.end(), std::greater<double>());
  return ConjugacyClass{g, std::move(theta)};
}

CoefficientVector angles_to_t(const ConjugacyClass& c) {
  CoefficientVector v;
  v.g = c.g;
  v.t.reserve(c.g);
  for (double th : c.theta) v.t.push_back(2.0 * std::cos(th));
  std::sort(v.t.begin(), v.t.end());
  return v;
}

ConjugacyClass t_to_angles(const CoefficientVector& v) {
  ConjugacyClass c;
  c.g = v.g;
  c.theta.reserve(v.g);
  for (double t : v.t) {
    if (std::fabs(t) > 2.0) throw std::domain_error("t_to_angles: |t| > 2");
    c.theta.push_back(std::acos(0.5 * t));
  }
  std::sort(c.theta.begin(), c.theta.end(), std::greater<double>());
  return c;
}

double density_theta(const ConjugacyClass& c) {
  check_g(c.g);
  double prod = 1.0;
  for (double th : c.theta) {
    const double s = std::sin(th);
    prod *= (2.0 / kPi) * s * s;
  }
  for (int j = 0; j < c.g; ++j)
    for (int k = j + 1; k < c.g; ++k) {
      const double d = 2.0 * std::cos(c.theta[k]) - 2.0 * std::cos(c.theta[j]);
      prod *= d * d;
    }
  return prod / factorial(c.g);
}

double density_t(const CoefficientVector& v) {
  check_g(v.g);
  double d1 = 1.0;
  for (double t : v.t) {
    if (std::fabs(t) > 2.0) throw std::domain_error("density_t: |t| > 2");
    d1 *= 4.0 - t * t;
  }
  double d0 = 1.0;
  for (int j = 0; j < v.g; ++j)
    for (int k = j + 1; k < v.g; ++k) {
      const double d = v.t[k] - v.t[j];
      d0 *= d * d;
    }
  return d0 * std::sqrt(std::max(0.0, d1)) /
         (std::pow(2.0 * kPi, v.g) * factorial(v.g));
}

double envelope_sup(int g) {
  check_g(g);
  switch (g) {
    case 1: return 1.0 / kPi;
    case 2: return 2.0 / (kPi * kPi);
    default: return 9.0 / (2.0 * kPi * kPi * kPi);
  }
}

double integrate(const std::function<double(const std::vector<double>&)>& f,
                 int g, double tol) {
  check_g(g);
  if (!(tol > 0)) throw std::invalid_argument("integrate: tol must be > 0");
  const double fact = factorial(g);
  // integrand in angle coordinates: f(2 cos theta) * delta_g(theta)
  auto integrand = [&](const double* th) {
    std::vector<double> t(g);
    double dens = 1.0;
    for (int j = 0; j < g; ++j) {
      t[j] = 2.0 * std::cos(th[j]);
      const double s = std::sin(th[j]);
      dens *= (2.0 / kPi) * s * s;
    }
    for (int j = 0; j < g; ++j)
      for (int k = j + 1; k < g; ++k) {
        const double d = t[k] - t[j];
        dens *= d * d;
      }
    return f(t) * dens / fact;
  };
  const int max_order = (g == 3) ? 128 : 512;
  double prev = quad::tensor_box(integrand, g, 0.0, kPi, 16);
  double best = prev, best_err = std::fabs(prev);
  for (int n = 24; n <= max_order; n = n * 3 / 2) {
    const double cur = quad::tensor_box(integrand, g, 0.0, kPi, n);
    const double err = std::fabs(cur - prev);
    if (err < best_err) {
      best = cur;
      best_err = err;
    }
    if (err < 0.5 * tol) return cur;
    prev = cur;
  }
  throw AccuracyError("weyl::integrate: tolerance not reached", best, best_err);
}

double trace_of(const ConjugacyClass& c) {
  double s = 0.0;
  for (double th : c.theta) s += 2.0 * std::cos(th);
  return s;
}

SampleBatch sample(int g, std::size_t n, std::uint64_t seed, int threads) {
  check_g(g);
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  if (threads <= 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  const double envelope = envelope_sup(g);

  SampleBatch batch;
  batch.classes.assign(n, ConjugacyClass{});
  std::vector<std::uint64_t> proposal_counts(threads, 0);
  std::vector<std::exception_ptr> errors(threads);

  auto work = [&](int w) {
    const std::size_t lo = n * w / threads, hi = n * (w + 1) / threads;
    std::uint64_t props = 0;
    std::vector<double> t(g);
    for (std::size_t i = lo; i < hi; ++i) {
      SplitMix64 rng = SplitMix64::stream(seed, i);
      while (true) {
        ++props;
        for (int j = 0; j < g; ++j) t[j] = rng.next_double(-2.0, 2.0);
        std::sort(t.begin(), t.end());
        const double dens = density_t(CoefficientVector{g, t});
        if (dens > envelope * (1.0 + 1e-12))
          throw std::logic_error("sample: envelope exceeded; supremum wrong");
        if (rng.next_double() * envelope < dens) break;
      }
      ConjugacyClass& c = batch.classes[i];
      c.g = g;
      c.theta.resize(g);
      for (int j = 0; j < g; ++j) c.theta[j] = std::acos(0.5 * t[j]);
      std::sort(c.theta.begin(), c.theta.end(), std::greater<double>());
    }
    proposal_counts[w] = props;
  };
  auto worker = [&](int w) {
    try {
      work(w);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  for (std::uint64_t p : proposal_counts) batch.proposals += p;
  return batch;
}

}  // namespace usp::weyl
