#include "usp/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace usp::quad {

namespace {

void compute_gauss_legendre(int n, std::vector<double>& x,
                            std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n
    double z = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

std::mutex g_cache_mutex;
std::map<int, std::pair<std::vector<double>, std::vector<double>>> g_cache;

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto it = g_cache.find(n);
  if (it == g_cache.end()) {
    std::pair<std::vector<double>, std::vector<double>> rule;
    compute_gauss_legendre(n, rule.first, rule.second);
    it = g_cache.emplace(n, std::move(rule)).first;
  }
  nodes = it->second.first;
  weights = it->second.second;
}

double tensor_box(const std::function<double(const double*)>& f, int dim,
                  double lo, double hi, int n) {
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  std::vector<double> pt(dim), xs(n), ws(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = mid + half * x[i];
    ws[i] = half * w[i];
  }
  std::vector<int> idx(dim, 0);
  double sum = 0.0;
  while (true) {
    double weight = 1.0;
    for (int d = 0; d < dim; ++d) {
      pt[d] = xs[idx[d]];
      weight *= ws[idx[d]];
    }
    sum += weight * f(pt.data());
    int d = 0;
    while (d < dim && ++idx[d] == n) {
      idx[d] = 0;
      ++d;
    }
    if (d == dim) break;
  }
  return sum;
}

}  // namespace usp::quad
