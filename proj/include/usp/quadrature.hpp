#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace usp {

// Thrown when an adaptive rule runs out of budget before reaching the
// requested tolerance. Carries the best estimate obtained so far.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}
  double estimate() const { return estimate_; }
  double error_bound() const { return error_; }

 private:
  double estimate_;
  double error_;
};

namespace quad {

// Gauss-Kronrod 10-21 pair. Kronrod abscissae/weights, Gauss weights on
// the even-indexed nodes.
inline constexpr double kGK21Nodes[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr double kGK21WeightsK[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

inline constexpr double kGK21WeightsG[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

template <typename F>
Estimate gk21(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double k = kGK21WeightsK[10] * fc;
  double g = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double dx = half * kGK21Nodes[i];
    const double fsum = f(mid - dx) + f(mid + dx);
    k += kGK21WeightsK[i] * fsum;
    if (i % 2 == 1) g += kGK21WeightsG[i / 2] * fsum;
  }
  Estimate e;
  e.value = k * half;
  const double diff = std::fabs(k - g) * std::fabs(half);
  e.error = diff * std::sqrt(diff) * 200.0;
  if (e.error > diff) e.error = diff;  // never claim worse than the raw gap
  e.error = std::max(e.error, std::fabs(e.value) * 1e-15);
  return e;
}

// Adaptive 1-d integration by interval bisection on the worst subinterval.
template <typename F>
double adaptive(const F& f, double a, double b, double tol,
                std::size_t max_intervals = 4000) {
  if (a == b) return 0.0;
  struct Cell {
    double a, b, value, error;
  };
  std::vector<Cell> cells;
  Estimate e0 = gk21(f, a, b);
  cells.push_back({a, b, e0.value, e0.error});
  double total_err = e0.error;
  while (total_err > tol && cells.size() < max_intervals) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < cells.size(); ++i)
      if (cells[i].error > cells[worst].error) worst = i;
    Cell c = cells[worst];
    const double mid = 0.5 * (c.a + c.b);
    if (mid <= c.a || mid >= c.b) break;  // interval exhausted in doubles
    Estimate left = gk21(f, c.a, mid);
    Estimate right = gk21(f, mid, c.b);
    total_err += left.error + right.error - c.error;
    cells[worst] = {c.a, mid, left.value, left.error};
    cells.push_back({mid, c.b, right.value, right.error});
  }
  double sum = 0.0, err = 0.0;
  for (const Cell& c : cells) {
    sum += c.value;
    err += c.error;
  }
  if (err > tol * 8 && err > 1e-13 * std::fabs(sum))
    throw AccuracyError("adaptive quadrature budget exhausted", sum, err);
  return sum;
}

// Nodes/weights of the n-point Gauss-Legendre rule on [-1,1], by Newton
// iteration on the Legendre recurrence. Cached per n.
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

// Integrate a smooth function of (x1..xd) over the box [lo,hi]^d with a
// tensor product Gauss-Legendre rule of n points per axis.
double tensor_box(const std::function<double(const double*)>& f, int dim,
                  double lo, double hi, int n);

}  // namespace quad
}  // namespace usp
