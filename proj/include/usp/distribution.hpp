#pragma once

#include <string>
#include <vector>

#include "usp/symmetric.hpp"

namespace usp::distribution {

enum class Character { tau_g1, tau_g2, tau_g3, rho, tau2, chi2 };

enum class Method { hypergeometric, legendre, elliptic, meijer, slice, auto_ };

const char* character_name(Character c);
const char* method_name(Method m);

// Exact moment sequence M_0..M_upto of a trace character. Closed forms
// for tau_g2 (Mihailovs), tau_g1/rho/tau2 (Catalan products) and chi2
// (binomial shift of tau2); tau_g3 comes from 3-d Weyl quadrature
// cross-validated against the Taylor coefficients of its characteristic
// function and rounded to the exact integers.
struct MomentSequence {
  Character which = Character::tau_g2;
  std::vector<long long> values;
};

struct DensityCurve {
  Character which = Character::tau_g2;
  std::vector<double> xs;
  std::vector<double> ys;
  std::string method;
};

// Trace density on USp(4). All methods agree to 1e-8 on (-4,4); zero
// outside the support. auto_ uses the elliptic form for |x| <= 3.5 and
// the hypergeometric form beyond.
double f_tau_g2(double x, Method method = Method::auto_);

// Cumulative distribution of the USp(4) trace, by quadrature of
// f_tau_g2 over a cached grid.
double cdf_tau_g2(double x);

// Characteristic function of tau_g2, tau_g3 or rho (real; the laws are
// symmetric). Bessel closed forms away from 0, power series near 0.
double charfn(Character which, double t);

// Partial sums of 1F2(3/2; 3, 4; -4t^2), the series form of the tau_g2
// characteristic function.
double charfn_tau_g2_series(double t);

MomentSequence moments(Character which, int upto);

// Trace density of SU(2) x SU(2) embedded in USp(4).
double f_rho(double x);

// Density of the second Viete coordinate s_2 on USp(4) (the exterior
// square trace shifted by -2). Elliptic closed form away from 0, the
// one-dimensional slicing integral for |x| < 0.05 where the closed form
// loses precision.
double f_tau2(double x);

// Joint density nu_g of (s_1,...,s_g) under Haar measure; zero outside
// the symmetric alcove.
double nu_density(const symmetric::SymmetricPoint& p);

// Trace density via the Gelfand-Leray slice of nu_g over the hyperplane
// s_1 = x: a 1-d integral for g = 2, a 2-d integral for g = 3.
double f_tau_slice(int g, double x, double tol);

// Legendre-series reconstruction of the g = 3 trace density on [-6,6]
// from the moment sequence; even orders only.
double f_tau_g3_reconstruct(double x, int order = 40);

// Semicircle density of the g = 1 trace (SU(2) law).
double f_tau_g1(double x);

// Density of chi_2 = s_2 + 1, the 5-dimensional fundamental character.
double f_chi2(double x);

// Sampled density curve for CLI/plot output.
DensityCurve density_curve(Character which, Method m, double xmin,
                           double xmax, int npoints);

// Support interval of a character's law.
void support_of(Character c, double& lo, double& hi);

double trapezoid(const DensityCurve& curve);

}  // namespace usp::distribution
