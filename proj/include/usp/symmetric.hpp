#pragma once

#include <array>
#include <vector>

#include "usp/weyl.hpp"

namespace usp::symmetric {

// Absolute tolerance on minor/form signs for the membership tests.
// Boundary points count as members (the alcove is closed).
inline constexpr double kGeomTol = 1e-9;

// A point s = (s_1,...,s_g) in elementary-symmetric coordinates, the
// image of the Viete map.
struct SymmetricPoint {
  int g = 0;
  std::vector<double> s;
};

// Monic palindromic real polynomial of degree 2g: only a_0..a_g stored
// (a_0 = 1), the upper half is recovered by a_{2g-n} = a_n.
struct PalindromicPolynomial {
  int g = 0;
  std::vector<double> a;  // size g+1
};

struct MembershipReport {
  bool in_pi = false;     // all bezoutian minors nonnegative (real roots)
  bool in_theta = false;  // all linear forms at lambda = 2 nonnegative
  bool in_sigma = false;  // in_pi && in_theta
  std::vector<double> minors;  // m_1..m_g
  std::vector<double> forms;   // L_1^+, L_1^-, ..., L_g^+, L_g^-
};

// Elementary symmetric coordinates of t, by the stable product recurrence
// (expanding prod (u - t_j)).
SymmetricPoint viete(const std::vector<double>& t);

// Power sums p_1..p_upto of the roots of u^g - s_1 u^{g-1} + ...
// Girard's partition formula for n <= g, the Newton recurrence with
// s_n = 0 beyond.
std::vector<double> girard_power_sums(const SymmetricPoint& p, int upto);

// prod_{j<k} |t_k - t_j|, the Jacobian modulus of the Viete map.
double jacobian_factor(const std::vector<double>& t);

// Principal minors m_1..m_g of the bezoutian (Hankel matrix of power
// sums with p_0 = g); m_1 = g and m_g = d_0(s).
std::vector<double> bezoutian_minors(const SymmetricPoint& p);

// True iff all roots are real (all minors >= -kGeomTol).
bool in_pi(const SymmetricPoint& p);

// The 2g linear forms L_i^{+-}(2; s), i = 1..g, ordered +,-,+,-,...
std::vector<double> linear_forms(const SymmetricPoint& p);

// Membership in the symmetric alcove Sigma_g = Theta_g intersect Pi_g.
MembershipReport in_sigma(const SymmetricPoint& p);

// d_1(s) = L_g^+(2;s) L_g^-(2;s); equals prod (4 - t_j^2) on s = s(t).
double d1(const SymmetricPoint& p);

// Coefficients a_n of the palindromic polynomial prod (u^2 - u t_j + 1)
// as the unipotent lower-triangular map q applied to (1, s_1, ..., s_g).
PalindromicPolynomial coeffs_from_sym(const SymmetricPoint& p);

// Inverse of coeffs_from_sym: build the real Weil polynomial
// h(u) = sum (-1)^n a_n c_{g-n}(u) and read s off its coefficients.
SymmetricPoint sym_from_coeffs(const PalindromicPolynomial& poly);

// Character of the n-th exterior power of the identity representation at
// the class with coefficient vector t; palindromy tau_{2g-n} = tau_n
// covers g < n <= 2g, beyond that throws std::domain_error.
double exterior_trace(const weyl::CoefficientVector& v, int n);

// Diagnostic only: the forms L_0^{+-} of the conjectured tetrahedron
// description of Sigma_3. Never used for membership.
std::array<double, 2> delta3_forms(const SymmetricPoint& p);

}  // namespace usp::symmetric
