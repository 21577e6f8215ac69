#pragma once

// Boundary of the positive sectional curvature cone for the invariant
// metrics of W_{k1,k2} and B^13, and classifiers built on it.
//
// A metric (t, s) on W_xi with s in the admissible open set has sec > 0 iff
// t < t_A(s, xi), where
//
//   t_A(s, xi) = (2/9) / <v, A~^{-1} v>,
//
// A~ is the symmetric 3x3 matrix below and v = (k^_0/s0, k^_1/s1, k^_2/s2).

#include <string_view>

#include "awflow/geometry.hpp"
#include "awflow/linalg.hpp"

namespace awflow {

struct STriple {
  double s0;
  double s1;
  double s2;

  void validate() const;
  double operator[](int i) const { return i == 0 ? s0 : (i == 1 ? s1 : s2); }
  STriple scaled(double lambda) const { return {lambda * s0, lambda * s1, lambda * s2}; }
};

/// sigma(s) = 2 s1 s2 + 2 s0 s2 + 2 s0 s1 - s0^2 - s1^2 - s2^2.
double sigma(const STriple& s);

/// Round diagonal test: max_i |s_i - mean| <= 1e-13 * mean.
bool on_round_diagonal(const STriple& s);

bool in_omega_sigma(const STriple& s);
/// Omega'_sigma minus the round diagonal; the domain where A~ is invertible.
bool in_d_sigma(const STriple& s);

/// Diagonal 4/s_j, off-diagonals b~_j in positions (0,1)=b~_2, (0,2)=b~_1,
/// (1,2)=b~_0, with
///   b~_j = -sigma/(s0 s1 s2) + (s_{j-1} - s_j + s_{j+1})/(s_{j-1} s_{j+1})
/// and indices taken mod 3.
Mat3 a_tilde(const STriple& s);

/// Partial derivative of a_tilde with respect to s_i (i in 0..2).
Mat3 a_tilde_derivative(const STriple& s, int i);

/// v(s, xi) = (-(1+xi), xi, 1) / (s_j sqrt(2(xi^2+xi+1))) componentwise.
Vec3 v_vector(const STriple& s, XiParam xi);

/// Partial derivative of v with respect to s_i.
Vec3 v_vector_derivative(const STriple& s, XiParam xi, int i);

/// Boundary of the cone via a pivoted solve of A~ w = v. Returns 0 on the round
/// diagonal. Throws Error{SingularMatrix} if the solve is ill-conditioned.
double t_a(const STriple& s, XiParam xi);

/// t_A(x, s, s) at xi = 1, i.e. x(4s - x)/(3s). Throws Error{DomainError} for
/// x >= 4s where sigma(x, s, s) <= 0.
double t_a_closed(double x, double s);

/// Closed-form inverse of A~(x, s, s):
///   1/((s-x)^2 (4s-x)) * [[s^3 x, ...], ...].
/// Throws Error{DomainError} at x = s or x >= 4s.
Mat3 a_tilde_inverse_slice(double x, double s);

enum class CurvatureClass { PositivelyCurved, HasNonpositivePlane, Unknown };

std::string_view to_string(CurvatureClass c);

struct ConeVerdict {
  CurvatureClass cls;
  /// Signed slack in the deciding inequality; 0 when Unknown.
  double margin;
};

/// Metrics (t, t, s, s) on W_{1,1}: sec > 0 iff t < s.
ConeVerdict classify_2param(double t, double s);

/// Metrics (t, x, s, s) on W_{1,1}. After rescaling to s = 1 the verdict is
/// decided by t versus t_A(x, 1, 1) for x in (0, 1); Unknown otherwise.
ConeVerdict classify_3param(double t, double x, double s);

/// Metrics (x1, x2) on B^13: sec > 0 iff x1 < 2 x2.
ConeVerdict classify_berger(const BergerMetric& m);

/// General metric (t, s0, s1, s2) on W_xi. A metric with t >= t_A(s, xi) (or
/// sigma(s) <= 0) lies outside the cone whatever s is. PositivelyCurved is
/// only reported on the slice s1 = s2 > s0, where the admissible set is known;
/// everything else is Unknown.
ConeVerdict classify_aw(const AWMetric& m, XiParam xi);

}  // namespace awflow
