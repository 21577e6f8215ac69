#pragma once

// Closed-form derivative machinery at the boundary of the cone: the sign
// polynomial D on W_{1,1}, the gradient of F_xi = t_A/t on the slice
// (t, x, 1, 1), the flow velocity there, and their pairing f'_xi(0).
//
// Two evaluation points appear. The cone boundary point on W_xi is
//   p(x, xi) = (t_A(x, 1, 1, xi), x, 1, 1),
// while the transcribed closed forms for the gradient, the velocity and K are
// those of the reference point
//   g0(x) = (x(4 - x)/3, x, 1, 1),
// which is the boundary point only at xi = 1. The assembled (linear-algebra)
// routes below work at any point and are what ties the two together.

#include <array>

#include "awflow/cone.hpp"
#include "awflow/geometry.hpp"
#include "awflow/linalg.hpp"
#include "awflow/polynomial.hpp"

namespace awflow {

/// D(x) = (x/3)(32 - 32x - 16x^2 + 6x^3 + x^4): the sign of d/dl (t_A/t) at
/// the boundary point of the 3-parameter family.
double d_polynomial(double x);

/// x^4 + 6x^3 - 16x^2 - 32x + 32, so that D = (x/3) * quartic.
Polynomial d_quartic();

/// The five real roots of D in ascending order: the exact roots 0 and -2 are
/// deflated first, the remaining cubic is solved by Aberth iteration, and
/// every root is Newton-polished on the full polynomial.
std::array<double, 5> d_roots();

/// f_1'(0) = D / (3 t x s^3) at (t, x, s) = (x(4-x)/3, x, 1), i.e.
/// quartic(x) / (3x(4 - x)). Throws Error{DomainError} outside (0, 1).
double f1_prime0(double x);

/// (t_A(x, 1, 1, xi), x, 1, 1): a metric on the boundary of the cone of W_xi.
struct BoundaryPoint {
  double x;
  XiParam xi;

  BoundaryPoint(double x, XiParam xi);
  AWMetric metric() const;
};

/// (x(4 - x)/3, x, 1, 1).
AWMetric reference_metric(double x);

struct GradF {
  double d_t;
  double d_s0;
  double d_s1;
  double d_s2;

  std::array<double, 4> as_array() const { return {d_t, d_s0, d_s1, d_s2}; }
};

/// Intermediates of the gradient of t_A:
///   W = A~^{-1} v,  L = <v, W>,  P_i = <dv/ds_i, W>,  U_i = dA~/ds_i W,
///   Q_i = <W, U_i>.
struct GradientTerms {
  Vec3 w;
  double l;
  std::array<double, 3> p;
  std::array<double, 3> q;
  std::array<Vec3, 3> u;
};

/// W at s = (x, 1, 1) in closed form. Throws Error{DomainError} at x = 1, 4.
Vec3 w_vector(double x, XiParam xi);

/// Closed forms of L, W, P_i, Q_i, U_i at s = (x, 1, 1).
GradientTerms gradient_terms_closed(double x, XiParam xi);

/// The same quantities at an arbitrary s in D_sigma, by linear solves.
GradientTerms gradient_terms_assembled(const STriple& s, XiParam xi);

/// Gradient of F_xi at g0(x), transcribed closed forms.
/// Throws Error{DomainError} for x outside (0, 1) or a vanishing denominator.
GradF grad_F(double x, XiParam xi);

/// Gradient of F_xi = t_A(s, xi)/t at an arbitrary metric, assembled from
///   dF/dt = -t_A/t^2,  dF/ds_i = -(2/9)(2 P_i - Q_i)/(t L^2).
GradF grad_F_assembled(const AWMetric& m, XiParam xi);

/// Ricci flow velocity g'(0) at g0(x), transcribed closed forms.
std::array<double, 4> initial_velocity(double x, XiParam xi);

/// K(xi, x), stored as an integer coefficient table in x and xi.
double k_polynomial(double xi, double x);

/// Denominator x(x-4)(x-1)((xi-1)^2 x^2 - 4(xi-1)^2 x - 12(xi+1)^2)^2.
double k_denominator(double xi, double x);

/// f'_xi(0) = K / denominator = <grad_F, initial_velocity> at g0(x). At
/// xi = 1 the common factor 768(x - 1) is cancelled and f1_prime0 is used.
/// Throws Error{DomainError} outside x in (0, 1).
double f_xi_prime0(double xi, double x);

/// d/dl F_xi along the flow of W_xi started at the true boundary point
/// p(x, xi), by the assembled gradient and the flow right-hand side.
double boundary_f_prime0(double x, XiParam xi);

/// d/dl (t/s) for the 2-parameter family: (-4s^2 - 5t^2 + 12ts)/s^3.
double two_param_ratio_derivative(double t, double s);

/// d/dl (x1/(2 x2)) on B^13: (-9x1^2 - 32x2^2 + 40 x1 x2)/(4 x2^3).
double berger_ratio_derivative(double x1, double x2);

struct EinsteinPoints {
  std::array<double, 2> plus;   // (x, s), sec > 0
  std::array<double, 2> minus;  // (x, s), has negatively curved planes
};

/// The two Einstein metrics of W_{1,1} in the volume-normalized (x, s) plane:
///   E+ = ((2/5) c, c) with c = (125/8)^{1/7},  E- = (2 d, d) with d = (1/8)^{1/7}.
EinsteinPoints einstein_points();

}  // namespace awflow
