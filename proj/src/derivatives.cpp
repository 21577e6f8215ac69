#include "awflow/derivatives.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "awflow/errors.hpp"
#include "awflow/flow.hpp"

namespace awflow {

namespace {

void require_open_unit(double x, const char* where) {
  if (!(x > 0.0 && x < 1.0)) {
    std::ostringstream msg;
    msg << where << ": requires x in (0, 1), got " << x;
    throw Error(ErrorCode::DomainError, msg.str());
  }
}

// (xi-1)^2 x^2 - 4(xi-1)^2 x - 12(xi+1)^2; strictly negative on (0,1) x (0,1].
double e_factor(double xi, double x) {
  const double m = (xi - 1.0) * (xi - 1.0);
  return m * x * x - 4.0 * m * x - 12.0 * (xi + 1.0) * (xi + 1.0);
}

// K(xi, x) = sum_k x^k sum_j kCoeffs[k][j] xi^j.
constexpr std::array<std::array<double, 5>, 8> kCoeffs{{
    {0, 6144, 12288, 6144, 0},
    {256, -12288, -25088, -12288, 256},
    {-5312, 6144, 10624, 6144, -5312},
    {9856, -3968, 5120, -3968, 9856},
    {-7664, 6912, -2336, 6912, -7664},
    {2960, -3552, 416, -3552, 2960},
    {-568, 656, -176, 656, -568},
    {40, -48, 16, -48, 40},
}};

}  // namespace

double d_polynomial(double x) { return x / 3.0 * d_quartic()(x); }

Polynomial d_quartic() { return Polynomial{32.0, -32.0, -16.0, 6.0, 1.0}; }

std::array<double, 5> d_roots() {
  const Polynomial quartic = d_quartic();
  const Polynomial full{0.0, 32.0 / 3.0, -32.0 / 3.0, -16.0 / 3.0, 2.0, 1.0 / 3.0};
  const Polynomial cubic = quartic.deflate(-2.0);

  std::array<double, 5> roots{0.0, -2.0, 0.0, 0.0, 0.0};
  const auto found = aberth_roots(cubic);
  for (std::size_t i = 0; i < found.size(); ++i) {
    roots[2 + i] = newton_polish(full, found[i].real());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

double f1_prime0(double x) {
  require_open_unit(x, "f1_prime0");
  return d_quartic()(x) / (3.0 * x * (4.0 - x));
}

BoundaryPoint::BoundaryPoint(double x_, XiParam xi_) : x(x_), xi(xi_) {
  require_open_unit(x_, "BoundaryPoint");
}

AWMetric BoundaryPoint::metric() const {
  return {t_a(STriple{x, 1.0, 1.0}, xi), x, 1.0, 1.0};
}

AWMetric reference_metric(double x) { return {x * (4.0 - x) / 3.0, x, 1.0, 1.0}; }

Vec3 w_vector(double x, XiParam xi_param) {
  const double quad = x * x - 5.0 * x + 4.0;
  if (quad == 0.0 || x == 1.0 || x == 4.0) {
    throw Error(ErrorCode::DomainError, "w_vector: singular at x = 1 and x = 4");
  }
  const double xi = xi_param.value();
  const double pre = 1.0 / (quad * std::sqrt(2.0 * xi_param.gamma_normalized()));
  const double c = (xi - 1.0) * x * x + (-5.0 * xi + 5.0) * x;
  return {pre * (x - 2.0) * (xi + 1.0) / 2.0, pre * (c - 2.0 * xi - 10.0) / 12.0,
          -pre * (c + 10.0 * xi + 2.0) / 12.0};
}

GradientTerms gradient_terms_closed(double x, XiParam xi_param) {
  const double xi = xi_param.value();
  const double g = xi_param.gamma_normalized();
  const double root = std::sqrt(2.0 * g);
  const double quad = x * x - 5.0 * x + 4.0;
  const double xm1 = x - 1.0, xm4 = x - 4.0;
  const double x2 = x * x, x3 = x2 * x, x4 = x3 * x;

  GradientTerms out{};
  out.w = w_vector(x, xi_param);
  out.l = (x2 * (xi - 1.0) * (xi - 1.0) - 4.0 * x * (xi - 1.0) * (xi - 1.0) -
           12.0 * (xi + 1.0) * (xi + 1.0)) /
          (24.0 * x * xm4 * g);

  const double c = (xi - 1.0) * x2 + (-5.0 * xi + 5.0) * x;
  out.p[0] = (xi + 1.0) * (xi + 1.0) * (x - 2.0) / (4.0 * g * x2 * xm1 * xm4);
  out.p[1] = -((c - 2.0 * xi - 10.0) * xi) / (24.0 * g * xm1 * xm4);
  out.p[2] = (c + 10.0 * xi + 2.0) / (24.0 * g * xm1 * xm4);

  const double pre = 1.0 / (quad * root);
  out.u[0] = {pre * (-(x2 + 2.0 * x - 4.0) * (xi + 1.0) / x2),
              pre * (x - 2.0) * (xi + 1.0) / 2.0, pre * (x - 2.0) * (xi + 1.0) / 2.0};
  out.u[1] = {
      pre * (-((xi - 1.0) * x3 + (-19.0 * xi - 5.0) * x2 + (32.0 * xi + 4.0) * x - 8.0 * xi + 8.0) /
             (12.0 * x)),
      pre * (((-11.0 * xi - 1.0) * x3 + (43.0 * xi - 7.0) * x2 + (-8.0 * xi + 32.0) * x -
              12.0 * xi - 12.0) /
             (12.0 * x)),
      pre * (((-5.0 * xi - 7.0) * x3 + (19.0 * xi + 29.0) * x2 + (-32.0 * xi - 40.0) * x +
              12.0 * xi + 12.0) /
             (12.0 * x))};
  out.u[2] = {
      pre * (((xi - 1.0) * x3 + (5.0 * xi + 19.0) * x2 + (-4.0 * xi - 32.0) * x - 8.0 * xi + 8.0) /
             (12.0 * x)),
      pre * (((-7.0 * xi - 5.0) * x3 + (29.0 * xi + 19.0) * x2 + (-40.0 * xi - 32.0) * x +
              12.0 * xi + 12.0) /
             (12.0 * x)),
      pre * (-((xi + 11.0) * x3 + (7.0 * xi - 43.0) * x2 + (-32.0 * xi + 8.0) * x + 12.0 * xi +
               12.0) /
             (12.0 * x))};

  const double xi2 = xi * xi;
  const double qden = 48.0 * x * xm4 * xm4 * xm1 * g;
  out.q[0] = -(x + 2.0) * (xi + 1.0) * (xi + 1.0) * (x - 2.0) / (2.0 * x2 * xm4 * xm4 * xm1 * g);
  out.q[1] = (-(xi - 1.0) * (xi - 1.0) * x4 + (7.0 * xi2 - 18.0 * xi + 11.0) * x3 +
              (24.0 * xi2 + 96.0 * xi - 24.0) * x2 + (-116.0 * xi2 - 152.0 * xi + 28.0) * x +
              32.0 * xi2 - 32.0) /
             qden;
  out.q[2] = (-(xi - 1.0) * (xi - 1.0) * x4 + (11.0 * xi2 - 18.0 * xi + 7.0) * x3 +
              (-24.0 * xi2 + 96.0 * xi + 24.0) * x2 + (28.0 * xi2 - 152.0 * xi - 116.0) * x -
              32.0 * xi2 + 32.0) /
             qden;
  return out;
}

GradientTerms gradient_terms_assembled(const STriple& s, XiParam xi) {
  const Vec3 v = v_vector(s, xi);
  const Lu3 lu(a_tilde(s));
  if (lu.singular() || !(lu.condition() <= 1e12)) {
    throw Error(ErrorCode::SingularMatrix, "gradient_terms_assembled: A~ is singular");
  }
  GradientTerms out{};
  out.w = lu.solve(v);
  out.l = dot(v, out.w);
  for (int i = 0; i < 3; ++i) {
    out.p[i] = dot(v_vector_derivative(s, xi, i), out.w);
    out.u[i] = a_tilde_derivative(s, i) * out.w;
    out.q[i] = dot(out.w, out.u[i]);
  }
  return out;
}

GradF grad_F(double x, XiParam xi_param) {
  require_open_unit(x, "grad_F");
  const double xi = xi_param.value();
  const double g = xi_param.gamma_normalized();
  const double e = e_factor(xi, x);
  if (e == 0.0) throw Error(ErrorCode::DomainError, "grad_F: vanishing denominator");
  const double xm1 = x - 1.0, xm4 = x - 4.0;
  const double x2 = x * x, x3 = x2 * x, x4 = x3 * x;
  const double xi2 = xi * xi;
  const double e2 = e * e;

  GradF out{};
  out.d_t = (-48.0 * xi2 - 48.0 * xi - 48.0) / (x * xm4 * e);
  out.d_s0 = 384.0 * (xi + 1.0) * (xi + 1.0) * (x - 2.0) * g / (x * xm4 * e2);
  out.d_s1 = -24.0 * g *
             ((xi2 - 2.0 / 3.0 * xi - 1.0 / 3.0) * x4 +
              (-29.0 / 3.0 * xi2 + 6.0 * xi + 11.0 / 3.0) * x3 +
              (32.0 * xi2 - 8.0 * xi - 8.0) * x2 +
              (-28.0 * xi2 + 8.0 / 3.0 * xi + 28.0 / 3.0) * x + 32.0 / 3.0 * xi2 - 32.0 / 3.0) /
             (xm4 * xm1 * e2);
  out.d_s2 = 8.0 * g *
             ((xi2 + 2.0 * xi - 3.0) * x4 + (-11.0 * xi2 - 18.0 * xi + 29.0) * x3 +
              (24.0 * xi2 + 24.0 * xi - 96.0) * x2 + (-28.0 * xi2 - 8.0 * xi + 84.0) * x +
              32.0 * xi2 - 32.0) /
             (xm4 * xm1 * e2);
  return out;
}

GradF grad_F_assembled(const AWMetric& m, XiParam xi) {
  m.validate();
  const STriple s{m.s0, m.s1, m.s2};
  const GradientTerms terms = gradient_terms_assembled(s, xi);
  const double ta = (2.0 / 9.0) / terms.l;
  const double scale = -(2.0 / 9.0) / (m.t * terms.l * terms.l);
  return {-ta / (m.t * m.t), scale * (2.0 * terms.p[0] - terms.q[0]),
          scale * (2.0 * terms.p[1] - terms.q[1]), scale * (2.0 * terms.p[2] - terms.q[2])};
}

std::array<double, 4> initial_velocity(double x, XiParam xi_param) {
  const double xi = xi_param.value();
  const double g = xi_param.gamma_normalized();
  const double x2 = x * x;
  const double dt = -(x2 * x2 - 8.0 * x2 * x + 16.0 * x2) *
                    ((xi + 1.0) * (xi + 1.0) / x2 + xi * xi + 1.0) / (3.0 * g);
  const double ds0 = -8.0 + (xi + 1.0) * (xi + 1.0) * (4.0 - x) / g - 2.0 * x2;
  const double ds1 = -12.0 + xi * xi * (-x2 + 4.0 * x) / g + 2.0 * x;
  const double ds2 = -12.0 + (-x2 + 4.0 * x) / g + 2.0 * x;
  return {dt, ds0, ds1, ds2};
}

double k_polynomial(double xi, double x) {
  double acc = 0.0;
  for (auto row = kCoeffs.rbegin(); row != kCoeffs.rend(); ++row) {
    double c = 0.0;
    for (auto it = row->rbegin(); it != row->rend(); ++it) c = c * xi + *it;
    acc = acc * x + c;
  }
  return acc;
}

double k_denominator(double xi, double x) {
  const double e = e_factor(xi, x);
  return x * (x - 4.0) * (x - 1.0) * e * e;
}

double f_xi_prime0(double xi, double x) {
  require_open_unit(x, "f_xi_prime0");
  if (xi == 1.0) return f1_prime0(x);
  const double den = k_denominator(xi, x);
  if (den == 0.0) throw Error(ErrorCode::DomainError, "f_xi_prime0: vanishing denominator");
  return k_polynomial(xi, x) / den;
}

double boundary_f_prime0(double x, XiParam xi) {
  const AWMetric p = BoundaryPoint(x, xi).metric();
  const GradF grad = grad_F_assembled(p, xi);
  const auto vel = aw_rhs(p, xi);
  const auto g = grad.as_array();
  return g[0] * vel[0] + g[1] * vel[1] + g[2] * vel[2] + g[3] * vel[3];
}

double two_param_ratio_derivative(double t, double s) {
  return (-4.0 * s * s - 5.0 * t * t + 12.0 * t * s) / (s * s * s);
}

double berger_ratio_derivative(double x1, double x2) {
  return (-9.0 * x1 * x1 - 32.0 * x2 * x2 + 40.0 * x1 * x2) / (4.0 * x2 * x2 * x2);
}

EinsteinPoints einstein_points() {
  const double c = std::pow(125.0 / 8.0, 1.0 / 7.0);
  const double d = std::pow(1.0 / 8.0, 1.0 / 7.0);
  return {{0.4 * c, c}, {2.0 * d, d}};
}

}  // namespace awflow
