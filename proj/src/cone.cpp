#include "awflow/cone.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "awflow/errors.hpp"

namespace awflow {

namespace {

// Tolerance used to decide s1 == s2 when classifying general metrics.
constexpr double kSliceTol = 1e-12;

}  // namespace

void STriple::validate() const {
  if (!(std::isfinite(s0) && std::isfinite(s1) && std::isfinite(s2) && s0 > 0.0 &&
        s1 > 0.0 && s2 > 0.0)) {
    std::ostringstream msg;
    msg << "s-triple entries must be positive, got (" << s0 << ", " << s1 << ", "
        << s2 << ")";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

double sigma(const STriple& s) {
  return 2.0 * s.s1 * s.s2 + 2.0 * s.s0 * s.s2 + 2.0 * s.s0 * s.s1 - s.s0 * s.s0 -
         s.s1 * s.s1 - s.s2 * s.s2;
}

bool on_round_diagonal(const STriple& s) {
  const double mean = (s.s0 + s.s1 + s.s2) / 3.0;
  const double spread = std::max(
      {std::abs(s.s0 - mean), std::abs(s.s1 - mean), std::abs(s.s2 - mean)});
  return spread <= 1e-13 * mean;
}

bool in_omega_sigma(const STriple& s) { return sigma(s) > 0.0; }

bool in_d_sigma(const STriple& s) { return in_omega_sigma(s) && !on_round_diagonal(s); }

namespace {

template <class T>
using Mat3T = std::array<std::array<T, 3>, 3>;

template <class T>
Mat3T<T> a_tilde_as(const STriple& s) {
  const std::array<T, 3> x{s.s0, s.s1, s.s2};
  const T sig = 2 * x[1] * x[2] + 2 * x[0] * x[2] + 2 * x[0] * x[1] - x[0] * x[0] -
                x[1] * x[1] - x[2] * x[2];
  const T common = -sig / (x[0] * x[1] * x[2]);
  auto b = [&](int j) {
    const T prev = x[(j + 2) % 3];
    const T next = x[(j + 1) % 3];
    return common + (prev - x[j] + next) / (prev * next);
  };
  const T b0 = b(0), b1 = b(1), b2 = b(2);
  return {{{4 / x[0], b2, b1}, {b2, 4 / x[1], b0}, {b1, b0, 4 / x[2]}}};
}

// <v, A^{-1} v> by partially pivoted elimination in type T.
template <class T>
T quadratic_form_inverse(Mat3T<T> a, std::array<T, 3> rhs) {
  const std::array<T, 3> v = rhs;
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    }
    std::swap(a[col], a[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (int r = col + 1; r < 3; ++r) {
      const T f = a[r][col] / a[col][col];
      for (int c = col; c < 3; ++c) a[r][c] -= f * a[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::array<T, 3> w{};
  for (int r = 2; r >= 0; --r) {
    T acc = rhs[r];
    for (int c = r + 1; c < 3; ++c) acc -= a[r][c] * w[c];
    w[r] = acc / a[r][r];
  }
  return v[0] * w[0] + v[1] * w[1] + v[2] * w[2];
}

}  // namespace

Mat3 a_tilde(const STriple& s) {
  s.validate();
  const auto a = a_tilde_as<double>(s);
  return {Vec3{a[0][0], a[0][1], a[0][2]}, Vec3{a[1][0], a[1][1], a[1][2]},
          Vec3{a[2][0], a[2][1], a[2][2]}};
}

Mat3 a_tilde_derivative(const STriple& s, int i) {
  s.validate();
  if (i < 0 || i > 2) throw Error(ErrorCode::InvalidArgument, "a_tilde_derivative: index");
  const double prod = s.s0 * s.s1 * s.s2;
  const double total = s.s0 + s.s1 + s.s2;
  const double si = s[i];
  // d/ds_i of -sigma/prod
  const double dsigma = 2.0 * (total - 2.0 * si);
  const double dcommon = -(dsigma / prod - sigma(s) / (prod * si));

  auto db = [&](int j) {
    const double prev = s[(j + 2) % 3];
    const double next = s[(j + 1) % 3];
    const double sj = s[j];
    double dfrac = 0.0;
    if (i == j) {
      dfrac = -1.0 / (prev * next);
    } else if (i == (j + 2) % 3) {
      dfrac = -1.0 / (prev * prev) + sj / (prev * prev * next);
    } else {
      dfrac = -1.0 / (next * next) + sj / (prev * next * next);
    }
    return dcommon + dfrac;
  };

  Mat3 d{};
  d[i][i] = -4.0 / (si * si);
  const double b0 = db(0), b1 = db(1), b2 = db(2);
  d[0][1] = d[1][0] = b2;
  d[0][2] = d[2][0] = b1;
  d[1][2] = d[2][1] = b0;
  return d;
}

Vec3 v_vector(const STriple& s, XiParam xi_param) {
  s.validate();
  const double xi = xi_param.value();
  const double norm = std::sqrt(2.0 * xi_param.gamma_normalized());
  return {-(1.0 + xi) / (s.s0 * norm), xi / (s.s1 * norm), 1.0 / (s.s2 * norm)};
}

Vec3 v_vector_derivative(const STriple& s, XiParam xi, int i) {
  if (i < 0 || i > 2) throw Error(ErrorCode::InvalidArgument, "v_vector_derivative: index");
  const Vec3 v = v_vector(s, xi);
  Vec3 d{};
  d[i] = -v[i] / s[i];
  return d;
}

double t_a(const STriple& s, XiParam xi) {
  s.validate();
  if (on_round_diagonal(s)) return 0.0;
  const Lu3 lu(a_tilde(s));
  if (lu.singular() || !(lu.condition() <= 1e12)) {
    throw Error(ErrorCode::SingularMatrix, "t_a: A~ is numerically singular");
  }
  // Near the round diagonal A~ has condition ~1/|s - round|^2, so the entries
  // and the elimination are carried in extended precision.
  const Vec3 v = v_vector(s, xi);
  const long double l = quadratic_form_inverse<long double>(
      a_tilde_as<long double>(s), {v[0], v[1], v[2]});
  return static_cast<double>((2.0L / 9.0L) / l);
}

double t_a_closed(double x, double s) {
  if (!(x > 0.0 && s > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "t_a_closed: x and s must be positive");
  }
  if (x >= 4.0 * s) {
    std::ostringstream msg;
    msg << "t_a_closed: requires x < 4s (sigma > 0), got x=" << x << ", s=" << s;
    throw Error(ErrorCode::DomainError, msg.str());
  }
  return x * (4.0 * s - x) / (3.0 * s);
}

Mat3 a_tilde_inverse_slice(double x, double s) {
  if (!(x > 0.0 && s > 0.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "a_tilde_inverse_slice: x and s must be positive");
  }
  if (x >= 4.0 * s || std::abs(s - x) <= 1e-13 * s) {
    std::ostringstream msg;
    msg << "a_tilde_inverse_slice: prefactor singular at x=" << x << ", s=" << s;
    throw Error(ErrorCode::DomainError, msg.str());
  }
  const double pre = 1.0 / ((s - x) * (s - x) * (4.0 * s - x));
  const double corner = s * s * s * x;
  const double edge = s * s * x * (3.0 * s - x) / 2.0;
  const double diag = s * (16.0 * s * s * s - 9.0 * s * s * x + 6.0 * s * x * x - x * x * x) / 12.0;
  const double off = s * (8.0 * s * s * s + 9.0 * s * s * x - 6.0 * s * x * x + x * x * x) / 12.0;
  return {Vec3{pre * corner, pre * edge, pre * edge}, Vec3{pre * edge, pre * diag, pre * off},
          Vec3{pre * edge, pre * off, pre * diag}};
}

std::string_view to_string(CurvatureClass c) {
  switch (c) {
    case CurvatureClass::PositivelyCurved: return "PositivelyCurved";
    case CurvatureClass::HasNonpositivePlane: return "HasNonpositivePlane";
    case CurvatureClass::Unknown: return "Unknown";
  }
  return "Unknown";
}

ConeVerdict classify_2param(double t, double s) {
  if (!(t > 0.0 && s > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "classify_2param: t and s must be positive");
  }
  const double margin = s - t;
  if (t < s) return {CurvatureClass::PositivelyCurved, margin};
  return {CurvatureClass::HasNonpositivePlane, margin};
}

ConeVerdict classify_3param(double t, double x, double s) {
  if (!(t > 0.0 && x > 0.0 && s > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "classify_3param: entries must be positive");
  }
  const double tr = t / s;
  const double xr = x / s;
  if (!(xr < 1.0)) return {CurvatureClass::Unknown, 0.0};
  const double boundary = t_a_closed(xr, 1.0);
  const double margin = boundary - tr;
  if (tr < boundary) return {CurvatureClass::PositivelyCurved, margin};
  return {CurvatureClass::HasNonpositivePlane, margin};
}

ConeVerdict classify_berger(const BergerMetric& m) {
  m.validate();
  const double margin = 2.0 * m.x2 - m.x1;
  if (m.x1 < 2.0 * m.x2) return {CurvatureClass::PositivelyCurved, margin};
  return {CurvatureClass::HasNonpositivePlane, margin};
}

ConeVerdict classify_aw(const AWMetric& m, XiParam xi) {
  m.validate();
  const STriple s{m.s0, m.s1, m.s2};
  const double sig = sigma(s);
  if (!(sig > 0.0)) {
    // Outside Omega'_sigma, hence outside the admissible set and the cone.
    return {CurvatureClass::HasNonpositivePlane, std::min(sig, 0.0)};
  }
  if (on_round_diagonal(s)) {
    // t_A = 0 there, so every t > 0 is outside the cone.
    return {CurvatureClass::HasNonpositivePlane, -m.t};
  }
  const double boundary = t_a(s, xi);
  const double margin = boundary - m.t;
  if (!(m.t < boundary)) return {CurvatureClass::HasNonpositivePlane, margin};
  const bool slice = std::abs(m.s1 - m.s2) <= kSliceTol * std::max(m.s1, m.s2);
  if (slice && m.s0 < m.s1) return {CurvatureClass::PositivelyCurved, margin};
  return {CurvatureClass::Unknown, 0.0};
}

}  // namespace awflow
