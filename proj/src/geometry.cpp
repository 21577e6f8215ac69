#include "awflow/geometry.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "awflow/errors.hpp"

namespace awflow {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

XiParam::XiParam(double xi) : xi_(xi) {
  if (!(xi > 0.0 && xi <= 1.0)) {
    std::ostringstream msg;
    msg << "xi must lie in (0, 1], got " << xi;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

XiParam XiParam::from_pair(std::int64_t k1, std::int64_t k2) {
  check_space_pair(k1, k2);
  return XiParam(static_cast<double>(k1) / static_cast<double>(k2));
}

std::int64_t gamma_of(std::int64_t k1, std::int64_t k2) {
  return k1 * k1 + k2 * k2 + k1 * k2;
}

void check_space_pair(std::int64_t k1, std::int64_t k2) {
  if (k1 <= 0 || k2 < k1) {
    std::ostringstream msg;
    msg << "space pair must satisfy 0 < k1 <= k2, got (" << k1 << ", " << k2 << ")";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  if (std::gcd(k1, k2) != 1) {
    std::ostringstream msg;
    msg << "space pair must be coprime, got (" << k1 << ", " << k2 << ")";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

void AWMetric::validate() const {
  if (!(positive_finite(t) && positive_finite(s0) && positive_finite(s1) &&
        positive_finite(s2))) {
    std::ostringstream msg;
    msg << "AW metric entries must be positive, got (" << t << ", " << s0 << ", "
        << s1 << ", " << s2 << ")";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

void BergerMetric::validate() const {
  if (!(positive_finite(x1) && positive_finite(x2))) {
    std::ostringstream msg;
    msg << "Berger metric entries must be positive, got (" << x1 << ", " << x2 << ")";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

AWRicci ricci_eigenvalues_aw(const AWMetric& m, XiParam xi_param) {
  m.validate();
  const double xi = xi_param.value();
  const double g = xi_param.gamma_normalized();
  const double k0sq = (xi + 1.0) * (xi + 1.0);
  const double k1sq = xi * xi;
  const double k2sq = 1.0;
  const double t = m.t, s0 = m.s0, s1 = m.s1, s2 = m.s2;

  AWRicci r{};
  r.r0 = 3.0 * t / (2.0 * g) * (k0sq / (s0 * s0) + k1sq / (s1 * s1) + k2sq / (s2 * s2));
  r.r1 = 6.0 / s0 - 3.0 * k0sq * t / (2.0 * g * s0 * s0) +
         (s0 / (s1 * s2) - s1 / (s0 * s2) - s2 / (s0 * s1));
  r.r2 = 6.0 / s1 - 3.0 * k1sq * t / (2.0 * g * s1 * s1) +
         (s1 / (s0 * s2) - s0 / (s1 * s2) - s2 / (s0 * s1));
  r.r3 = 6.0 / s2 - 3.0 * k2sq * t / (2.0 * g * s2 * s2) +
         (s2 / (s0 * s1) - s0 / (s1 * s2) - s1 / (s0 * s2));
  return r;
}

BergerRicci ricci_eigenvalues_berger(const BergerMetric& m) {
  m.validate();
  const double u = m.x1 / m.x2;
  return {(8.0 + u * u) / u / m.x2, 5.0 * (8.0 - u) / 4.0 / m.x2};
}

BracketConstants::BracketConstants(std::int64_t k1, std::int64_t k2) {
  check_space_pair(k1, k2);
  gamma_ = static_cast<double>(gamma_of(k1, k2));
  n110_ = static_cast<double>(6 * (k1 + k2) * (k1 + k2));
  n220_ = static_cast<double>(6 * k1 * k1);
  n330_ = static_cast<double>(6 * k2 * k2);
}

double BracketConstants::numerator(int i, int j, int k) const {
  if (i < 0 || i > 3 || j < 0 || j > 3 || k < 0 || k > 3) return 0.0;
  // Sort so the multiset {i, j, k} has a canonical form.
  if (i > j) std::swap(i, j);
  if (j > k) std::swap(j, k);
  if (i > j) std::swap(i, j);
  if (i == 1 && j == 2 && k == 3) return c123() * gamma_;
  if (i == 0 && j == k) {
    switch (j) {
      case 1: return n110_;
      case 2: return n220_;
      case 3: return n330_;
      default: return 0.0;
    }
  }
  return 0.0;
}

AWRicci ricci_from_structure(std::int64_t k1, std::int64_t k2, const AWMetric& m) {
  m.validate();
  const BracketConstants brackets(k1, k2);
  const std::array<double, 4> x{m.t, m.s0, m.s1, m.s2};
  constexpr std::array<double, 4> d{1.0, 2.0, 2.0, 2.0};
  constexpr double b = 12.0;

  // Sums are kept over the integer numerators Gamma [ijk] so that the b_i
  // term cancels exactly against the j = k terms where it should.
  const double g = brackets.gamma();
  std::array<double, 4> r{};
  for (int i = 0; i < 4; ++i) {
    double lowered = 0.0;
    double raised = 0.0;
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) {
        const double n = brackets.numerator(i, j, k);
        if (n == 0.0) continue;
        lowered += n * (x[j] / x[k]);
        raised += n / (x[j] * x[k]);
      }
    }
    r[i] = (b * d[i] * g - lowered) / (2.0 * d[i] * g * x[i]) + raised * x[i] / (4.0 * d[i] * g);
  }
  return {r[0], r[1], r[2], r[3]};
}

}  // namespace awflow
