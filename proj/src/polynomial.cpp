#include "awflow/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "awflow/errors.hpp"

namespace awflow {

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial{0.0};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return Polynomial(std::move(d));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return Polynomial{};
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::deflate(double root) const {
  if (coeffs_.size() <= 1) return Polynomial{0.0};
  const std::size_t n = coeffs_.size() - 1;
  std::vector<double> q(n);
  double carry = coeffs_[n];
  q[n - 1] = carry;
  for (std::size_t i = n - 1; i > 0; --i) {
    carry = coeffs_[i] + carry * root;
    q[i - 1] = carry;
  }
  return Polynomial(std::move(q));
}

std::vector<std::complex<double>> aberth_roots(const Polynomial& p,
                                               const AberthOptions& opts) {
  const int n = p.degree();
  if (n < 1) return {};
  const auto& c = p.coefficients();
  const double lead = c.back();
  if (lead == 0.0) throw Error(ErrorCode::InvalidArgument, "aberth_roots: zero leading coefficient");

  double bound = 0.0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[i] / lead));
  const double radius = 1.0 + bound;

  const Polynomial dp = p.derivative();
  std::vector<std::complex<double>> z(n);
  // Offset angle avoids starting symmetric about the real axis.
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n + 0.4;
    z[k] = std::polar(radius * 0.5, angle);
  }

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    double max_step = 0.0;
    for (int k = 0; k < n; ++k) {
      const auto value = p(z[k]);
      if (value == 0.0) continue;
      const auto ratio = value / dp(z[k]);
      std::complex<double> repulsion = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      const auto step = ratio / (1.0 - ratio * repulsion);
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[k])));
    }
    if (max_step < opts.tolerance) break;
  }
  return z;
}

double newton_polish(const Polynomial& p, double x, double tol, int max_iter) {
  const Polynomial dp = p.derivative();
  for (int i = 0; i < max_iter; ++i) {
    const double d = dp(x);
    if (d == 0.0) break;
    const double step = p(x) / d;
    x -= step;
    if (std::abs(step) <= tol * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

}  // namespace awflow
