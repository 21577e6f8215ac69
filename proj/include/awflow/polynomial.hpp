#pragma once

// Dense real polynomials with an Aberth-Ehrlich simultaneous root finder.

#include <complex>
#include <initializer_list>
#include <vector>

namespace awflow {

class Polynomial {
 public:
  Polynomial() = default;
  /// Coefficients in ascending order: c[0] + c[1] x + ...
  explicit Polynomial(std::vector<double> ascending);
  Polynomial(std::initializer_list<double> ascending)
      : Polynomial(std::vector<double>(ascending)) {}

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  double operator()(double x) const;
  std::complex<double> operator()(std::complex<double> z) const;

  Polynomial derivative() const;

  /// Synthetic division by (x - root); the remainder is dropped.
  Polynomial deflate(double root) const;

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  std::vector<double> coeffs_;
};

struct AberthOptions {
  int max_iterations = 500;
  double tolerance = 1e-15;
};

/// All complex roots by Aberth-Ehrlich iteration with Cauchy-bound initial
/// guesses on a circle.
std::vector<std::complex<double>> aberth_roots(const Polynomial& p,
                                               const AberthOptions& opts = {});

/// Newton iterations on p starting at x, stopping when the step is below
/// tol * max(1, |x|) or after max_iter steps.
double newton_polish(const Polynomial& p, double x, double tol = 1e-15, int max_iter = 50);

}  // namespace awflow
