#pragma once

// Invariant metrics on the Aloff-Wallach spaces W_{k1,k2} = SU(3)/S^1 and on
// the Berger space B^13 = SU(5)/Sp(2)S^1, with their Ricci eigenvalues.

#include <array>
#include <cstdint>

namespace awflow {

/// Continuous label of an Aloff-Wallach space: xi = k1/k2 in (0, 1].
class XiParam {
 public:
  /// Throws Error{InvalidArgument} unless 0 < xi <= 1.
  explicit XiParam(double xi);

  /// Requires 0 < k1 <= k2 and gcd(k1, k2) = 1.
  static XiParam from_pair(std::int64_t k1, std::int64_t k2);

  double value() const { return xi_; }

  /// xi^2 + xi + 1, the normalized form of Gamma = k1^2 + k2^2 + k1 k2.
  double gamma_normalized() const { return xi_ * xi_ + xi_ + 1.0; }

 private:
  double xi_;
};

/// Gamma = k1^2 + k2^2 + k1 k2 for an integer pair.
std::int64_t gamma_of(std::int64_t k1, std::int64_t k2);

/// Throws Error{InvalidArgument} unless 0 < k1 <= k2 and gcd(k1, k2) = 1.
void check_space_pair(std::int64_t k1, std::int64_t k2);

/// Diagonal metric t B|p0 + s0 B|p1 + s1 B|p2 + s2 B|p3 on W_{k1,k2}.
/// The three-parameter family uses x := s0 and s := s1 = s2.
struct AWMetric {
  double t;
  double s0;
  double s1;
  double s2;

  /// Throws Error{InvalidArgument} unless every entry is finite and > 0.
  void validate() const;
  AWMetric scaled(double lambda) const {
    return {lambda * t, lambda * s0, lambda * s1, lambda * s2};
  }
};

/// Metric x1 B|p1 + x2 B|p2 on B^13.
struct BergerMetric {
  double x1;
  double x2;

  void validate() const;
};

struct AWRicci {
  double r0;
  double r1;
  double r2;
  double r3;

  std::array<double, 4> as_array() const { return {r0, r1, r2, r3}; }
};

struct BergerRicci {
  double r1;
  double r2;
};

/// Closed-form Ricci eigenvalues with (k1+k2, k1, k2) -> (xi+1, xi, 1) and
/// Gamma -> xi^2 + xi + 1.
AWRicci ricci_eigenvalues_aw(const AWMetric& m, XiParam xi);

/// Eigenvalues for general x2, obtained from the x2 = 1 slice
///   r1 = (8 + x1^2)/x1,  r2 = 5(8 - x1)/4
/// by degree -1 homogeneity: r(x1, x2) = r(x1/x2, 1)/x2.
BergerRicci ricci_eigenvalues_berger(const BergerMetric& m);

/// Structure constants [ijk] of W_{k1,k2} for the decomposition p0+p1+p2+p3.
/// Index 0 is the one-dimensional module; indices 1..3 are the complex ones.
class BracketConstants {
 public:
  BracketConstants(std::int64_t k1, std::int64_t k2);

  /// Symmetric in all three indices; zero for every triple not listed below.
  double operator()(int i, int j, int k) const { return numerator(i, j, k) / gamma_; }

  /// Gamma * [ijk], an integer.
  double numerator(int i, int j, int k) const;
  double gamma() const { return gamma_; }

  double c110() const { return n110_ / gamma_; }
  double c220() const { return n220_ / gamma_; }
  double c330() const { return n330_ / gamma_; }
  static constexpr double c123() { return 4.0; }

 private:
  double gamma_;
  double n110_;
  double n220_;
  double n330_;
};

/// Generic homogeneous-space eigenvalue formula
///   r_i = b_i/(2x_i) - 1/(2d_i) sum_jk [ijk] x_j/(x_i x_k)
///                    + 1/(4d_i) sum_jk [ijk] x_i/(x_j x_k)
/// with b_i = 12, d = (1, 2, 2, 2). Independent of the closed forms above.
AWRicci ricci_from_structure(std::int64_t k1, std::int64_t k2, const AWMetric& m);

}  // namespace awflow
