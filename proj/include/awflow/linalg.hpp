#pragma once

// Fixed-size 3-vectors and 3x3 matrices. Only what the cone computations need.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace awflow {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 operator*(const Mat3& m, const Vec3& v) {
  return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Mat3 identity3() {
  return {Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0}, Vec3{0.0, 0.0, 1.0}};
}

inline double norm_inf(const Mat3& m) {
  double best = 0.0;
  for (const auto& row : m)
    best = std::max(best, std::abs(row[0]) + std::abs(row[1]) + std::abs(row[2]));
  return best;
}

/// LU factorization with partial pivoting. Holds the factors so several
/// right-hand sides can be solved against the same matrix.
class Lu3 {
 public:
  explicit Lu3(const Mat3& a);

  Vec3 solve(const Vec3& b) const;
  Mat3 inverse() const;

  /// inf-norm condition number estimate ||A|| * ||A^-1||; +inf if a pivot is zero.
  double condition() const { return condition_; }
  bool singular() const { return singular_; }

 private:
  Mat3 lu_{};
  std::array<std::size_t, 3> perm_{0, 1, 2};
  bool singular_ = false;
  double condition_ = 0.0;
};

/// Solves a x = b. Throws Error{SingularMatrix} when the condition estimate
/// exceeds max_condition.
Vec3 solve3(const Mat3& a, const Vec3& b, double max_condition = 1e12);

}  // namespace awflow
