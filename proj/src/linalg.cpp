#include "awflow/linalg.hpp"

#include <limits>
#include <sstream>
#include <utility>

#include "awflow/errors.hpp"

namespace awflow {

Lu3::Lu3(const Mat3& a) : lu_(a) {
  for (std::size_t k = 0; k < 3; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < 3; ++i)
      if (std::abs(lu_[i][k]) > std::abs(lu_[pivot][k])) pivot = i;
    if (pivot != k) {
      std::swap(lu_[pivot], lu_[k]);
      std::swap(perm_[pivot], perm_[k]);
    }
    if (lu_[k][k] == 0.0) {
      singular_ = true;
      condition_ = std::numeric_limits<double>::infinity();
      return;
    }
    for (std::size_t i = k + 1; i < 3; ++i) {
      lu_[i][k] /= lu_[k][k];
      for (std::size_t j = k + 1; j < 3; ++j) lu_[i][j] -= lu_[i][k] * lu_[k][j];
    }
  }
  condition_ = norm_inf(a) * norm_inf(inverse());
}

Vec3 Lu3::solve(const Vec3& b) const {
  Vec3 y{b[perm_[0]], b[perm_[1]], b[perm_[2]]};
  for (std::size_t i = 1; i < 3; ++i)
    for (std::size_t j = 0; j < i; ++j) y[i] -= lu_[i][j] * y[j];
  for (std::size_t i = 3; i-- > 0;) {
    for (std::size_t j = i + 1; j < 3; ++j) y[i] -= lu_[i][j] * y[j];
    y[i] /= lu_[i][i];
  }
  return y;
}

Mat3 Lu3::inverse() const {
  Mat3 inv{};
  for (std::size_t j = 0; j < 3; ++j) {
    Vec3 e{};
    e[j] = 1.0;
    const Vec3 col = solve(e);
    for (std::size_t i = 0; i < 3; ++i) inv[i][j] = col[i];
  }
  return inv;
}

Vec3 solve3(const Mat3& a, const Vec3& b, double max_condition) {
  const Lu3 lu(a);
  if (lu.singular() || !(lu.condition() <= max_condition)) {
    std::ostringstream msg;
    msg << "3x3 solve: condition estimate " << lu.condition() << " exceeds "
        << max_condition;
    throw Error(ErrorCode::SingularMatrix, msg.str());
  }
  return lu.solve(b);
}

}  // namespace awflow
