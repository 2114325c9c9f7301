#include "hstiefel/random.hpp"

#include <cmath>

namespace hstiefel {

double GaussianSource::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 53-bit uniforms; u1 shifted into (0, 1] so the log is finite.
  const double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  const double u1 = 1.0 - static_cast<double>(engine_() >> 11) * kScale;
  const double u2 = static_cast<double>(engine_() >> 11) * kScale;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 6.283185307179586476925286766559 * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

Quaternion GaussianSource::next_quaternion() {
  const double w = next();
  const double x = next();
  const double y = next();
  const double z = next();
  return {w, x, y, z};
}

QuaternionMatrix GaussianSource::matrix(int rows, int cols) {
  QuaternionMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = next_quaternion();
  return m;
}

}  // namespace hstiefel
