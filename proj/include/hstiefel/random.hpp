#pragma once

#include <cstdint>
#include <random>

#include "hstiefel/qmatrix.hpp"

namespace hstiefel {

/// Seeded stream of standard normal doubles. Box-Muller is applied by
/// hand so the stream is identical across standard libraries; all
/// randomized operations in this project take explicit seeds and draw
/// from one of these.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double next();
  Quaternion next_quaternion();

  /// Matrix with independent standard normal quaternion components.
  QuaternionMatrix matrix(int rows, int cols);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hstiefel
