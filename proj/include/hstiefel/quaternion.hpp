#pragma once

#include <cmath>

namespace hstiefel {

/// Default absolute tolerance for Frobenius-norm comparisons.
/// Entries are O(1) on the compact manifolds handled here, so an
/// absolute tolerance is adequate everywhere.
inline constexpr double kDefaultTol = 1e-10;

/// Scalar of the quaternion division algebra, stored as (w, x, y, z)
/// with w the real part. Multiplication follows the Hamilton rules
/// i*j = k, j*i = -k.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion real(double r) { return {r, 0.0, 0.0, 0.0}; }
  static constexpr Quaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr Quaternion conjugate() const { return {w, -x, -y, -z}; }

  constexpr double norm_sq() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm_sq()); }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w;
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w;
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) {
  return a += b;
}
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) {
  return a -= b;
}
constexpr Quaternion operator-(const Quaternion& a) {
  return {-a.w, -a.x, -a.y, -a.z};
}

/// Hamilton product. Noncommutative: qmul(i, j) = k, qmul(j, i) = -k.
constexpr Quaternion qmul(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return qmul(a, b);
}
constexpr Quaternion operator*(const Quaternion& a, double s) {
  return {a.w * s, a.x * s, a.y * s, a.z * s};
}
constexpr Quaternion operator*(double s, const Quaternion& a) { return a * s; }

/// Multiplicative inverse; the zero quaternion yields non-finite entries.
inline Quaternion inverse(const Quaternion& q) {
  const double n2 = q.norm_sq();
  return {q.w / n2, -q.x / n2, -q.y / n2, -q.z / n2};
}

inline bool approx_equal(const Quaternion& a, const Quaternion& b,
                         double tol = kDefaultTol) {
  return (a - b).norm() <= tol;
}

}  // namespace hstiefel
