#pragma once

#include <initializer_list>
#include <vector>

#include "hstiefel/quaternion.hpp"

namespace hstiefel {

/// Dense matrix over the quaternions, row-major storage.
///
/// All algebraic operations return new values; nothing mutates its
/// arguments. Scalars act on the right of columns, so matrix products
/// keep the left factor's entries on the left of each Hamilton product.
class QuaternionMatrix {
 public:
  QuaternionMatrix() = default;
  QuaternionMatrix(int rows, int cols);  // zero-filled

  static QuaternionMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Quaternion& operator()(int i, int j) { return data_[i * cols_ + j]; }
  const Quaternion& operator()(int i, int j) const {
    return data_[i * cols_ + j];
  }

  QuaternionMatrix adjoint() const;

  /// Sum of the real parts of the diagonal. Throws on non-square input.
  double re_trace() const;

  /// Contiguous sub-block of size r x c with top-left corner (i0, j0).
  QuaternionMatrix block(int i0, int j0, int r, int c) const;
  void set_block(int i0, int j0, const QuaternionMatrix& m);

  QuaternionMatrix& operator+=(const QuaternionMatrix& o);
  QuaternionMatrix& operator-=(const QuaternionMatrix& o);
  QuaternionMatrix& operator*=(double s);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Quaternion> data_;
};

QuaternionMatrix operator+(QuaternionMatrix a, const QuaternionMatrix& b);
QuaternionMatrix operator-(QuaternionMatrix a, const QuaternionMatrix& b);
QuaternionMatrix operator-(const QuaternionMatrix& a);
QuaternionMatrix operator*(QuaternionMatrix a, double s);
QuaternionMatrix operator*(double s, QuaternionMatrix a);

/// Matrix product; throws on inner-dimension mismatch.
QuaternionMatrix operator*(const QuaternionMatrix& a,
                           const QuaternionMatrix& b);

inline QuaternionMatrix mat_mul(const QuaternionMatrix& a,
                                const QuaternionMatrix& b) {
  return a * b;
}
inline QuaternionMatrix adjoint(const QuaternionMatrix& a) {
  return a.adjoint();
}
inline double re_trace(const QuaternionMatrix& a) { return a.re_trace(); }

/// Right scalar action on every entry: result(i,j) = a(i,j) * q.
QuaternionMatrix scale_right(const QuaternionMatrix& a, const Quaternion& q);

/// Re Tr(adjoint(a) * b). Symmetric, R-bilinear, positive definite.
double frobenius_inner(const QuaternionMatrix& a, const QuaternionMatrix& b);

double fro_norm_sq(const QuaternionMatrix& a);
double fro_norm(const QuaternionMatrix& a);

bool approx_equal(const QuaternionMatrix& a, const QuaternionMatrix& b,
                  double tol = kDefaultTol);

/// Stack a on top of b (column counts must agree).
QuaternionMatrix vconcat(const QuaternionMatrix& a, const QuaternionMatrix& b);

/// Real diagonal rectangle: result(i,i) = d[i], zero elsewhere.
QuaternionMatrix real_diag(int rows, int cols, const std::vector<double>& d);

/// Small literal helper for tests and notable constructions; entries are
/// real values given row by row.
QuaternionMatrix real_matrix(int rows, int cols,
                             std::initializer_list<double> entries);

}  // namespace hstiefel
