#include "hstiefel/qmatrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hstiefel {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

QuaternionMatrix::QuaternionMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {
  require(rows >= 0 && cols >= 0, "matrix dimensions must be nonnegative");
}

QuaternionMatrix QuaternionMatrix::identity(int n) {
  QuaternionMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Quaternion::real(1.0);
  return m;
}

QuaternionMatrix QuaternionMatrix::adjoint() const {
  QuaternionMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j).conjugate();
  return r;
}

double QuaternionMatrix::re_trace() const {
  require(rows_ == cols_, "re_trace requires a square matrix");
  double t = 0.0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i).w;
  return t;
}

QuaternionMatrix QuaternionMatrix::block(int i0, int j0, int r, int c) const {
  require(i0 >= 0 && j0 >= 0 && r >= 0 && c >= 0 && i0 + r <= rows_ &&
              j0 + c <= cols_,
          "block out of range");
  QuaternionMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
  return m;
}

void QuaternionMatrix::set_block(int i0, int j0, const QuaternionMatrix& m) {
  require(i0 >= 0 && j0 >= 0 && i0 + m.rows() <= rows_ &&
              j0 + m.cols() <= cols_,
          "set_block out of range");
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) (*this)(i0 + i, j0 + j) = m(i, j);
}

QuaternionMatrix& QuaternionMatrix::operator+=(const QuaternionMatrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in +");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

QuaternionMatrix& QuaternionMatrix::operator-=(const QuaternionMatrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in -");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

QuaternionMatrix& QuaternionMatrix::operator*=(double s) {
  for (auto& q : data_) q = q * s;
  return *this;
}

QuaternionMatrix operator+(QuaternionMatrix a, const QuaternionMatrix& b) {
  return a += b;
}
QuaternionMatrix operator-(QuaternionMatrix a, const QuaternionMatrix& b) {
  return a -= b;
}
QuaternionMatrix operator-(const QuaternionMatrix& a) { return a * -1.0; }
QuaternionMatrix operator*(QuaternionMatrix a, double s) { return a *= s; }
QuaternionMatrix operator*(double s, QuaternionMatrix a) { return a *= s; }

QuaternionMatrix operator*(const QuaternionMatrix& a,
                           const QuaternionMatrix& b) {
  require(a.cols() == b.rows(), "inner dimensions disagree in matrix product");
  QuaternionMatrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int l = 0; l < a.cols(); ++l) {
      const Quaternion& ail = a(i, l);
      if (ail.norm_sq() == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) r(i, j) += ail * b(l, j);
    }
  return r;
}

QuaternionMatrix scale_right(const QuaternionMatrix& a, const Quaternion& q) {
  QuaternionMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) * q;
  return r;
}

double frobenius_inner(const QuaternionMatrix& a, const QuaternionMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          "shape mismatch in frobenius_inner");
  // Re Tr(a* b) = sum of componentwise products.
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const Quaternion& p = a(i, j);
      const Quaternion& q = b(i, j);
      s += p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z;
    }
  return s;
}

double fro_norm_sq(const QuaternionMatrix& a) { return frobenius_inner(a, a); }

double fro_norm(const QuaternionMatrix& a) { return std::sqrt(fro_norm_sq(a)); }

bool approx_equal(const QuaternionMatrix& a, const QuaternionMatrix& b,
                  double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return fro_norm(a - b) <= tol;
}

QuaternionMatrix vconcat(const QuaternionMatrix& a,
                         const QuaternionMatrix& b) {
  require(a.cols() == b.cols(), "column counts disagree in vconcat");
  QuaternionMatrix r(a.rows() + b.rows(), a.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

QuaternionMatrix real_diag(int rows, int cols, const std::vector<double>& d) {
  require(static_cast<int>(d.size()) <= std::min(rows, cols),
          "too many diagonal entries");
  QuaternionMatrix r(rows, cols);
  for (size_t i = 0; i < d.size(); ++i)
    r(static_cast<int>(i), static_cast<int>(i)) = Quaternion::real(d[i]);
  return r;
}

QuaternionMatrix real_matrix(int rows, int cols,
                             std::initializer_list<double> entries) {
  require(static_cast<int>(entries.size()) == rows * cols,
          "entry count does not match dimensions");
  QuaternionMatrix r(rows, cols);
  auto it = entries.begin();
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r(i, j) = Quaternion::real(*it++);
  return r;
}

}  // namespace hstiefel
