#include "hstiefel/stiefel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace hstiefel {

namespace {

// Singular values below this leave the polar factor underdetermined.
constexpr double kRetractRankTol = 1e-10;
// Gram-Schmidt pivot for random sampling; a shorter residual means the
// draw was (numerically) rank deficient and is rejected.
constexpr double kSamplePivotTol = 1e-6;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// Orthonormalizes the columns of g in place over the right module; false
// when a pivot collapses.
bool orthonormalize_columns(QuaternionMatrix& g) {
  for (int j = 0; j < g.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int l = 0; l < j; ++l) {
        Quaternion coeff{};
        for (int i = 0; i < g.rows(); ++i)
          coeff += g(i, l).conjugate() * g(i, j);
        for (int i = 0; i < g.rows(); ++i) g(i, j) -= g(i, l) * coeff;
      }
    }
    double norm_sq = 0.0;
    for (int i = 0; i < g.rows(); ++i) norm_sq += g(i, j).norm_sq();
    const double norm = std::sqrt(norm_sq);
    if (norm <= kSamplePivotTol) return false;
    for (int i = 0; i < g.rows(); ++i) g(i, j) = g(i, j) * (1.0 / norm);
  }
  return true;
}

}  // namespace

StiefelPoint::StiefelPoint(QuaternionMatrix mat) : mat_(std::move(mat)) {
  require(mat_.cols() >= 1 && mat_.cols() < mat_.rows(),
          "StiefelPoint: need 1 <= k < n");
}

double StiefelPoint::constraint_residual() const {
  QuaternionMatrix gram = mat_.adjoint() * mat_;
  gram -= QuaternionMatrix::identity(k());
  return fro_norm(gram);
}

TangentVector::TangentVector(StiefelPoint base, QuaternionMatrix mat)
    : base_(std::move(base)), mat_(std::move(mat)) {
  require(mat_.rows() == base_.n() && mat_.cols() == base_.k(),
          "TangentVector: shape does not match the base point");
}

double TangentVector::tangency_residual() const {
  return fro_norm(base_.mat().adjoint() * mat_ + mat_.adjoint() * base_.mat());
}

StiefelPoint validate_point(const QuaternionMatrix& mat, double tol) {
  StiefelPoint x(mat);
  const double residual = x.constraint_residual();
  if (residual > tol)
    throw std::domain_error("point is off the manifold (residual " +
                            std::to_string(residual) + ")");
  return x;
}

TangentVector validate_tangent(const StiefelPoint& x,
                               const QuaternionMatrix& mat, double tol) {
  TangentVector v(x, mat);
  const double residual = v.tangency_residual();
  if (residual > tol)
    throw std::domain_error("vector is not tangent (residual " +
                            std::to_string(residual) + ")");
  return v;
}

TangentVector tangent_project(const StiefelPoint& x,
                              const QuaternionMatrix& u) {
  return {x, u - normal_project(x, u)};
}

QuaternionMatrix normal_project(const StiefelPoint& x,
                                const QuaternionMatrix& u) {
  require(u.rows() == x.n() && u.cols() == x.k(),
          "normal_project: shape does not match the point");
  const QuaternionMatrix& m = x.mat();
  return 0.5 * (m * (m.adjoint() * u + u.adjoint() * m));
}

StiefelPoint random_point(int n, int k, std::uint64_t seed) {
  GaussianSource source(seed);
  return random_point(n, k, source);
}

StiefelPoint random_point(int n, int k, GaussianSource& source) {
  require(k >= 1 && k < n, "random_point: need 1 <= k < n");
  // A Gaussian draw is full rank almost surely; redraw on the measure-zero
  // failure instead of propagating it.
  for (int attempt = 0; attempt < 64; ++attempt) {
    QuaternionMatrix g = source.matrix(n, k);
    if (orthonormalize_columns(g)) return StiefelPoint(std::move(g));
  }
  throw std::runtime_error("random_point: repeated rank-deficient draws");
}

TangentVector random_tangent(const StiefelPoint& x, std::uint64_t seed) {
  GaussianSource source(seed);
  return random_tangent(x, source);
}

TangentVector random_tangent(const StiefelPoint& x, GaussianSource& source) {
  return tangent_project(x, source.matrix(x.n(), x.k()));
}

std::vector<TangentVector> tangent_basis(const StiefelPoint& x) {
  return tangent_basis_in_gauge(x, complete_symplectic(x.mat()));
}

std::vector<TangentVector> tangent_basis_in_gauge(const StiefelPoint& x,
                                                  const QuaternionMatrix& a) {
  const int n = x.n();
  const int k = x.k();
  require(a.rows() == n && a.cols() == n,
          "tangent_basis_in_gauge: transport must be n x n");
  if (fro_norm(a.block(0, n - k, n, k) - x.mat()) > kDefaultTol)
    throw std::domain_error(
        "tangent_basis_in_gauge: transport's last columns must equal the "
        "point");

  const Quaternion units[4] = {Quaternion::real(1.0), Quaternion::unit_i(),
                               Quaternion::unit_j(), Quaternion::unit_k()};
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  std::vector<TangentVector> basis;
  basis.reserve(stiefel_dimension(n, k));
  const auto push = [&](const QuaternionMatrix& canonical) {
    basis.emplace_back(x, a * canonical);
  };

  // Free block X: one unit per entry.
  for (int i = 0; i < n - k; ++i)
    for (int j = 0; j < k; ++j)
      for (const Quaternion& e : units) {
        QuaternionMatrix v(n, k);
        v(i, j) = e;
        push(v);
      }
  // Skew-Hermitian block Y: imaginary diagonal entries.
  for (int d = 0; d < k; ++d)
    for (int u = 1; u < 4; ++u) {
      QuaternionMatrix v(n, k);
      v(n - k + d, d) = units[u];
      push(v);
    }
  // Skew-Hermitian block Y: paired off-diagonal entries.
  for (int r = 0; r < k; ++r)
    for (int c = r + 1; c < k; ++c)
      for (const Quaternion& e : units) {
        QuaternionMatrix v(n, k);
        v(n - k + r, c) = e * inv_sqrt2;
        v(n - k + c, r) = e.conjugate() * (-inv_sqrt2);
        push(v);
      }
  return basis;
}

StiefelPoint polar_retract(const QuaternionMatrix& y) {
  require(y.cols() >= 1 && y.cols() < y.rows(),
          "polar_retract: need 1 <= k < n");
  const SVDFactorization f = svd(y);
  for (double sigma : f.s)
    if (sigma < kRetractRankTol)
      throw std::domain_error("polar_retract: rank deficient input (sigma " +
                              std::to_string(sigma) + ")");
  const QuaternionMatrix u_thin = f.u.block(0, 0, y.rows(), y.cols());
  return StiefelPoint(u_thin * f.v.adjoint());
}

}  // namespace hstiefel
