#pragma once

#include <cstdint>
#include <vector>

#include "hstiefel/qmatrix.hpp"
#include "hstiefel/qsvd.hpp"
#include "hstiefel/random.hpp"

namespace hstiefel {

/// Real dimension of Sp(m).
constexpr int sp_dimension(int m) { return 2 * m * m + m; }

/// Real dimension of X_{n,k} = Sp(n)/Sp(n-k).
constexpr int stiefel_dimension(int n, int k) {
  return 4 * n * k - 2 * k * k + k;
}

/// Point of X_{n,k}: an n x k quaternion matrix with orthonormal columns,
/// 1 <= k < n. Split into the top block T ((n-k) x k) and the bottom
/// block P (k x k), so the constraint reads T*T + P*P = I_k.
///
/// The constructor checks the shape only; validate_point is the checked
/// entry and reports the constraint residual. Producers that guarantee
/// the constraint by construction (retraction, flow, group action) use
/// the constructor directly.
class StiefelPoint {
 public:
  explicit StiefelPoint(QuaternionMatrix mat);

  int n() const { return mat_.rows(); }
  int k() const { return mat_.cols(); }
  const QuaternionMatrix& mat() const { return mat_; }

  QuaternionMatrix t_block() const { return mat_.block(0, 0, n() - k(), k()); }
  QuaternionMatrix p_block() const {
    return mat_.block(n() - k(), 0, k(), k());
  }

  /// Frobenius norm of adjoint(mat) * mat - I_k.
  double constraint_residual() const;

 private:
  QuaternionMatrix mat_;
};

/// Ambient direction v at a base point x with x*v + v*x = 0. The
/// constructor checks shapes only; tangency comes from the producers
/// (projections, transports, basis construction) or validate_tangent.
class TangentVector {
 public:
  TangentVector(StiefelPoint base, QuaternionMatrix mat);

  const StiefelPoint& base() const { return base_; }
  const QuaternionMatrix& mat() const { return mat_; }

  /// Frobenius norm of x*v + v*x.
  double tangency_residual() const;

 private:
  StiefelPoint base_;
  QuaternionMatrix mat_;
};

/// Checked construction: throws unless the constraint residual is within
/// tol (the residual is quoted in the message).
StiefelPoint validate_point(const QuaternionMatrix& mat,
                            double tol = kDefaultTol);

/// Checked tangent construction at x; throws when x*v + v*x exceeds tol.
TangentVector validate_tangent(const StiefelPoint& x,
                               const QuaternionMatrix& mat,
                               double tol = kDefaultTol);

/// P_x(u) = u - x(x*u + u*x)/2. Idempotent; fixes tangent vectors.
TangentVector tangent_project(const StiefelPoint& x,
                              const QuaternionMatrix& u);

/// Complementary projection x(x*u + u*x)/2 onto the normal space.
QuaternionMatrix normal_project(const StiefelPoint& x,
                                const QuaternionMatrix& u);

/// Orthonormalization of an n x k matrix with independent standard
/// normal quaternion entries. Deterministic in the seed.
StiefelPoint random_point(int n, int k, std::uint64_t seed);
StiefelPoint random_point(int n, int k, GaussianSource& source);

/// Tangent projection of a Gaussian ambient matrix at x.
TangentVector random_tangent(const StiefelPoint& x, std::uint64_t seed);
TangentVector random_tangent(const StiefelPoint& x, GaussianSource& source);

/// Orthonormal basis of T_x X_{n,k} under frobenius_inner, of size
/// stiefel_dimension(n, k): the canonical basis at x_0 = [0; I_k]
/// (free X entries over the four units; skew-Hermitian Y) transported by
/// a symplectic A with x = A x_0.
std::vector<TangentVector> tangent_basis(const StiefelPoint& x);

/// Same construction through an explicit transport A (symplectic, last k
/// columns equal to x). Exposing the gauge lets tests compare two
/// completions; every public result must agree across them.
std::vector<TangentVector> tangent_basis_in_gauge(const StiefelPoint& x,
                                                  const QuaternionMatrix& a);

/// Nearest Stiefel point in Frobenius norm: U_thin * adjoint(V) from the
/// SVD of y. Throws when a singular value of y falls below the rank
/// threshold.
StiefelPoint polar_retract(const QuaternionMatrix& y);

}  // namespace hstiefel
