#pragma once

#include <vector>

#include "hstiefel/qmatrix.hpp"
#include "hstiefel/random.hpp"

namespace hstiefel {

/// Classification width for singular values of a Stiefel block: sigma is
/// treated as 1 above 1 - eps, as 0 below eps, interior otherwise. The
/// constraint bounds sigma in [0, 1]; 1e-8 sits far above accumulated
/// rounding and far below generic values.
inline constexpr double kSingularClassEps = 1e-8;

/// Full singular value decomposition A = u * diag(s) * v^* with
/// symplectic u (m x m) and v (n x n); s holds min(m, n) values sorted
/// descending.
struct SVDFactorization {
  QuaternionMatrix u;
  std::vector<double> s;
  QuaternionMatrix v;

  QuaternionMatrix reconstruct() const;
};

/// One-sided Jacobi SVD in quaternion arithmetic. Column pairs are
/// orthogonalized by 2x2 symplectic rotations until the implicit Gram
/// matrix is diagonal. Throws on failure to converge within the sweep
/// cap, which indicates a bug rather than bad input.
SVDFactorization svd(const QuaternionMatrix& a);

/// Extends Q (m x j, orthonormal columns) to a symplectic m x m matrix
/// whose last j columns equal Q exactly. New columns come from
/// Gram-Schmidt over the right quaternion module, seeded from the
/// standard basis with near-dependent candidates skipped.
QuaternionMatrix complete_symplectic(const QuaternionMatrix& q,
                                     double tol = kDefaultTol);

/// Same contract with Gaussian candidate columns drawn from `gauge`,
/// giving an independent completion for gauge-invariance checks.
QuaternionMatrix complete_symplectic_randomized(const QuaternionMatrix& q,
                                                GaussianSource& gauge,
                                                double tol = kDefaultTol);

/// Simultaneous factorization of the blocks (T, P) of a Stiefel point x:
///   P = a * diag(I_p, diag(c), 0_r) * b^*
///   T = m * S_T * b^*
/// where S_T carries -s_i on the interior columns and -I_r on the zero
/// columns, both against the shared right frame b. Block sizes satisfy
/// p + q + r = k and the interior values obey 0 < c_i < 1.
struct RelativeSVD {
  QuaternionMatrix m;  // (n-k) x (n-k) symplectic
  QuaternionMatrix a;  // k x k symplectic
  QuaternionMatrix b;  // k x k symplectic
  int p = 0;
  int q = 0;
  int r = 0;
  std::vector<double> c;  // interior singular values of P
  std::vector<double> s;  // sqrt(1 - c_i^2)

  int k() const { return a.rows(); }
  int ambient_rows() const { return m.rows() + a.rows(); }

  QuaternionMatrix reconstruct_p() const;
  QuaternionMatrix reconstruct_t() const;
  /// Stacked [T; P] reconstruction.
  QuaternionMatrix reconstruct() const;
};

/// Middle factor of the P block: diag(I_p, diag(values), 0_r), k x k.
QuaternionMatrix p_middle_factor(int k, int p, int q, int r,
                                 const std::vector<double>& values);

/// Middle factor of the T block: -values on the interior columns,
/// -I_r on the zero columns, (n-k) x k.
QuaternionMatrix t_middle_factor(int n_minus_k, int k, int p, int q, int r,
                                 const std::vector<double>& values);

/// Relative SVD of a Stiefel point given as its full n x k matrix.
/// Throws if the orthonormality residual exceeds `tol`.
RelativeSVD relative_svd(const QuaternionMatrix& x, double tol = kDefaultTol);

}  // namespace hstiefel
