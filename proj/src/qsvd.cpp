#include "hstiefel/qsvd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace hstiefel {

namespace {

constexpr int kJacobiMaxSweeps = 100;
// Residual off-diagonal mass of B^*B accepted if the sweep cap is hit.
constexpr double kJacobiOffMassTol = 1e-14;
// A pair whose Gram entry is below this multiple of the column norms is
// orthogonal to working precision; rotating it would chase rounding noise.
constexpr double kJacobiPairTol = 1e-14;
// Columns below this fraction of the largest column norm are rank-null;
// rotations among them only stir rounding noise and, once the entries reach
// the denormal range, yield non-unit phases that corrupt the right frame.
constexpr double kJacobiDeadTol = 1e-60;
// Columns shorter than this carry no usable direction.
constexpr double kNullColumnTol = 1e-150;
// Gram-Schmidt pivot: completion candidates with a shorter residual are
// skipped as near-dependent.
constexpr double kPivotTol = 1e-6;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// <a_j, b_l> = sum_i conj(a(i,j)) b(i,l), the right-module inner product.
Quaternion col_dot(const QuaternionMatrix& a, int j, const QuaternionMatrix& b,
                   int l) {
  Quaternion acc{};
  for (int i = 0; i < a.rows(); ++i) acc += a(i, j).conjugate() * b(i, l);
  return acc;
}

double col_norm_sq(const QuaternionMatrix& a, int j) {
  double acc = 0.0;
  for (int i = 0; i < a.rows(); ++i) acc += a(i, j).norm_sq();
  return acc;
}

void scale_col(QuaternionMatrix& a, int j, double f) {
  for (int i = 0; i < a.rows(); ++i) a(i, j) = a(i, j) * f;
}

// a_j <- a_j - b_l * coeff, the Gram-Schmidt update over the right module.
void axpy_col(QuaternionMatrix& a, int j, const QuaternionMatrix& b, int l,
              const Quaternion& coeff) {
  for (int i = 0; i < a.rows(); ++i) a(i, j) -= b(i, l) * coeff;
}

// Applies the 2x2 rotation [[cs, -sn*omega], [conj(omega)*sn, cs]] to
// columns (p, q), acting on the right.
void rotate_pair(QuaternionMatrix& mat, int p, int q, const Quaternion& omega,
                 double cs, double sn) {
  const Quaternion r21 = omega.conjugate() * sn;
  const Quaternion r12 = omega * (-sn);
  for (int i = 0; i < mat.rows(); ++i) {
    const Quaternion bp = mat(i, p);
    const Quaternion bq = mat(i, q);
    mat(i, p) = bp * cs + bq * r21;
    mat(i, q) = bp * r12 + bq * cs;
  }
}

// Fills the free positions of `out` with columns orthonormal to everything
// in `placed`, drawing candidates from the standard basis or, when `gauge`
// is given, from Gaussian vectors. Repeating the candidate sweep always
// makes progress: while positions remain open, some standard basis vector
// keeps a residual of at least 1/sqrt(m) against the placed columns.
void complete_columns(QuaternionMatrix& out,
                      const std::vector<int>& free_positions,
                      std::vector<int> placed, GaussianSource* gauge) {
  const int m = out.rows();
  std::size_t next = 0;
  int rounds = 0;
  while (next < free_positions.size()) {
    if (++rounds > 64)
      throw std::runtime_error("orthonormal completion stalled");
    for (int cand = 0; cand < m && next < free_positions.size(); ++cand) {
      const int dst = free_positions[next];
      for (int i = 0; i < m; ++i)
        out(i, dst) = gauge ? gauge->next_quaternion() : Quaternion{};
      if (!gauge) out(cand, dst) = Quaternion::real(1.0);
      // Two projection passes keep the result orthogonal to working
      // precision even when the candidate starts nearly dependent.
      for (int pass = 0; pass < 2; ++pass)
        for (int col : placed)
          axpy_col(out, dst, out, col, col_dot(out, col, out, dst));
      const double norm = std::sqrt(col_norm_sq(out, dst));
      if (norm <= kPivotTol) continue;
      scale_col(out, dst, 1.0 / norm);
      placed.push_back(dst);
      ++next;
    }
  }
}

QuaternionMatrix complete_impl(const QuaternionMatrix& q, double tol,
                               GaussianSource* gauge) {
  const int m = q.rows();
  const int j = q.cols();
  require(m >= 1 && j <= m, "complete_symplectic: more columns than rows");
  QuaternionMatrix gram = q.adjoint() * q;
  gram -= QuaternionMatrix::identity(j);
  const double residual = fro_norm(gram);
  if (residual > tol)
    throw std::domain_error(
        "complete_symplectic: columns not orthonormal (residual " +
        std::to_string(residual) + ")");

  QuaternionMatrix out(m, m);
  std::vector<int> placed;
  std::vector<int> free_positions;
  const int offset = m - j;
  if (j > 0) out.set_block(0, offset, q);
  for (int c = 0; c < j; ++c) placed.push_back(offset + c);
  for (int c = 0; c < offset; ++c) free_positions.push_back(c);
  complete_columns(out, free_positions, placed, gauge);
  return out;
}

double off_diag_mass(const QuaternionMatrix& b) {
  double off = 0.0;
  for (int p = 0; p < b.cols(); ++p)
    for (int q = p + 1; q < b.cols(); ++q)
      off += col_dot(b, p, b, q).norm_sq();
  return 2.0 * off;
}

}  // namespace

QuaternionMatrix SVDFactorization::reconstruct() const {
  return u * real_diag(u.rows(), v.rows(), s) * v.adjoint();
}

SVDFactorization svd(const QuaternionMatrix& a) {
  const int m = a.rows();
  const int n = a.cols();
  require(m >= 1 && n >= 1, "svd: matrix must be nonempty");

  QuaternionMatrix b = a;
  QuaternionMatrix v = QuaternionMatrix::identity(n);

  double scale_sq = 0.0;
  for (int j = 0; j < n; ++j) scale_sq = std::max(scale_sq, col_norm_sq(b, j));
  const double dead_sq = scale_sq * (kJacobiDeadTol * kJacobiDeadTol);

  bool converged = (n == 1);
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    int rotations = 0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double app = col_norm_sq(b, p);
        const double aqq = col_norm_sq(b, q);
        if (app <= dead_sq || aqq <= dead_sq) continue;
        const Quaternion apq = col_dot(b, p, b, q);
        const double h = apq.norm();
        if (h <= kJacobiPairTol * std::sqrt(app) * std::sqrt(aqq)) continue;
        ++rotations;
        // Annihilates the (p, q) Gram entry: with omega = apq/|apq| the
        // entry equals omega * ((aqq-app) cs sn + h (cs^2 - sn^2)), so the
        // classical real Jacobi angle applies.
        const Quaternion omega = apq * (1.0 / h);
        const double zeta = (aqq - app) / (2.0 * h);
        const double sign = (zeta >= 0.0) ? 1.0 : -1.0;
        const double t = -sign / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * cs;
        rotate_pair(b, p, q, omega, cs, sn);
        rotate_pair(v, p, q, omega, cs, sn);
      }
    }
    converged = (rotations == 0);
  }
  if (!converged && off_diag_mass(b) > kJacobiOffMassTol)
    throw std::runtime_error("svd: Jacobi sweeps failed to converge");

  // Column norms are the singular values; sort descending and permute the
  // right frame along.
  std::vector<double> norms(n);
  for (int j = 0; j < n; ++j) norms[j] = std::sqrt(col_norm_sq(b, j));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return norms[x] > norms[y]; });

  SVDFactorization f;
  const int count = std::min(m, n);
  f.s.resize(count);
  QuaternionMatrix bs(m, n);
  QuaternionMatrix vs(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) bs(i, j) = b(i, order[j]);
    for (int i = 0; i < n; ++i) vs(i, j) = v(i, order[j]);
  }
  for (int j = 0; j < count; ++j) f.s[j] = norms[order[j]];
  f.v = vs;

  // Left frame: normalized nonzero columns, completed to a symplectic
  // matrix in the remaining positions. Dead columns hold only rounding
  // noise with no usable direction, so they are completed instead.
  const double null_tol =
      std::max(kNullColumnTol, kJacobiDeadTol * std::sqrt(scale_sq));
  f.u = QuaternionMatrix(m, m);
  std::vector<int> placed;
  std::vector<int> free_positions;
  for (int j = 0; j < m; ++j) {
    if (j < count && f.s[j] > null_tol) {
      for (int i = 0; i < m; ++i) f.u(i, j) = bs(i, j) * (1.0 / f.s[j]);
      placed.push_back(j);
    } else {
      free_positions.push_back(j);
    }
  }
  complete_columns(f.u, free_positions, placed, nullptr);
  return f;
}

QuaternionMatrix complete_symplectic(const QuaternionMatrix& q, double tol) {
  return complete_impl(q, tol, nullptr);
}

QuaternionMatrix complete_symplectic_randomized(const QuaternionMatrix& q,
                                                GaussianSource& gauge,
                                                double tol) {
  return complete_impl(q, tol, &gauge);
}

QuaternionMatrix p_middle_factor(int k, int p, int q, int r,
                                 const std::vector<double>& values) {
  require(p >= 0 && q >= 0 && r >= 0 && p + q + r == k,
          "p_middle_factor: block sizes must sum to k");
  require(static_cast<int>(values.size()) == q,
          "p_middle_factor: need one value per interior column");
  QuaternionMatrix f(k, k);
  for (int i = 0; i < p; ++i) f(i, i) = Quaternion::real(1.0);
  for (int i = 0; i < q; ++i) f(p + i, p + i) = Quaternion::real(values[i]);
  return f;
}

QuaternionMatrix t_middle_factor(int n_minus_k, int k, int p, int q, int r,
                                 const std::vector<double>& values) {
  require(p >= 0 && q >= 0 && r >= 0 && p + q + r == k,
          "t_middle_factor: block sizes must sum to k");
  require(static_cast<int>(values.size()) == q,
          "t_middle_factor: need one value per interior column");
  const int pp = n_minus_k - q - r;
  require(pp >= 0, "t_middle_factor: q + r exceeds n - k");
  QuaternionMatrix f(n_minus_k, k);
  for (int i = 0; i < q; ++i) f(pp + i, p + i) = Quaternion::real(-values[i]);
  for (int i = 0; i < r; ++i)
    f(pp + q + i, p + q + i) = Quaternion::real(-1.0);
  return f;
}

QuaternionMatrix RelativeSVD::reconstruct_p() const {
  return a * p_middle_factor(k(), p, q, r, c) * b.adjoint();
}

QuaternionMatrix RelativeSVD::reconstruct_t() const {
  return m * t_middle_factor(m.rows(), k(), p, q, r, s) * b.adjoint();
}

QuaternionMatrix RelativeSVD::reconstruct() const {
  return vconcat(reconstruct_t(), reconstruct_p());
}

RelativeSVD relative_svd(const QuaternionMatrix& x, double tol) {
  const int n = x.rows();
  const int k = x.cols();
  require(k >= 1 && k < n, "relative_svd: need 1 <= k < n");
  QuaternionMatrix gram = x.adjoint() * x;
  gram -= QuaternionMatrix::identity(k);
  const double residual = fro_norm(gram);
  if (residual > tol)
    throw std::domain_error("relative_svd: point is off the manifold (residual " +
                            std::to_string(residual) + ")");

  const int nk = n - k;
  const QuaternionMatrix t_block = x.block(0, 0, nk, k);
  const QuaternionMatrix p_block = x.block(nk, 0, k, k);

  const SVDFactorization f = svd(p_block);
  RelativeSVD rel;
  rel.a = f.u;
  rel.b = f.v;
  for (double sig : f.s) {
    if (sig > 1.0 - kSingularClassEps)
      ++rel.p;
    else if (sig < kSingularClassEps)
      ++rel.r;
  }
  rel.q = k - rel.p - rel.r;
  for (int i = 0; i < rel.q; ++i) {
    const double ci = std::min(f.s[rel.p + i], 1.0);
    rel.c.push_back(ci);
    rel.s.push_back(std::sqrt((1.0 - ci) * (1.0 + ci)));
  }

  // The constraint forces rank(T) = q + r <= n - k; a violation here means
  // the residual check above was defeated, not a property of the input.
  const int pp = nk - rel.q - rel.r;
  if (pp < 0)
    throw std::domain_error("relative_svd: T block rank exceeds n - k");

  // Columns of T b at the interior and zero positions are the left
  // directions of T, scaled by -s_i and -1.
  const QuaternionMatrix w = t_block * rel.b;
  const int extra = rel.q + rel.r;
  QuaternionMatrix fixed(nk, extra);
  for (int j = 0; j < rel.q; ++j)
    for (int i = 0; i < nk; ++i)
      fixed(i, j) = w(i, rel.p + j) * (-1.0 / rel.s[j]);
  for (int j = 0; j < rel.r; ++j)
    for (int i = 0; i < nk; ++i) fixed(i, rel.q + j) = -w(i, rel.p + rel.q + j);

  // The columns are orthonormal up to the manifold residual; Gram-Schmidt
  // makes them exact before completion.
  for (int j = 0; j < extra; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (int l = 0; l < j; ++l)
        axpy_col(fixed, j, fixed, l, col_dot(fixed, l, fixed, j));
    const double norm = std::sqrt(col_norm_sq(fixed, j));
    if (norm < 0.5)
      throw std::domain_error("relative_svd: degenerate left directions");
    scale_col(fixed, j, 1.0 / norm);
  }

  rel.m = (extra > 0) ? complete_symplectic(fixed)
                      : QuaternionMatrix::identity(nk);
  return rel;
}

}  // namespace hstiefel
