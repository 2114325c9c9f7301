#include "hstiefel/group_action.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "hstiefel/morse.hpp"
#include "hstiefel/qsvd.hpp"

namespace hstiefel {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void require_symplectic(const QuaternionMatrix& g, double tol,
                        const std::string& name) {
  require(g.rows() == g.cols() && g.rows() >= 0,
          name + " factor must be square");
  QuaternionMatrix gram = g.adjoint() * g;
  gram -= QuaternionMatrix::identity(g.cols());
  const double residual = fro_norm(gram);
  if (residual > tol)
    throw std::domain_error(name + " factor is not symplectic (residual " +
                            std::to_string(residual) + ")");
}

QuaternionMatrix diag_join(const QuaternionMatrix& top_left,
                           const QuaternionMatrix& bottom_right) {
  QuaternionMatrix out(top_left.rows() + bottom_right.rows(),
                       top_left.cols() + bottom_right.cols());
  out.set_block(0, 0, top_left);
  out.set_block(top_left.rows(), top_left.cols(), bottom_right);
  return out;
}

}  // namespace

GroupElement::GroupElement(QuaternionMatrix m, QuaternionMatrix a,
                           QuaternionMatrix b, double tol)
    : m_(std::move(m)), a_(std::move(a)), b_(std::move(b)) {
  require(a_.rows() == b_.rows(), "GroupElement: a and b sizes disagree");
  require_symplectic(m_, tol, "m");
  require_symplectic(a_, tol, "a");
  require_symplectic(b_, tol, "b");
}

GroupElement identity_element(int n, int k) {
  require(k >= 1 && k < n, "identity_element: need 1 <= k < n");
  return {QuaternionMatrix::identity(n - k), QuaternionMatrix::identity(k),
          QuaternionMatrix::identity(k)};
}

StiefelPoint act_point(const GroupElement& g, const StiefelPoint& x) {
  require(g.n_minus_k() == x.n() - x.k() && g.k() == x.k(),
          "act_point: group element does not match the point's (n, k)");
  const QuaternionMatrix b_adj = g.b().adjoint();
  return StiefelPoint(vconcat(g.m() * x.t_block() * b_adj,
                              g.a() * x.p_block() * b_adj));
}

TangentVector act_tangent(const GroupElement& g, const TangentVector& v,
                          double tol) {
  const double residual = v.tangency_residual();
  if (residual > tol)
    throw std::domain_error("act_tangent: input is not tangent (residual " +
                            std::to_string(residual) + ")");
  const StiefelPoint& x = v.base();
  require(g.n_minus_k() == x.n() - x.k() && g.k() == x.k(),
          "act_tangent: group element does not match the point's (n, k)");
  const int nk = x.n() - x.k();
  const QuaternionMatrix b_adj = g.b().adjoint();
  const QuaternionMatrix vt = v.mat().block(0, 0, nk, x.k());
  const QuaternionMatrix vp = v.mat().block(nk, 0, x.k(), x.k());
  return {act_point(g, x),
          vconcat(g.m() * vt * b_adj, g.a() * vp * b_adj)};
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  return {g.m() * h.m(), g.a() * h.a(), g.b() * h.b()};
}

GroupElement random_group_element(int n, int k, std::uint64_t seed) {
  GaussianSource source(seed);
  return random_group_element(n, k, source);
}

GroupElement random_group_element(int n, int k, GaussianSource& source) {
  require(k >= 1 && k < n, "random_group_element: need 1 <= k < n");
  QuaternionMatrix m = random_symplectic(n - k, source);
  QuaternionMatrix a = random_symplectic(k, source);
  QuaternionMatrix b = random_symplectic(k, source);
  return {std::move(m), std::move(a), std::move(b)};
}

QuaternionMatrix random_symplectic(int m, GaussianSource& source) {
  require(m >= 1, "random_symplectic: size must be positive");
  // complete_symplectic of an empty column set orthonormalizes Gaussian
  // candidates into a full frame.
  return complete_symplectic_randomized(QuaternionMatrix(m, 0), source);
}

GroupElement isotropy_embed(const QuaternionMatrix& m1,
                            const QuaternionMatrix& m2,
                            const QuaternionMatrix& a1,
                            const QuaternionMatrix& a2, double tol) {
  require(m1.rows() == m1.cols() && m2.rows() == m2.cols() &&
              a1.rows() == a1.cols() && a2.rows() == a2.cols(),
          "isotropy_embed: blocks must be square");
  require(m1.rows() == a1.rows(),
          "isotropy_embed: m1 and a1 must share the size p");
  return {diag_join(m1, m2), diag_join(a1, a2), diag_join(m1, a2), tol};
}

TransitivityWitness transitivity_witness(const StiefelPoint& x, double tol) {
  const CriticalCheck check = is_critical(x, tol);
  if (!check.critical)
    throw std::domain_error(
        "transitivity_witness: point is not critical (residual " +
        std::to_string(check.residual) + ")");
  const RelativeSVD rel = relative_svd(x.mat(), tol);
  if (rel.q != 0)
    throw std::domain_error(
        "transitivity_witness: interior singular values on a critical point");

  // x reconstructs with ones-first blocks; the notable point puts zeros
  // first. Two permutations bridge the orders: pi swaps the column blocks
  // (sizes p_pt, level), rho moves the identity block of T_0 to the rows
  // where the relative SVD put it.
  const int level = rel.p;      // number of unit singular values
  const int p_pt = rel.r;      // k - level, the notable point's p
  const int k = x.k();
  const int nk = x.n() - k;
  const int pp = nk - p_pt;

  QuaternionMatrix pi(k, k);
  for (int i = 0; i < level; ++i) pi(i, p_pt + i) = Quaternion::real(1.0);
  for (int i = 0; i < p_pt; ++i) pi(level + i, i) = Quaternion::real(1.0);

  QuaternionMatrix rho(nk, nk);
  for (int i = 0; i < pp; ++i) rho(i, p_pt + i) = Quaternion::real(1.0);
  for (int i = 0; i < p_pt; ++i) rho(pp + i, i) = Quaternion::real(1.0);

  GroupElement g(-(rel.m * rho), rel.a * pi, rel.b * pi, tol);
  return {std::move(g), level};
}

}  // namespace hstiefel
