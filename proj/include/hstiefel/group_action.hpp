#pragma once

#include <cstdint>

#include "hstiefel/stiefel.hpp"

namespace hstiefel {

/// Element of K_{n,k} = Sp(n-k) x Sp(k) x Sp(k), the group acting on
/// critical levels by (m, a, b) . [T; P] = [m T b*; a P b*]. Factors are
/// validated as symplectic at construction.
class GroupElement {
 public:
  GroupElement(QuaternionMatrix m, QuaternionMatrix a, QuaternionMatrix b,
               double tol = kDefaultTol);

  const QuaternionMatrix& m() const { return m_; }
  const QuaternionMatrix& a() const { return a_; }
  const QuaternionMatrix& b() const { return b_; }

  int n_minus_k() const { return m_.rows(); }
  int k() const { return a_.rows(); }

 private:
  QuaternionMatrix m_;
  QuaternionMatrix a_;
  QuaternionMatrix b_;
};

GroupElement identity_element(int n, int k);

/// [m T b*; a P b*]; preserves the constraint, criticality, and level.
StiefelPoint act_point(const GroupElement& g, const StiefelPoint& x);

/// Tangent lift diag(m, a) . v . b*, an isometry onto the tangent space
/// at act_point(g, x). Throws when v fails its tangency check.
TangentVector act_tangent(const GroupElement& g, const TangentVector& v,
                          double tol = kDefaultTol);

/// Componentwise product; act_point(compose(g, h), x) equals acting by h
/// then by g.
GroupElement compose(const GroupElement& g, const GroupElement& h);

/// Haar-like sample: three symplectic factors from orthonormalized
/// Gaussian squares. Deterministic in the seed.
GroupElement random_group_element(int n, int k, std::uint64_t seed);
GroupElement random_group_element(int n, int k, GaussianSource& source);

/// Orthonormalization of a Gaussian m x m quaternion matrix.
QuaternionMatrix random_symplectic(int m, GaussianSource& source);

/// Embedding of the isotropy group of the notable point x_0^q:
/// (m1, m2, a1, a2) -> (diag(m1, m2), diag(a1, a2), diag(m1, a2)) with
/// m1, a1 of size p = k - q. The result fixes x_0^q.
GroupElement isotropy_embed(const QuaternionMatrix& m1,
                            const QuaternionMatrix& m2,
                            const QuaternionMatrix& a1,
                            const QuaternionMatrix& a2,
                            double tol = kDefaultTol);

struct TransitivityWitness {
  GroupElement g;
  int level = 0;
};

/// For a critical point x at level q, produces g with
/// act_point(g, notable_point(n, k, q)) = x, via the relative SVD and the
/// fixed permutation that bridges its block order (ones first) with the
/// notable point's (zeros first). Throws when x is not critical.
TransitivityWitness transitivity_witness(const StiefelPoint& x,
                                         double tol = kDefaultTol);

}  // namespace hstiefel
