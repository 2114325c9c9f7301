#pragma once

#include <vector>

#include "hstiefel/stiefel.hpp"

namespace hstiefel {

/// Height tolerance when rounding a critical value to its integer level.
inline constexpr double kLevelRoundTol = 1e-6;
/// Eigenvalue snapping half-width around the exact spectrum {-2, 0, 2}.
inline constexpr double kSnapTol = 0.05;

struct CriticalCheck {
  bool critical = false;
  double residual = 0.0;  // Frobenius norm of T * adjoint(P)
};

/// Eigenvalues of the Hessian at a critical point, snapped to the exact
/// spectrum {-2, 0, 2} for multiplicity counting. `residual` is the
/// largest distance of any raw eigenvalue to that set.
struct SpectrumReport {
  std::vector<double> eigenvalues;  // ascending
  int mult_minus2 = 0;
  int mult_zero = 0;
  int mult_plus2 = 0;
  double residual = 0.0;
};

/// Closed-form integers attached to the critical submanifold at level q.
struct SigmaInvariants {
  int n = 0;
  int k = 0;
  int q = 0;
  int p = 0;           // k - q
  int index = 0;       // 4(n - 2k + q)q
  int kernel_dim = 0;  // 4np - 8p^2 + 2k^2 + k
  int plus_dim = 0;    // 4p^2
  int dim_sigma = 0;   // equals kernel_dim (nondegeneracy)
  int dim_x = 0;       // 4nk - 2k^2 + k
};

/// h(x) = Re Tr(P*P); ranges over [0, k].
double height(const StiefelPoint& x);

/// grad h_x = -2 [T P*P; (PP* - I)P], tangent at x.
TangentVector gradient(const StiefelPoint& x);

/// Gradient [0; 2P] of the ambient extension of h at any n x k matrix.
QuaternionMatrix gradient_extension(const QuaternionMatrix& x);

/// x is critical iff T * adjoint(P) vanishes.
CriticalCheck is_critical(const StiefelPoint& x, double tol = kDefaultTol);

/// Critical values of h on X_{n,k}: 0..k when n >= 2k, else 2k-n..k.
std::vector<int> critical_levels(int n, int k);

/// Canonical representative of the level-q critical submanifold:
/// T_0 = [I_p 0; 0 0], P_0 = diag(0_p, I_q) with p = k - q.
StiefelPoint notable_point(int n, int k, int q);

/// Integer level of a critical point; throws when x is not critical or
/// its height is not within kLevelRoundTol of an integer.
int critical_level(const StiefelPoint& x, double tol = kDefaultTol);

/// Weingarten map A_x(v, w) = -v x* w - x(v*w + w*v)/2 for tangent v and
/// normal w; throws when w has a tangential component beyond tol.
TangentVector weingarten(const StiefelPoint& x, const TangentVector& v,
                         const QuaternionMatrix& w, double tol = kDefaultTol);

/// Hessian of h at a critical point, in the transport-free form
///   Hh_x(v) = -2(vx* + xv*) x_0 P - 2 [0; PP* - I] x_0* v.
/// Defined at critical points only; throws otherwise.
TangentVector hessian_apply(const StiefelPoint& x, const TangentVector& v,
                            double tol = kDefaultTol);

/// Independent Hessian assembly P_x(Hphi_x(v)) + A_x(v, proj-normal of
/// grad phi), with Hphi_x(v) = 2 [0; x_0* v]. Serves as the oracle for
/// hessian_apply; the two must agree at every critical point.
TangentVector hessian_reference(const StiefelPoint& x, const TangentVector& v,
                                double tol = kDefaultTol);

/// Block form -2A [X P*P - beta* beta X; X* beta* P - P* beta X] through
/// an explicit symplectic transport A (last k columns equal to x, beta
/// its lower-left block). Exists to check that results do not depend on
/// the choice of A.
TangentVector hessian_apply_in_gauge(const StiefelPoint& x,
                                     const TangentVector& v,
                                     const QuaternionMatrix& a,
                                     double tol = kDefaultTol);

/// Dense spectrum of the Hessian as a real self-adjoint operator on the
/// tangent space at a critical point. Throws when an eigenvalue strays
/// beyond kSnapTol from {-2, 0, 2}.
SpectrumReport hessian_spectrum(const StiefelPoint& x,
                                double tol = kDefaultTol);

/// Closed-form invariants at level q of X_{n,k}; throws on invalid q.
SigmaInvariants sigma_invariants(int n, int k, int q);

}  // namespace hstiefel
