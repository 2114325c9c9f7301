#pragma once

#include <vector>

#include "hstiefel/qsvd.hpp"
#include "hstiefel/stiefel.hpp"

namespace hstiefel {

/// Closed-form flow data of an initial point: its relative SVD and one
/// positive constant per interior singular value, fixed by
/// c_i^2 = C_i / (1 + C_i) at t = 0.
struct FlowData {
  RelativeSVD decomposition;
  std::vector<double> C;
};

/// Sampled gradient-flow trajectory. `drift` is the largest constraint
/// residual over the samples (zero up to rounding when reprojection is
/// on; the integrator's honest drift otherwise).
struct FlowTrajectory {
  std::vector<double> times;
  std::vector<StiefelPoint> points;
  std::vector<double> heights;
  std::vector<double> gradient_norms;
  double drift = 0.0;
};

struct FlowLimits {
  StiefelPoint backward;  // t -> -infinity, level p
  StiefelPoint forward;   // t -> +infinity, level k - r
};

/// Decomposes x0 and fixes the flow constants. Critical points have no
/// interior values and get an empty C.
FlowData flow_constants(const StiefelPoint& x0, double tol = kDefaultTol);

/// Flow position at time t:
///   c_i(t)^2 = C_i e^{4t} / (1 + C_i e^{4t}),
///   s_i(t)^2 = 1 / (1 + C_i e^{4t}),
/// evaluated in logistic form so large |t| saturates instead of
/// overflowing. The frames of the decomposition are constant in t.
StiefelPoint closed_form_flow(const FlowData& data, double t);
StiefelPoint closed_form_flow(const StiefelPoint& x0, double t,
                              double tol = kDefaultTol);

/// The ascent field [T'; P'] = [-2 T P*P; -2 (PP* - I) P], which equals
/// grad h on the manifold, evaluated on any ambient matrix.
QuaternionMatrix flow_field(const QuaternionMatrix& y);

/// Classical fixed-step RK4 on the ambient field, sampled at every step;
/// polar reprojection after each step when `reproject` is set.
FlowTrajectory numerical_flow(const StiefelPoint& x0, double t0, double t1,
                              int steps, bool reproject);

/// Limit points of the flow line through x0, computed from the
/// decomposition (interior values driven to 0 backward, 1 forward); both
/// are critical. A critical x0 is its own limit in both directions.
FlowLimits flow_limits(const StiefelPoint& x0, double tol = kDefaultTol);

}  // namespace hstiefel
