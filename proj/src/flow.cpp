#include "hstiefel/flow.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hstiefel/morse.hpp"

namespace hstiefel {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// 1/(1 + e^{-u}) without overflow on either tail.
double logistic(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

StiefelPoint assemble(const RelativeSVD& rel, const std::vector<double>& c_t,
                      const std::vector<double>& s_t) {
  const int k = rel.k();
  const QuaternionMatrix b_adj = rel.b.adjoint();
  const QuaternionMatrix p_mat =
      rel.a * p_middle_factor(k, rel.p, rel.q, rel.r, c_t) * b_adj;
  const QuaternionMatrix t_mat =
      rel.m * t_middle_factor(rel.m.rows(), k, rel.p, rel.q, rel.r, s_t) *
      b_adj;
  return StiefelPoint(vconcat(t_mat, p_mat));
}

}  // namespace

FlowData flow_constants(const StiefelPoint& x0, double tol) {
  FlowData data{relative_svd(x0.mat(), tol), {}};
  data.C.reserve(data.decomposition.c.size());
  for (int i = 0; i < data.decomposition.q; ++i) {
    const double c2 = data.decomposition.c[i] * data.decomposition.c[i];
    const double s2 = data.decomposition.s[i] * data.decomposition.s[i];
    data.C.push_back(c2 / s2);
  }
  return data;
}

StiefelPoint closed_form_flow(const FlowData& data, double t) {
  const RelativeSVD& rel = data.decomposition;
  std::vector<double> c_t(rel.q);
  std::vector<double> s_t(rel.q);
  for (int i = 0; i < rel.q; ++i) {
    const double u = 4.0 * t + std::log(data.C[i]);
    c_t[i] = std::sqrt(logistic(u));
    s_t[i] = std::sqrt(logistic(-u));
  }
  return assemble(rel, c_t, s_t);
}

StiefelPoint closed_form_flow(const StiefelPoint& x0, double t, double tol) {
  return closed_form_flow(flow_constants(x0, tol), t);
}

QuaternionMatrix flow_field(const QuaternionMatrix& y) {
  require(y.cols() >= 1 && y.cols() < y.rows(), "flow_field: need 1 <= k < n");
  const int k = y.cols();
  const int nk = y.rows() - k;
  const QuaternionMatrix t = y.block(0, 0, nk, k);
  const QuaternionMatrix p = y.block(nk, 0, k, k);
  return vconcat(-2.0 * (t * (p.adjoint() * p)),
                 -2.0 * ((p * p.adjoint() - QuaternionMatrix::identity(k)) *
                         p));
}

FlowTrajectory numerical_flow(const StiefelPoint& x0, double t0, double t1,
                              int steps, bool reproject) {
  require(steps >= 1, "numerical_flow: need at least one step");
  require(t0 < t1, "numerical_flow: need t0 < t1");

  FlowTrajectory traj;
  traj.times.reserve(steps + 1);
  traj.points.reserve(steps + 1);
  traj.heights.reserve(steps + 1);
  traj.gradient_norms.reserve(steps + 1);

  const auto record = [&traj](double t, const QuaternionMatrix& y) {
    StiefelPoint point{y};
    traj.drift = std::max(traj.drift, point.constraint_residual());
    traj.times.push_back(t);
    traj.heights.push_back(height(point));
    traj.gradient_norms.push_back(fro_norm(flow_field(y)));
    traj.points.push_back(std::move(point));
  };

  const double dt = (t1 - t0) / steps;
  QuaternionMatrix y = x0.mat();
  record(t0, y);
  for (int i = 0; i < steps; ++i) {
    const QuaternionMatrix k1 = flow_field(y);
    const QuaternionMatrix k2 = flow_field(y + (0.5 * dt) * k1);
    const QuaternionMatrix k3 = flow_field(y + (0.5 * dt) * k2);
    const QuaternionMatrix k4 = flow_field(y + dt * k3);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (reproject) y = polar_retract(y).mat();
    record(t0 + (i + 1) * dt, y);
  }
  return traj;
}

FlowLimits flow_limits(const StiefelPoint& x0, double tol) {
  const RelativeSVD rel = relative_svd(x0.mat(), tol);
  const std::vector<double> zeros(rel.q, 0.0);
  const std::vector<double> ones(rel.q, 1.0);
  // Backward: interior values collapse into the zero block (level p).
  // Forward: they saturate into the unit block (level k - r).
  return {assemble(rel, zeros, ones), assemble(rel, ones, zeros)};
}

}  // namespace hstiefel
