#include "hstiefel/morse.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hstiefel {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void require_critical(const StiefelPoint& x, double tol) {
  const CriticalCheck check = is_critical(x, tol);
  if (!check.critical)
    throw std::domain_error(
        "Hessian is defined at critical points only (T P* residual " +
        std::to_string(check.residual) + ")");
}

// [0; bottom] padded to n rows.
QuaternionMatrix lift_bottom(int n, const QuaternionMatrix& bottom) {
  QuaternionMatrix out(n, bottom.cols());
  out.set_block(n - bottom.rows(), 0, bottom);
  return out;
}

}  // namespace

double height(const StiefelPoint& x) {
  const QuaternionMatrix p = x.p_block();
  return re_trace(p.adjoint() * p);
}

TangentVector gradient(const StiefelPoint& x) {
  const QuaternionMatrix t = x.t_block();
  const QuaternionMatrix p = x.p_block();
  const QuaternionMatrix top = t * (p.adjoint() * p);
  const QuaternionMatrix bottom = (p * p.adjoint() -
                                   QuaternionMatrix::identity(x.k())) *
                                  p;
  return {x, -2.0 * vconcat(top, bottom)};
}

QuaternionMatrix gradient_extension(const QuaternionMatrix& x) {
  require(x.cols() >= 1 && x.cols() < x.rows(),
          "gradient_extension: need 1 <= k < n");
  const int k = x.cols();
  return lift_bottom(x.rows(), 2.0 * x.block(x.rows() - k, 0, k, k));
}

CriticalCheck is_critical(const StiefelPoint& x, double tol) {
  const double residual = fro_norm(x.t_block() * x.p_block().adjoint());
  return {residual <= tol, residual};
}

std::vector<int> critical_levels(int n, int k) {
  require(k >= 1 && k < n, "critical_levels: need 1 <= k < n");
  const int lo = std::max(0, 2 * k - n);
  std::vector<int> levels;
  for (int q = lo; q <= k; ++q) levels.push_back(q);
  return levels;
}

StiefelPoint notable_point(int n, int k, int q) {
  require(k >= 1 && k < n, "notable_point: need 1 <= k < n");
  const int lo = std::max(0, 2 * k - n);
  if (q < lo || q > k)
    throw std::domain_error("notable_point: level " + std::to_string(q) +
                            " is not critical on X_{" + std::to_string(n) +
                            "," + std::to_string(k) + "}");
  const int p = k - q;
  QuaternionMatrix mat(n, k);
  for (int i = 0; i < p; ++i) mat(i, i) = Quaternion::real(1.0);
  for (int i = 0; i < q; ++i)
    mat(n - k + p + i, p + i) = Quaternion::real(1.0);
  return StiefelPoint(mat);
}

int critical_level(const StiefelPoint& x, double tol) {
  const CriticalCheck check = is_critical(x, tol);
  if (!check.critical)
    throw std::domain_error("critical_level: point is not critical (residual " +
                            std::to_string(check.residual) + ")");
  const double h = height(x);
  const int level = static_cast<int>(std::lround(h));
  if (std::abs(h - level) > kLevelRoundTol)
    throw std::domain_error("critical_level: height " + std::to_string(h) +
                            " is not an integer level");
  return level;
}

TangentVector weingarten(const StiefelPoint& x, const TangentVector& v,
                         const QuaternionMatrix& w, double tol) {
  require(w.rows() == x.n() && w.cols() == x.k(),
          "weingarten: normal vector shape mismatch");
  const double tangential = fro_norm(tangent_project(x, w).mat());
  if (tangential > tol)
    throw std::domain_error("weingarten: w is not normal (residual " +
                            std::to_string(tangential) + ")");
  const QuaternionMatrix& xm = x.mat();
  const QuaternionMatrix& vm = v.mat();
  return {x, -(vm * (xm.adjoint() * w)) -
                 0.5 * (xm * (vm.adjoint() * w + w.adjoint() * vm))};
}

TangentVector hessian_apply(const StiefelPoint& x, const TangentVector& v,
                            double tol) {
  require_critical(x, tol);
  const QuaternionMatrix& xm = x.mat();
  const QuaternionMatrix& vm = v.mat();
  const int n = x.n();
  const int k = x.k();
  const QuaternionMatrix p = x.p_block();
  const QuaternionMatrix x0p = lift_bottom(n, p);  // x_0 P
  const QuaternionMatrix vp = vm.block(n - k, 0, k, k);  // x_0* v
  const QuaternionMatrix term1 =
      (vm * xm.adjoint() + xm * vm.adjoint()) * x0p;
  const QuaternionMatrix term2 = lift_bottom(
      n, (p * p.adjoint() - QuaternionMatrix::identity(k)) * vp);
  return {x, -2.0 * term1 - 2.0 * term2};
}

TangentVector hessian_reference(const StiefelPoint& x, const TangentVector& v,
                                double tol) {
  require_critical(x, tol);
  const int n = x.n();
  const int k = x.k();
  const QuaternionMatrix hphi =
      lift_bottom(n, 2.0 * v.mat().block(n - k, 0, k, k));
  const QuaternionMatrix grad_phi = gradient_extension(x.mat());
  const TangentVector shape_term =
      weingarten(x, v, normal_project(x, grad_phi), tol);
  return {x, tangent_project(x, hphi).mat() + shape_term.mat()};
}

TangentVector hessian_apply_in_gauge(const StiefelPoint& x,
                                     const TangentVector& v,
                                     const QuaternionMatrix& a, double tol) {
  require_critical(x, tol);
  const int n = x.n();
  const int k = x.k();
  require(a.rows() == n && a.cols() == n,
          "hessian_apply_in_gauge: transport must be n x n");
  if (!approx_equal(a.block(0, n - k, n, k), x.mat(), tol))
    throw std::domain_error(
        "hessian_apply_in_gauge: transport does not end at x");
  const QuaternionMatrix xy = a.adjoint() * v.mat();
  const QuaternionMatrix cap_x = xy.block(0, 0, n - k, k);
  const QuaternionMatrix beta = a.block(n - k, 0, k, n - k);
  const QuaternionMatrix p = x.p_block();
  const QuaternionMatrix top =
      cap_x * (p.adjoint() * p) - beta.adjoint() * (beta * cap_x);
  const QuaternionMatrix bottom =
      cap_x.adjoint() * (beta.adjoint() * p) - p.adjoint() * (beta * cap_x);
  return {x, -2.0 * (a * vconcat(top, bottom))};
}

SpectrumReport hessian_spectrum(const StiefelPoint& x, double tol) {
  require_critical(x, tol);
  const std::vector<TangentVector> basis = tangent_basis(x);
  const int d = static_cast<int>(basis.size());
  Eigen::MatrixXd h(d, d);
  for (int j = 0; j < d; ++j) {
    const TangentVector image = hessian_apply(x, basis[j], tol);
    for (int i = 0; i < d; ++i)
      h(i, j) = frobenius_inner(basis[i].mat(), image.mat());
  }
  // Self-adjointness holds to rounding; symmetrize before solving.
  const Eigen::MatrixXd sym = 0.5 * (h + h.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hessian_spectrum: eigensolver failed");

  SpectrumReport report;
  report.eigenvalues.resize(d);
  for (int i = 0; i < d; ++i) {
    const double lambda = solver.eigenvalues()(i);
    report.eigenvalues[i] = lambda;
    const double to_minus2 = std::abs(lambda + 2.0);
    const double to_zero = std::abs(lambda);
    const double to_plus2 = std::abs(lambda - 2.0);
    const double nearest = std::min({to_minus2, to_zero, to_plus2});
    report.residual = std::max(report.residual, nearest);
    if (nearest == to_minus2)
      ++report.mult_minus2;
    else if (nearest == to_zero)
      ++report.mult_zero;
    else
      ++report.mult_plus2;
  }
  if (report.residual > kSnapTol)
    throw std::runtime_error(
        "hessian_spectrum: eigenvalue strays from {-2, 0, 2} by " +
        std::to_string(report.residual));
  return report;
}

SigmaInvariants sigma_invariants(int n, int k, int q) {
  require(k >= 1 && k < n, "sigma_invariants: need 1 <= k < n");
  const int lo = std::max(0, 2 * k - n);
  if (q < lo || q > k)
    throw std::domain_error("sigma_invariants: level " + std::to_string(q) +
                            " is not critical on X_{" + std::to_string(n) +
                            "," + std::to_string(k) + "}");
  SigmaInvariants inv;
  inv.n = n;
  inv.k = k;
  inv.q = q;
  inv.p = k - q;
  inv.index = 4 * (n - 2 * k + q) * q;
  inv.kernel_dim = 4 * n * inv.p - 8 * inv.p * inv.p + 2 * k * k + k;
  inv.plus_dim = 4 * inv.p * inv.p;
  inv.dim_sigma = inv.kernel_dim;
  inv.dim_x = stiefel_dimension(n, k);
  return inv;
}

}  // namespace hstiefel
