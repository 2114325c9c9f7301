#include "hstiefel/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hstiefel/flow.hpp"
#include "hstiefel/json_io.hpp"
#include "hstiefel/morse.hpp"
#include "hstiefel/qsvd.hpp"
#include "hstiefel/stiefel.hpp"

namespace hstiefel {

namespace {

using nlohmann::ordered_json;

void emit(std::ostream& out, const ordered_json& j) {
  out << dump_json(j) << "\n";
}

QuaternionMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  const QuaternionMatrix mat = matrix_from_json(j);
  if (j.contains("n") && (!j["n"].is_number_integer() ||
                          j["n"].get<int>() != mat.rows()))
    throw std::invalid_argument(path + ": n does not match rows");
  if (j.contains("k") && (!j["k"].is_number_integer() ||
                          j["k"].get<int>() != mat.cols()))
    throw std::invalid_argument(path + ": k does not match cols");
  return mat;
}

ordered_json invariants_to_json(const SigmaInvariants& inv) {
  ordered_json j;
  j["n"] = inv.n;
  j["k"] = inv.k;
  j["q"] = inv.q;
  j["p"] = inv.p;
  j["index"] = inv.index;
  j["kernel_dim"] = inv.kernel_dim;
  j["plus_dim"] = inv.plus_dim;
  j["dim_sigma"] = inv.dim_sigma;
  j["dim_x"] = inv.dim_x;
  return j;
}

ordered_json limit_to_json(const StiefelPoint& point, double tol) {
  ordered_json j;
  j["level"] = critical_level(point, tol);
  j["height"] = height(point);
  j.update(point_to_json(point));
  return j;
}

void append_csv_row(std::string& csv, const std::vector<double>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) csv += ',';
    csv += format_double(row[i]);
  }
  csv += '\n';
}

void append_wide_header(std::string& csv, int rows, int cols) {
  static const char* kComponents = "wxyz";
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      for (int c = 0; c < 4; ++c)
        csv += ",e_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
               kComponents[c];
}

void append_wide_entries(std::vector<double>& row, const StiefelPoint& p) {
  for (int i = 0; i < p.n(); ++i)
    for (int j = 0; j < p.k(); ++j) {
      const Quaternion& q = p.mat()(i, j);
      row.insert(row.end(), {q.w, q.x, q.y, q.z});
    }
}

struct FlowOptions {
  std::string path;
  double t0 = 0.0;
  double t1 = 1.0;
  int steps = 100;
  std::string method = "closed";
  bool reproject = false;
  std::string csv_path;
  bool wide = false;
};

void run_flow(const FlowOptions& opt, double tol, std::ostream& out,
              std::ostream& err) {
  if (opt.steps < 1)
    throw CLI::ValidationError("--steps", "must be at least 1");
  if (!(opt.t0 < opt.t1))
    throw CLI::ValidationError("--t1", "must exceed --t0");
  if (opt.wide && opt.method == "both")
    throw CLI::ValidationError("--wide", "needs a single method");

  const StiefelPoint x0 = validate_point(load_matrix(opt.path), tol);
  const double dt = (opt.t1 - opt.t0) / opt.steps;

  std::vector<StiefelPoint> closed_points;
  if (opt.method != "rk4") {
    const FlowData data = flow_constants(x0, tol);
    closed_points.reserve(opt.steps + 1);
    for (int i = 0; i <= opt.steps; ++i)
      closed_points.push_back(closed_form_flow(data, opt.t0 + i * dt));
  }
  FlowTrajectory rk4;
  if (opt.method != "closed")
    rk4 = numerical_flow(x0, opt.t0, opt.t1, opt.steps, opt.reproject);

  std::string csv;
  double max_deviation = 0.0;
  if (opt.method == "both") {
    csv = "t,h_closed,h_rk4,deviation\n";
    for (int i = 0; i <= opt.steps; ++i) {
      const double deviation =
          fro_norm(closed_points[i].mat() - rk4.points[i].mat());
      max_deviation = std::max(max_deviation, deviation);
      append_csv_row(csv, {opt.t0 + i * dt, height(closed_points[i]),
                           rk4.heights[i], deviation});
    }
  } else {
    csv = "t,h,grad_norm";
    if (opt.wide) append_wide_header(csv, x0.n(), x0.k());
    csv += '\n';
    for (int i = 0; i <= opt.steps; ++i) {
      std::vector<double> row;
      if (opt.method == "closed") {
        const StiefelPoint& p = closed_points[i];
        row = {opt.t0 + i * dt, height(p), fro_norm(gradient(p).mat())};
        if (opt.wide) append_wide_entries(row, p);
      } else {
        row = {rk4.times[i], rk4.heights[i], rk4.gradient_norms[i]};
        if (opt.wide) append_wide_entries(row, rk4.points[i]);
      }
      append_csv_row(csv, row);
    }
  }

  if (opt.csv_path.empty()) {
    out << csv;
  } else {
    std::ofstream file(opt.csv_path);
    if (!file) throw std::invalid_argument("cannot write " + opt.csv_path);
    file << csv;
    ordered_json summary;
    summary["csv"] = opt.csv_path;
    summary["samples"] = opt.steps + 1;
    summary["method"] = opt.method;
    summary["t0"] = opt.t0;
    summary["t1"] = opt.t1;
    summary["steps"] = opt.steps;
    if (opt.method != "rk4")
      summary["final_height_closed"] = height(closed_points.back());
    if (opt.method != "closed") {
      summary["final_height_rk4"] = rk4.heights.back();
      summary["drift"] = rk4.drift;
    }
    if (opt.method == "both") summary["max_deviation"] = max_deviation;
    emit(out, summary);
  }
  if (opt.method == "both") {
    ordered_json note;
    note["max_deviation"] = max_deviation;
    emit(err, note);
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  double tol = kDefaultTol;
  if (const char* raw = std::getenv("HSTIEFEL_TOL"); raw != nullptr &&
                                                     *raw != '\0') {
    char* end = nullptr;
    tol = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || !(tol > 0.0) || !std::isfinite(tol)) {
      err << "HSTIEFEL_TOL must be a positive decimal float\n";
      return 2;
    }
  }

  CLI::App app{
      "Morse data of the squared-height function on quaternionic Stiefel "
      "manifolds",
      "hstiefel"};
  app.require_subcommand(1);

  int n = 0, k = 0, q = 0;
  std::uint64_t seed = 0;
  std::string path;
  FlowOptions flow_opt;

  auto* levels_cmd =
      app.add_subcommand("levels", "Critical values of h on X_{n,k}");
  levels_cmd->add_option("n", n, "ambient dimension")->required();
  levels_cmd->add_option("k", k, "frame size")->required();
  levels_cmd->callback(
      [&] { emit(out, ordered_json(critical_levels(n, k))); });

  auto* notable_cmd = app.add_subcommand(
      "notable", "Canonical critical point of level q on X_{n,k}");
  notable_cmd->add_option("n", n, "ambient dimension")->required();
  notable_cmd->add_option("k", k, "frame size")->required();
  notable_cmd->add_option("q", q, "critical level")->required();
  notable_cmd->callback(
      [&] { emit(out, point_to_json(notable_point(n, k, q))); });

  auto* random_cmd =
      app.add_subcommand("random-point", "Sample a point of X_{n,k}");
  random_cmd->add_option("n", n, "ambient dimension")->required();
  random_cmd->add_option("k", k, "frame size")->required();
  random_cmd->add_option("--seed", seed, "RNG seed (default 0)");
  random_cmd->callback(
      [&] { emit(out, point_to_json(random_point(n, k, seed))); });

  auto* analyze_cmd = app.add_subcommand(
      "analyze", "Manifold and criticality report for a point file");
  analyze_cmd->add_option("point", path, "point JSON file")->required();
  analyze_cmd->callback([&] {
    const StiefelPoint x{load_matrix(path)};
    const double residual = x.constraint_residual();
    const bool on_manifold = residual <= tol;
    const CriticalCheck crit = is_critical(x, tol);
    const bool critical = on_manifold && crit.critical;
    const double h = height(x);
    ordered_json j;
    j["n"] = x.n();
    j["k"] = x.k();
    j["on_manifold"] = on_manifold;
    j["residual"] = residual;
    j["height"] = h;
    j["grad_norm"] = fro_norm(gradient(x).mat());
    j["critical"] = critical;
    j["critical_residual"] = crit.residual;
    const long level = std::lround(h);
    if (critical && std::abs(h - level) <= kLevelRoundTol)
      j["level"] = static_cast<int>(level);
    emit(out, j);
  });

  auto* spectrum_cmd = app.add_subcommand(
      "spectrum", "Hessian spectrum at a critical point file");
  spectrum_cmd->add_option("point", path, "point JSON file")->required();
  spectrum_cmd->callback([&] {
    const StiefelPoint x = validate_point(load_matrix(path), tol);
    const SpectrumReport report = hessian_spectrum(x, tol);
    const int level = critical_level(x, tol);
    const SigmaInvariants inv = sigma_invariants(x.n(), x.k(), level);
    ordered_json j;
    j["n"] = x.n();
    j["k"] = x.k();
    j["level"] = level;
    j["eigenvalues"] = report.eigenvalues;
    j["mult_minus2"] = report.mult_minus2;
    j["mult_zero"] = report.mult_zero;
    j["mult_plus2"] = report.mult_plus2;
    j["residual"] = report.residual;
    j["invariants"] = invariants_to_json(inv);
    j["multiplicities_match"] = report.mult_minus2 == inv.index &&
                                report.mult_zero == inv.kernel_dim &&
                                report.mult_plus2 == inv.plus_dim;
    emit(out, j);
  });

  auto* invariants_cmd = app.add_subcommand(
      "invariants", "Closed-form invariants of the level-q submanifold");
  invariants_cmd->add_option("n", n, "ambient dimension")->required();
  invariants_cmd->add_option("k", k, "frame size")->required();
  invariants_cmd->add_option("q", q, "critical level")->required();
  invariants_cmd->callback(
      [&] { emit(out, invariants_to_json(sigma_invariants(n, k, q))); });

  auto* svd_cmd =
      app.add_subcommand("svd", "Singular value decomposition of a matrix file");
  svd_cmd->add_option("matrix", path, "matrix JSON file")->required();
  svd_cmd->callback([&] {
    const QuaternionMatrix a = load_matrix(path);
    const SVDFactorization f = svd(a);
    QuaternionMatrix u_gram = f.u.adjoint() * f.u;
    u_gram -= QuaternionMatrix::identity(f.u.cols());
    QuaternionMatrix v_gram = f.v.adjoint() * f.v;
    v_gram -= QuaternionMatrix::identity(f.v.cols());
    ordered_json j;
    j["s"] = f.s;
    j["u"] = matrix_to_json(f.u);
    j["v"] = matrix_to_json(f.v);
    j["reconstruction_residual"] = fro_norm(f.reconstruct() - a);
    j["u_orthonormality"] = fro_norm(u_gram);
    j["v_orthonormality"] = fro_norm(v_gram);
    emit(out, j);
  });

  auto* rel_cmd = app.add_subcommand(
      "rel-svd", "Relative SVD of the (T, P) blocks of a point file");
  rel_cmd->add_option("point", path, "point JSON file")->required();
  rel_cmd->callback([&] {
    const QuaternionMatrix mat = load_matrix(path);
    const RelativeSVD rel = relative_svd(mat, tol);
    const int nk = mat.rows() - mat.cols();
    ordered_json j;
    j["p"] = rel.p;
    j["q"] = rel.q;
    j["r"] = rel.r;
    j["c"] = rel.c;
    j["s"] = rel.s;
    j["m"] = matrix_to_json(rel.m);
    j["a"] = matrix_to_json(rel.a);
    j["b"] = matrix_to_json(rel.b);
    j["t_residual"] = fro_norm(rel.reconstruct_t() -
                               mat.block(0, 0, nk, mat.cols()));
    j["p_residual"] = fro_norm(rel.reconstruct_p() -
                               mat.block(nk, 0, mat.cols(), mat.cols()));
    emit(out, j);
  });

  auto* flow_cmd = app.add_subcommand(
      "flow", "Gradient-flow trajectory as CSV (closed form and/or RK4)");
  flow_cmd->add_option("point", flow_opt.path, "point JSON file")->required();
  flow_cmd->add_option("--t0", flow_opt.t0, "start time (default 0)");
  flow_cmd->add_option("--t1", flow_opt.t1, "end time (default 1)");
  flow_cmd->add_option("--steps", flow_opt.steps, "step count (default 100)");
  flow_cmd->add_option("--method", flow_opt.method, "closed | rk4 | both")
      ->check(CLI::IsMember({"closed", "rk4", "both"}));
  flow_cmd->add_flag("--reproject", flow_opt.reproject,
                     "polar-retract after every RK4 step");
  flow_cmd->add_option("--csv", flow_opt.csv_path,
                       "write CSV here and print a JSON summary instead");
  flow_cmd->add_flag("--wide", flow_opt.wide,
                     "append flattened point entries to each row");
  flow_cmd->callback([&] { run_flow(flow_opt, tol, out, err); });

  auto* limits_cmd = app.add_subcommand(
      "limits", "Flow limit points (t to -inf and +inf) of a point file");
  limits_cmd->add_option("point", path, "point JSON file")->required();
  limits_cmd->callback([&] {
    const StiefelPoint x = validate_point(load_matrix(path), tol);
    const FlowLimits lim = flow_limits(x, tol);
    ordered_json j;
    j["backward"] = limit_to_json(lim.backward, tol);
    j["forward"] = limit_to_json(lim.forward, tol);
    emit(out, j);
  });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    ordered_json j;
    j["error"] = e.what();
    emit(out, j);
    return 1;
  }
}

}  // namespace hstiefel
