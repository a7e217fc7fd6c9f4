#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bws/frame.hpp"
#include "bws/geodesics.hpp"
#include "bws/gradient.hpp"
#include "bws/matrix_io.hpp"
#include "bws/metric.hpp"
#include "bws/rng.hpp"
#include "bws/second_order.hpp"
#include "bws/symmat.hpp"

namespace {

using nlohmann::json;
using namespace bws;

// Stable CLI exit-code contract.
constexpr int kExitParse = 2;
constexpr int kExitDomainType = 3;
constexpr int kExitOutOfDomain = 4;
constexpr int kExitConeExit = 5;
constexpr int kExitNonFinite = 6;

struct ReportClock {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return json{{"dim", m.rows()}, {"rows", rows}};
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json input_entry(const std::string& path) {
  return json{{"path", path}, {"digest", file_digest(path)}};
}

json base_report(const std::string& command, double wall_seconds) {
  return json{{"command", command},
              {"version", kLibraryVersion},
              {"wall_time_seconds", wall_seconds},
              {"tolerances",
               {{"spd_abs_floor", kSpdAbsFloor},
                {"spd_rel_floor", kSpdRelFloor}}}};
}

void emit(const json& report, bool as_json, const std::string& human) {
  if (as_json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << human;
  }
}

std::string interval_str(const Interval& iv) {
  std::ostringstream out;
  out << "(" << (std::isinf(iv.lo) ? "-inf" : format_double(iv.lo)) << ", "
      << (std::isinf(iv.hi) ? "+inf" : format_double(iv.hi)) << ")";
  return out.str();
}

void write_csv_header(std::ostream& out, const std::string& lead, int n,
                      const std::vector<std::string>& extra) {
  out << lead;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      out << ",sigma_" << i << j;
    }
  }
  for (const auto& e : extra) out << "," << e;
  out << "\n";
}

void write_matrix_row(std::ostream& out, const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out << "," << format_double(m(i, j));
    }
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file " + path);
  return out;
}

// ---------------------------------------------------------------- distance

int cmd_distance(const std::string& file_a, const std::string& file_b,
                 bool as_json) {
  ReportClock clock;
  const GaussParam g1 = load_gauss(file_a);
  const GaussParam g2 = load_gauss(file_b);
  const double w = wasserstein_distance(g1, g2);
  const CouplingBounds cb = coupling_bounds(g1, g2);

  json report = base_report("distance", clock.seconds());
  report["inputs"] = {{"file_a", input_entry(file_a)},
                      {"file_b", input_entry(file_b)}};
  report["results"] = {{"wasserstein", w},
                       {"wasserstein_squared", w * w},
                       {"min_coupling_cost", cb.min_cost},
                       {"max_coupling_cost", cb.max_cost},
                       {"optimal_map", matrix_to_json(cb.optimal_map.mat())}};

  std::ostringstream human;
  human << "W  = " << format_double(w) << "\n"
        << "W2 = " << format_double(w * w) << "\n"
        << "coupling cost: min " << format_double(cb.min_cost) << ", max "
        << format_double(cb.max_cost) << "\n"
        << "optimal map T:\n"
        << cb.optimal_map.mat() << "\n";
  emit(report, as_json, human.str());
  return 0;
}

// ---------------------------------------------------------------- geodesic

int cmd_geodesic(const std::string& file_a, const std::string& file_b,
                 int t_grid, double t_min, double t_max,
                 const std::string& out_path, bool as_json) {
  ReportClock clock;
  const SpdMat s0 = load_spd(file_a);
  const SpdMat s1 = load_spd(file_b);
  const GeodesicSpec spec = geodesic(s0, s1);
  const int n = static_cast<int>(s0.dim());

  std::ostringstream csv;
  write_csv_header(csv, "t", n, {"speed"});
  for (int k = 0; k < t_grid; ++k) {
    const double t =
        t_min + (t_max - t_min) * static_cast<double>(k) / (t_grid - 1);
    const SpdMat st = geodesic_point(spec, t);
    const SymMat vt = geodesic_velocity(spec, t);
    const double speed = std::sqrt(wasserstein_inner(st, vt, vt));
    csv << format_double(t);
    write_matrix_row(csv, st.mat());
    csv << "," << format_double(speed) << "\n";
  }
  if (!out_path.empty()) open_out(out_path) << csv.str();

  json report = base_report("geodesic", clock.seconds());
  report["inputs"] = {{"file_a", input_entry(file_a)},
                      {"file_b", input_entry(file_b)}};
  report["results"] = {
      {"map_T", matrix_to_json(spec.map_T.mat())},
      {"domain", {{"lo", spec.domain.lo}, {"hi", spec.domain.hi}}},
      {"t_grid", t_grid}};
  if (!out_path.empty()) report["results"]["csv"] = out_path;

  std::ostringstream human;
  human << "domain: " << interval_str(spec.domain) << "\n";
  if (out_path.empty()) {
    human << csv.str();
  } else {
    human << "wrote " << out_path << "\n";
  }
  emit(report, as_json, human.str());
  return 0;
}

// --------------------------------------------------------------- transport

int cmd_transport(const std::string& file_a, const std::string& file_b,
                  const std::string& file_v, int steps, bool as_json) {
  ReportClock clock;
  const SpdMat s0 = load_spd(file_a);
  const SpdMat s1 = load_spd(file_b);
  const SymMat v = load_sym(file_v);
  const GeodesicSpec spec = geodesic(s0, s1);
  const TransportResult res = parallel_transport(spec, v, steps);

  json report = base_report("transport", clock.seconds());
  report["inputs"] = {{"file_a", input_entry(file_a)},
                      {"file_b", input_entry(file_b)},
                      {"file_v", input_entry(file_v)}};
  report["results"] = {{"transported", matrix_to_json(res.transported.mat())},
                       {"norm_drift", res.norm_drift},
                       {"steps", res.steps}};

  std::ostringstream human;
  human << "U(1):\n"
        << res.transported.mat() << "\n"
        << "norm drift: " << format_double(res.norm_drift) << " over "
        << res.steps << " steps\n";
  emit(report, as_json, human.str());
  return 0;
}

// ---------------------------------------------------------------- optimize

struct Objective {
  ScalarFn f;
  VectorFn grad;
};

Objective make_objective(const std::string& name,
                         const std::string& objective_file, int dim) {
  if (name == "sphere") {
    return Objective{[](const Vector& x) { return x.squaredNorm(); },
                     [](const Vector& x) { return Vector(2.0 * x); }};
  }
  if (name == "rosenbrock") {
    if (dim < 2) throw Error("rosenbrock needs dim >= 2");
    auto f = [](const Vector& x) {
      double s = 0.0;
      for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
        const double a = x(i + 1) - x(i) * x(i);
        const double b = 1.0 - x(i);
        s += 100.0 * a * a + b * b;
      }
      return s;
    };
    auto g = [](const Vector& x) {
      Vector out = Vector::Zero(x.size());
      for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
        const double a = x(i + 1) - x(i) * x(i);
        out(i) += -400.0 * x(i) * a - 2.0 * (1.0 - x(i));
        out(i + 1) += 200.0 * a;
      }
      return out;
    };
    return Objective{f, g};
  }
  if (name == "quadratic-file") {
    if (objective_file.empty()) {
      throw ParseError("quadratic-file objective requires --objective-file");
    }
    const SymMat q = load_sym(objective_file);
    if (q.dim() != dim) {
      throw DimMismatch("objective matrix dim does not match --dim");
    }
    const Matrix qm = q.mat();
    return Objective{
        [qm](const Vector& x) { return (x.transpose() * qm * x).value(); },
        [qm](const Vector& x) { return Vector(2.0 * qm * x); }};
  }
  throw ParseError("unknown objective '" + name + "'");
}

int cmd_optimize(const std::string& objective, const std::string& objective_file,
                 int dim, int samples, std::uint64_t seed, double step,
                 int iters, const std::string& estimator,
                 const std::string& out_path, bool as_json) {
  ReportClock clock;
  const Objective obj = make_objective(objective, objective_file, dim);
  if (estimator != "pathwise" && estimator != "score") {
    throw ParseError("unknown estimator '" + estimator + "'");
  }

  Vector mu = Vector::Ones(dim);
  SpdMat sigma = SpdMat::Identity(dim);

  std::ostringstream csv;
  csv << "iter,phi_hat";
  for (int i = 1; i <= dim; ++i) csv << ",mu_" << i;
  for (int i = 1; i <= dim; ++i) {
    for (int j = 1; j <= dim; ++j) csv << ",sigma_" << i << j;
  }
  csv << ",grad_norm\n";

  auto phi_hat_at = [&](const GaussParam& g, std::uint64_t s) {
    GaussianRng rng(s);
    const Matrix root = spd_sqrt(g.cov).mat();
    double acc = 0.0;
    for (int k = 0; k < samples; ++k) {
      acc += obj.f(root * rng.next_vector(dim) + g.mean);
    }
    return acc / samples;
  };

  auto write_row = [&](int iter, double phi_hat, const Vector& m,
                       const Matrix& s, double grad_norm) {
    csv << iter << "," << format_double(phi_hat);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      csv << "," << format_double(m(i));
    }
    write_matrix_row(csv, s);
    csv << "," << format_double(grad_norm) << "\n";
  };

  auto finish = [&](int completed, std::optional<int> cone_iter) {
    if (!out_path.empty()) open_out(out_path) << csv.str();
    json report = base_report("optimize", clock.seconds());
    report["seed"] = seed;
    report["results"] = {{"objective", objective},
                         {"estimator", estimator},
                         {"iterations_completed", completed},
                         {"final_mean", vector_to_json(mu)},
                         {"final_cov", matrix_to_json(sigma.mat())}};
    if (cone_iter) report["results"]["cone_exit_iteration"] = *cone_iter;
    if (!out_path.empty()) report["results"]["csv"] = out_path;
    std::ostringstream human;
    if (cone_iter) {
      human << "cone exit at iteration " << *cone_iter << "\n";
    }
    human << "final mean: " << mu.transpose() << "\n"
          << "final covariance:\n"
          << sigma.mat() << "\n";
    if (out_path.empty()) human << csv.str();
    emit(report, as_json, human.str());
    return cone_iter ? kExitConeExit : 0;
  };

  for (int it = 0; it < iters; ++it) {
    const std::uint64_t iter_seed = seed + static_cast<std::uint64_t>(it);
    const GaussParam g(mu, sigma);
    const McConfig cfg{samples, iter_seed, true};
    const McGradient est = estimator == "pathwise"
                               ? mc_grad_pathwise(obj.f, obj.grad, g, cfg)
                               : mc_grad_score(obj.f, g, cfg);
    const double grad_norm = std::sqrt(
        est.wrt_mean.squaredNorm() +
        wasserstein_inner(sigma, est.natural_wrt_cov, est.natural_wrt_cov));
    write_row(it, phi_hat_at(g, iter_seed), mu, sigma.mat(), grad_norm);

    try {
      // Riemannian exponential as the retraction for the descent step.
      SpdMat next = exp_map(sigma, -step * est.natural_wrt_cov);
      mu -= step * est.wrt_mean;
      sigma = std::move(next);
    } catch (const OutOfDomain&) {
      return finish(it, it);
    }
  }
  write_row(iters, phi_hat_at(GaussParam(mu, sigma), seed + iters), mu,
            sigma.mat(), 0.0);
  return finish(iters, std::nullopt);
}

// -------------------------------------------------------------------- flow

int cmd_flow(const std::string& flow_name, const std::string& file_start,
             double total_time, double step, const std::string& method_name,
             const std::string& out_path, bool as_json) {
  ReportClock clock;
  if (flow_name != "entropy") {
    throw ParseError("unknown flow '" + flow_name + "'");
  }
  const SpdMat start = load_spd(file_start);
  const int n = static_cast<int>(start.dim());
  StepMethod method;
  if (method_name == "rk4") {
    method = StepMethod::kRk4;
  } else if (method_name == "euler") {
    method = StepMethod::kEuler;
  } else {
    throw ParseError("unknown method '" + method_name + "'");
  }

  // Entropy gradient in the <.,.>_2 convention is Sigma^{-1}; the flow
  // follows gamma' = -grad, whose closed form is Sigma(0) - 2t I.
  GradCallback entropy_grad = [](const GaussParam& g) {
    return EuclideanGrad{std::nullopt, SymMat(g.cov.mat().inverse())};
  };

  FlowTrajectory traj;
  if (total_time <= 0.0) {
    traj.method = method;
    traj.times = {0.0};
    traj.states = {start};
  } else {
    const int n_steps = std::max(1, static_cast<int>(std::llround(total_time / step)));
    traj = gradient_flow(GaussParam(Vector::Zero(n), start), entropy_grad,
                         total_time / n_steps, n_steps, method,
                         FlowDirection::kDescent);
  }

  double max_dev = 0.0;
  std::ostringstream csv;
  write_csv_header(csv, "t", n, {"max_abs_error_vs_closed_form"});
  for (size_t k = 0; k < traj.states.size(); ++k) {
    const double t = traj.times[k];
    const Matrix exact = start.mat() - 2.0 * t * Matrix::Identity(n, n);
    const double dev = (traj.states[k].mat() - exact).cwiseAbs().maxCoeff();
    max_dev = std::max(max_dev, dev);
    csv << format_double(t);
    write_matrix_row(csv, traj.states[k].mat());
    csv << "," << format_double(dev) << "\n";
  }
  if (!out_path.empty()) open_out(out_path) << csv.str();

  json report = base_report("flow", clock.seconds());
  report["inputs"] = {{"file_start", input_entry(file_start)}};
  report["results"] = {{"flow", flow_name},
                       {"method", method_name},
                       {"steps_completed",
                        static_cast<int>(traj.states.size()) - 1},
                       {"max_deviation_vs_closed_form", max_dev}};
  if (traj.cone_exit) {
    report["results"]["cone_exit"] = {{"step", traj.cone_exit->step_index},
                                      {"time", traj.cone_exit->time}};
  }
  if (!out_path.empty()) report["results"]["csv"] = out_path;

  std::ostringstream human;
  if (traj.cone_exit) {
    human << "cone exit at t = " << format_double(traj.cone_exit->time)
          << " (step " << traj.cone_exit->step_index << ")\n";
  }
  human << "max deviation vs closed form: " << format_double(max_dev) << "\n";
  if (out_path.empty()) human << csv.str();
  emit(report, as_json, human.str());
  return traj.cone_exit ? kExitConeExit : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wasserstein geometry of Gaussian densities"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit a JSON run report to stdout");

  std::string file_a, file_b, file_v, out_path;
  int t_grid = 11;
  int steps = 1000;

  auto* distance = app.add_subcommand("distance", "Wasserstein distance and coupling bounds");
  distance->add_option("file_a", file_a)->required();
  distance->add_option("file_b", file_b)->required();

  auto* geo = app.add_subcommand("geodesic", "geodesic between two SPD matrices");
  geo->add_option("file_a", file_a)->required();
  geo->add_option("file_b", file_b)->required();
  geo->add_option("--t-grid", t_grid, "number of grid points")
      ->check(CLI::Range(2, 1000000));
  double t_min = 0.0, t_max = 1.0;
  geo->add_option("--t-min", t_min, "first grid value");
  geo->add_option("--t-max", t_max, "last grid value");
  geo->add_option("--out", out_path, "CSV output path");

  auto* transport = app.add_subcommand("transport", "parallel transport along the connecting geodesic");
  transport->add_option("file_a", file_a)->required();
  transport->add_option("file_b", file_b)->required();
  transport->add_option("file_v", file_v)->required();
  transport->add_option("--steps", steps)->check(CLI::Range(1, 100000000));

  std::string objective = "sphere", objective_file, estimator = "pathwise";
  int dim = 2, samples = 1000, iters = 100;
  std::uint64_t seed = 0;
  double step = 0.05;
  auto* optimize = app.add_subcommand("optimize", "natural-gradient descent on E[f(X)]");
  optimize->add_option("--objective", objective, "sphere | quadratic-file | rosenbrock");
  optimize->add_option("--objective-file", objective_file);
  optimize->add_option("--dim", dim)->check(CLI::Range(1, kMaxFileDim));
  optimize->add_option("--samples", samples)->check(CLI::Range(1, 100000000));
  optimize->add_option("--seed", seed);
  optimize->add_option("--step", step)->check(CLI::PositiveNumber);
  optimize->add_option("--iters", iters)->check(CLI::Range(0, 100000000));
  optimize->add_option("--estimator", estimator, "pathwise | score");
  optimize->add_option("--out", out_path, "CSV output path");

  std::string flow_name = "entropy", method_name = "rk4";
  double total_time = 1.0;
  double flow_step = 1e-3;
  auto* flow = app.add_subcommand("flow", "gradient flow with closed-form comparison");
  flow->add_option("--flow", flow_name, "entropy");
  flow->add_option("file_start", file_a)->required();
  flow->add_option("--t", total_time, "total flow time");
  flow->add_option("--step", flow_step)->check(CLI::PositiveNumber);
  flow->add_option("--method", method_name, "rk4 | euler");
  flow->add_option("--out", out_path, "CSV output path");

  // Let a trailing global flag (e.g. --json after the subcommand) reach the
  // top-level parser.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (distance->parsed()) return cmd_distance(file_a, file_b, as_json);
    if (geo->parsed()) {
      return cmd_geodesic(file_a, file_b, t_grid, t_min, t_max, out_path,
                          as_json);
    }
    if (transport->parsed()) {
      return cmd_transport(file_a, file_b, file_v, steps, as_json);
    }
    if (optimize->parsed()) {
      return cmd_optimize(objective, objective_file, dim, samples, seed, step,
                          iters, estimator, out_path, as_json);
    }
    if (flow->parsed()) {
      return cmd_flow(flow_name, file_a, total_time, flow_step, method_name,
                      out_path, as_json);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const OutOfDomain& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOutOfDomain;
  } catch (const NonFiniteSample& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonFinite;
  } catch (const NotSpd& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomainType;
  } catch (const DimMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomainType;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomainType;
  }
  return 0;
}
