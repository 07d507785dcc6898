#include "desoc/cli.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "desoc/analysis.hpp"
#include "desoc/error.hpp"
#include "desoc/problem_file.hpp"
#include "desoc/result_table.hpp"

namespace desoc::cli {

namespace {

using json = nlohmann::ordered_json;
using transcription::Family;

struct Overrides {
  std::optional<double> q;
  std::optional<double> t1;
  std::optional<double> t2;
  std::optional<double> rho;
  std::optional<int> mesh;
  std::optional<std::uint64_t> seed;
};

struct Perturbations {
  std::optional<double> pct;
  std::vector<double> abs;
  std::string mode = "resolve";
};

void add_common(CLI::App* cmd, std::string& file, Overrides& ov, std::string& out_path, bool& dump) {
  cmd->add_option("file", file, "Problem file (YAML)")->required();
  cmd->add_option("--Q", ov.q, "Desensitization weight");
  cmd->add_option("--t1", ov.t1, "Window start (file time units)");
  cmd->add_option("--t2", ov.t2, "Window end (file time units)");
  cmd->add_option("--rho", ov.rho, "Trigger smoothing width (file time units)");
  cmd->add_option("--mesh", ov.mesh, "Number of collocation segments");
  cmd->add_option("--seed", ov.seed, "Seed for solver restarts");
  cmd->add_option("--out", out_path, "Output table path");
  cmd->add_flag("--dump-config", dump, "Print the effective configuration and exit");
}

void add_perturbations(CLI::App* cmd, Perturbations& pt) {
  cmd->add_option("--thrust-pct", pt.pct, "Relative thrust perturbation, percent (+/-)");
  cmd->add_option("--thrust-abs", pt.abs, "Perturbed thrust values, comma separated")->delimiter(',');
  cmd->add_option("--mode", pt.mode, "Dispersion mode")->check(CLI::IsMember({"resolve", "refly"}));
}

io::ProblemConfig load_with_overrides(const std::string& file, const Overrides& ov) {
  io::ProblemConfig cfg = io::load_problem_file(file);
  if (ov.q) {
    cfg.desensitization.q_weight = *ov.q;
  }
  if (ov.t1) {
    cfg.desensitization.t1 = *ov.t1;
  }
  if (ov.t2) {
    cfg.desensitization.t2 = *ov.t2;
  }
  if (ov.rho) {
    cfg.desensitization.rho = *ov.rho;
  }
  if (ov.mesh) {
    cfg.segments = *ov.mesh;
  }
  if (ov.seed) {
    cfg.solver.seed = *ov.seed;
  }
  cfg.validate();
  return cfg;
}

std::string default_output(const std::string& file, const char* suffix) {
  return std::filesystem::path(file).stem().string() + "." + suffix + ".csv";
}

std::string summary_path(const std::string& out) {
  return std::filesystem::path(out).replace_extension(".summary.json").string();
}

json report_json(const nlp::SolverReport& r) {
  return json{{"status", nlp::to_string(r.status)},
              {"feasibility", r.feasibility},
              {"optimality", r.optimality},
              {"objective", r.objective},
              {"outer_iterations", r.outer_iterations},
              {"inner_iterations", r.inner_iterations},
              {"restarts", r.restarts},
              {"penalty_parameter", r.penalty},
              {"wall_time_s", r.wall_time_s}};
}

json config_json(const io::ProblemConfig& cfg, const io::Scenario& sc) {
  json j{{"name", cfg.name},
         {"family", transcription::to_string(cfg.family)},
         {"t0", cfg.t0},
         {"tf", cfg.tf},
         {"time_units", sc.interplanetary() ? "days" : "scaled"},
         {"mesh_segments", cfg.segments},
         {"seed", cfg.solver.seed},
         {"derivatives", cfg.solver.derivatives},
         {"desensitization",
          {{"q", cfg.desensitization.q_weight},
           {"t1", cfg.desensitization.t1},
           {"t2", cfg.desensitization.t2},
           {"rho", cfg.desensitization.rho},
           {"k_vr", cfg.desensitization.k_vr},
           {"k_vt", cfg.desensitization.k_vt},
           {"k_vn", cfg.desensitization.k_vn},
           {"k_m", cfg.desensitization.k_m}}}};
  if (cfg.rendezvous) {
    const auto& s = cfg.rendezvous->spacecraft;
    j["spacecraft"] = {{"m0_kg", s.m0}, {"thrust_N", s.thrust}, {"isp_s", s.isp}, {"g0_m_s2", s.g0}};
    j["revolutions"] = sc.revolutions;
  } else {
    const auto& m = cfg.orbit_raising->model;
    j["orbit_raising"] = {{"m0", m.m0}, {"mdot", m.mdot}, {"thrust", m.thrust}};
  }
  return j;
}

io::ResultTable trajectory_table(const transcription::DiscreteTrajectory& t, const io::Scenario& sc) {
  if (t.family == Family::MeeRendezvous) {
    io::ResultTable table({"t", "p", "f", "g", "h", "k", "L", "m", "lambda_T", "delta", "u_r", "u_t", "u_n"});
    for (std::size_t j = 0; j < t.times.size(); ++j) {
      const int r = static_cast<int>(j);
      table.add_row({sc.time_to_file(t.times[j]), sc.scaling.length_to_km(t.states(r, 0)), t.states(r, 1),
                     t.states(r, 2), t.states(r, 3), t.states(r, 4), t.states(r, 5), sc.scaling.mass_to_kg(t.mass[j]),
                     t.lambda_t[j], t.controls(r, 0), t.controls(r, 1), t.controls(r, 2), t.controls(r, 3)});
    }
    return table;
  }
  io::ResultTable table({"t", "r", "u", "v", "m", "lambda_T", "phi"});
  for (std::size_t j = 0; j < t.times.size(); ++j) {
    const int r = static_cast<int>(j);
    table.add_row({t.times[j], t.states(r, 0), t.states(r, 1), t.states(r, 2), t.mass[j], t.lambda_t[j],
                   t.controls(r, 0)});
  }
  return table;
}

analysis::PerturbationSpec perturbation_spec(const Perturbations& pt, const io::Scenario& sc) {
  analysis::PerturbationSpec spec;
  spec.mode = analysis::parse_dispersion_mode(pt.mode);
  if (pt.pct) {
    const double p = *pt.pct;
    if (!(p > 0.0 && p < 100.0)) {
      throw Error(ErrorCode::InvalidArgument, "--thrust-pct must lie in (0, 100)");
    }
    spec.thrusts = analysis::PerturbationSpec::relative(sc.problem.thrust(), p, spec.mode).thrusts;
  }
  for (double t : pt.abs) {
    if (!(t > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "--thrust-abs values must be positive");
    }
    spec.thrusts.push_back(sc.thrust_to_canonical(t));
  }
  if (spec.thrusts.empty()) {
    throw Error(ErrorCode::InvalidArgument, "nothing to disperse: give --thrust-pct or --thrust-abs");
  }
  return spec;
}

std::string run_status(const analysis::PerturbedRun& r) {
  if (!r.error.empty()) {
    return "error";
  }
  return nlp::to_string(r.report.status);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void write_outputs(const std::string& out, const io::ResultTable& table, const json& summary) {
  io::write_file_atomic(out, table.to_csv());
  io::write_file_atomic(summary_path(out), summary.dump(2) + "\n");
}

int cmd_solve(const io::ProblemConfig& cfg, std::string out, const std::string& file, std::ostream& os) {
  const auto start = std::chrono::steady_clock::now();
  const io::Scenario sc = io::build_scenario(cfg);
  const auto mesh = analysis::window_mesh(sc.problem, cfg.segments);
  const auto res = analysis::solve_desensitized(sc.problem, mesh, io::solver_options(cfg));
  const auto& t = res.trajectory;

  if (out.empty()) {
    out = default_output(file, "trajectory");
  }
  json summary{{"command", "solve"},
               {"config", config_json(cfg, sc)},
               {"J", t.objective},
               {"sensitive_cost", sc.cost_to_file(t.terminal_cost)},
               {"sensitive_cost_canonical", t.terminal_cost},
               {"penalty", t.penalty},
               {"max_defect", t.max_defect},
               {"boundary_residual", t.boundary_residual},
               {"path_residual", t.path_residual},
               {"solver", report_json(res.report)},
               {"total_time_s", seconds_since(start)}};
  write_outputs(out, trajectory_table(t, sc), summary);
  os << (sc.interplanetary() ? "m(tf) = " : "r(tf) = ") << io::format_number(sc.cost_to_file(t.terminal_cost))
     << (sc.interplanetary() ? " kg" : "") << "  J = " << io::format_number(t.objective)
     << "  status = " << nlp::to_string(res.report.status) << "\n";
  return res.converged() ? kExitOk : kExitSolver;
}

int cmd_disperse(const io::ProblemConfig& cfg, const Perturbations& pt, std::string out, const std::string& file,
                 std::ostream& os) {
  const auto start = std::chrono::steady_clock::now();
  const io::Scenario sc = io::build_scenario(cfg);
  const auto spec = perturbation_spec(pt, sc);
  const auto mesh = analysis::window_mesh(sc.problem, cfg.segments);
  const auto rep = analysis::dispersion(sc.problem, spec, mesh, io::solver_options(cfg));

  io::ResultTable table({"thrust", "cost", "d", "status"});
  const bool nominal_ok = rep.nominal_report.status == nlp::SolverStatus::Converged;
  table.add_row({sc.thrust_to_file(rep.nominal_thrust), sc.cost_to_file(rep.nominal_cost), 0.0,
                 std::string(nlp::to_string(rep.nominal_report.status))});
  json runs = json::array();
  bool all_ok = nominal_ok;
  for (const auto& r : rep.runs) {
    all_ok = all_ok && r.ok;
    const std::string status = spec.mode == analysis::DispersionMode::Refly ? (r.ok ? "replayed" : "error")
                                                                            : run_status(r);
    table.add_row({sc.thrust_to_file(r.thrust), sc.cost_to_file(r.cost), sc.cost_to_file(r.d), status});
    json jr{{"thrust", sc.thrust_to_file(r.thrust)}, {"cost", sc.cost_to_file(r.cost)}, {"d", sc.cost_to_file(r.d)},
            {"ok", r.ok}};
    if (spec.mode == analysis::DispersionMode::Resolve && r.error.empty()) {
      jr["solver"] = report_json(r.report);
    }
    if (!r.error.empty()) {
      jr["error"] = r.error;
    }
    runs.push_back(jr);
  }

  if (out.empty()) {
    out = default_output(file, "dispersion");
  }
  json summary{{"command", "disperse"},
               {"mode", analysis::to_string(rep.mode)},
               {"config", config_json(cfg, sc)},
               {"nominal",
                {{"thrust", sc.thrust_to_file(rep.nominal_thrust)},
                 {"sensitive_cost", sc.cost_to_file(rep.nominal_cost)},
                 {"J", rep.nominal_objective},
                 {"penalty", rep.nominal_penalty},
                 {"reference_cost", sc.cost_to_file(rep.reference_cost)},
                 {"solver", report_json(rep.nominal_report)}}},
               {"runs", runs},
               {"total_time_s", seconds_since(start)}};
  write_outputs(out, table, summary);
  os << table.to_csv();
  return all_ok ? kExitOk : kExitSolver;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) {
    parts.push_back(item);
  }
  if (parts.size() != 3) {
    throw Error(ErrorCode::InvalidArgument, "--t2-grid expects start:stop:count");
  }
  try {
    std::size_t used = 0;
    const double a = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("start");
    const double b = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("stop");
    const int n = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("count");
    return analysis::linear_grid(a, b, n);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidArgument, "--t2-grid expects start:stop:count, got '" + text + "'");
  }
}

int cmd_sweep(const io::ProblemConfig& cfg, const Perturbations& pt, const std::string& grid_text, bool parallel,
              std::string out, const std::string& file, std::ostream& os) {
  const auto start = std::chrono::steady_clock::now();
  const io::Scenario sc = io::build_scenario(cfg);
  const auto spec = perturbation_spec(pt, sc);
  std::vector<double> grid;
  for (double g : parse_grid(grid_text)) {
    if (g < cfg.t0 || g > cfg.tf) {
      throw Error(ErrorCode::WindowOutsideHorizon, "--t2-grid value outside [t0, tf]");
    }
    // The end points map exactly; interior points go through the unit conversion.
    grid.push_back(g == cfg.tf ? sc.problem.tf : g == cfg.t0 ? sc.problem.t0 : sc.time_to_canonical(g));
  }
  analysis::SweepOptions so;
  so.segments = cfg.segments;
  so.chain = !parallel;
  so.parallel = parallel;
  const auto res = analysis::sweep_t2(sc.problem, grid, spec, so, io::solver_options(cfg));

  std::vector<std::string> header{"t2", "cost_nominal"};
  for (std::size_t i = 0; i < spec.thrusts.size(); ++i) {
    header.push_back("cost_perturbed_" + std::to_string(i + 1));
    header.push_back("d_" + std::to_string(i + 1));
  }
  header.push_back("status");
  io::ResultTable table(header);
  json points = json::array();
  int ok_points = 0;
  for (const auto& p : res.points) {
    std::vector<io::ResultTable::Cell> row{sc.time_to_file(p.t2), sc.cost_to_file(p.report.nominal_cost)};
    std::string status = p.ok ? "converged" : "";
    if (!p.ok) {
      status = p.error.empty() ? std::string("nominal=") + nlp::to_string(p.report.nominal_report.status) : "error";
      for (std::size_t i = 0; i < p.report.runs.size() && p.error.empty(); ++i) {
        if (!p.report.runs[i].ok) {
          status += ";run" + std::to_string(i + 1) + "=" + run_status(p.report.runs[i]);
        }
      }
    }
    for (std::size_t i = 0; i < spec.thrusts.size(); ++i) {
      if (i < p.report.runs.size()) {
        row.emplace_back(sc.cost_to_file(p.report.runs[i].cost));
        row.emplace_back(sc.cost_to_file(p.report.runs[i].d));
      } else {
        row.emplace_back(std::string("nan"));
        row.emplace_back(std::string("nan"));
      }
    }
    row.emplace_back(status);
    table.add_row(std::move(row));
    ok_points += p.ok ? 1 : 0;
    json jp{{"t2", sc.time_to_file(p.t2)}, {"ok", p.ok}, {"J", p.report.nominal_objective},
            {"penalty", p.report.nominal_penalty}};
    if (!p.error.empty()) {
      jp["error"] = p.error;
    } else {
      jp["nominal_solver"] = report_json(p.report.nominal_report);
    }
    points.push_back(jp);
  }

  if (out.empty()) {
    out = default_output(file, "sweep");
  }
  json thrusts = json::array();
  for (double t : spec.thrusts) {
    thrusts.push_back(sc.thrust_to_file(t));
  }
  json summary{{"command", "sweep"},
               {"mode", analysis::to_string(spec.mode)},
               {"warm_start", res.chained ? "chained" : "declared_guess"},
               {"parallel", res.parallel},
               {"perturbed_thrusts", thrusts},
               {"config", config_json(cfg, sc)},
               {"points", points},
               {"total_time_s", seconds_since(start)}};
  write_outputs(out, table, summary);
  os << table.to_csv();
  return ok_points > 0 ? kExitOk : kExitSolver;
}

int cmd_convert(const std::vector<double>& state, double mu, std::ostream& os) {
  if (state.size() != 6) {
    throw Error(ErrorCode::InvalidArgument, "--state expects six numbers: x y z vx vy vz");
  }
  const astro::CartesianState s{{state[0], state[1], state[2]}, {state[3], state[4], state[5]}};
  const astro::MeeState x = astro::cart_to_mee(s, astro::GravityModel{mu});
  const char* names[] = {"p", "f", "g", "h", "k", "L"};
  const auto values = x.as_array();
  for (int i = 0; i < 6; ++i) {
    // + 0.0 turns a signed zero into 0
    os << names[i] << " = " << io::format_number(values[i] + 0.0) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-triggered desensitized trajectory optimization", "desoc"};
  app.require_subcommand(1);

  std::string file, out_path, grid_text;
  Overrides ov;
  Perturbations pt;
  bool dump = false;
  bool parallel = false;
  std::vector<double> state;
  double mu = astro::kSunMu;

  auto* solve = app.add_subcommand("solve", "Solve one desensitized problem");
  add_common(solve, file, ov, out_path, dump);

  auto* disperse = app.add_subcommand("disperse", "Nominal solve plus thrust-perturbed runs");
  add_common(disperse, file, ov, out_path, dump);
  add_perturbations(disperse, pt);

  auto* sweep = app.add_subcommand("sweep", "Dispersion over a grid of window end times t2");
  add_common(sweep, file, ov, out_path, dump);
  add_perturbations(sweep, pt);
  sweep->add_option("--t2-grid", grid_text, "start:stop:count")->required();
  sweep->add_flag("--parallel", parallel, "Solve grid points independently on worker threads");

  auto* convert = app.add_subcommand("convert", "Cartesian state to modified equinoctial elements");
  convert->add_option("--state", state, "x y z vx vy vz (km, km/s)")->required()->expected(6);
  convert->add_option("--mu", mu, "Gravitational parameter (km^3/s^2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "desoc: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (convert->parsed()) {
      return cmd_convert(state, mu, out);
    }
    const io::ProblemConfig cfg = load_with_overrides(file, ov);
    if (dump) {
      out << io::dump_problem_yaml(cfg);
      return kExitOk;
    }
    if (solve->parsed()) {
      return cmd_solve(cfg, out_path, file, out);
    }
    if (disperse->parsed()) {
      return cmd_disperse(cfg, pt, out_path, file, out);
    }
    return cmd_sweep(cfg, pt, grid_text, parallel, out_path, file, out);
  } catch (const Error& e) {
    err << "desoc: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::NumericFailure:
      case ErrorCode::InfeasibleStall:
      case ErrorCode::ShootingNonConvergence:
        return kExitSolver;
      default:
        return kExitUsage;
    }
  }
}

}  // namespace desoc::cli
