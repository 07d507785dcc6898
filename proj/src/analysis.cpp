#include "desoc/analysis.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <thread>

#include "desoc/error.hpp"

namespace desoc::analysis {

using transcription::CollocationNlp;

Mesh window_mesh(const ProblemDefinition& p, int segments) {
  const std::array<double, 2> window{p.desensitization.t1, p.desensitization.t2};
  return Mesh::uniform(p.t0, p.tf, segments, window);
}

SolveOutcome solve_desensitized(const ProblemDefinition& p, const Mesh& mesh, const nlp::SolverOptions& opts,
                                const nlp::Vector* warm_start) {
  const CollocationNlp problem(p, mesh);
  const nlp::Vector z0 = warm_start ? *warm_start : transcription::initial_guess(p, mesh);
  if (z0.size() != problem.num_variables()) {
    throw Error(ErrorCode::DimensionMismatch, "warm start does not match the collocation layout");
  }
  nlp::SolveResult result = nlp::solve(problem, z0, opts);
  SolveOutcome out;
  out.trajectory = transcription::extract_solution(problem, result.z);
  out.report = std::move(result.report);
  out.z = std::move(result.z);
  return out;
}

const char* to_string(DispersionMode mode) noexcept { return mode == DispersionMode::Resolve ? "resolve" : "refly"; }

DispersionMode parse_dispersion_mode(const std::string& text) {
  if (text == "resolve") {
    return DispersionMode::Resolve;
  }
  if (text == "refly") {
    return DispersionMode::Refly;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown dispersion mode '" + text + "'");
}

PerturbationSpec PerturbationSpec::relative(double nominal_thrust, double pct, DispersionMode mode) {
  PerturbationSpec spec;
  spec.thrusts = {nominal_thrust * (1.0 + pct / 100.0), nominal_thrust * (1.0 - pct / 100.0)};
  spec.mode = mode;
  return spec;
}

void PerturbationSpec::validate() const {
  if (thrusts.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no perturbed thrust values given");
  }
  for (double t : thrusts) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw Error(ErrorCode::InvalidArgument, "perturbed thrust values must be positive");
    }
  }
}

DispersionReport dispersion_from(const SolveOutcome& nominal, const ProblemDefinition& p,
                                 const PerturbationSpec& spec, const Mesh& mesh, const nlp::SolverOptions& opts) {
  spec.validate();
  DispersionReport rep;
  rep.mode = spec.mode;
  rep.nominal_thrust = p.thrust();
  rep.nominal_cost = nominal.trajectory.terminal_cost;
  rep.nominal_objective = nominal.trajectory.objective;
  rep.nominal_penalty = nominal.trajectory.penalty;
  rep.nominal_report = nominal.report;

  const CollocationNlp layout(p, mesh);
  rep.reference_cost = spec.mode == DispersionMode::Resolve
                           ? rep.nominal_cost
                           : refly_terminal_cost(layout, nominal.z, rep.nominal_thrust);

  for (double thrust : spec.thrusts) {
    PerturbedRun run;
    run.thrust = thrust;
    try {
      if (spec.mode == DispersionMode::Refly) {
        run.cost = refly_terminal_cost(layout, nominal.z, thrust);
        run.ok = std::isfinite(run.cost);
      } else if (thrust == rep.nominal_thrust) {
        run.cost = rep.nominal_cost;
        run.report = nominal.report;
        run.ok = nominal.converged();
      } else {
        const SolveOutcome s = solve_desensitized(p.with_thrust(thrust), mesh, opts, &nominal.z);
        run.cost = s.trajectory.terminal_cost;
        run.report = s.report;
        run.ok = s.converged();
      }
      run.d = std::abs(run.cost - rep.reference_cost);
    } catch (const Error& e) {
      run.ok = false;
      run.error = e.what();
    }
    rep.runs.push_back(std::move(run));
  }
  return rep;
}

DispersionReport dispersion(const ProblemDefinition& p, const PerturbationSpec& spec, const Mesh& mesh,
                            const nlp::SolverOptions& opts, const nlp::Vector* warm_start) {
  spec.validate();
  const SolveOutcome nominal = solve_desensitized(p, mesh, opts, warm_start);
  return dispersion_from(nominal, p, spec, mesh, opts);
}

std::vector<double> linear_grid(double start, double stop, int count) {
  if (count < 1) {
    throw Error(ErrorCode::InvalidArgument, "grid count must be at least 1");
  }
  if (count == 1) {
    return {stop};
  }
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) {
    g[i] = i == count - 1 ? stop : start + (stop - start) * i / (count - 1);
  }
  return g;
}

namespace {

ProblemDefinition with_t2(const ProblemDefinition& p, double t2) {
  ProblemDefinition out = p;
  out.desensitization.t2 = t2;
  return out;
}

SweepPoint run_point(const ProblemDefinition& p, double t2, const PerturbationSpec& spec, int segments,
                     const nlp::SolverOptions& opts, const nlp::Vector* warm, SolveOutcome* nominal_out) {
  SweepPoint pt;
  pt.t2 = t2;
  try {
    const ProblemDefinition q = with_t2(p, t2);
    const Mesh mesh = window_mesh(q, segments);
    SolveOutcome nominal = solve_desensitized(q, mesh, opts, warm);
    pt.report = dispersion_from(nominal, q, spec, mesh, opts);
    pt.ok = nominal.converged() &&
            std::all_of(pt.report.runs.begin(), pt.report.runs.end(), [](const PerturbedRun& r) { return r.ok; });
    if (nominal_out) {
      *nominal_out = std::move(nominal);
    }
  } catch (const Error& e) {
    pt.ok = false;
    pt.error = e.what();
  }
  return pt;
}

}  // namespace

SweepResult sweep_t2(const ProblemDefinition& p, const std::vector<double>& grid, const PerturbationSpec& spec,
                     const SweepOptions& sweep, const nlp::SolverOptions& opts) {
  spec.validate();
  if (grid.empty()) {
    throw Error(ErrorCode::InvalidArgument, "empty t2 grid");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < p.t0 || grid[i] > p.tf) {
      throw Error(ErrorCode::WindowOutsideHorizon, "t2 grid value outside [t0, tf]");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "t2 grid must be strictly increasing");
    }
  }

  SweepResult out;
  out.chained = sweep.chain;
  out.parallel = sweep.parallel && !sweep.chain;
  out.points.resize(grid.size());

  if (sweep.chain) {
    std::optional<SolveOutcome> prev;
    std::optional<ProblemDefinition> prev_problem;
    std::optional<Mesh> prev_mesh;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      nlp::Vector warm;
      const nlp::Vector* warm_ptr = nullptr;
      if (prev) {
        try {
          const ProblemDefinition q = with_t2(p, grid[i]);
          const CollocationNlp from(*prev_problem, *prev_mesh);
          const CollocationNlp to(q, window_mesh(q, sweep.segments));
          warm = transcription::resample(from, prev->z, to);
          warm_ptr = &warm;
        } catch (const Error&) {
          warm_ptr = nullptr;
        }
      }
      SolveOutcome nominal;
      out.points[i] = run_point(p, grid[i], spec, sweep.segments, opts, warm_ptr, &nominal);
      if (nominal.converged()) {
        prev = std::move(nominal);
        prev_problem = with_t2(p, grid[i]);
        prev_mesh = window_mesh(*prev_problem, sweep.segments);
      }
    }
    return out;
  }

  auto work = [&](std::size_t i) {
    out.points[i] = run_point(p, grid[i], spec, sweep.segments, opts, nullptr, nullptr);
  };
  if (!out.parallel) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      work(i);
    }
    return out;
  }
  int threads = sweep.threads > 0 ? sweep.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, static_cast<int>(grid.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < grid.size(); i = next++) {
        work(i);
      }
    });
  }
  for (auto& th : pool) {
    th.join();
  }
  return out;
}

}  // namespace desoc::analysis
