#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "desoc/nlp_solver.hpp"
#include "desoc/transcription.hpp"

namespace desoc::analysis {

using transcription::DiscreteTrajectory;
using transcription::Mesh;
using transcription::ProblemDefinition;

/// Uniform mesh with the trigger window edges forced onto segment boundaries.
Mesh window_mesh(const ProblemDefinition& p, int segments);

struct SolveOutcome {
  DiscreteTrajectory trajectory;
  nlp::SolverReport report;
  nlp::Vector z;  // raw decision vector, usable as a warm start
  bool converged() const { return report.status == nlp::SolverStatus::Converged; }
};

/// Builds and solves the collocation NLP. `warm_start`, when given, must already be laid out
/// for `mesh`; otherwise the declared initial guess is used.
SolveOutcome solve_desensitized(const ProblemDefinition& p, const Mesh& mesh, const nlp::SolverOptions& opts,
                                const nlp::Vector* warm_start = nullptr);

enum class DispersionMode { Resolve, Refly };

const char* to_string(DispersionMode mode) noexcept;
DispersionMode parse_dispersion_mode(const std::string& text);

struct PerturbationSpec {
  std::vector<double> thrusts;  // same units as the problem's thrust
  DispersionMode mode = DispersionMode::Resolve;

  /// {T (1 + pct/100), T (1 - pct/100)}.
  static PerturbationSpec relative(double nominal_thrust, double pct, DispersionMode mode = DispersionMode::Resolve);
  void validate() const;
};

struct PerturbedRun {
  double thrust = 0.0;
  double cost = 0.0;  // sensitive terminal quantity, canonical
  double d = 0.0;
  bool ok = false;
  nlp::SolverReport report;  // empty for refly runs
  std::string error;
};

struct DispersionReport {
  DispersionMode mode = DispersionMode::Resolve;
  double nominal_thrust = 0.0;
  double nominal_cost = 0.0;
  double nominal_objective = 0.0;
  double nominal_penalty = 0.0;
  /// Cost the d values are measured against: the nominal solve (resolve) or its replay (refly).
  double reference_cost = 0.0;
  nlp::SolverReport nominal_report;
  std::vector<PerturbedRun> runs;
};

/// Open-loop replay of the collocated control history with fixed-step RK4 under `thrust`.
/// Controls are interpolated quadratically through each segment's three nodes. With one substep
/// (the default) the RK4 stages land exactly on the nodes.
/// Returns the sensitive terminal quantity.
double refly_terminal_cost(const transcription::CollocationNlp& nlp, const nlp::Vector& z, double thrust,
                           int substeps = 1);

/// Nominal solve plus one run per perturbed thrust. Perturbed failures are recorded, not thrown.
DispersionReport dispersion(const ProblemDefinition& p, const PerturbationSpec& spec, const Mesh& mesh,
                            const nlp::SolverOptions& opts, const nlp::Vector* warm_start = nullptr);

/// Dispersion around an already-solved nominal.
DispersionReport dispersion_from(const SolveOutcome& nominal, const ProblemDefinition& p,
                                 const PerturbationSpec& spec, const Mesh& mesh, const nlp::SolverOptions& opts);

struct SweepOptions {
  int segments = 40;
  bool chain = true;     // warm-start each point from the previous one
  bool parallel = false; // only honoured when chain is false
  int threads = 0;       // 0: hardware concurrency
};

struct SweepPoint {
  double t2 = 0.0;
  DispersionReport report;
  bool ok = false;
  std::string error;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  bool chained = true;
  bool parallel = false;
};

SweepResult sweep_t2(const ProblemDefinition& p, const std::vector<double>& grid, const PerturbationSpec& spec,
                     const SweepOptions& sweep, const nlp::SolverOptions& opts);

/// `count` evenly spaced values in [start, stop].
std::vector<double> linear_grid(double start, double stop, int count);

struct ShootingOptions {
  int steps = 2000;  // RK4 steps over [t0, tf]
  int max_newton = 60;
  int starts = 24;
  std::uint64_t seed = 0;
  double tolerance = 1e-10;
};

struct ShootingResult {
  double r_final = 0.0;
  double lambda_r0 = 0.0;
  double lambda_u0 = 0.0;
  double lambda_v0 = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Maximum-radius transfer solved indirectly: three costates, steering along (lambda_u, lambda_v),
/// transversality for a circular final orbit. Throws ShootingNonConvergence.
ShootingResult orbit_raising_shooting_oracle(const dynamics::OrbitRaisingModel& model, const astro::GravityModel& g,
                                             double tf, const ShootingOptions& opts = {});

}  // namespace desoc::analysis
