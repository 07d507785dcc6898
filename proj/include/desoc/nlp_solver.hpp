#pragma once

#include <cstdint>
#include <vector>

#include "desoc/nlp.hpp"

namespace desoc::nlp {

enum class SolverStatus { Converged, MaxIterations, InfeasibleStall, NumericFailure };

const char* to_string(SolverStatus status) noexcept;

struct SolverOptions {
  double feasibility_tol = 1e-8;  // max |c_i|
  double optimality_tol = 1e-6;   // projected Lagrangian gradient, inf-norm
  int max_outer_iterations = 500;
  int max_inner_iterations = 5000;  // per augmented-Lagrangian subproblem

  // Penalty schedule.
  double initial_penalty = 10.0;
  double penalty_growth = 10.0;
  double max_penalty = 1e12;

  int lbfgs_memory = 8;
  int stall_outer_iterations = 15;
  int max_restarts = 3;
  std::uint64_t seed = 0;
  double restart_noise = 1e-2;

  DerivativeMode derivative_mode = DerivativeMode::AnalyticDynamics;
  int verbosity = 0;

  void validate() const;
};

struct SolverReport {
  SolverStatus status = SolverStatus::MaxIterations;
  double feasibility = 0.0;
  double optimality = 0.0;
  double objective = 0.0;
  int outer_iterations = 0;
  int inner_iterations = 0;
  int restarts = 0;
  double penalty = 0.0;
  double wall_time_s = 0.0;
  /// Constraint violation after each outer iteration whose multiplier update was accepted.
  std::vector<double> accepted_feasibility;
  Vector multipliers;
};

struct SolveResult {
  Vector z;
  SolverReport report;
};

/// Augmented-Lagrangian method over the equality constraints. Each subproblem is a
/// bound-constrained minimization solved by projected quasi-Newton steps whose Hessian model
/// is a limited-memory secant approximation plus the penalty Gauss-Newton term rho * J^T J.
/// Deterministic for identical inputs.
SolveResult solve(const NlpProblem& problem, const Vector& z0, const SolverOptions& options = {});

/// First-order optimality measure || P(z - grad L) - z ||_inf for given multipliers.
double projected_gradient_norm(const Vector& z, const Vector& grad, const Vector& lower,
                               const Vector& upper);

}  // namespace desoc::nlp
