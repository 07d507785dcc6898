#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "desoc/astro.hpp"
#include "desoc/dynamics.hpp"
#include "desoc/nlp_solver.hpp"
#include "desoc/transcription.hpp"

namespace desoc::io {

struct RendezvousConfig {
  astro::CartesianState initial;  // km, km/s
  astro::CartesianState target;
  dynamics::SpacecraftModel spacecraft;
  std::optional<int> revolutions;  // estimated from the mean motions when absent
  double mass_lower_fraction = 0.1;

  bool operator==(const RendezvousConfig&) const = default;
};

struct OrbitRaisingConfig {
  dynamics::PolarState initial;
  dynamics::OrbitRaisingModel model;

  bool operator==(const OrbitRaisingConfig&) const = default;
};

struct SolverConfig {
  double feasibility_tol = 1e-8;
  double optimality_tol = 1e-6;
  int max_outer_iterations = 500;
  int max_inner_iterations = 5000;
  int max_restarts = 3;
  std::string derivatives = "analytic";  // analytic | finite_difference
  std::uint64_t seed = 0;

  bool operator==(const SolverConfig&) const = default;
};

/// Parsed problem file. Times (t0, tf, t1, t2, rho) are in file units: days for rendezvous,
/// scaled units for orbit raising. Nothing here is canonical yet.
struct ProblemConfig {
  transcription::Family family = transcription::Family::OrbitRaising;
  std::string name;
  double t0 = 0.0;
  double tf = 1.0;
  double mu = 1.0;  // km^3/s^2 for rendezvous, scaled for orbit raising
  std::optional<RendezvousConfig> rendezvous;
  std::optional<OrbitRaisingConfig> orbit_raising;
  dynamics::DesensitizationConfig desensitization;
  int segments = 40;
  SolverConfig solver;

  bool operator==(const ProblemConfig&) const = default;
  void validate() const;
};

ProblemConfig parse_problem_yaml(const std::string& text);
ProblemConfig load_problem_file(const std::string& path);
/// YAML that re-parses to an identical configuration.
std::string dump_problem_yaml(const ProblemConfig& cfg);

/// Canonical problem plus the scaling needed to report results in file units.
struct Scenario {
  transcription::ProblemDefinition problem;
  astro::CanonicalScaling scaling;
  int revolutions = 0;  // rendezvous only

  bool interplanetary() const { return problem.family() == transcription::Family::MeeRendezvous; }
  double time_to_canonical(double file_time) const;
  double time_to_file(double t) const;
  /// Sensitive cost in file units: kg for rendezvous, scaled radius for orbit raising.
  double cost_to_file(double cost) const;
  double thrust_to_file(double thrust) const;    // N or scaled
  double thrust_to_canonical(double file_thrust) const;
};

Scenario build_scenario(const ProblemConfig& cfg);
nlp::SolverOptions solver_options(const ProblemConfig& cfg);

}  // namespace desoc::io
