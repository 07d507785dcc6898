#pragma once

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "desoc/astro.hpp"
#include "desoc/dynamics.hpp"
#include "desoc/nlp.hpp"

namespace desoc::transcription {

enum class Family { MeeRendezvous, OrbitRaising };

const char* to_string(Family family) noexcept;

/// Fixed-time rendezvous in modified equinoctial elements; all values canonical.
struct RendezvousProblem {
  astro::MeeState initial;
  astro::MeeState target;  // L already unwrapped through the intended revolutions
  double initial_mass = 1.0;
  double mass_lower_bound = 0.1;
  dynamics::Propulsion propulsion;
};

/// Scaled planar maximum-radius transfer.
struct OrbitRaisingProblem {
  dynamics::PolarState initial;
  dynamics::OrbitRaisingModel model;
};

struct ProblemDefinition {
  double t0 = 0.0;
  double tf = 1.0;
  astro::GravityModel gravity;
  dynamics::DesensitizationConfig desensitization;
  std::variant<RendezvousProblem, OrbitRaisingProblem> details;

  Family family() const;
  double thrust() const;
  /// Copy with the engine thrust replaced (same unit system).
  ProblemDefinition with_thrust(double thrust) const;
  void validate() const;
};

/// Segment boundaries of a Hermite-Simpson grid. Each segment carries two endpoints and a
/// midpoint node, so N segments have 2N+1 nodes.
class Mesh {
 public:
  explicit Mesh(std::vector<double> boundaries);

  /// N uniform segments on [t0, tf]; every interior time in `required` becomes a segment
  /// boundary (the nearest uniform boundary is moved onto it when close, else one is added).
  static Mesh uniform(double t0, double tf, int segments, std::span<const double> required = {});

  const std::vector<double>& boundaries() const { return boundaries_; }
  int num_segments() const { return static_cast<int>(boundaries_.size()) - 1; }
  int num_nodes() const { return 2 * num_segments() + 1; }
  double t0() const { return boundaries_.front(); }
  double tf() const { return boundaries_.back(); }
  double segment_length(int k) const { return boundaries_[k + 1] - boundaries_[k]; }
  double node_time(int node) const;
  std::vector<double> node_times() const;
  bool has_boundary(double t, double tolerance = 1e-12) const;
  /// Every segment split in half.
  Mesh refined() const;

 private:
  std::vector<double> boundaries_;
};

/// Decision vector layout (node-major): node j occupies
/// z[j*stride .. j*stride + state_size) for states and the following control_size entries
/// for controls, stride = state_size + control_size.
///   rendezvous:    states [p, f, g, h, k, L, m, lambda_T], controls [delta, u_r, u_t, u_n]
///   orbit-raising: states [r, u, v, lambda_T],             controls [phi]
/// Constraint rows: for each segment k, state_size midpoint-interpolation defects followed by
/// state_size Simpson defects; then (rendezvous only) one unit-norm row per node; then the
/// boundary conditions.
class CollocationNlp final : public nlp::NlpProblem {
 public:
  CollocationNlp(ProblemDefinition problem, Mesh mesh);

  int state_size() const { return state_size_; }
  int control_size() const { return control_size_; }
  int stride() const { return state_size_ + control_size_; }
  int state_index(int node, int i) const { return node * stride() + i; }
  int control_index(int node, int i) const { return node * stride() + state_size_ + i; }
  int lambda_index(int node) const { return state_index(node, state_size_ - 1); }
  int num_defect_rows() const { return 2 * state_size_ * mesh_.num_segments(); }
  int num_path_rows() const { return path_rows_; }
  int num_boundary_rows() const { return boundary_rows_; }
  int boundary_row_offset() const { return num_defect_rows() + path_rows_; }

  const ProblemDefinition& problem() const { return problem_; }
  const Mesh& mesh() const { return mesh_; }
  /// Trigger value applied to each segment's penalty quadrature.
  const std::vector<double>& segment_weights() const { return segment_weights_; }

  int num_variables() const override { return num_variables_; }
  int num_constraints() const override { return num_constraints_; }
  const nlp::Vector& lower_bounds() const override { return lower_; }
  const nlp::Vector& upper_bounds() const override { return upper_; }
  double objective(const nlp::Vector& z) const override;
  void objective_gradient(const nlp::Vector& z, nlp::Vector& grad) const override;
  void constraints(const nlp::Vector& z, nlp::Vector& c) const override;
  const nlp::JacobianStructure& jacobian_structure() const override { return structure_; }
  bool has_analytic_jacobian() const override { return true; }
  void jacobian_values(const nlp::Vector& z, std::span<double> values) const override;

  /// m(tf) for rendezvous, r(tf) for orbit raising.
  double terminal_cost(const nlp::Vector& z) const;
  /// Time-triggered penalty quadrature  sum_k w_k Q (h_k/6)(lam_a^2 + 4 lam_c^2 + lam_b^2).
  double penalty(const nlp::Vector& z) const;

  /// Right-hand side at one node (state_size entries).
  std::vector<double> node_rates(const nlp::Vector& z, int node) const;

 private:
  template <typename Sink>
  void walk_jacobian(const std::vector<Eigen::MatrixXd>* derivs, const nlp::Vector* z, Sink&& sink) const;
  void rates_at(const double* x, const double* u, double t, double* out) const;
  Eigen::MatrixXd rate_jacobian_at(const double* x, const double* u, double t) const;

  ProblemDefinition problem_;
  Mesh mesh_;
  int state_size_ = 0;
  int control_size_ = 0;
  int path_rows_ = 0;
  int boundary_rows_ = 0;
  int num_variables_ = 0;
  int num_constraints_ = 0;
  std::vector<double> node_times_;
  std::vector<double> segment_weights_;
  nlp::Vector lower_;
  nlp::Vector upper_;
  nlp::JacobianStructure structure_;
};

/// Unpacked solution on the mesh nodes.
struct DiscreteTrajectory {
  Family family = Family::OrbitRaising;
  std::vector<double> times;
  Eigen::MatrixXd states;    // nodes x (6 MEE | r,u,v)
  std::vector<double> mass;  // transcribed (rendezvous) or closed form (orbit raising)
  std::vector<double> lambda_t;
  Eigen::MatrixXd controls;  // nodes x (delta,u_r,u_t,u_n | phi)
  double objective = 0.0;
  double terminal_cost = 0.0;
  double penalty = 0.0;
  double max_defect = 0.0;
  double boundary_residual = 0.0;
  double path_residual = 0.0;
};

nlp::Vector initial_guess(const ProblemDefinition& problem, const Mesh& mesh);
DiscreteTrajectory extract_solution(const CollocationNlp& nlp, const nlp::Vector& z);
/// Inverse of extract_solution for the decision variables.
nlp::Vector pack_solution(const CollocationNlp& nlp, const DiscreteTrajectory& traj);
/// Linear interpolation of every decision variable of `z` (laid out for `from`) onto the
/// node times of `to`.
nlp::Vector resample(const CollocationNlp& from, const nlp::Vector& z, const CollocationNlp& to);

using RateFunction = std::function<Eigen::VectorXd(const Eigen::VectorXd& x, double t)>;

/// Integrates x' = rhs(x, t) across the mesh by solving each segment's Hermite-Simpson
/// equations with Newton's method. Returns the state at every segment boundary.
std::vector<Eigen::VectorXd> hermite_simpson_integrate(const RateFunction& rhs, const Eigen::VectorXd& x0,
                                                       const Mesh& mesh);

}  // namespace desoc::transcription
