#include "desoc/transcription.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/AutoDiff>

#include "desoc/error.hpp"

namespace desoc::transcription {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kRendezvousStates = 8;
constexpr int kRendezvousControls = 4;
constexpr int kOrbitRaisingStates = 4;
constexpr int kOrbitRaisingControls = 1;

template <int N>
using Ad = Eigen::AutoDiffScalar<Eigen::Matrix<double, N, 1>>;

dynamics::RendezvousRhsParams rendezvous_params(const ProblemDefinition& p) {
  const auto& r = std::get<RendezvousProblem>(p.details);
  const auto& d = p.desensitization;
  return {p.gravity.mu, r.propulsion.thrust, r.propulsion.exhaust_velocity, d.k_vr, d.k_vt, d.k_vn, d.k_m};
}

dynamics::OrbitRaisingRhsParams orbit_raising_params(const ProblemDefinition& p) {
  return {p.gravity.mu, std::get<OrbitRaisingProblem>(p.details).model};
}

}  // namespace

const char* to_string(Family family) noexcept {
  return family == Family::MeeRendezvous ? "mee_rendezvous" : "orbit_raising";
}

Family ProblemDefinition::family() const {
  return std::holds_alternative<RendezvousProblem>(details) ? Family::MeeRendezvous : Family::OrbitRaising;
}

double ProblemDefinition::thrust() const {
  if (const auto* r = std::get_if<RendezvousProblem>(&details)) {
    return r->propulsion.thrust;
  }
  return std::get<OrbitRaisingProblem>(details).model.thrust;
}

ProblemDefinition ProblemDefinition::with_thrust(double thrust) const {
  ProblemDefinition out = *this;
  if (auto* r = std::get_if<RendezvousProblem>(&out.details)) {
    r->propulsion.thrust = thrust;
  } else {
    std::get<OrbitRaisingProblem>(out.details).model.thrust = thrust;
  }
  return out;
}

void ProblemDefinition::validate() const {
  if (!(tf > t0)) {
    throw Error(ErrorCode::InvalidArgument, "final time must exceed initial time");
  }
  gravity.validate();
  desensitization.validate(t0, tf);
  if (const auto* r = std::get_if<RendezvousProblem>(&details)) {
    if (!(r->initial.p > 0.0) || !(r->target.p > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "boundary orbits need p > 0");
    }
    if (!(r->initial_mass > r->mass_lower_bound) || !(r->mass_lower_bound > 0.0)) {
      throw Error(ErrorCode::NonPositiveMass, "initial mass must exceed the positive mass bound");
    }
    if (!(r->propulsion.thrust >= 0.0) || !(r->propulsion.exhaust_velocity > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "invalid propulsion parameters");
    }
  } else {
    const auto& o = std::get<OrbitRaisingProblem>(details);
    if (!(o.initial.r > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "initial radius must be positive");
    }
    if (!(o.model.mass(tf) > 0.0) || !(o.model.mass(t0) > 0.0)) {
      throw Error(ErrorCode::NonPositiveMass, "mass reaches zero before the final time");
    }
  }
}

CollocationNlp::CollocationNlp(ProblemDefinition problem, Mesh mesh)
    : problem_(std::move(problem)), mesh_(std::move(mesh)) {
  problem_.validate();
  const double tol = 1e-9 * std::max(1.0, problem_.tf - problem_.t0);
  if (std::abs(mesh_.t0() - problem_.t0) > tol || std::abs(mesh_.tf() - problem_.tf) > tol) {
    throw Error(ErrorCode::InvalidArgument, "mesh does not span [t0, tf]");
  }
  const auto& des = problem_.desensitization;
  if (des.t1 < problem_.t0 || des.t2 > problem_.tf || des.t1 > des.t2) {
    throw Error(ErrorCode::WindowOutsideHorizon, "trigger window outside the horizon");
  }

  const bool rendezvous = problem_.family() == Family::MeeRendezvous;
  state_size_ = rendezvous ? kRendezvousStates : kOrbitRaisingStates;
  control_size_ = rendezvous ? kRendezvousControls : kOrbitRaisingControls;
  const int nodes = mesh_.num_nodes();
  path_rows_ = rendezvous ? nodes : 0;
  boundary_rows_ = rendezvous ? 14 : 6;
  num_variables_ = nodes * stride();
  num_constraints_ = num_defect_rows() + path_rows_ + boundary_rows_;
  node_times_ = mesh_.node_times();

  segment_weights_.resize(mesh_.num_segments());
  for (int k = 0; k < mesh_.num_segments(); ++k) {
    segment_weights_[k] = dynamics::trigger(node_times_[2 * k + 1], des);
  }

  lower_ = nlp::Vector::Constant(num_variables_, -kInf);
  upper_ = nlp::Vector::Constant(num_variables_, kInf);
  for (int j = 0; j < nodes; ++j) {
    if (rendezvous) {
      const auto& r = std::get<RendezvousProblem>(problem_.details);
      const double pmin = std::min(r.initial.p, r.target.p);
      const double pmax = std::max(r.initial.p, r.target.p);
      lower_[state_index(j, 0)] = 0.2 * pmin;
      upper_[state_index(j, 0)] = 5.0 * pmax;
      for (int i = 1; i <= 4; ++i) {
        lower_[state_index(j, i)] = -1.0;
        upper_[state_index(j, i)] = 1.0;
      }
      lower_[state_index(j, 6)] = r.mass_lower_bound;
      upper_[state_index(j, 6)] = r.initial_mass;
      lower_[control_index(j, 0)] = 0.0;
      upper_[control_index(j, 0)] = 1.0;
      for (int i = 1; i <= 3; ++i) {
        lower_[control_index(j, i)] = -1.0;
        upper_[control_index(j, i)] = 1.0;
      }
    } else {
      lower_[state_index(j, 0)] = 0.1;
      upper_[state_index(j, 0)] = 10.0;
      lower_[state_index(j, 1)] = -10.0;
      upper_[state_index(j, 1)] = 10.0;
      lower_[state_index(j, 2)] = -10.0;
      upper_[state_index(j, 2)] = 10.0;
      // phi is left unbounded: any bound is redundant for sin/cos and nodes pinned on it
      // become spurious stationary points.
    }
  }

  walk_jacobian(nullptr, nullptr, [this](int row, int col, double) { structure_.add(row, col); });
}

void CollocationNlp::rates_at(const double* x, const double* u, double t, double* out) const {
  if (problem_.family() == Family::MeeRendezvous) {
    std::array<double, 8> xs;
    std::array<double, 4> us;
    std::copy(x, x + 8, xs.begin());
    std::copy(u, u + 4, us.begin());
    const auto f = dynamics::rendezvous_rhs(xs, us, rendezvous_params(problem_));
    std::copy(f.begin(), f.end(), out);
  } else {
    std::array<double, 4> xs;
    std::copy(x, x + 4, xs.begin());
    const auto f = dynamics::orbit_raising_rhs(xs, u[0], t, orbit_raising_params(problem_));
    std::copy(f.begin(), f.end(), out);
  }
}

Eigen::MatrixXd CollocationNlp::rate_jacobian_at(const double* x, const double* u, double t) const {
  Eigen::MatrixXd d(state_size_, stride());
  if (problem_.family() == Family::MeeRendezvous) {
    constexpr int N = kRendezvousStates + kRendezvousControls;
    using S = Ad<N>;
    std::array<S, 8> xs;
    std::array<S, 4> us;
    for (int i = 0; i < 8; ++i) {
      xs[i] = S(x[i], N, i);
    }
    for (int i = 0; i < 4; ++i) {
      us[i] = S(u[i], N, 8 + i);
    }
    const auto f = dynamics::rendezvous_rhs(xs, us, rendezvous_params(problem_));
    for (int i = 0; i < 8; ++i) {
      d.row(i) = f[i].derivatives().transpose();
    }
  } else {
    constexpr int N = kOrbitRaisingStates + kOrbitRaisingControls;
    using S = Ad<N>;
    std::array<S, 4> xs;
    for (int i = 0; i < 4; ++i) {
      xs[i] = S(x[i], N, i);
    }
    const S phi(u[0], N, 4);
    const auto f = dynamics::orbit_raising_rhs(xs, phi, t, orbit_raising_params(problem_));
    for (int i = 0; i < 4; ++i) {
      d.row(i) = f[i].derivatives().transpose();
    }
  }
  return d;
}

std::vector<double> CollocationNlp::node_rates(const nlp::Vector& z, int node) const {
  std::vector<double> out(state_size_);
  rates_at(z.data() + state_index(node, 0), z.data() + control_index(node, 0), node_times_[node], out.data());
  return out;
}

template <typename Sink>
void CollocationNlp::walk_jacobian(const std::vector<Eigen::MatrixXd>* derivs, const nlp::Vector* z,
                                   Sink&& sink) const {
  const int ns = state_size_;
  const int st = stride();
  auto d = [&](int node, int i, int v) { return derivs ? (*derivs)[node](i, v) : 0.0; };

  for (int k = 0; k < mesh_.num_segments(); ++k) {
    const int a = 2 * k;
    const int c = a + 1;
    const int b = a + 2;
    const double h = mesh_.segment_length(k);
    for (int i = 0; i < ns; ++i) {
      const int row = 2 * ns * k + i;
      for (int v = 0; v < st; ++v) {
        sink(row, a * st + v, (v == i ? -0.5 : 0.0) - h / 8.0 * d(a, i, v));
      }
      sink(row, c * st + i, 1.0);
      for (int v = 0; v < st; ++v) {
        sink(row, b * st + v, (v == i ? -0.5 : 0.0) + h / 8.0 * d(b, i, v));
      }
    }
    for (int i = 0; i < ns; ++i) {
      const int row = 2 * ns * k + ns + i;
      for (int v = 0; v < st; ++v) {
        sink(row, a * st + v, (v == i ? -1.0 : 0.0) - h / 6.0 * d(a, i, v));
      }
      for (int v = 0; v < st; ++v) {
        sink(row, c * st + v, -4.0 * h / 6.0 * d(c, i, v));
      }
      for (int v = 0; v < st; ++v) {
        sink(row, b * st + v, (v == i ? 1.0 : 0.0) - h / 6.0 * d(b, i, v));
      }
    }
  }

  const int last = mesh_.num_nodes() - 1;
  int row = num_defect_rows();
  if (problem_.family() == Family::MeeRendezvous) {
    for (int j = 0; j <= last; ++j, ++row) {
      for (int q = 1; q <= 3; ++q) {
        const int col = control_index(j, q);
        sink(row, col, z ? 2.0 * (*z)[col] : 0.0);
      }
    }
    for (int i = 0; i < 7; ++i) {
      sink(row++, state_index(0, i), 1.0);
    }
    for (int i = 0; i < 6; ++i) {
      sink(row++, state_index(last, i), 1.0);
    }
    sink(row++, lambda_index(last), 1.0);
  } else {
    sink(row++, state_index(0, 0), 1.0);
    sink(row++, state_index(0, 1), 1.0);
    sink(row++, state_index(0, 2), 1.0);
    sink(row++, state_index(last, 1), 1.0);
    const double rf = z ? (*z)[state_index(last, 0)] : 1.0;
    sink(row, state_index(last, 0), 0.5 * std::pow(rf, -1.5));
    sink(row++, state_index(last, 2), 1.0);
    sink(row++, lambda_index(last), 1.0);
  }
}

void CollocationNlp::constraints(const nlp::Vector& z, nlp::Vector& c) const {
  if (z.size() != num_variables_) {
    throw Error(ErrorCode::DimensionMismatch, "decision vector has wrong length");
  }
  c.resize(num_constraints_);
  const int ns = state_size_;
  const int nodes = mesh_.num_nodes();
  Eigen::MatrixXd f(ns, nodes);
  for (int j = 0; j < nodes; ++j) {
    rates_at(z.data() + state_index(j, 0), z.data() + control_index(j, 0), node_times_[j], f.col(j).data());
  }
  for (int k = 0; k < mesh_.num_segments(); ++k) {
    const int a = 2 * k;
    const int cm = a + 1;
    const int b = a + 2;
    const double h = mesh_.segment_length(k);
    for (int i = 0; i < ns; ++i) {
      const double xa = z[state_index(a, i)];
      const double xc = z[state_index(cm, i)];
      const double xb = z[state_index(b, i)];
      c[2 * ns * k + i] = xc - 0.5 * (xa + xb) - h / 8.0 * (f(i, a) - f(i, b));
      c[2 * ns * k + ns + i] = xb - xa - h / 6.0 * (f(i, a) + 4.0 * f(i, cm) + f(i, b));
    }
  }

  const int last = nodes - 1;
  int row = num_defect_rows();
  if (const auto* r = std::get_if<RendezvousProblem>(&problem_.details)) {
    for (int j = 0; j < nodes; ++j) {
      const double ur = z[control_index(j, 1)];
      const double ut = z[control_index(j, 2)];
      const double un = z[control_index(j, 3)];
      c[row++] = ur * ur + ut * ut + un * un - 1.0;
    }
    const auto x0 = r->initial.as_array();
    const auto xt = r->target.as_array();
    for (int i = 0; i < 6; ++i) {
      c[row++] = z[state_index(0, i)] - x0[i];
    }
    c[row++] = z[state_index(0, 6)] - r->initial_mass;
    for (int i = 0; i < 6; ++i) {
      c[row++] = z[state_index(last, i)] - xt[i];
    }
    c[row++] = z[lambda_index(last)];
  } else {
    const auto& o = std::get<OrbitRaisingProblem>(problem_.details);
    c[row++] = z[state_index(0, 0)] - o.initial.r;
    c[row++] = z[state_index(0, 1)] - o.initial.u;
    c[row++] = z[state_index(0, 2)] - o.initial.v;
    c[row++] = z[state_index(last, 1)];
    c[row++] = z[state_index(last, 2)] - 1.0 / std::sqrt(z[state_index(last, 0)]);
    c[row++] = z[lambda_index(last)];
  }
}

void CollocationNlp::jacobian_values(const nlp::Vector& z, std::span<double> values) const {
  if (values.size() != structure_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "Jacobian value buffer has wrong length");
  }
  std::vector<Eigen::MatrixXd> derivs(mesh_.num_nodes());
  for (int j = 0; j < mesh_.num_nodes(); ++j) {
    derivs[j] = rate_jacobian_at(z.data() + state_index(j, 0), z.data() + control_index(j, 0), node_times_[j]);
  }
  std::size_t idx = 0;
  walk_jacobian(&derivs, &z, [&](int, int, double v) { values[idx++] = v; });
}

double CollocationNlp::terminal_cost(const nlp::Vector& z) const {
  const int last = mesh_.num_nodes() - 1;
  return problem_.family() == Family::MeeRendezvous ? z[state_index(last, 6)] : z[state_index(last, 0)];
}

double CollocationNlp::penalty(const nlp::Vector& z) const {
  const double q = problem_.desensitization.q_weight;
  if (q == 0.0) {
    return 0.0;
  }
  double sum = 0.0;
  for (int k = 0; k < mesh_.num_segments(); ++k) {
    if (segment_weights_[k] == 0.0) {
      continue;
    }
    const double la = z[lambda_index(2 * k)];
    const double lc = z[lambda_index(2 * k + 1)];
    const double lb = z[lambda_index(2 * k + 2)];
    sum += segment_weights_[k] * mesh_.segment_length(k) / 6.0 * (la * la + 4.0 * lc * lc + lb * lb);
  }
  return q * sum;
}

double CollocationNlp::objective(const nlp::Vector& z) const { return -terminal_cost(z) + penalty(z); }

void CollocationNlp::objective_gradient(const nlp::Vector& z, nlp::Vector& grad) const {
  grad = nlp::Vector::Zero(num_variables_);
  const int last = mesh_.num_nodes() - 1;
  grad[problem_.family() == Family::MeeRendezvous ? state_index(last, 6) : state_index(last, 0)] = -1.0;
  const double q = problem_.desensitization.q_weight;
  if (q == 0.0) {
    return;
  }
  for (int k = 0; k < mesh_.num_segments(); ++k) {
    const double w = q * segment_weights_[k] * mesh_.segment_length(k) / 6.0;
    grad[lambda_index(2 * k)] += w * 2.0 * z[lambda_index(2 * k)];
    grad[lambda_index(2 * k + 1)] += w * 8.0 * z[lambda_index(2 * k + 1)];
    grad[lambda_index(2 * k + 2)] += w * 2.0 * z[lambda_index(2 * k + 2)];
  }
}

nlp::Vector initial_guess(const ProblemDefinition& problem, const Mesh& mesh) {
  const CollocationNlp layout(problem, mesh);
  nlp::Vector z = nlp::Vector::Zero(layout.num_variables());
  const double span = problem.tf - problem.t0;
  for (int j = 0; j < mesh.num_nodes(); ++j) {
    const double s = (mesh.node_time(j) - problem.t0) / span;
    if (const auto* r = std::get_if<RendezvousProblem>(&problem.details)) {
      const auto x0 = r->initial.as_array();
      const auto xt = r->target.as_array();
      for (int i = 0; i < 6; ++i) {
        z[layout.state_index(j, i)] = j == mesh.num_nodes() - 1 ? xt[i] : x0[i] + s * (xt[i] - x0[i]);
      }
      z[layout.state_index(j, 6)] = r->initial_mass * (1.0 - 0.3 * s);
      z[layout.control_index(j, 0)] = 0.5;
      z[layout.control_index(j, 2)] = 1.0;
    } else {
      const auto& o = std::get<OrbitRaisingProblem>(problem.details);
      const double radius = o.initial.r + s * (1.5 - o.initial.r);
      z[layout.state_index(j, 0)] = radius;
      z[layout.state_index(j, 1)] = 0.0;
      z[layout.state_index(j, 2)] = j == 0 ? o.initial.v : 1.0 / std::sqrt(radius);
      z[layout.control_index(j, 0)] = 0.5 * astro::kPi * s;
    }
  }
  return z;
}

DiscreteTrajectory extract_solution(const CollocationNlp& nlp, const nlp::Vector& z) {
  if (z.size() != nlp.num_variables()) {
    throw Error(ErrorCode::DimensionMismatch, "decision vector has " + std::to_string(z.size()) +
                                                  " entries, layout expects " +
                                                  std::to_string(nlp.num_variables()));
  }
  const ProblemDefinition& p = nlp.problem();
  const bool rendezvous = p.family() == Family::MeeRendezvous;
  const int nodes = nlp.mesh().num_nodes();
  const int phys = rendezvous ? 6 : 3;

  DiscreteTrajectory t;
  t.family = p.family();
  t.times = nlp.mesh().node_times();
  t.states.resize(nodes, phys);
  t.controls.resize(nodes, nlp.control_size());
  t.mass.resize(nodes);
  t.lambda_t.resize(nodes);
  for (int j = 0; j < nodes; ++j) {
    for (int i = 0; i < phys; ++i) {
      t.states(j, i) = z[nlp.state_index(j, i)];
    }
    for (int i = 0; i < nlp.control_size(); ++i) {
      t.controls(j, i) = z[nlp.control_index(j, i)];
    }
    t.lambda_t[j] = z[nlp.lambda_index(j)];
    t.mass[j] = rendezvous ? z[nlp.state_index(j, 6)]
                           : std::get<OrbitRaisingProblem>(p.details).model.mass(t.times[j]);
  }
  t.terminal_cost = nlp.terminal_cost(z);
  t.penalty = nlp.penalty(z);
  t.objective = nlp.objective(z);

  nlp::Vector c;
  nlp.constraints(z, c);
  const int defects = nlp.num_defect_rows();
  t.max_defect = defects > 0 ? c.head(defects).cwiseAbs().maxCoeff() : 0.0;
  t.path_residual = nlp.num_path_rows() > 0 ? c.segment(defects, nlp.num_path_rows()).cwiseAbs().maxCoeff() : 0.0;
  t.boundary_residual = c.tail(nlp.num_boundary_rows()).cwiseAbs().maxCoeff();
  return t;
}

nlp::Vector pack_solution(const CollocationNlp& nlp, const DiscreteTrajectory& traj) {
  const int nodes = nlp.mesh().num_nodes();
  if (static_cast<int>(traj.times.size()) != nodes || traj.controls.cols() != nlp.control_size()) {
    throw Error(ErrorCode::DimensionMismatch, "trajectory does not match the collocation layout");
  }
  nlp::Vector z(nlp.num_variables());
  const bool rendezvous = nlp.problem().family() == Family::MeeRendezvous;
  for (int j = 0; j < nodes; ++j) {
    for (int i = 0; i < traj.states.cols(); ++i) {
      z[nlp.state_index(j, i)] = traj.states(j, i);
    }
    if (rendezvous) {
      z[nlp.state_index(j, 6)] = traj.mass[j];
    }
    z[nlp.lambda_index(j)] = traj.lambda_t[j];
    for (int i = 0; i < nlp.control_size(); ++i) {
      z[nlp.control_index(j, i)] = traj.controls(j, i);
    }
  }
  return z;
}

nlp::Vector resample(const CollocationNlp& from, const nlp::Vector& z, const CollocationNlp& to) {
  if (from.stride() != to.stride()) {
    throw Error(ErrorCode::DimensionMismatch, "cannot resample between problem families");
  }
  const std::vector<double> src = from.mesh().node_times();
  const std::vector<double> dst = to.mesh().node_times();
  const int st = from.stride();
  nlp::Vector out(to.num_variables());
  for (std::size_t j = 0; j < dst.size(); ++j) {
    const double t = std::clamp(dst[j], src.front(), src.back());
    auto it = std::upper_bound(src.begin(), src.end(), t);
    std::size_t hi = std::min<std::size_t>(it - src.begin(), src.size() - 1);
    const std::size_t lo = hi == 0 ? 0 : hi - 1;
    hi = std::max(hi, lo + 1);
    const double w = (t - src[lo]) / (src[hi] - src[lo]);
    for (int v = 0; v < st; ++v) {
      out[static_cast<int>(j) * st + v] = (1.0 - w) * z[lo * st + v] + w * z[hi * st + v];
    }
  }
  return out.cwiseMax(to.lower_bounds()).cwiseMin(to.upper_bounds());
}

std::vector<Eigen::VectorXd> hermite_simpson_integrate(const RateFunction& rhs, const Eigen::VectorXd& x0,
                                                       const Mesh& mesh) {
  const int ns = static_cast<int>(x0.size());
  std::vector<Eigen::VectorXd> out{x0};
  Eigen::VectorXd xa = x0;
  for (int k = 0; k < mesh.num_segments(); ++k) {
    const double ta = mesh.boundaries()[k];
    const double h = mesh.segment_length(k);
    const double tc = ta + 0.5 * h;
    const double tb = ta + h;
    const Eigen::VectorXd fa = rhs(xa, ta);

    auto residual = [&](const Eigen::VectorXd& u) {
      const Eigen::VectorXd xc = u.head(ns);
      const Eigen::VectorXd xb = u.tail(ns);
      const Eigen::VectorXd fc = rhs(xc, tc);
      const Eigen::VectorXd fb = rhs(xb, tb);
      Eigen::VectorXd r(2 * ns);
      r.head(ns) = xc - 0.5 * (xa + xb) - h / 8.0 * (fa - fb);
      r.tail(ns) = xb - xa - h / 6.0 * (fa + 4.0 * fc + fb);
      return r;
    };

    Eigen::VectorXd u(2 * ns);
    u.head(ns) = xa + 0.5 * h * fa;
    u.tail(ns) = xa + h * fa;
    for (int it = 0; it < 50; ++it) {
      const Eigen::VectorXd r = residual(u);
      if (r.cwiseAbs().maxCoeff() <= 1e-15 * std::max(1.0, u.cwiseAbs().maxCoeff())) {
        break;
      }
      Eigen::MatrixXd jac(2 * ns, 2 * ns);
      for (int v = 0; v < 2 * ns; ++v) {
        const double step = 1e-7 * std::max(1.0, std::abs(u[v]));
        Eigen::VectorXd up = u;
        Eigen::VectorXd um = u;
        up[v] += step;
        um[v] -= step;
        jac.col(v) = (residual(up) - residual(um)) / (2.0 * step);
      }
      const Eigen::VectorXd du = jac.partialPivLu().solve(-r);
      u += du;
      if (du.cwiseAbs().maxCoeff() <= 1e-15 * std::max(1.0, u.cwiseAbs().maxCoeff())) {
        break;
      }
    }
    xa = u.tail(ns);
    out.push_back(xa);
  }
  return out;
}

}  // namespace desoc::transcription
