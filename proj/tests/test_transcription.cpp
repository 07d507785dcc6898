#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"

#include "desoc/error.hpp"
#include "desoc/transcription.hpp"

using namespace desoc;
using namespace desoc::transcription;

namespace {

ProblemDefinition rendezvous(double q = 0.0) {
  ProblemDefinition p;
  p.t0 = 0.0;
  p.tf = 6.0;
  p.gravity = {1.0};
  p.desensitization.q_weight = q;
  p.desensitization.t2 = p.tf;
  RendezvousProblem r;
  r.initial = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  r.target = {1.2, 0.02, 0.01, 0.01, 0.0, 6.5};
  r.initial_mass = 1.0;
  r.mass_lower_bound = 0.1;
  r.propulsion = {0.05, 1.0};
  p.details = r;
  return p;
}

ProblemDefinition orbit_raising(double q = 0.0) {
  ProblemDefinition p;
  p.t0 = 0.0;
  p.tf = 3.32;
  p.gravity = {1.0};
  p.desensitization.q_weight = q;
  p.desensitization.t2 = p.tf;
  p.details = OrbitRaisingProblem{};
  return p;
}

nlp::Vector jiggle(const CollocationNlp& nlp, nlp::Vector z, double scale, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int i = 0; i < z.size(); ++i) {
    z[i] = std::clamp(z[i] + scale * U(rng), nlp.lower_bounds()[i], nlp.upper_bounds()[i]);
  }
  return z;
}

}  // namespace

TEST_CASE("mesh construction") {
  const double req[] = {1.05};
  const auto m = Mesh::uniform(0.0, 3.0, 10, req);
  CHECK(m.has_boundary(1.05));
  CHECK(m.t0() == 0.0);
  CHECK(m.tf() == 3.0);
  CHECK(m.num_nodes() == 2 * m.num_segments() + 1);
  CHECK(m.node_time(1) == doctest::Approx(0.5 * m.segment_length(0)));
  CHECK(m.refined().num_segments() == 2 * m.num_segments());
  CHECK_THROWS_AS(Mesh({0.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(Mesh({0.0}), Error);
}

TEST_CASE("decision layout") {
  const int N = 7;
  const CollocationNlp r(rendezvous(), Mesh::uniform(0.0, 6.0, N));
  CHECK(r.num_variables() == (2 * N + 1) * (6 + 1 + 1) + (2 * N + 1) * 4);
  CHECK(r.num_defect_rows() == 2 * 8 * N);
  CHECK(r.num_path_rows() == 2 * N + 1);
  const CollocationNlp o(orbit_raising(), Mesh::uniform(0.0, 3.32, N));
  CHECK(o.num_variables() == (2 * N + 1) * 5);
}

TEST_CASE("mesh must span the horizon") {
  CHECK_THROWS_AS(CollocationNlp(orbit_raising(), Mesh::uniform(0.0, 3.0, 5)), Error);
}

TEST_CASE("Hermite-Simpson is exact for a constant-rate coast") {
  // circular orbit, zero throttle: only L moves, at the constant mean motion
  auto p = rendezvous();
  auto& r = std::get<RendezvousProblem>(p.details);
  r.target = r.initial;
  r.target.L = p.tf;
  const CollocationNlp nlp(p, Mesh::uniform(0.0, p.tf, 9));
  nlp::Vector z = nlp::Vector::Zero(nlp.num_variables());
  const auto times = nlp.mesh().node_times();
  for (int j = 0; j < nlp.mesh().num_nodes(); ++j) {
    z[nlp.state_index(j, 0)] = 1.0;
    z[nlp.state_index(j, 5)] = times[j];
    z[nlp.state_index(j, 6)] = 1.0;
    z[nlp.lambda_index(j)] = 0.25;
    z[nlp.control_index(j, 2)] = 1.0;
  }
  nlp::Vector c;
  nlp.constraints(z, c);
  CHECK(c.head(nlp.num_defect_rows()).lpNorm<Eigen::Infinity>() < 1e-14);
}

TEST_CASE("penalty quadrature of a constant costate") {
  const double Q = 3e-4;
  const double ell = -1.7;
  for (auto p : {orbit_raising(Q), rendezvous(Q)}) {
    const CollocationNlp nlp(p, Mesh::uniform(p.t0, p.tf, 13));
    nlp::Vector z = initial_guess(p, nlp.mesh());
    for (int j = 0; j < nlp.mesh().num_nodes(); ++j) {
      z[nlp.lambda_index(j)] = ell;
    }
    const double expect = Q * ell * ell * (p.tf - p.t0);
    CHECK(std::abs(nlp.penalty(z) - expect) <= 1e-12 * expect);
    CHECK(nlp.objective(z) == doctest::Approx(-nlp.terminal_cost(z) + expect).epsilon(1e-14));
  }
}

TEST_CASE("penalty is confined to the trigger window") {
  auto p = orbit_raising(1e-3);
  p.desensitization.t1 = 1.0;
  p.desensitization.t2 = 2.0;
  const double req[] = {1.0, 2.0};
  const CollocationNlp nlp(p, Mesh::uniform(0.0, p.tf, 20, req));
  nlp::Vector z = initial_guess(p, nlp.mesh());
  for (int j = 0; j < nlp.mesh().num_nodes(); ++j) {
    z[nlp.lambda_index(j)] = 1.0;
  }
  CHECK(nlp.penalty(z) == doctest::Approx(1e-3 * 1.0).epsilon(1e-12));
}

TEST_CASE("initial guess") {
  SUBCASE("orbit raising") {
    const auto p = orbit_raising();
    const CollocationNlp nlp(p, Mesh::uniform(0.0, p.tf, 10));
    const auto z = initial_guess(p, nlp.mesh());
    CHECK(((z.array() >= nlp.lower_bounds().array()) && (z.array() <= nlp.upper_bounds().array())).all());
    CHECK(z[nlp.state_index(0, 0)] == 1.0);
    CHECK(z[nlp.state_index(0, 1)] == 0.0);
    CHECK(z[nlp.state_index(0, 2)] == 1.0);
    nlp::Vector c;
    nlp.constraints(z, c);
    const auto b = c.tail(nlp.num_boundary_rows());
    CHECK(b[0] == 0.0);
    CHECK(b[1] == 0.0);
    CHECK(b[2] == 0.0);
  }
  SUBCASE("rendezvous") {
    const auto p = rendezvous();
    const CollocationNlp nlp(p, Mesh::uniform(0.0, p.tf, 10));
    const auto z = initial_guess(p, nlp.mesh());
    CHECK(((z.array() >= nlp.lower_bounds().array()) && (z.array() <= nlp.upper_bounds().array())).all());
    nlp::Vector c;
    nlp.constraints(z, c);
    const auto b = c.tail(nlp.num_boundary_rows());
    for (int i = 0; i < 13; ++i) {
      CHECK(b[i] == 0.0);
    }
  }
}

TEST_CASE("pack and extract are inverse") {
  for (auto p : {orbit_raising(1e-4), rendezvous(1e-4)}) {
    const CollocationNlp nlp(p, Mesh::uniform(p.t0, p.tf, 6));
    const auto z = jiggle(nlp, initial_guess(p, nlp.mesh()), 0.01, 5);
    const auto traj = extract_solution(nlp, z);
    CHECK(pack_solution(nlp, traj) == z);
    CHECK(traj.lambda_t.back() == z[nlp.lambda_index(nlp.mesh().num_nodes() - 1)]);
    CHECK(traj.terminal_cost == nlp.terminal_cost(z));
    CHECK(traj.objective == nlp.objective(z));
  }
}

TEST_CASE("FD and analytic Jacobians agree") {
  for (auto p : {orbit_raising(1e-4), rendezvous(1e-4)}) {
    const CollocationNlp nlp(p, Mesh::uniform(p.t0, p.tf, 8));
    const auto z = jiggle(nlp, initial_guess(p, nlp.mesh()), 0.02, 9);
    const nlp::SparseMatrix a = nlp::constraint_jacobian(nlp, z, nlp::DerivativeMode::AnalyticDynamics);
    const nlp::SparseMatrix f = nlp::constraint_jacobian(nlp, z, nlp::DerivativeMode::FiniteDifference);
    CHECK(Eigen::MatrixXd(a - f).cwiseAbs().maxCoeff() < 1e-5);
  }
}

TEST_CASE("linear rows are exact in FD mode") {
  const auto p = rendezvous();
  const CollocationNlp nlp(p, Mesh::uniform(p.t0, p.tf, 5));
  const auto z = jiggle(nlp, initial_guess(p, nlp.mesh()), 0.02, 2);
  const Eigen::MatrixXd f = nlp::constraint_jacobian(nlp, z, nlp::DerivativeMode::FiniteDifference);
  const int b = nlp.boundary_row_offset();
  // initial-state pins: one unit entry each
  for (int i = 0; i < 7; ++i) {
    CHECK(std::abs(f(b + i, nlp.state_index(0, i)) - 1.0) < 1e-10);
    CHECK(f.row(b + i).cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("defect rows are block-banded") {
  const auto p = rendezvous();
  const CollocationNlp nlp(p, Mesh::uniform(p.t0, p.tf, 6));
  const auto& s = nlp.jacobian_structure();
  const int per_segment = 2 * nlp.state_size();
  for (std::size_t e = 0; e < s.size(); ++e) {
    if (s.rows[e] >= nlp.num_defect_rows()) continue;
    const int k = s.rows[e] / per_segment;
    const int node = s.cols[e] / nlp.stride();
    CHECK(node >= 2 * k);
    CHECK(node <= 2 * k + 2);
  }
}

TEST_CASE("Hermite-Simpson coast converges at fourth order") {
  const astro::GravityModel g{1.0};
  const astro::MeeState x0{1.2, 0.15, -0.1, 0.05, 0.02, 0.3};
  const double tf = 2.0 * astro::orbital_period(x0, g);
  const auto exact = astro::kepler_propagate(x0, tf, g);
  const RateFunction rhs = [&](const Eigen::VectorXd& x, double) {
    const auto v = dynamics::mee_state_rate(astro::MeeState{x[0], x[1], x[2], x[3], x[4], x[5]}, astro::Vec3::Zero(), g);
    return Eigen::VectorXd(v);
  };
  Eigen::VectorXd start(6);
  start << x0.p, x0.f, x0.g, x0.h, x0.k, x0.L;
  double prev = 0.0;
  for (int n : {20, 40, 80}) {
    const auto out = hermite_simpson_integrate(rhs, start, Mesh::uniform(0.0, tf, n));
    const double err = std::abs(out.back()[5] - exact.L);
    if (prev > 0.0) {
      const double ratio = prev / err;
      CHECK(ratio >= 12.0);
      CHECK(ratio <= 20.0);
    }
    prev = err;
  }
}
