#include <cmath>

#include "doctest.h"

#include "desoc/analysis.hpp"
#include "desoc/error.hpp"

using namespace desoc;
using namespace desoc::analysis;

namespace {

ProblemDefinition orbit_raising(double q, double t2 = 3.32) {
  ProblemDefinition p;
  p.tf = 3.32;
  p.desensitization.q_weight = q;
  p.desensitization.t2 = t2;
  p.details = transcription::OrbitRaisingProblem{};
  return p;
}

}  // namespace

TEST_CASE("shooting oracle") {
  dynamics::OrbitRaisingModel model;
  SUBCASE("no thrust keeps the circular orbit") {
    model.thrust = 0.0;
    CHECK(orbit_raising_shooting_oracle(model, {1.0}, 3.32).r_final == 1.0);
  }
  SUBCASE("nominal transfer") {
    ShootingOptions o;
    o.starts = 4;
    const auto r = orbit_raising_shooting_oracle(model, {1.0}, 3.32, o);
    CHECK(r.residual < 1e-10);
    CHECK(std::abs(r.r_final - 1.525) < 1e-3);
  }
}

TEST_CASE("window mesh places boundaries at t1 and t2") {
  const auto p = orbit_raising(1e-4, 2.0);
  const auto m = window_mesh(p, 15);
  CHECK(m.has_boundary(0.0));
  CHECK(m.has_boundary(2.0));
  CHECK(m.tf() == 3.32);
}

TEST_CASE("linear grid") {
  CHECK(linear_grid(0.0, 3.32, 1) == std::vector<double>{3.32});
  const auto g = linear_grid(0.0, 3.32, 20);
  CHECK(g.size() == 20);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 3.32);
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0), Error);
}

TEST_CASE("perturbation specs") {
  const auto s = PerturbationSpec::relative(0.6, 5.0);
  REQUIRE(s.thrusts.size() == 2);
  CHECK(s.thrusts[0] == doctest::Approx(0.63));
  CHECK(s.thrusts[1] == doctest::Approx(0.57));
  CHECK_THROWS_AS(PerturbationSpec{}.validate(), Error);
  CHECK(parse_dispersion_mode("refly") == DispersionMode::Refly);
  CHECK_THROWS_AS(parse_dispersion_mode("replay"), Error);
}

TEST_CASE("zero perturbation gives zero dispersion") {
  const auto p = orbit_raising(4e-4);
  for (auto mode : {DispersionMode::Resolve, DispersionMode::Refly}) {
    PerturbationSpec spec;
    spec.thrusts = {0.1405};
    spec.mode = mode;
    const auto rep = dispersion(p, spec, window_mesh(p, 20), {});
    REQUIRE(rep.runs.size() == 1);
    CHECK(rep.runs[0].ok);
    CHECK(rep.runs[0].d == 0.0);
  }
}

TEST_CASE("refly replays the nominal solution") {
  const auto p = orbit_raising(0.0);
  const auto mesh = window_mesh(p, 80);
  const auto nominal = solve_desensitized(p, mesh, {});
  REQUIRE(nominal.converged());
  const transcription::CollocationNlp nlp(p, mesh);
  const double r = refly_terminal_cost(nlp, nominal.z, 0.1405);
  CHECK(std::abs(r - nominal.trajectory.terminal_cost) <= 1e-6 * nominal.trajectory.terminal_cost);
  CHECK(refly_terminal_cost(nlp, nominal.z, 0.1505) > r);
  CHECK_THROWS_AS(refly_terminal_cost(nlp, nominal.z.head(5), 0.1405), Error);
}

TEST_CASE("penalty part of J is non-negative and the cost drops") {
  const auto p0 = orbit_raising(0.0);
  const auto p1 = orbit_raising(1e-2);
  const auto a = solve_desensitized(p0, window_mesh(p0, 20), {});
  const auto b = solve_desensitized(p1, window_mesh(p1, 20), {});
  REQUIRE(a.converged());
  REQUIRE(b.converged());
  CHECK(b.trajectory.penalty >= 0.0);
  CHECK(b.trajectory.terminal_cost <= a.trajectory.terminal_cost + 1e-9);
  CHECK(std::abs(b.trajectory.lambda_t.back()) < 1e-8);
}

TEST_CASE("degenerate sweep equals the full-window dispersion") {
  const auto p = orbit_raising(4e-4);
  PerturbationSpec spec;
  spec.thrusts = {0.1505, 0.1305};
  SweepOptions so;
  so.segments = 20;
  const auto sw = sweep_t2(p, {3.32}, spec, so, {});
  REQUIRE(sw.points.size() == 1);
  REQUIRE(sw.points[0].ok);
  const auto d = dispersion(p, spec, window_mesh(p, 20), {});
  CHECK(sw.points[0].report.nominal_cost == d.nominal_cost);
  CHECK(sw.points[0].report.runs[0].d == d.runs[0].d);
  CHECK(sw.points[0].report.runs[1].d == d.runs[1].d);
}

TEST_CASE("sweep modes agree") {
  const auto p = orbit_raising(4e-4);
  PerturbationSpec spec;
  spec.thrusts = {0.1505};
  spec.mode = DispersionMode::Refly;
  SweepOptions chained;
  chained.segments = 16;
  SweepOptions par = chained;
  par.chain = false;
  par.parallel = true;
  par.threads = 2;
  const auto grid = linear_grid(1.0, 3.32, 3);
  const auto a = sweep_t2(p, grid, spec, chained, {});
  const auto b = sweep_t2(p, grid, spec, par, {});
  REQUIRE(a.points.size() == 3);
  REQUIRE(b.points.size() == 3);
  CHECK(b.parallel);
  for (int i = 0; i < 3; ++i) {
    REQUIRE(a.points[i].ok);
    REQUIRE(b.points[i].ok);
    CHECK(a.points[i].report.nominal_cost == doctest::Approx(b.points[i].report.nominal_cost).epsilon(1e-5));
  }
}

TEST_CASE("window outside the horizon is rejected") {
  const auto p = orbit_raising(4e-4);
  PerturbationSpec spec;
  spec.thrusts = {0.15};
  try {
    sweep_t2(p, {1.0, 4.0}, spec, {}, {});
    FAIL("grid beyond tf accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WindowOutsideHorizon);
  }
  CHECK_THROWS_AS(sweep_t2(p, {2.0, 1.0}, spec, {}, {}), Error);
}
