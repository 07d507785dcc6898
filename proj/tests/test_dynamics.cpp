#include <cmath>
#include <random>

#include "doctest.h"

#include "desoc/dynamics.hpp"
#include "desoc/error.hpp"

using namespace desoc;
using namespace desoc::dynamics;

TEST_CASE("coast has zero element rates") {
  const GravityModel g{1.0};
  const Propulsion prop{0.05, 1.0};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-0.5, 0.5);
  for (int i = 0; i < 1000; ++i) {
    const MeeState x{1.0 + U(rng), 0.5 * U(rng), 0.5 * U(rng), U(rng), U(rng), 10.0 * U(rng)};
    ControlSample c;
    c.delta = 0.0;
    c.u_hat = Vec3(U(rng), U(rng), U(rng)).normalized();
    const auto ev = mee_rates(x, 0.8, c, prop, g);
    for (int j = 0; j < 5; ++j) {
      REQUIRE(ev.state_rate[j] == 0.0);
    }
    REQUIRE(ev.mass_rate == 0.0);
  }
}

TEST_CASE("circular canonical orbit has unit longitude rate") {
  const auto ev = mee_rates({1, 0, 0, 0, 0, 0.7}, 1.0, {}, {0.0, 1.0}, GravityModel{1.0});
  CHECK(ev.state_rate[5] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("mass flow in SI units") {
  SpacecraftModel sc;
  sc.m0 = 3000.0;
  sc.thrust = 0.6;
  sc.isp = 3000.0;
  const auto prop = si_propulsion(sc);
  ControlSample c;
  c.delta = 1.0;
  const auto ev = mee_rates({1.5e8, 0, 0, 0, 0, 0}, 3000.0, c, prop, GravityModel{astro::kSunMu});
  // tests/oracles/derived_values.py: -T / (Isp g0) in kg/s
  CHECK(ev.mass_rate == doctest::Approx(-2.0394324259558567e-05).epsilon(1e-12));
}

TEST_CASE("mee_rates rejects non-positive mass") {
  ControlSample c;
  c.delta = 1.0;
  CHECK_THROWS_AS(mee_rates({1, 0, 0, 0, 0, 0}, 0.0, c, {0.1, 1.0}, GravityModel{1.0}), Error);
}

TEST_CASE("thrust costate rate for the rendezvous family") {
  DesensitizationConfig cfg;
  const Propulsion prop{0.6, 29419.95};
  ControlSample c;
  SUBCASE("no throttle") {
    c.delta = 0.0;
    CHECK(thrust_costate_rate_mee(c, 3000.0, prop, cfg) == 0.0);
  }
  SUBCASE("radial unit steering") {
    c.delta = 1.0;
    c.u_hat = Vec3(1, 0, 0);
    // tests/oracles/derived_values.py
    CHECK(thrust_costate_rate_mee(c, 3000.0, prop, cfg) == doctest::Approx(-0.0002993427929007357).epsilon(1e-12));
  }
  SUBCASE("constructed null") {
    c.delta = 1.0;
    const double target = 3000.0 / 29419.95;  // K_m m / c with all weights one
    c.u_hat = Vec3(target / 3.0, target / 3.0, target / 3.0);
    CHECK(std::abs(thrust_costate_rate_mee(c, 3000.0, prop, cfg)) < 1e-18);
  }
}

TEST_CASE("trigger factor") {
  DesensitizationConfig cfg;
  cfg.t1 = 1.0;
  cfg.t2 = 4.0;
  cfg.rho = 1e-5;
  CHECK(std::abs(trigger(2.5, cfg) - 1.0) < 1e-12);
  CHECK(std::abs(trigger(1.0, cfg) - 0.5) < 1e-12);
  CHECK(std::abs(trigger(4.0, cfg) - 0.5) < 1e-12);
  CHECK(std::abs(trigger(10.0, cfg)) < 1e-12);
  CHECK(std::abs(trigger(0.0, cfg)) < 1e-12);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-5.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double w = trigger(U(rng), cfg);
    CHECK(w >= 0.0);
    CHECK(w <= 1.0);
  }
}

TEST_CASE("desensitization config validation") {
  DesensitizationConfig cfg;
  cfg.t1 = 2.0;
  cfg.t2 = 1.0;
  CHECK_THROWS_AS(cfg.validate(0.0, 3.0), Error);
  cfg.t1 = 0.0;
  cfg.t2 = 5.0;
  CHECK_THROWS_AS(cfg.validate(0.0, 3.0), Error);
  cfg.t2 = 3.0;
  cfg.q_weight = -1.0;
  CHECK_THROWS_AS(cfg.validate(0.0, 3.0), Error);
  cfg.q_weight = 0.0;
  cfg.rho = 0.0;
  CHECK_THROWS_AS(cfg.validate(0.0, 3.0), Error);
}

TEST_CASE("orbit-raising rates") {
  const GravityModel g{1.0};
  OrbitRaisingModel model;
  model.thrust = 0.0;
  auto d = orbit_raising_rates({1, 0, 1}, 0.3, model, 0.0, g);
  CHECK(d.norm() == 0.0);

  model.thrust = 0.1405;
  d = orbit_raising_rates({1, 0, 1}, astro::kPi / 2, model, 0.0, g);
  CHECK(std::abs(d[0]) < 1e-15);
  CHECK(d[1] == doctest::Approx(0.1405).epsilon(1e-14));
  CHECK(std::abs(d[2]) < 1e-15);

  d = orbit_raising_rates({1, 0, 1}, 0.0, model, 0.0, g);
  CHECK(std::abs(d[1]) < 1e-15);
  CHECK(d[2] == doctest::Approx(0.1405).epsilon(1e-14));

  CHECK_THROWS_AS(orbit_raising_rates({1, 0, 1}, 0.0, model, 20.0, g), Error);
}

TEST_CASE("orbit-raising costate rate") {
  OrbitRaisingModel model;
  CHECK(std::abs(orbit_raising_costate_rate(3 * astro::kPi / 4, model, 0.0)) < 1e-15);
  CHECK(orbit_raising_costate_rate(0.0, model, 0.0) == doctest::Approx(-1.0).epsilon(1e-15));
  // tests/oracles/derived_values.py
  CHECK(orbit_raising_costate_rate(astro::kPi / 4, model, 1.0) == doctest::Approx(-1.5287142604832937).epsilon(1e-13));
}

TEST_CASE("templated right-hand sides agree with the structured evaluators") {
  const GravityModel g{1.0};
  const MeeState x{1.1, 0.05, -0.02, 0.01, 0.03, 2.0};
  ControlSample c;
  c.delta = 0.7;
  c.u_hat = Vec3(0.3, 0.9, -0.2).normalized();
  const Propulsion prop{0.03, 0.9};
  const auto ev = mee_rates(x, 0.85, c, prop, g);
  RendezvousRhsParams prm;
  prm.thrust = prop.thrust;
  prm.exhaust_velocity = prop.exhaust_velocity;
  const auto out = rendezvous_rhs<double>({x.p, x.f, x.g, x.h, x.k, x.L, 0.85, 0.0},
                                          {c.delta, c.u_hat[0], c.u_hat[1], c.u_hat[2]}, prm);
  for (int i = 0; i < 6; ++i) {
    CHECK(out[i] == doctest::Approx(ev.state_rate[i]).epsilon(1e-13));
  }
  CHECK(out[6] == doctest::Approx(ev.mass_rate).epsilon(1e-14));
  CHECK(out[7] == doctest::Approx(thrust_costate_rate_mee(c, 0.85, prop, {})).epsilon(1e-13));
}
