#include <cmath>
#include <random>

#include <Eigen/Geometry>

#include "doctest.h"

#include "desoc/astro.hpp"
#include "desoc/error.hpp"

using namespace desoc;
using namespace desoc::astro;

namespace {

const GravityModel kSun{kSunMu};

const CartesianState kEarth{Vec3(-10687809.15, -151602518.3, 8676.494013),
                            Vec3(29.22497601, -2.197707221, 0.000972199)};
const CartesianState kComet{Vec3(-536251927.7, -126576922.3, 14541016.26),
                            Vec3(-6.858900316, -13.35248149, -0.453167946)};

double rel(const Vec3& a, const Vec3& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST_CASE("circular equatorial state maps to trivial elements") {
  const GravityModel g{1.0};
  const double a = 2.5;
  const auto x = cart_to_mee({Vec3(a, 0, 0), Vec3(0, std::sqrt(1.0 / a), 0)}, g);
  CHECK(x.p == doctest::Approx(a).epsilon(1e-14));
  CHECK(std::abs(x.f) < 1e-14);
  CHECK(std::abs(x.g) < 1e-14);
  CHECK(std::abs(x.h) < 1e-14);
  CHECK(std::abs(x.k) < 1e-14);
  CHECK(std::abs(x.L) < 1e-14);
}

TEST_CASE("mee_to_cart trivial cases") {
  const GravityModel g{1.0};
  const double a = 1.7;
  auto s = mee_to_cart({a, 0, 0, 0, 0, 0}, g);
  CHECK((s.position - Vec3(a, 0, 0)).norm() < 1e-14);
  CHECK((s.velocity - Vec3(0, std::sqrt(1.0 / a), 0)).norm() < 1e-14);
  s = mee_to_cart({a, 0, 0, 0, 0, kPi / 2}, g);
  CHECK((s.position - Vec3(0, a, 0)).norm() < 1e-14);
}

TEST_CASE("Earth departure state against the classical-element oracle") {
  // tests/oracles/derived_values.py
  const auto x = cart_to_mee(kEarth, kSun);
  CHECK(x.p == doctest::Approx(149486570.32561278).epsilon(1e-11));
  CHECK(x.f == doctest::Approx(-0.003434670098923635).epsilon(1e-9));
  CHECK(x.g == doctest::Approx(0.01668131725866776).epsilon(1e-9));
  CHECK(x.h == doctest::Approx(-2.963144837063734e-05).epsilon(1e-8));
  CHECK(x.k == doctest::Approx(-1.4404742612019349e-05).epsilon(1e-8));
  CHECK(wrap_pi(x.L) == doctest::Approx(-1.6411787668252202).epsilon(1e-11));

  const auto back = mee_to_cart(x, kSun);
  CHECK((back.position - kEarth.position).norm() < 1e-6);
  CHECK((back.velocity - kEarth.velocity).norm() < 1e-9);
  CHECK(specific_energy(back, kSun) == doctest::Approx(specific_energy(kEarth, kSun)).epsilon(1e-12));
  CHECK(angular_momentum(back) == doctest::Approx(angular_momentum(kEarth)).epsilon(1e-12));
}

TEST_CASE("67P state round trip and oracle") {
  const auto x = cart_to_mee(kComet, kSun);
  CHECK(x.p == doctest::Approx(299681436.13619816).epsilon(1e-11));
  CHECK(x.f == doctest::Approx(0.33835064103243667).epsilon(1e-10));
  CHECK(x.g == doctest::Approx(0.5544327619312673).epsilon(1e-10));
  CHECK(x.h == doctest::Approx(0.027205260680111153).epsilon(1e-10));
  CHECK(x.k == doctest::Approx(0.01996410059952782).epsilon(1e-10));
  CHECK(wrap_pi(x.L) == doctest::Approx(-2.9106148367678455).epsilon(1e-11));
  const auto back = mee_to_cart(x, kSun);
  CHECK(rel(back.position, kComet.position) < 1e-9);
  CHECK(rel(back.velocity, kComet.velocity) < 1e-9);
}

TEST_CASE("random states round trip") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const GravityModel g{1.0};
  int tested = 0;
  while (tested < 500) {
    const Vec3 r(U(rng), U(rng), U(rng));
    const Vec3 v(U(rng), U(rng), U(rng));
    if (r.norm() < 0.2 || r.cross(v).norm() < 0.05 || r.cross(v).z() < 0.0) continue;
    const CartesianState s{r, v};
    const auto back = mee_to_cart(cart_to_mee(s, g), g);
    CHECK(rel(back.position, r) < 1e-9);
    CHECK(rel(back.velocity, v) < 1e-9);
    ++tested;
  }
}

TEST_CASE("degenerate and singular inputs") {
  const GravityModel g{1.0};
  CHECK_THROWS_AS(cart_to_mee({Vec3(1, 0, 0), Vec3(2, 0, 0)}, g), Error);
  try {
    cart_to_mee({Vec3(1, 0, 0), Vec3(0, -1, 0)}, g);
    FAIL("retrograde equatorial orbit accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RetrogradeSingularity);
  }
  CHECK_THROWS_AS(GravityModel{-1.0}.validate(), Error);
}

TEST_CASE("kepler_propagate") {
  const GravityModel g{1.0};
  const MeeState x{1.3, 0.1, -0.05, 0.02, 0.01, 0.4};
  SUBCASE("zero step is the identity") { CHECK(kepler_propagate(x, 0.0, g) == x); }
  SUBCASE("one period adds 2 pi") {
    const auto y = kepler_propagate(x, orbital_period(x, g), g);
    CHECK(std::abs(y.L - x.L - kTwoPi) < 1e-10);
    CHECK(y.p == x.p);
    CHECK(y.f == x.f);
  }
  SUBCASE("quarter period on a circle adds pi/2") {
    const MeeState c{2.0, 0, 0, 0, 0, 0.3};
    const auto y = kepler_propagate(c, orbital_period(c, g) / 4.0, g);
    CHECK(std::abs(y.L - c.L - kPi / 2) < 1e-12);
  }
  SUBCASE("hyperbolic orbits are rejected") {
    CHECK_THROWS_AS(kepler_propagate({1.0, 1.2, 0, 0, 0, 0}, 1.0, g), Error);
  }
}

TEST_CASE("canonical scaling") {
  const auto s = CanonicalScaling::from_gravity(kAstronomicalUnitKm, kSunMu, 3000.0);
  // tests/oracles/derived_values.py
  CHECK(s.time_unit == doctest::Approx(5022642.890912784).epsilon(1e-13));
  CHECK(s.canonical_to_days(1.0) == doctest::Approx(58.132440867046114).epsilon(1e-13));
  CHECK(s.thrust_to_canonical(0.6) == doctest::Approx(0.033726337805628157).epsilon(1e-12));
  CHECK(s.mu_to_canonical(kSunMu) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.thrust_to_newtons(s.thrust_to_canonical(0.57)) == doctest::Approx(0.57).epsilon(1e-14));
  const auto c = to_canonical(kEarth, s);
  const auto back = to_physical(c, s);
  CHECK(rel(back.position, kEarth.position) < 1e-15);
}

TEST_CASE("longitude unwrapping") {
  CHECK(wrap_pi(3 * kPi) == doctest::Approx(kPi));
  const double L = unwrap_longitude(-1.64, -2.91, 2);
  CHECK(L > -1.64 + 2 * kTwoPi);
  CHECK(L < -1.64 + 3 * kTwoPi);
  CHECK(wrap_pi(L) == doctest::Approx(-2.91));
}
