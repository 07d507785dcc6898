#include "desoc/astro.hpp"

#include <cmath>
#include <string>

#include <Eigen/Geometry>

#include "desoc/error.hpp"

namespace desoc::astro {

namespace {

constexpr int kKeplerMaxIterations = 60;

// Eccentric anomaly from mean anomaly, M in [-pi, pi).
double solve_kepler(double mean_anomaly, double e) {
  double E = e < 0.8 ? mean_anomaly + e * std::sin(mean_anomaly) : (mean_anomaly < 0 ? -kPi : kPi);
  for (int it = 0; it < kKeplerMaxIterations; ++it) {
    const double residual = E - e * std::sin(E) - mean_anomaly;
    const double step = residual / (1.0 - e * std::cos(E));
    E -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(E))) {
      return E;
    }
  }
  throw Error(ErrorCode::KeplerNonConvergence,
              "eccentric anomaly did not converge (M=" + std::to_string(mean_anomaly) +
                  ", e=" + std::to_string(e) + ")");
}

}  // namespace

void GravityModel::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw Error(ErrorCode::InvalidArgument, "gravitational parameter must be positive");
  }
}

CanonicalScaling CanonicalScaling::from_gravity(double length_unit_km, double mu_km3_s2,
                                                double mass_unit_kg) {
  CanonicalScaling s;
  s.length_unit = length_unit_km;
  s.time_unit = std::sqrt(length_unit_km * length_unit_km * length_unit_km / mu_km3_s2);
  s.mass_unit = mass_unit_kg;
  s.validate();
  return s;
}

double CanonicalScaling::thrust_to_canonical(double newtons) const {
  // N = kg m/s^2; canonical force unit = mass_unit * acceleration_unit (km/s^2).
  return (newtons / 1000.0) / (mass_unit * acceleration_unit());
}

double CanonicalScaling::thrust_to_newtons(double thrust) const {
  return thrust * mass_unit * acceleration_unit() * 1000.0;
}

double CanonicalScaling::mu_to_canonical(double mu_km3_s2) const {
  return mu_km3_s2 * time_unit * time_unit / (length_unit * length_unit * length_unit);
}

void CanonicalScaling::validate() const {
  if (!(length_unit > 0.0) || !(time_unit > 0.0) || !(mass_unit > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "canonical units must be strictly positive");
  }
}

CartesianState to_canonical(const CartesianState& s, const CanonicalScaling& scaling) {
  return {s.position / scaling.length_unit, s.velocity / scaling.velocity_unit()};
}

CartesianState to_physical(const CartesianState& s, const CanonicalScaling& scaling) {
  return {s.position * scaling.length_unit, s.velocity * scaling.velocity_unit()};
}

double MeeState::eccentricity() const { return std::hypot(f, g); }

MeeState cart_to_mee(const CartesianState& s, const GravityModel& grav) {
  grav.validate();
  const Vec3& r = s.position;
  const Vec3& v = s.velocity;
  const double rmag = r.norm();
  if (!(rmag > 0.0)) {
    throw Error(ErrorCode::DegenerateOrbit, "zero position vector");
  }
  const Vec3 hvec = r.cross(v);
  const double hmag = hvec.norm();
  if (hmag <= 1e-12 * rmag * v.norm() || hmag == 0.0) {
    throw Error(ErrorCode::DegenerateOrbit, "angular momentum vanishes (rectilinear orbit)");
  }
  const Vec3 hhat = hvec / hmag;
  const double denom = 1.0 + hhat.z();
  if (denom < 1e-10) {
    throw Error(ErrorCode::RetrogradeSingularity, "inclination is within tolerance of pi");
  }

  MeeState x;
  x.p = hmag * hmag / grav.mu;
  x.h = -hhat.y() / denom;
  x.k = hhat.x() / denom;

  const double s2 = 1.0 + x.h * x.h + x.k * x.k;
  const Vec3 fhat = Vec3(1.0 - x.k * x.k + x.h * x.h, 2.0 * x.h * x.k, -2.0 * x.k) / s2;
  const Vec3 ghat = Vec3(2.0 * x.h * x.k, 1.0 + x.k * x.k - x.h * x.h, 2.0 * x.h) / s2;

  const Vec3 evec = v.cross(hvec) / grav.mu - r / rmag;
  x.f = evec.dot(fhat);
  x.g = evec.dot(ghat);
  x.L = std::atan2(r.dot(ghat), r.dot(fhat));
  return x;
}

CartesianState mee_to_cart(const MeeState& x, const GravityModel& grav) {
  grav.validate();
  if (!(x.p > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "semi-latus rectum must be positive");
  }
  const double cL = std::cos(x.L);
  const double sL = std::sin(x.L);
  const double alpha2 = x.h * x.h - x.k * x.k;
  const double s2 = 1.0 + x.h * x.h + x.k * x.k;
  const double w = 1.0 + x.f * cL + x.g * sL;
  const double r = x.p / w;
  const double hk = x.h * x.k;
  const double smp = std::sqrt(grav.mu / x.p);

  CartesianState out;
  out.position = Vec3(r / s2 * (cL + alpha2 * cL + 2.0 * hk * sL),
                      r / s2 * (sL - alpha2 * sL + 2.0 * hk * cL),
                      2.0 * r / s2 * (x.h * sL - x.k * cL));
  out.velocity =
      Vec3(-smp / s2 * (sL + alpha2 * sL - 2.0 * hk * cL + x.g - 2.0 * x.f * hk + alpha2 * x.g),
           -smp / s2 * (-cL + alpha2 * cL + 2.0 * hk * sL - x.f + 2.0 * x.g * hk + alpha2 * x.f),
           2.0 * smp / s2 * (x.h * cL + x.k * sL + x.f * x.h + x.g * x.k));
  return out;
}

MeeState kepler_propagate(const MeeState& x, double dt, const GravityModel& grav) {
  grav.validate();
  if (dt == 0.0) {
    return x;
  }
  const double e = x.eccentricity();
  if (!(e < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "kepler_propagate requires an elliptic orbit");
  }
  const double periapsis_longitude = e > 0.0 ? std::atan2(x.g, x.f) : 0.0;
  const double beta = std::sqrt(1.0 - e * e);

  const double nu0 = wrap_pi(x.L - periapsis_longitude);
  const double E0 = std::atan2(beta * std::sin(nu0), e + std::cos(nu0));
  const double M0 = E0 - e * std::sin(E0);

  const double a = x.p / (1.0 - e * e);
  const double mean_motion = std::sqrt(grav.mu / (a * a * a));
  const double M1 = M0 + mean_motion * dt;
  const double revs = std::floor((M1 + kPi) / kTwoPi);
  const double M1_reduced = M1 - kTwoPi * revs;

  const double E1 = solve_kepler(M1_reduced, e);
  const double nu1 = std::atan2(beta * std::sin(E1), std::cos(E1) - e);

  MeeState out = x;
  out.L = x.L + (nu1 - nu0) + kTwoPi * revs;
  return out;
}

double orbital_period(const MeeState& x, const GravityModel& grav) {
  const double e = x.eccentricity();
  const double a = x.p / (1.0 - e * e);
  return kTwoPi * std::sqrt(a * a * a / grav.mu);
}

double specific_energy(const CartesianState& s, const GravityModel& grav) {
  return 0.5 * s.velocity.squaredNorm() - grav.mu / s.position.norm();
}

double angular_momentum(const CartesianState& s) { return s.position.cross(s.velocity).norm(); }

double wrap_pi(double angle) {
  double a = std::remainder(angle, kTwoPi);
  if (a <= -kPi) {
    a += kTwoPi;
  }
  return a;
}

double unwrap_longitude(double initial_L, double target_L, int revolutions) {
  const double base = initial_L + kTwoPi * revolutions;
  double offset = std::fmod(target_L - base, kTwoPi);
  if (offset < 0.0) {
    offset += kTwoPi;
  }
  return base + offset;
}

}  // namespace desoc::astro
