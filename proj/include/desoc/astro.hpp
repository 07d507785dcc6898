#pragma once

#include <array>

#include <Eigen/Core>

namespace desoc::astro {

using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kAstronomicalUnitKm = 1.49597870691e8;
inline constexpr double kSunMu = 1.32712440018e11;  // km^3/s^2

struct GravityModel {
  double mu = 1.0;

  void validate() const;
};

/// Nondimensional units with the gravitational parameter scaled to one.
/// `time_unit` is derived from `length_unit` and the physical mu.
struct CanonicalScaling {
  double length_unit = 1.0;  // km
  double time_unit = 1.0;    // s
  double mass_unit = 1.0;    // kg

  static CanonicalScaling from_gravity(double length_unit_km, double mu_km3_s2, double mass_unit_kg);
  static CanonicalScaling identity() { return {}; }

  double velocity_unit() const { return length_unit / time_unit; }                   // km/s
  double acceleration_unit() const { return length_unit / (time_unit * time_unit); }  // km/s^2

  double time_to_canonical(double seconds) const { return seconds / time_unit; }
  double time_to_seconds(double t) const { return t * time_unit; }
  double days_to_canonical(double days) const { return days * kSecondsPerDay / time_unit; }
  double canonical_to_days(double t) const { return t * time_unit / kSecondsPerDay; }
  double length_to_canonical(double km) const { return km / length_unit; }
  double length_to_km(double l) const { return l * length_unit; }
  double velocity_to_canonical(double km_s) const { return km_s / velocity_unit(); }
  double velocity_to_km_s(double v) const { return v * velocity_unit(); }
  double mass_to_canonical(double kg) const { return kg / mass_unit; }
  double mass_to_kg(double m) const { return m * mass_unit; }
  /// Newtons to canonical force (mass_unit * acceleration_unit).
  double thrust_to_canonical(double newtons) const;
  double thrust_to_newtons(double thrust) const;
  /// m/s to canonical velocity.
  double exhaust_velocity_to_canonical(double m_s) const { return (m_s / 1000.0) / velocity_unit(); }
  double mu_to_canonical(double mu_km3_s2) const;

  void validate() const;
};

struct CartesianState {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();

  bool operator==(const CartesianState& o) const { return position == o.position && velocity == o.velocity; }
};

CartesianState to_canonical(const CartesianState& s, const CanonicalScaling& scaling);
CartesianState to_physical(const CartesianState& s, const CanonicalScaling& scaling);

/// Modified equinoctial elements. L is the true longitude, kept unwrapped.
struct MeeState {
  double p = 1.0;
  double f = 0.0;
  double g = 0.0;
  double h = 0.0;
  double k = 0.0;
  double L = 0.0;

  std::array<double, 6> as_array() const { return {p, f, g, h, k, L}; }
  static MeeState from_array(const std::array<double, 6>& a) { return {a[0], a[1], a[2], a[3], a[4], a[5]}; }
  double eccentricity() const;

  bool operator==(const MeeState&) const = default;
};

MeeState cart_to_mee(const CartesianState& s, const GravityModel& g);
CartesianState mee_to_cart(const MeeState& x, const GravityModel& g);

/// Two-body coast: advances L only, via Kepler's equation.
MeeState kepler_propagate(const MeeState& x, double dt, const GravityModel& g);

double orbital_period(const MeeState& x, const GravityModel& g);
double specific_energy(const CartesianState& s, const GravityModel& g);
double angular_momentum(const CartesianState& s);

/// Wraps an angle into (-pi, pi].
double wrap_pi(double angle);

/// Unwrapped target longitude: `target_L` shifted by a multiple of 2*pi so that it lies in
/// [initial_L + 2*pi*revolutions, initial_L + 2*pi*(revolutions + 1)).
double unwrap_longitude(double initial_L, double target_L, int revolutions);

}  // namespace desoc::astro
