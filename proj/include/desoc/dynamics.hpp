#pragma once

#include <array>
#include <cmath>

#include <Eigen/Core>

#include "desoc/astro.hpp"

namespace desoc::dynamics {

using astro::GravityModel;
using astro::MeeState;
using astro::Vec3;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat63 = Eigen::Matrix<double, 6, 3>;

inline constexpr double kStandardGravity = 9.80665;  // m/s^2

/// Physical spacecraft description: kg, N, s.
struct SpacecraftModel {
  double m0 = 1.0;
  double thrust = 0.0;
  double isp = 1.0;
  double g0 = kStandardGravity;

  double exhaust_velocity() const { return isp * g0; }  // m/s
  void validate() const;
  bool operator==(const SpacecraftModel&) const = default;
};

/// Thrust and exhaust velocity in one consistent unit system (SI or canonical).
struct Propulsion {
  double thrust = 0.0;
  double exhaust_velocity = 1.0;
};

Propulsion si_propulsion(const SpacecraftModel& sc);
Propulsion canonical_propulsion(const SpacecraftModel& sc, const astro::CanonicalScaling& scaling);

/// Throttle and steering direction in the radial/transverse/normal frame.
struct ControlSample {
  double delta = 0.0;
  Vec3 u_hat = Vec3(0.0, 1.0, 0.0);
};

struct DynamicsEvaluation {
  Vec6 drift = Vec6::Zero();
  Mat63 control_matrix = Mat63::Zero();
  Vec3 control_accel = Vec3::Zero();
  Vec6 state_rate = Vec6::Zero();
  double mass_rate = 0.0;
};

/// Penalty weight, trigger window and the constant surrogate costates.
struct DesensitizationConfig {
  double q_weight = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double rho = 1e-5;
  double k_vr = 1.0;
  double k_vt = 1.0;
  double k_vn = 1.0;
  double k_m = 1.0;

  void validate(double t0, double tf) const;
  bool operator==(const DesensitizationConfig&) const = default;
};

struct PolarState {
  double r = 1.0;
  double u = 0.0;
  double v = 1.0;

  bool operator==(const PolarState&) const = default;
};

/// Scaled orbit-raising vehicle: mass decays linearly, m(t) = m0 + mdot (t - t0).
struct OrbitRaisingModel {
  double m0 = 1.0;
  double mdot = -0.0749;
  double thrust = 0.1405;
  double t0 = 0.0;

  double mass(double t) const { return m0 + mdot * (t - t0); }
  bool operator==(const OrbitRaisingModel&) const = default;
};

Vec6 mee_drift(const MeeState& x, const GravityModel& g);
Mat63 mee_control_matrix(const MeeState& x, const GravityModel& g);
/// A(x) + B(x) * accel for an arbitrary perturbing acceleration (r, t, n components).
Vec6 mee_state_rate(const MeeState& x, const Vec3& accel, const GravityModel& g);

DynamicsEvaluation mee_rates(const MeeState& x, double m, const ControlSample& ctrl,
                             const Propulsion& prop, const GravityModel& g, double mass_floor = 0.0);

double thrust_costate_rate_mee(const ControlSample& ctrl, double m, const Propulsion& prop,
                               const DesensitizationConfig& cfg);

/// Smooth window indicator mu1(t) * mu2(t): ~1 inside [t1, t2], ~0 outside.
double trigger(double t, const DesensitizationConfig& cfg);

/// (r_dot, u_dot, v_dot) of the planar orbit-raising problem.
Eigen::Vector3d orbit_raising_rates(const PolarState& s, double phi, const OrbitRaisingModel& model,
                                    double t, const GravityModel& g, double mass_floor = 0.0);

double orbit_raising_costate_rate(double phi, const OrbitRaisingModel& model, double t,
                                  double mass_floor = 0.0);

// Scalar-generic right-hand sides used by the transcription (double or autodiff scalars).

struct RendezvousRhsParams {
  double mu = 1.0;
  double thrust = 0.0;
  double exhaust_velocity = 1.0;
  double k_vr = 1.0;
  double k_vt = 1.0;
  double k_vn = 1.0;
  double k_m = 1.0;
};

/// state = [p, f, g, h, k, L, m, lambda_T], control = [delta, u_r, u_t, u_n].
template <typename S>
std::array<S, 8> rendezvous_rhs(const std::array<S, 8>& x, const std::array<S, 4>& c,
                                const RendezvousRhsParams& prm) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const S& p = x[0];
  const S& f = x[1];
  const S& g = x[2];
  const S& h = x[3];
  const S& k = x[4];
  const S& L = x[5];
  const S& m = x[6];
  const S& delta = c[0];

  const S cL = cos(L);
  const S sL = sin(L);
  const S w = 1.0 + f * cL + g * sL;
  const S s2 = 1.0 + h * h + k * k;
  const S spm = sqrt(p / prm.mu);
  const S hsk = h * sL - k * cL;

  const S scale = prm.thrust * delta / m;
  const S ar = scale * c[1];
  const S at = scale * c[2];
  const S an = scale * c[3];

  std::array<S, 8> out;
  out[0] = spm * (2.0 * p / w) * at;
  out[1] = spm * (sL * ar + ((w + 1.0) * cL + f) / w * at - hsk * g / w * an);
  out[2] = spm * (-cL * ar + ((w + 1.0) * sL + g) / w * at + hsk * f / w * an);
  out[3] = spm * s2 * cL / (2.0 * w) * an;
  out[4] = spm * s2 * sL / (2.0 * w) * an;
  out[5] = sqrt(prm.mu * p) * (w / p) * (w / p) + spm * hsk / w * an;
  out[6] = -prm.thrust / prm.exhaust_velocity * delta;
  out[7] = -(delta / m) *
           (prm.k_vr * c[1] + prm.k_vt * c[2] + prm.k_vn * c[3] - prm.k_m * m / prm.exhaust_velocity);
  return out;
}

struct OrbitRaisingRhsParams {
  double mu = 1.0;
  OrbitRaisingModel model;
};

/// state = [r, u, v, lambda_T], control = phi.
template <typename S>
std::array<S, 4> orbit_raising_rhs(const std::array<S, 4>& x, const S& phi, double t,
                                   const OrbitRaisingRhsParams& prm) {
  using std::cos;
  using std::sin;
  const S& r = x[0];
  const S& u = x[1];
  const S& v = x[2];
  const double m = prm.model.mass(t);
  const S sp = sin(phi);
  const S cp = cos(phi);
  std::array<S, 4> out;
  out[0] = u;
  out[1] = v * v / r - prm.mu / (r * r) + prm.model.thrust * sp / m;
  out[2] = -u * v / r + prm.model.thrust * cp / m;
  out[3] = -(sp + cp) / m;
  return out;
}

}  // namespace desoc::dynamics
