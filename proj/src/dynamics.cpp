#include "desoc/dynamics.hpp"

#include <string>

#include "desoc/error.hpp"

namespace desoc::dynamics {

namespace {

void require_mass(double m, double floor) {
  if (!(m > floor)) {
    throw Error(ErrorCode::NonPositiveMass,
                "mass " + std::to_string(m) + " not above floor " + std::to_string(floor));
  }
}

}  // namespace

void SpacecraftModel::validate() const {
  if (!(m0 > 0.0) || !(thrust >= 0.0) || !(isp > 0.0) || !(g0 > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "spacecraft requires m0 > 0, thrust >= 0, isp > 0");
  }
}

Propulsion si_propulsion(const SpacecraftModel& sc) { return {sc.thrust, sc.exhaust_velocity()}; }

Propulsion canonical_propulsion(const SpacecraftModel& sc, const astro::CanonicalScaling& scaling) {
  return {scaling.thrust_to_canonical(sc.thrust),
          scaling.exhaust_velocity_to_canonical(sc.exhaust_velocity())};
}

void DesensitizationConfig::validate(double t0, double tf) const {
  if (!(q_weight >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "penalty weight Q must be non-negative");
  }
  if (!(rho > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "trigger smoothing width rho must be positive");
  }
  if (!(t1 <= t2)) {
    throw Error(ErrorCode::WindowOutsideHorizon, "trigger window requires t1 <= t2");
  }
  if (t1 < t0 || t2 > tf) {
    throw Error(ErrorCode::WindowOutsideHorizon,
                "trigger window [" + std::to_string(t1) + ", " + std::to_string(t2) +
                    "] is not inside [" + std::to_string(t0) + ", " + std::to_string(tf) + "]");
  }
}

Vec6 mee_drift(const MeeState& x, const GravityModel& g) {
  const double w = 1.0 + x.f * std::cos(x.L) + x.g * std::sin(x.L);
  Vec6 a = Vec6::Zero();
  a[5] = std::sqrt(g.mu * x.p) * (w / x.p) * (w / x.p);
  return a;
}

Mat63 mee_control_matrix(const MeeState& x, const GravityModel& g) {
  const double cL = std::cos(x.L);
  const double sL = std::sin(x.L);
  const double w = 1.0 + x.f * cL + x.g * sL;
  const double s2 = 1.0 + x.h * x.h + x.k * x.k;
  const double spm = std::sqrt(x.p / g.mu);
  const double hsk = x.h * sL - x.k * cL;

  Mat63 b = Mat63::Zero();
  b(0, 1) = 2.0 * x.p / w;
  b(1, 0) = sL;
  b(1, 1) = ((w + 1.0) * cL + x.f) / w;
  b(1, 2) = -hsk * x.g / w;
  b(2, 0) = -cL;
  b(2, 1) = ((w + 1.0) * sL + x.g) / w;
  b(2, 2) = hsk * x.f / w;
  b(3, 2) = s2 * cL / (2.0 * w);
  b(4, 2) = s2 * sL / (2.0 * w);
  b(5, 2) = hsk / w;
  return spm * b;
}

Vec6 mee_state_rate(const MeeState& x, const Vec3& accel, const GravityModel& g) {
  return mee_drift(x, g) + mee_control_matrix(x, g) * accel;
}

DynamicsEvaluation mee_rates(const MeeState& x, double m, const ControlSample& ctrl,
                             const Propulsion& prop, const GravityModel& g, double mass_floor) {
  g.validate();
  require_mass(m, mass_floor);
  DynamicsEvaluation ev;
  ev.drift = mee_drift(x, g);
  ev.control_matrix = mee_control_matrix(x, g);
  ev.control_accel = (prop.thrust / m) * ctrl.delta * ctrl.u_hat;
  ev.state_rate = ev.drift + ev.control_matrix * ev.control_accel;
  ev.mass_rate = -(prop.thrust / prop.exhaust_velocity) * ctrl.delta;
  return ev;
}

double thrust_costate_rate_mee(const ControlSample& ctrl, double m, const Propulsion& prop,
                               const DesensitizationConfig& cfg) {
  require_mass(m, 0.0);
  const Vec3& u = ctrl.u_hat;
  return -(ctrl.delta / m) *
         (cfg.k_vr * u.x() + cfg.k_vt * u.y() + cfg.k_vn * u.z() - cfg.k_m * m / prop.exhaust_velocity);
}

double trigger(double t, const DesensitizationConfig& cfg) {
  const double mu1 = 0.5 * (1.0 + std::tanh((t - cfg.t1) / cfg.rho));
  const double mu2 = 0.5 * (1.0 - std::tanh((t - cfg.t2) / cfg.rho));
  return mu1 * mu2;
}

Eigen::Vector3d orbit_raising_rates(const PolarState& s, double phi, const OrbitRaisingModel& model,
                                    double t, const GravityModel& g, double mass_floor) {
  if (!(s.r > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  }
  const double m = model.mass(t);
  require_mass(m, mass_floor);
  return {s.u, s.v * s.v / s.r - g.mu / (s.r * s.r) + model.thrust * std::sin(phi) / m,
          -s.u * s.v / s.r + model.thrust * std::cos(phi) / m};
}

double orbit_raising_costate_rate(double phi, const OrbitRaisingModel& model, double t,
                                  double mass_floor) {
  const double m = model.mass(t);
  require_mass(m, mass_floor);
  return -(std::sin(phi) + std::cos(phi)) / m;
}

}  // namespace desoc::dynamics
