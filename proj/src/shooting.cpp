#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "desoc/analysis.hpp"
#include "desoc/error.hpp"

namespace desoc::analysis {

namespace {

using Vec7 = Eigen::Matrix<double, 7, 1>;

// [r, u, v, lr, lu, lv, unused] with the steering that maximizes the Hamiltonian.
Vec7 extremal_rates(const Vec7& y, double t, const dynamics::OrbitRaisingModel& model, double mu) {
  const double r = y[0], u = y[1], v = y[2];
  const double lr = y[3], lu = y[4], lv = y[5];
  const double m = model.mass(t);
  const double norm = std::hypot(lu, lv);
  const double sp = norm > 0.0 ? lu / norm : 0.0;
  const double cp = norm > 0.0 ? lv / norm : 1.0;
  const double a = model.thrust / m;
  Vec7 out;
  out[0] = u;
  out[1] = v * v / r - mu / (r * r) + a * sp;
  out[2] = -u * v / r + a * cp;
  out[3] = -(lu * (-v * v / (r * r) + 2.0 * mu / (r * r * r)) + lv * u * v / (r * r));
  out[4] = -(lr - lv * v / r);
  out[5] = -(2.0 * lu * v / r - lv * u / r);
  out[6] = 0.0;
  return out;
}

Vec7 propagate(Vec7 y, const dynamics::OrbitRaisingModel& model, double mu, double tf, int steps) {
  const double h = (tf - model.t0) / steps;
  double t = model.t0;
  for (int i = 0; i < steps; ++i) {
    const Vec7 k1 = extremal_rates(y, t, model, mu);
    const Vec7 k2 = extremal_rates(y + 0.5 * h * k1, t + 0.5 * h, model, mu);
    const Vec7 k3 = extremal_rates(y + 0.5 * h * k2, t + 0.5 * h, model, mu);
    const Vec7 k4 = extremal_rates(y + h * k3, t + h, model, mu);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
    if (!(y[0] > 0.0) || !y.allFinite()) {
      return Vec7::Constant(std::numeric_limits<double>::quiet_NaN());
    }
  }
  return y;
}

struct Shooter {
  const dynamics::OrbitRaisingModel& model;
  double mu;
  double tf;
  int steps;

  Eigen::Vector3d residual(const Eigen::Vector3d& lam) const {
    Vec7 y;
    y << 1.0, 0.0, 1.0, lam[0], lam[1], lam[2], 0.0;
    const Vec7 yf = propagate(y, model, mu, tf, steps);
    const double r = yf[0];
    return {yf[1], yf[2] - std::sqrt(mu / r), yf[3] - 0.5 * yf[5] * std::sqrt(mu) * std::pow(r, -1.5) - 1.0};
  }

  double final_radius(const Eigen::Vector3d& lam) const {
    Vec7 y;
    y << 1.0, 0.0, 1.0, lam[0], lam[1], lam[2], 0.0;
    return propagate(y, model, mu, tf, steps)[0];
  }
};

}  // namespace

ShootingResult orbit_raising_shooting_oracle(const dynamics::OrbitRaisingModel& model, const astro::GravityModel& g,
                                             double tf, const ShootingOptions& opts) {
  g.validate();
  if (!(tf > model.t0)) {
    throw Error(ErrorCode::InvalidArgument, "final time must exceed initial time");
  }
  if (!(model.mass(tf) > 0.0)) {
    throw Error(ErrorCode::NonPositiveMass, "mass reaches zero before the final time");
  }
  if (model.thrust == 0.0) {
    // Nothing to steer: the unit circular orbit is kept.
    return ShootingResult{1.0, 1.0, 0.0, 0.0, 0.0, 0};
  }

  const Shooter shooter{model, g.mu, tf, opts.steps};
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> lr_dist(0.3, 3.0);
  std::uniform_real_distribution<double> lu_dist(-1.0, 3.0);
  std::uniform_real_distribution<double> lv_dist(0.3, 4.0);

  ShootingResult best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int start = 0; start < opts.starts; ++start) {
    Eigen::Vector3d lam = start == 0 ? Eigen::Vector3d(1.0, 0.5, 1.5)
                                     : Eigen::Vector3d(lr_dist(rng), lu_dist(rng), lv_dist(rng));
    Eigen::Vector3d res = shooter.residual(lam);
    if (!res.allFinite()) {
      continue;
    }
    int it = 0;
    for (; it < opts.max_newton && res.norm() > opts.tolerance; ++it) {
      Eigen::Matrix3d jac;
      for (int j = 0; j < 3; ++j) {
        const double step = 1e-7 * std::max(1.0, std::abs(lam[j]));
        Eigen::Vector3d lp = lam, lm = lam;
        lp[j] += step;
        lm[j] -= step;
        jac.col(j) = (shooter.residual(lp) - shooter.residual(lm)) / (2.0 * step);
      }
      if (!jac.allFinite()) {
        break;
      }
      const Eigen::Vector3d dir = jac.fullPivLu().solve(-res);
      double alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 30; ++ls, alpha *= 0.5) {
        const Eigen::Vector3d trial = lam + alpha * dir;
        const Eigen::Vector3d tr = shooter.residual(trial);
        if (tr.allFinite() && tr.norm() < (1.0 - 1e-4 * alpha) * res.norm()) {
          lam = trial;
          res = tr;
          moved = true;
          break;
        }
      }
      if (!moved) {
        break;
      }
    }
    if (res.norm() <= opts.tolerance) {
      const double rf = shooter.final_radius(lam);
      // Several extremals can satisfy the conditions; keep the largest radius.
      if (best.residual > opts.tolerance || rf > best.r_final) {
        best = ShootingResult{rf, lam[0], lam[1], lam[2], res.norm(), it};
      }
    } else if (best.residual > opts.tolerance && res.norm() < best.residual) {
      best.residual = res.norm();
    }
  }
  if (!(best.residual <= opts.tolerance)) {
    throw Error(ErrorCode::ShootingNonConvergence,
                "no start converged; best residual " + std::to_string(best.residual));
  }
  return best;
}

}  // namespace desoc::analysis
