#include <algorithm>
#include <array>
#include <cmath>

#include "desoc/analysis.hpp"
#include "desoc/error.hpp"

namespace desoc::analysis {

namespace {

using transcription::CollocationNlp;
using transcription::Family;

// Quadratic Lagrange interpolation through (0, a), (1/2, c), (1, b).
double quadratic(double a, double c, double b, double s) {
  return a * (2.0 * s - 1.0) * (s - 1.0) + c * 4.0 * s * (1.0 - s) + b * s * (2.0 * s - 1.0);
}

// Nearest representative of `angle` to `reference` modulo 2*pi.
double unwrap_near(double angle, double reference) {
  return angle - astro::kTwoPi * std::round((angle - reference) / astro::kTwoPi);
}

template <int NS, int NC, typename Rhs>
std::array<double, NS> replay(const CollocationNlp& nlp, const nlp::Vector& z, int substeps, Rhs&& rhs,
                              std::array<double, NC> (*shape)(std::array<double, NC>), bool angle_control) {
  const auto& mesh = nlp.mesh();
  std::array<double, NS> x{};
  for (int i = 0; i < NS; ++i) {
    x[i] = z[nlp.state_index(0, i)];
  }
  auto control_at = [&](int k, double s) {
    std::array<double, NC> u{};
    for (int i = 0; i < NC; ++i) {
      const double a = z[nlp.control_index(2 * k, i)];
      double c = z[nlp.control_index(2 * k + 1, i)];
      double b = z[nlp.control_index(2 * k + 2, i)];
      if (angle_control) {
        c = unwrap_near(c, a);
        b = unwrap_near(b, c);
      }
      u[i] = quadratic(a, c, b, s);
    }
    return shape(u);
  };
  auto axpy = [](const std::array<double, NS>& a, double h, const std::array<double, NS>& b) {
    std::array<double, NS> out;
    for (int i = 0; i < NS; ++i) {
      out[i] = a[i] + h * b[i];
    }
    return out;
  };

  for (int k = 0; k < mesh.num_segments(); ++k) {
    const double ta = mesh.boundaries()[k];
    const double hk = mesh.segment_length(k);
    const double h = hk / substeps;
    for (int j = 0; j < substeps; ++j) {
      const double s0 = static_cast<double>(j) / substeps;
      const double s1 = static_cast<double>(j + 1) / substeps;
      const double sm = 0.5 * (s0 + s1);
      const double t = ta + s0 * hk;
      const auto u0 = control_at(k, s0);
      const auto um = control_at(k, sm);
      const auto u1 = control_at(k, s1);
      const auto k1 = rhs(x, u0, t);
      const auto k2 = rhs(axpy(x, 0.5 * h, k1), um, t + 0.5 * h);
      const auto k3 = rhs(axpy(x, 0.5 * h, k2), um, t + 0.5 * h);
      const auto k4 = rhs(axpy(x, h, k3), u1, t + h);
      for (int i = 0; i < NS; ++i) {
        x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
    }
  }
  return x;
}

std::array<double, 4> shape_rendezvous(std::array<double, 4> u) {
  u[0] = std::clamp(u[0], 0.0, 1.0);
  const double n = std::sqrt(u[1] * u[1] + u[2] * u[2] + u[3] * u[3]);
  if (n > 0.0) {
    u[1] /= n;
    u[2] /= n;
    u[3] /= n;
  }
  return u;
}

std::array<double, 1> shape_identity(std::array<double, 1> u) { return u; }

}  // namespace

double refly_terminal_cost(const CollocationNlp& nlp, const nlp::Vector& z, double thrust, int substeps) {
  if (z.size() != nlp.num_variables()) {
    throw Error(ErrorCode::DimensionMismatch, "decision vector does not match the collocation layout");
  }
  if (substeps < 1) {
    throw Error(ErrorCode::InvalidArgument, "refly needs at least one substep per segment");
  }
  const ProblemDefinition p = nlp.problem().with_thrust(thrust);
  if (p.family() == Family::MeeRendezvous) {
    const auto& r = std::get<transcription::RendezvousProblem>(p.details);
    const dynamics::RendezvousRhsParams prm{p.gravity.mu,        r.propulsion.thrust, r.propulsion.exhaust_velocity,
                                            p.desensitization.k_vr, p.desensitization.k_vt, p.desensitization.k_vn,
                                            p.desensitization.k_m};
    auto rhs = [&](const std::array<double, 8>& x, const std::array<double, 4>& u, double) {
      if (!(x[6] > 0.0)) {
        throw Error(ErrorCode::NonPositiveMass, "mass depleted during refly");
      }
      return dynamics::rendezvous_rhs(x, u, prm);
    };
    return replay<8, 4>(nlp, z, substeps, rhs, &shape_rendezvous, false)[6];
  }
  const dynamics::OrbitRaisingRhsParams prm{p.gravity.mu, std::get<transcription::OrbitRaisingProblem>(p.details).model};
  auto rhs = [&](const std::array<double, 4>& x, const std::array<double, 1>& u, double t) {
    return dynamics::orbit_raising_rhs(x, u[0], t, prm);
  };
  return replay<4, 1>(nlp, z, substeps, rhs, &shape_identity, true)[0];
}

}  // namespace desoc::analysis
