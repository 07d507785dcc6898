#include <algorithm>
#include <cmath>
#include <string>

#include "desoc/error.hpp"
#include "desoc/transcription.hpp"

namespace desoc::transcription {

Mesh::Mesh(std::vector<double> boundaries) : boundaries_(std::move(boundaries)) {
  if (boundaries_.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "mesh needs at least one segment");
  }
  for (std::size_t i = 1; i < boundaries_.size(); ++i) {
    if (!(boundaries_[i] > boundaries_[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "mesh boundaries must be strictly increasing");
    }
  }
}

Mesh Mesh::uniform(double t0, double tf, int segments, std::span<const double> required) {
  if (segments < 1 || !(tf > t0)) {
    throw Error(ErrorCode::InvalidArgument, "uniform mesh needs segments >= 1 and tf > t0");
  }
  const double h = (tf - t0) / segments;
  const double tol = 1e-12 * std::max(1.0, std::abs(tf - t0));

  struct Boundary {
    double t;
    bool locked;
  };
  std::vector<Boundary> b;
  for (int i = 0; i <= segments; ++i) {
    b.push_back({i == segments ? tf : t0 + i * h, i == 0 || i == segments});
  }

  std::vector<double> req(required.begin(), required.end());
  std::sort(req.begin(), req.end());
  for (double t : req) {
    if (t < t0 - tol || t > tf + tol) {
      throw Error(ErrorCode::WindowOutsideHorizon,
                  "required boundary " + std::to_string(t) + " outside the horizon");
    }
    auto nearest = std::min_element(b.begin(), b.end(), [t](const Boundary& a, const Boundary& c) {
      return std::abs(a.t - t) < std::abs(c.t - t);
    });
    if (std::abs(nearest->t - t) <= tol) {
      nearest->locked = true;
      continue;
    }
    if (!nearest->locked && std::abs(nearest->t - t) <= 0.3 * h) {
      nearest->t = t;
      nearest->locked = true;
      continue;
    }
    auto pos = std::lower_bound(b.begin(), b.end(), t,
                                [](const Boundary& a, double value) { return a.t < value; });
    b.insert(pos, Boundary{t, true});
  }

  std::vector<double> out;
  out.reserve(b.size());
  for (const Boundary& x : b) {
    out.push_back(x.t);
  }
  return Mesh(std::move(out));
}

double Mesh::node_time(int node) const {
  const int k = node / 2;
  if (node % 2 == 0) {
    return boundaries_[k];
  }
  return 0.5 * (boundaries_[k] + boundaries_[k + 1]);
}

std::vector<double> Mesh::node_times() const {
  std::vector<double> t(num_nodes());
  for (int j = 0; j < num_nodes(); ++j) {
    t[j] = node_time(j);
  }
  return t;
}

bool Mesh::has_boundary(double t, double tolerance) const {
  return std::any_of(boundaries_.begin(), boundaries_.end(),
                     [&](double b) { return std::abs(b - t) <= tolerance; });
}

Mesh Mesh::refined() const {
  std::vector<double> out;
  out.reserve(2 * boundaries_.size());
  for (int k = 0; k < num_segments(); ++k) {
    out.push_back(boundaries_[k]);
    out.push_back(0.5 * (boundaries_[k] + boundaries_[k + 1]));
  }
  out.push_back(boundaries_.back());
  return Mesh(std::move(out));
}

}  // namespace desoc::transcription
