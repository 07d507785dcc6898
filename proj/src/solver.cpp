#include "desoc/nlp_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "desoc/error.hpp"

namespace desoc::nlp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kArmijo = 1e-4;
constexpr double kMinCurvature = 1e-8;
constexpr double kMaxCurvature = 1e8;

Vector project(const Vector& z, const Vector& lower, const Vector& upper) {
  return z.cwiseMax(lower).cwiseMin(upper);
}

double inf_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

bool all_finite(const Vector& v) { return v.allFinite(); }

// Limited-memory secant model B = sigma*I - W M W^T (compact form).
class SecantMemory {
 public:
  explicit SecantMemory(int capacity) : capacity_(capacity) {}

  void clear() {
    s_.clear();
    y_.clear();
    sigma_ = 1.0;
    dirty_ = true;
  }

  double sigma() const { return sigma_; }
  bool empty() const { return s_.empty(); }

  // Powell-damped update; returns false when the pair is rejected.
  bool update(const Vector& s, Vector y) {
    const double ss = s.squaredNorm();
    if (!(ss > 0.0)) {
      return false;
    }
    const Vector bs = apply(s);
    const double sbs = s.dot(bs);
    double sy = s.dot(y);
    if (sy < 0.2 * sbs) {
      const double theta = 0.8 * sbs / (sbs - sy);
      y = theta * y + (1.0 - theta) * bs;
      sy = s.dot(y);
    }
    if (!(sy > 1e-12 * ss) || !std::isfinite(sy)) {
      return false;
    }
    if (capacity_ <= 0) {
      return false;
    }
    if (static_cast<int>(s_.size()) == capacity_) {
      s_.pop_front();
      y_.pop_front();
    }
    s_.push_back(s);
    y_.push_back(y);
    sigma_ = std::clamp(y.squaredNorm() / sy, kMinCurvature, kMaxCurvature);
    dirty_ = true;
    return true;
  }

  Vector apply(const Vector& v) {
    if (s_.empty()) {
      return sigma_ * v;
    }
    refresh();
    const int k = static_cast<int>(s_.size());
    Eigen::VectorXd wtv(2 * k);
    for (int i = 0; i < k; ++i) {
      wtv[i] = sigma_ * s_[i].dot(v);
      wtv[k + i] = y_[i].dot(v);
    }
    const Eigen::VectorXd coef = middle_.solve(wtv);
    Vector out = sigma_ * v;
    for (int i = 0; i < k; ++i) {
      out -= coef[i] * sigma_ * s_[i] + coef[k + i] * y_[i];
    }
    return out;
  }

  int size() const { return static_cast<int>(s_.size()); }

 private:
  void refresh() {
    if (!dirty_) {
      return;
    }
    const int k = static_cast<int>(s_.size());
    Eigen::MatrixXd minv = Eigen::MatrixXd::Zero(2 * k, 2 * k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        minv(i, j) = sigma_ * s_[i].dot(s_[j]);
        if (i > j) {
          const double l = s_[i].dot(y_[j]);
          minv(i, k + j) = l;
          minv(k + j, i) = l;
        }
      }
      minv(k + i, k + i) = -s_[i].dot(y_[i]);
    }
    middle_ = minv.fullPivLu();
    dirty_ = false;
  }

  int capacity_;
  std::deque<Vector> s_;
  std::deque<Vector> y_;
  double sigma_ = 1.0;
  bool dirty_ = true;
  Eigen::FullPivLU<Eigen::MatrixXd> middle_;
};

struct Point {
  Vector z;
  double f = 0.0;
  Vector grad_f;
  Vector c;
  SparseMatrix jac;
  double phi = 0.0;
  Vector grad_phi;
};

enum class InnerOutcome { Converged, IterationLimit, LineSearchFailure };

class AugmentedLagrangian {
 public:
  AugmentedLagrangian(const NlpProblem& problem, const SolverOptions& opts)
      : problem_(problem),
        opts_(opts),
        jacobian_(problem, opts.derivative_mode),
        n_(problem.num_variables()),
        m_(problem.num_constraints()),
        lower_(problem.lower_bounds()),
        upper_(problem.upper_bounds()),
        memory_(opts.lbfgs_memory) {}

  SolveResult run(const Vector& z0) {
    const auto start = std::chrono::steady_clock::now();
    SolveResult result;
    const Vector base = project(z0, lower_, upper_);
    Vector start_point = base;
    std::mt19937_64 rng(opts_.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    for (int attempt = 0;; ++attempt) {
      result = attempt_solve(start_point);
      result.report.restarts = attempt;
      if (result.report.status != SolverStatus::InfeasibleStall || attempt >= opts_.max_restarts) {
        break;
      }
      start_point = base;
      for (int i = 0; i < n_; ++i) {
        start_point[i] += opts_.restart_noise * std::max(1.0, std::abs(base[i])) * normal(rng);
      }
      start_point = project(start_point, lower_, upper_);
    }
    result.report.inner_iterations = total_inner_;
    result.report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }

 private:
  SolveResult attempt_solve(const Vector& z0) {
    SolveResult out;
    SolverReport& rep = out.report;
    lambda_ = Vector::Zero(m_);
    rho_ = opts_.initial_penalty;
    memory_.clear();

    Point pt;
    try {
      if (!evaluate_full(z0, pt)) {
        out.z = z0;
        rep.status = SolverStatus::NumericFailure;
        return out;
      }
    } catch (const Error&) {
      out.z = z0;
      rep.status = SolverStatus::NumericFailure;
      return out;
    }

    // The projected-step measure is capped by the distance to a bound, so the inner tolerance
    // must be able to drop to the feasibility scale or nearly active variables never settle.
    const double omega_floor = 0.1 * std::min(opts_.optimality_tol, opts_.feasibility_tol);
    double omega = 1.0 / rho_;
    double eta = std::pow(rho_, -0.1);
    double best_feas = kInf;
    int stall_count = 0;
    double last_accepted = kInf;

    for (int outer = 1; outer <= opts_.max_outer_iterations; ++outer) {
      rep.outer_iterations = outer;
      InnerOutcome inner;
      try {
        inner = minimize_subproblem(pt, omega);
      } catch (const Error&) {
        rep.status = SolverStatus::NumericFailure;
        break;
      }
      if (opts_.verbosity > 1) {
        std::fprintf(stderr, "  inner outcome %d\n", static_cast<int>(inner));
      }

      const double feas = inf_norm(pt.c);
      const Vector lambda_trial = lambda_ + rho_ * pt.c;
      Vector grad_l = pt.grad_f;
      if (m_ > 0) {
        grad_l.noalias() += pt.jac.transpose() * lambda_trial;
      }
      const double opt = projected_gradient_norm(pt.z, grad_l, lower_, upper_);
      rep.feasibility = feas;
      rep.optimality = opt;
      rep.objective = pt.f;
      rep.penalty = rho_;

      if (opts_.verbosity > 0) {
        std::fprintf(stderr, "outer %3d  f=% .10e  feas=%.3e  opt=%.3e  rho=%.1e  inner=%d\n", outer,
                     pt.f, feas, opt, rho_, total_inner_);
      }

      if (feas <= opts_.feasibility_tol && opt <= opts_.optimality_tol) {
        lambda_ = lambda_trial;
        rep.accepted_feasibility.push_back(feas);
        rep.status = SolverStatus::Converged;
        break;
      }

      if (feas <= eta && feas <= last_accepted) {
        lambda_ = lambda_trial;
        last_accepted = feas;
        rep.accepted_feasibility.push_back(feas);
        eta = std::max(eta * std::pow(rho_, -0.9), 0.1 * opts_.feasibility_tol);
        omega = std::max(omega / rho_, omega_floor);
      } else if (rho_ < opts_.max_penalty) {
        rho_ = std::min(rho_ * opts_.penalty_growth, opts_.max_penalty);
        eta = std::pow(rho_, -0.1);
        omega = 1.0 / rho_;
      } else {
        // Penalty exhausted: keep tightening the subproblem.
        lambda_ = lambda_trial;
        omega = std::max(0.1 * omega, omega_floor);
      }
      refresh_merit(pt);
      if (feas < 0.9 * best_feas) {
        best_feas = feas;
        stall_count = 0;
      } else if (feas > opts_.feasibility_tol && ++stall_count >= opts_.stall_outer_iterations) {
        rep.status = SolverStatus::InfeasibleStall;
        break;
      }
      if (outer == opts_.max_outer_iterations) {
        rep.status = SolverStatus::MaxIterations;
      }
      if (lambda_.size() > 0 && !all_finite(lambda_)) {
        rep.status = SolverStatus::NumericFailure;
        break;
      }
    }
    out.z = pt.z;
    rep.multipliers = lambda_;
    return out;
  }

  // f, c only; returns +inf merit on non-finite values.
  double merit(const Vector& z, double* f_out = nullptr, Vector* c_out = nullptr) {
    const double f = problem_.objective(z);
    Vector c(m_);
    if (m_ > 0) {
      problem_.constraints(z, c);
    }
    if (!std::isfinite(f) || !all_finite(c)) {
      return kInf;
    }
    if (f_out) *f_out = f;
    if (c_out) *c_out = c;
    return f + lambda_.dot(c) + 0.5 * rho_ * c.squaredNorm();
  }

  bool evaluate_full(const Vector& z, Point& pt) {
    pt.z = z;
    pt.phi = merit(z, &pt.f, &pt.c);
    if (!std::isfinite(pt.phi)) {
      return false;
    }
    problem_.objective_gradient(z, pt.grad_f);
    if (!all_finite(pt.grad_f)) {
      return false;
    }
    if (m_ > 0) {
      pt.jac = jacobian_.evaluate(z, &pt.c);
    } else {
      pt.jac.resize(0, n_);
    }
    refresh_merit(pt);
    return true;
  }

  void refresh_merit(Point& pt) {
    pt.phi = pt.f + lambda_.dot(pt.c) + 0.5 * rho_ * pt.c.squaredNorm();
    pt.grad_phi = pt.grad_f;
    if (m_ > 0) {
      pt.grad_phi.noalias() += pt.jac.transpose() * (lambda_ + rho_ * pt.c);
    }
  }

  // Free-variable mask: 0 for variables held at an (epsilon-)active bound.
  Vector free_mask(const Point& pt, double eps) const {
    Vector mask = Vector::Ones(n_);
    for (int i = 0; i < n_; ++i) {
      const double g = pt.grad_phi[i];
      if ((pt.z[i] - lower_[i] <= eps && g > 0.0) || (upper_[i] - pt.z[i] <= eps && g < 0.0) ||
          lower_[i] == upper_[i]) {
        mask[i] = 0.0;
      }
    }
    return mask;
  }

  // Solves (B + rho J^T J) d = -g on the free variables by preconditioned CG, using
  // sigma*I + rho J^T J as the preconditioner.
  Vector newton_direction(const Point& pt, const Vector& mask) {
    const double sigma = memory_.sigma();
    SparseMatrix jm;
    SparseMatrix a(n_, n_);
    if (m_ > 0) {
      jm = pt.jac * mask.asDiagonal();
      a = rho_ * (jm.transpose() * jm);
    }
    Vector diag = sigma * mask + (Vector::Ones(n_) - mask);
    SparseMatrix d(n_, n_);
    d.reserve(Eigen::VectorXi::Constant(n_, 1));
    for (int i = 0; i < n_; ++i) {
      d.insert(i, i) = diag[i];
    }
    a += d;
    a.makeCompressed();
    ldlt_.compute(a);
    if (ldlt_.info() != Eigen::Success) {
      return -pt.grad_phi.cwiseProduct(mask) / sigma;
    }

    const Vector b = -pt.grad_phi.cwiseProduct(mask);
    if (memory_.empty()) {
      return ldlt_.solve(b);
    }
    auto apply_h = [&](const Vector& v) {
      const Vector vm = v.cwiseProduct(mask);
      Vector out = memory_.apply(vm);
      if (m_ > 0) {
        out.noalias() += rho_ * (jm.transpose() * (jm * vm));
      }
      return Vector(out.cwiseProduct(mask) + v.cwiseProduct(Vector::Ones(n_) - mask));
    };

    Vector x = Vector::Zero(n_);
    Vector r = b;
    Vector zr = ldlt_.solve(r);
    Vector p = zr;
    double rz = r.dot(zr);
    const double bnorm = b.norm();
    const int max_cg = 2 * memory_.size() + 10;
    for (int it = 0; it < max_cg; ++it) {
      const Vector hp = apply_h(p);
      const double php = p.dot(hp);
      if (!(php > 0.0)) {
        break;
      }
      const double alpha = rz / php;
      x += alpha * p;
      r -= alpha * hp;
      if (r.norm() <= 1e-10 * bnorm) {
        break;
      }
      zr = ldlt_.solve(r);
      const double rz_new = r.dot(zr);
      p = zr + (rz_new / rz) * p;
      rz = rz_new;
    }
    if (x.squaredNorm() == 0.0) {
      return ldlt_.solve(b);
    }
    return x;
  }

  // Projected backtracking search along d (Bertsekas-style sufficient decrease).
  bool line_search(const Point& pt, const Vector& d, const Vector& mask, Vector& z_new,
                   double& phi_new) {
    double alpha = 1.0;
    for (int k = 0; k < 50; ++k) {
      z_new = project(pt.z + alpha * d, lower_, upper_);
      const Vector step = z_new - pt.z;
      if (step.cwiseAbs().maxCoeff() <= 1e-300) {
        return false;
      }
      double predicted = 0.0;
      for (int i = 0; i < n_; ++i) {
        predicted += mask[i] > 0.0 ? -alpha * pt.grad_phi[i] * d[i] : -pt.grad_phi[i] * step[i];
      }
      phi_new = merit(z_new);
      if (std::isfinite(phi_new) && phi_new <= pt.phi - kArmijo * std::max(predicted, 0.0) &&
          (phi_new < pt.phi || predicted <= 0.0)) {
        return true;
      }
      alpha *= 0.5;
    }
    return false;
  }

  InnerOutcome minimize_subproblem(Point& pt, double tolerance) {
    for (int it = 0; it < opts_.max_inner_iterations; ++it) {
      const double pg = projected_gradient_norm(pt.z, pt.grad_phi, lower_, upper_);
      if (pg <= tolerance) {
        return InnerOutcome::Converged;
      }
      const Vector mask = free_mask(pt, std::min(1e-3, pg));

      Vector d = newton_direction(pt, mask);
      // Scaled steepest descent on the held variables.
      for (int i = 0; i < n_; ++i) {
        if (mask[i] == 0.0) {
          d[i] = -pt.grad_phi[i] / memory_.sigma();
        }
      }
      if (!(pt.grad_phi.cwiseProduct(mask).dot(d) < 0.0) && mask.sum() > 0) {
        d = -pt.grad_phi / memory_.sigma();
      }

      Vector z_new;
      double phi_new = 0.0;
      if (!line_search(pt, d, mask, z_new, phi_new)) {
        memory_.clear();
        const Vector g = -pt.grad_phi;
        if (!line_search(pt, g, Vector::Ones(n_), z_new, phi_new)) {
          return InnerOutcome::LineSearchFailure;
        }
      }

      Point next;
      if (!evaluate_full(z_new, next)) {
        throw Error(ErrorCode::NumericFailure, "non-finite values at accepted iterate");
      }
      ++total_inner_;

      const Vector s = next.z - pt.z;
      Vector y = next.grad_f - pt.grad_f;
      if (m_ > 0) {
        const Vector weights = lambda_ + rho_ * next.c;
        y.noalias() += next.jac.transpose() * weights;
        y.noalias() -= pt.jac.transpose() * weights;
      }
      memory_.update(s, y);
      pt = std::move(next);
    }
    return InnerOutcome::IterationLimit;
  }

  const NlpProblem& problem_;
  SolverOptions opts_;
  JacobianEvaluator jacobian_;
  int n_;
  int m_;
  Vector lower_;
  Vector upper_;
  Vector lambda_;
  double rho_ = 10.0;
  SecantMemory memory_;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt_;
  int total_inner_ = 0;
};

}  // namespace

const char* to_string(SolverStatus status) noexcept {
  switch (status) {
    case SolverStatus::Converged: return "converged";
    case SolverStatus::MaxIterations: return "max_iterations";
    case SolverStatus::InfeasibleStall: return "infeasible_stall";
    case SolverStatus::NumericFailure: return "numeric_failure";
  }
  return "unknown";
}

void SolverOptions::validate() const {
  if (!(feasibility_tol > 0.0) || !(optimality_tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "solver tolerances must be positive");
  }
  if (max_outer_iterations < 1 || max_inner_iterations < 1 || lbfgs_memory < 0 || max_restarts < 0) {
    throw Error(ErrorCode::InvalidArgument, "solver iteration limits must be positive");
  }
  if (!(initial_penalty > 0.0) || !(penalty_growth > 1.0) || !(max_penalty >= initial_penalty)) {
    throw Error(ErrorCode::InvalidArgument, "invalid penalty schedule");
  }
}

double projected_gradient_norm(const Vector& z, const Vector& grad, const Vector& lower,
                               const Vector& upper) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double projected = std::clamp(z[i] - grad[i], lower[i], upper[i]);
    out = std::max(out, std::abs(projected - z[i]));
  }
  return out;
}

SolveResult solve(const NlpProblem& problem, const Vector& z0, const SolverOptions& options) {
  options.validate();
  if (z0.size() != problem.num_variables()) {
    throw Error(ErrorCode::DimensionMismatch, "initial point has wrong length");
  }
  AugmentedLagrangian solver(problem, options);
  return solver.run(z0);
}

}  // namespace desoc::nlp
