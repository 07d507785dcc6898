#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "desoc/error.hpp"
#include "desoc/nlp.hpp"

namespace desoc::nlp {

namespace {

const double kSqrtEps = std::sqrt(std::numeric_limits<double>::epsilon());

// Step rounded so that z + h - z == h exactly.
double fd_step(double z) {
  const double h = std::max(1.0, std::abs(z)) * kSqrtEps;
  volatile double shifted = z + h;
  return shifted - z;
}

}  // namespace

void NlpProblem::objective_gradient(const Vector& z, Vector& grad) const {
  const int n = num_variables();
  grad.resize(n);
  const double f0 = objective(z);
  Vector zp = z;
  for (int j = 0; j < n; ++j) {
    const double h = fd_step(z[j]);
    zp[j] = z[j] + h;
    grad[j] = (objective(zp) - f0) / h;
    zp[j] = z[j];
  }
}

void NlpProblem::jacobian_values(const Vector&, std::span<double>) const {
  throw Error(ErrorCode::InvalidArgument, "problem provides no analytic Jacobian");
}

FunctionNlp::FunctionNlp(int n, int m, ScalarFn objective, VectorFn constraints)
    : n_(n),
      m_(m),
      objective_(std::move(objective)),
      constraints_(std::move(constraints)),
      lower_(Vector::Constant(n, -std::numeric_limits<double>::infinity())),
      upper_(Vector::Constant(n, std::numeric_limits<double>::infinity())) {
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < n_; ++j) {
      structure_.add(i, j);
    }
  }
}

FunctionNlp& FunctionNlp::with_bounds(Vector lower, Vector upper) {
  if (lower.size() != n_ || upper.size() != n_) {
    throw Error(ErrorCode::DimensionMismatch, "bound vectors must have one entry per variable");
  }
  lower_ = std::move(lower);
  upper_ = std::move(upper);
  return *this;
}

FunctionNlp& FunctionNlp::with_gradient(VectorFn gradient) {
  gradient_ = std::move(gradient);
  return *this;
}

FunctionNlp& FunctionNlp::with_structure(JacobianStructure structure) {
  structure_ = std::move(structure);
  return *this;
}

void FunctionNlp::objective_gradient(const Vector& z, Vector& grad) const {
  if (gradient_) {
    grad.resize(n_);
    gradient_(z, grad);
  } else {
    NlpProblem::objective_gradient(z, grad);
  }
}

ColumnColoring color_columns(const JacobianStructure& structure, int num_rows, int num_cols) {
  std::vector<std::vector<int>> cols_of_row(num_rows);
  std::vector<std::vector<int>> rows_of_col(num_cols);
  for (std::size_t k = 0; k < structure.size(); ++k) {
    cols_of_row[structure.rows[k]].push_back(structure.cols[k]);
    rows_of_col[structure.cols[k]].push_back(structure.rows[k]);
  }

  ColumnColoring coloring;
  coloring.color.assign(num_cols, -1);
  std::vector<int> stamp;  // stamp[color] == col marks color as forbidden for col
  for (int col = 0; col < num_cols; ++col) {
    for (int row : rows_of_col[col]) {
      for (int other : cols_of_row[row]) {
        const int c = coloring.color[other];
        if (c >= 0) {
          stamp[c] = col;
        }
      }
    }
    int chosen = 0;
    while (chosen < static_cast<int>(stamp.size()) && stamp[chosen] == col) {
      ++chosen;
    }
    if (chosen == static_cast<int>(stamp.size())) {
      stamp.push_back(-1);
    }
    coloring.color[col] = chosen;
  }
  coloring.num_colors = static_cast<int>(stamp.size());
  return coloring;
}

JacobianEvaluator::JacobianEvaluator(const NlpProblem& problem, DerivativeMode mode)
    : problem_(problem), mode_(mode) {
  if (mode_ == DerivativeMode::AnalyticDynamics && !problem.has_analytic_jacobian()) {
    mode_ = DerivativeMode::FiniteDifference;
  }
  const int m = problem.num_constraints();
  const int n = problem.num_variables();
  const JacobianStructure& s = problem.jacobian_structure();

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s.rows[k] < 0 || s.rows[k] >= m || s.cols[k] < 0 || s.cols[k] >= n) {
      throw Error(ErrorCode::DimensionMismatch, "Jacobian structure entry out of range");
    }
    triplets.emplace_back(s.rows[k], s.cols[k], 1.0);
  }
  jac_.resize(m, n);
  jac_.setFromTriplets(triplets.begin(), triplets.end());
  jac_.makeCompressed();
  if (static_cast<std::size_t>(jac_.nonZeros()) != s.size()) {
    throw Error(ErrorCode::DimensionMismatch, "Jacobian structure contains duplicate entries");
  }

  value_slot_.resize(s.size());
  const int* outer = jac_.outerIndexPtr();
  const int* inner = jac_.innerIndexPtr();
  for (std::size_t k = 0; k < s.size(); ++k) {
    const int* begin = inner + outer[s.cols[k]];
    const int* end = inner + outer[s.cols[k] + 1];
    value_slot_[k] = static_cast<int>(std::lower_bound(begin, end, s.rows[k]) - inner);
  }
  values_.resize(s.size());

  if (mode_ == DerivativeMode::FiniteDifference) {
    coloring_ = color_columns(s, m, n);
    entries_by_color_.assign(coloring_.num_colors, {});
    for (std::size_t k = 0; k < s.size(); ++k) {
      entries_by_color_[coloring_.color[s.cols[k]]].push_back(static_cast<int>(k));
    }
  }
}

const SparseMatrix& JacobianEvaluator::evaluate(const Vector& z, const Vector* c_at_z) {
  const JacobianStructure& s = problem_.jacobian_structure();
  if (mode_ == DerivativeMode::AnalyticDynamics) {
    problem_.jacobian_values(z, values_);
  } else {
    const int n = problem_.num_variables();
    Vector c0;
    if (c_at_z != nullptr) {
      c0 = *c_at_z;
    } else {
      problem_.constraints(z, c0);
    }
    Vector steps(n);
    for (int j = 0; j < n; ++j) {
      steps[j] = fd_step(z[j]);
    }
    Vector zp = z;
    Vector cp(problem_.num_constraints());
    for (int color = 0; color < coloring_.num_colors; ++color) {
      for (int j = 0; j < n; ++j) {
        zp[j] = coloring_.color[j] == color ? z[j] + steps[j] : z[j];
      }
      problem_.constraints(zp, cp);
      for (int k : entries_by_color_[color]) {
        values_[k] = (cp[s.rows[k]] - c0[s.rows[k]]) / steps[s.cols[k]];
      }
    }
  }
  double* dst = jac_.valuePtr();
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw Error(ErrorCode::NumericFailure, "non-finite Jacobian entry at (" +
                                                 std::to_string(s.rows[k]) + ", " +
                                                 std::to_string(s.cols[k]) + ")");
    }
    dst[value_slot_[k]] = values_[k];
  }
  return jac_;
}

SparseMatrix constraint_jacobian(const NlpProblem& problem, const Vector& z, DerivativeMode mode) {
  if (z.size() != problem.num_variables()) {
    throw Error(ErrorCode::DimensionMismatch, "decision vector has wrong length");
  }
  JacobianEvaluator evaluator(problem, mode);
  return evaluator.evaluate(z);
}

}  // namespace desoc::nlp
