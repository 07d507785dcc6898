#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace desoc::nlp {

using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Coordinates of the structurally nonzero constraint-Jacobian entries. Entry k of
/// `jacobian_values` corresponds to (rows[k], cols[k]).
struct JacobianStructure {
  std::vector<int> rows;
  std::vector<int> cols;

  std::size_t size() const { return rows.size(); }
  void add(int row, int col) {
    rows.push_back(row);
    cols.push_back(col);
  }
};

enum class DerivativeMode { FiniteDifference, AnalyticDynamics };

/// minimize f(z) subject to c(z) = 0 and lower <= z <= upper.
class NlpProblem {
 public:
  virtual ~NlpProblem() = default;

  virtual int num_variables() const = 0;
  virtual int num_constraints() const = 0;
  virtual const Vector& lower_bounds() const = 0;
  virtual const Vector& upper_bounds() const = 0;

  virtual double objective(const Vector& z) const = 0;
  /// Forward differences unless overridden.
  virtual void objective_gradient(const Vector& z, Vector& grad) const;
  virtual void constraints(const Vector& z, Vector& c) const = 0;

  /// Fixed for the lifetime of the problem.
  virtual const JacobianStructure& jacobian_structure() const = 0;
  virtual bool has_analytic_jacobian() const { return false; }
  virtual void jacobian_values(const Vector& z, std::span<double> values) const;
};

/// Small problems assembled from callables; used by tests and the Python bindings.
class FunctionNlp final : public NlpProblem {
 public:
  using ScalarFn = std::function<double(const Vector&)>;
  using VectorFn = std::function<void(const Vector&, Vector&)>;

  FunctionNlp(int n, int m, ScalarFn objective, VectorFn constraints);

  FunctionNlp& with_bounds(Vector lower, Vector upper);
  FunctionNlp& with_gradient(VectorFn gradient);
  /// Replaces the default dense structure.
  FunctionNlp& with_structure(JacobianStructure structure);

  int num_variables() const override { return n_; }
  int num_constraints() const override { return m_; }
  const Vector& lower_bounds() const override { return lower_; }
  const Vector& upper_bounds() const override { return upper_; }
  double objective(const Vector& z) const override { return objective_(z); }
  void objective_gradient(const Vector& z, Vector& grad) const override;
  void constraints(const Vector& z, Vector& c) const override { constraints_(z, c); }
  const JacobianStructure& jacobian_structure() const override { return structure_; }

 private:
  int n_;
  int m_;
  ScalarFn objective_;
  VectorFn constraints_;
  VectorFn gradient_;
  Vector lower_;
  Vector upper_;
  JacobianStructure structure_;
};

/// Partition of the columns into structurally orthogonal groups.
struct ColumnColoring {
  std::vector<int> color;
  int num_colors = 0;
};

ColumnColoring color_columns(const JacobianStructure& structure, int num_rows, int num_cols);

/// Sparse constraint Jacobian with a fixed pattern. Finite-difference mode perturbs one
/// color group per constraint evaluation.
class JacobianEvaluator {
 public:
  JacobianEvaluator(const NlpProblem& problem, DerivativeMode mode);

  /// `c_at_z` may be supplied to save one evaluation in finite-difference mode.
  const SparseMatrix& evaluate(const Vector& z, const Vector* c_at_z = nullptr);
  const SparseMatrix& matrix() const { return jac_; }
  DerivativeMode mode() const { return mode_; }
  int num_colors() const { return coloring_.num_colors; }

 private:
  const NlpProblem& problem_;
  DerivativeMode mode_;
  ColumnColoring coloring_;
  SparseMatrix jac_;
  std::vector<int> value_slot_;  // structure entry -> index into jac_.valuePtr()
  std::vector<double> values_;
  std::vector<std::vector<int>> entries_by_color_;
};

SparseMatrix constraint_jacobian(const NlpProblem& problem, const Vector& z, DerivativeMode mode);

}  // namespace desoc::nlp
