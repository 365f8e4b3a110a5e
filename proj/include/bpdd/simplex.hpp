#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "bpdd/tolerances.hpp"

namespace bpdd::lp {

enum class Status { optimal, infeasible, unbounded };

struct SolveResult {
  Status status = Status::optimal;
  Eigen::VectorXd solution;          // variable values
  double objective_value = 0.0;
  Eigen::VectorXd dual_multipliers;  // one per equality row
  int iterations = 0;
  double primal_residual = 0.0;      // max |Ax - b|
  double duality_gap = 0.0;          // |c'x - dual objective|
};

/// Equality-form LP: optimize c'x subject to A x = b, lower <= x <= upper.
/// Bounds may be -inf / +inf entrywise.
struct LinearProgram {
  enum class Sense { minimize, maximize };
  Eigen::VectorXd objective;
  Eigen::MatrixXd equality_matrix;
  Eigen::VectorXd equality_rhs;
  Eigen::VectorXd lower_bounds;
  Eigen::VectorXd upper_bounds;
  Sense sense = Sense::minimize;
};

/// Solves with a primal revised simplex: Dantzig pricing with lowest-index
/// tie-breaking, Bland's rule after the degeneracy heuristic trips, explicit
/// basis inverse with periodic refactorization. Deterministic for identical
/// input. Infeasible/unbounded are statuses; NumericalBreakdown is thrown if
/// the basis condition estimate exceeds tolerances.condition_limit.
SolveResult lp_solve(const LinearProgram& lp,
                     const Tolerances& tol = default_tolerances());

/// Column-major panel of equality columns shared by several variables.
struct ColumnView {
  const double* data = nullptr;
  int rows = 0;
  int ld = 0;
  int ncols = 0;
  const double* col(int j) const {
    return data + static_cast<std::size_t>(j) * ld;
  }
};

/// A variable whose equality column is sign * panel column `column`. The
/// mirrored split u - v of l1 problems shares one stored column between two
/// variables, halving pricing work.
struct VarDef {
  int column = 0;
  double sign = 1.0;
  double lower = 0.0;
  double upper = 0.0;
  double cost = 0.0;
};

/// min sum_j cost_j x_j  s.t.  sum_j sign_j A[:,column_j] x_j = rhs,
/// bounds per variable. This is the core every l1 solver builds on.
struct SimplexProblem {
  ColumnView cols;
  std::vector<VarDef> vars;
  Eigen::VectorXd rhs;
  /// Optional warm basis proposal (one var id per row). Used when it is
  /// well-conditioned and feasible; otherwise the artificial start runs.
  std::vector<int> initial_basis;
};

SolveResult simplex_solve(const SimplexProblem& problem,
                          const Tolerances& tol = default_tolerances());

}  // namespace bpdd::lp
