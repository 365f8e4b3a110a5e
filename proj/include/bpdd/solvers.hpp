#pragma once

#include <Eigen/Dense>

#include "bpdd/model_gen.hpp"
#include "bpdd/simplex.hpp"
#include "bpdd/tolerances.hpp"

namespace bpdd::solvers {

/// Output of one interpolating (or regressing) estimator. `estimate` is the
/// estimated coefficient vector in scaled coordinates; the model errors refer
/// to w = estimate - beta_scaled except for the noise interpolator, where the
/// estimate itself is the w being measured.
struct InterpolatorOutput {
  Eigen::VectorXd estimate;
  double model_error_l2 = 0.0;
  double model_error_l1 = 0.0;
  double model_error_l2_unscaled = 0.0;
  int nonzero_count = 0;
  lp::SolveResult solver;
};

/// min ||z||_1 subject to cols * z = rhs, via the mirrored split z = u - v.
struct L1FitResult {
  Eigen::VectorXd coefficients;
  lp::SolveResult lp;
};
L1FitResult l1_fit(const lp::ColumnView& cols, const Eigen::VectorXd& rhs,
                   const Tolerances& tol = default_tolerances());
L1FitResult l1_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& rhs,
                   const Tolerances& tol = default_tolerances());

/// Basis Pursuit: the minimum-l1 interpolator of the training data. The
/// returned estimate is sparsified to at most n nonzeros.
InterpolatorOutput basis_pursuit(const model::TrainingSet& ts,
                                 const Tolerances& tol = default_tolerances());

/// Reduces a feasible interpolant to at most n nonzeros without increasing
/// its l1 norm: repeatedly moves along a null-space direction of the active
/// columns to the endpoint of the sign-preserving interval that does not
/// increase the norm, zeroing at least one coordinate per round.
Eigen::VectorXd sparsify(const Eigen::VectorXd& estimate,
                         const model::TrainingSet& ts,
                         const Tolerances& tol = default_tolerances());

/// The noise-only interpolator: min ||w||_1 with X w = noise and the first s
/// coordinates fixed to zero. Requires p - s >= n. The reported dual
/// multipliers lambda maximize lambda'(-noise) subject to |lambda' A_i| <= 1
/// over the off-support columns.
InterpolatorOutput noise_interpolator(const model::TrainingSet& ts,
                                      const Tolerances& tol = default_tolerances());

/// Minimum-l2-norm interpolator via an orthogonal factorization of X.
InterpolatorOutput min_l2_overfit(const model::TrainingSet& ts,
                                  const Tolerances& tol = default_tolerances());

/// Least-squares estimator for the underparameterized side p < n
/// (minimum-norm solution if the columns are rank deficient).
InterpolatorOutput min_mse(const model::TrainingSet& ts,
                           const Tolerances& tol = default_tolerances());

/// Value lambda'(-noise) of a feasible dual candidate for the noise
/// interpolator. Throws FeasibilityError (with the offending off-support
/// column index) if some |lambda' A_i| exceeds 1 + 1e-8.
double dual_value_wI(const model::TrainingSet& ts,
                     const Eigen::VectorXd& multipliers,
                     const Tolerances& tol = default_tolerances());

/// Exhaustive minimum-l1 oracle for tiny systems: enumerates basic solutions
/// over all n-column subsets of columns fixed_zero_prefix..p-1. Guard rails
/// n <= 4, p <= 8.
double brute_force_l1(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                      int fixed_zero_prefix,
                      const Tolerances& tol = default_tolerances());

}  // namespace bpdd::solvers
