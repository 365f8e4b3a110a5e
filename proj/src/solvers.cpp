#include "bpdd/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bpdd/errors.hpp"
#include "bpdd/kernels.hpp"

namespace bpdd::solvers {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int count_nonzeros(const Eigen::VectorXd& v) {
  int c = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i] != 0.0) ++c;
  return c;
}

InterpolatorOutput make_output(const model::TrainingSet& ts,
                               Eigen::VectorXd estimate,
                               const Eigen::VectorXd& w, lp::SolveResult lpres) {
  InterpolatorOutput out;
  out.estimate = std::move(estimate);
  out.model_error_l2 = w.norm();
  out.model_error_l1 = w.lpNorm<1>();
  out.model_error_l2_unscaled =
      model::rescale_model(w, ts.design.column_norms, ts.n).norm();
  out.nonzero_count = count_nonzeros(out.estimate);
  out.solver = std::move(lpres);
  return out;
}

}  // namespace

L1FitResult l1_fit(const lp::ColumnView& cols, const Eigen::VectorXd& rhs,
                   const Tolerances& tol) {
  const int p = cols.ncols;
  lp::SimplexProblem sp;
  sp.cols = cols;
  sp.rhs = rhs;
  sp.vars.reserve(2 * p);
  for (int j = 0; j < p; ++j) sp.vars.push_back({j, 1.0, 0.0, kInf, 1.0});
  for (int j = 0; j < p; ++j) sp.vars.push_back({j, -1.0, 0.0, kInf, 1.0});

  L1FitResult res;
  res.lp = lp::simplex_solve(sp, tol);
  res.coefficients.resize(p);
  for (int j = 0; j < p; ++j)
    res.coefficients[j] = res.lp.solution[j] - res.lp.solution[p + j];
  return res;
}

L1FitResult l1_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& rhs,
                   const Tolerances& tol) {
  lp::ColumnView cols{X.data(), static_cast<int>(X.rows()),
                      static_cast<int>(X.outerStride()),
                      static_cast<int>(X.cols())};
  return l1_fit(cols, rhs, tol);
}

InterpolatorOutput basis_pursuit(const model::TrainingSet& ts,
                                 const Tolerances& tol) {
  if (ts.p <= ts.n)
    throw RegimeViolation("basis_pursuit: requires p > n");
  L1FitResult fit = l1_fit(ts.design.columns, ts.observations, tol);
  if (fit.lp.status == lp::Status::infeasible)
    throw RankDeficient("basis_pursuit: interpolation constraints infeasible");
  Eigen::VectorXd beta = sparsify(fit.coefficients, ts, tol);
  Eigen::VectorXd w = beta - ts.truth.beta_scaled;
  return make_output(ts, std::move(beta), w, std::move(fit.lp));
}

Eigen::VectorXd sparsify(const Eigen::VectorXd& estimate,
                         const model::TrainingSet& ts, const Tolerances& tol) {
  const Eigen::MatrixXd& X = ts.design.columns;
  const Eigen::VectorXd& y = ts.observations;
  const double yscale = 1.0 + y.cwiseAbs().maxCoeff();

  Eigen::VectorXd x = estimate;
  const auto residual = [&] {
    return (X * x - y).cwiseAbs().maxCoeff();
  };
  if (residual() > tol.sparsify_residual * yscale)
    throw FeasibilityLost("sparsify: input does not interpolate");

  for (;;) {
    std::vector<int> support;
    for (int i = 0; i < ts.p; ++i)
      if (x[i] != 0.0) support.push_back(i);
    if (static_cast<int>(support.size()) <= ts.n) break;

    Eigen::MatrixXd sub(ts.n, support.size());
    for (std::size_t k = 0; k < support.size(); ++k)
      sub.col(k) = X.col(support[k]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    Eigen::MatrixXd kernel = lu.kernel();
    if (kernel.cols() == 0 || kernel.col(0).cwiseAbs().maxCoeff() == 0.0)
      throw NumericalBreakdown("sparsify: no null direction found");
    Eigen::VectorXd c = kernel.col(0);
    Eigen::Index pivot = 0;
    c.cwiseAbs().maxCoeff(&pivot);
    c /= c[pivot];

    // Sign-preserving interval [lb, ub] for x + lambda*c on the support.
    // Support entries are nonzero, so every root -x_k/c_k is nonzero; an
    // empty side keeps the paper's default endpoint 0.
    double lb = 0.0, ub = 0.0;
    bool has_lb = false, has_ub = false;
    int lb_vanish = -1, ub_vanish = -1;
    for (std::size_t k = 0; k < support.size(); ++k) {
      if (c[k] == 0.0) continue;
      const double root = -x[support[k]] / c[k];
      if (root < 0.0) {
        if (!has_lb || root > lb) {
          lb = root;
          lb_vanish = static_cast<int>(k);
          has_lb = true;
        }
      } else if (!has_ub || root < ub) {
        ub = root;
        ub_vanish = static_cast<int>(k);
        has_ub = true;
      }
    }

    double slope = 0.0;
    for (std::size_t k = 0; k < support.size(); ++k)
      slope += c[k] * (x[support[k]] > 0.0 ? 1.0 : (x[support[k]] < 0.0 ? -1.0 : 0.0));

    double lambda;
    int vanish;
    if (slope > 1e-12) {
      lambda = lb;
      vanish = lb_vanish;
    } else if (slope < -1e-12) {
      lambda = ub;
      vanish = ub_vanish;
    } else {
      // Flat l1 along the interval: prefer the endpoint zeroing the lowest
      // original index.
      const int lb_idx = lb_vanish >= 0 ? support[lb_vanish] : ts.p;
      const int ub_idx = ub_vanish >= 0 ? support[ub_vanish] : ts.p;
      if (lb_idx <= ub_idx) {
        lambda = lb;
        vanish = lb_vanish;
      } else {
        lambda = ub;
        vanish = ub_vanish;
      }
    }
    if (vanish < 0)
      throw NumericalBreakdown("sparsify: unbounded sign interval");

    for (std::size_t k = 0; k < support.size(); ++k)
      x[support[k]] += lambda * c[k];
    x[support[vanish]] = 0.0;
    for (std::size_t k = 0; k < support.size(); ++k)
      if (std::abs(x[support[k]]) < 1e-14 * yscale) x[support[k]] = 0.0;

    if (residual() > tol.sparsify_residual * yscale)
      throw FeasibilityLost("sparsify: residual drift exceeded tolerance");
  }
  return x;
}

InterpolatorOutput noise_interpolator(const model::TrainingSet& ts,
                                      const Tolerances& tol) {
  if (ts.p - ts.s < ts.n)
    throw RegimeViolation("noise_interpolator: requires p - s >= n");
  const int off = ts.p - ts.s;
  lp::ColumnView cols{ts.design.columns.col(ts.s).data(), ts.n,
                      static_cast<int>(ts.design.columns.outerStride()), off};
  L1FitResult fit = l1_fit(cols, ts.noise.values, tol);
  if (fit.lp.status == lp::Status::infeasible)
    throw RankDeficient("noise_interpolator: off-support columns rank deficient");

  Eigen::VectorXd w = Eigen::VectorXd::Zero(ts.p);
  w.tail(off) = fit.coefficients;
  // Multipliers in the convention of the noise-fitting dual: maximize
  // lambda'(-eps) subject to |lambda' A_i| <= 1.
  fit.lp.dual_multipliers = -fit.lp.dual_multipliers;
  return make_output(ts, w, w, std::move(fit.lp));
}

InterpolatorOutput min_l2_overfit(const model::TrainingSet& ts,
                                  const Tolerances& tol) {
  if (ts.p < ts.n) throw RegimeViolation("min_l2_overfit: requires p >= n");
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(
      ts.design.columns);
  if (cod.rank() < ts.n)
    throw RankDeficient("min_l2_overfit: design is row rank deficient");
  Eigen::VectorXd beta = cod.solve(ts.observations);

  lp::SolveResult info;
  info.status = lp::Status::optimal;
  info.iterations = 0;
  info.dual_multipliers = Eigen::VectorXd::Zero(ts.n);
  info.duality_gap = 0.0;
  info.primal_residual =
      (ts.design.columns * beta - ts.observations).cwiseAbs().maxCoeff();
  if (info.primal_residual >
      tol.bounds * (1.0 + ts.observations.cwiseAbs().maxCoeff()))
    throw NumericalBreakdown("min_l2_overfit: interpolation residual too large");
  info.objective_value = beta.squaredNorm();

  Eigen::VectorXd w = beta - ts.truth.beta_scaled;
  return make_output(ts, std::move(beta), w, std::move(info));
}

InterpolatorOutput min_mse(const model::TrainingSet& ts, const Tolerances&) {
  if (ts.p >= ts.n) throw RegimeViolation("min_mse: requires p < n");
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(
      ts.design.columns);
  Eigen::VectorXd beta = cod.solve(ts.observations);

  lp::SolveResult info;
  info.status = lp::Status::optimal;
  info.iterations = 0;
  info.dual_multipliers = Eigen::VectorXd::Zero(ts.n);
  info.duality_gap = 0.0;
  info.primal_residual =
      (ts.design.columns.transpose() * (ts.design.columns * beta - ts.observations))
          .cwiseAbs()
          .maxCoeff();
  info.objective_value = (ts.design.columns * beta - ts.observations).squaredNorm();

  Eigen::VectorXd w = beta - ts.truth.beta_scaled;
  return make_output(ts, std::move(beta), w, std::move(info));
}

double dual_value_wI(const model::TrainingSet& ts,
                     const Eigen::VectorXd& multipliers, const Tolerances&) {
  if (multipliers.size() != ts.n)
    throw DimensionMismatch("dual_value_wI: multiplier length != n");
  const int off = ts.p - ts.s;
  std::vector<double> t(off, 0.0);
  if (off > 0)
    kernels::panel_dots(ts.design.columns.col(ts.s).data(),
                        static_cast<int>(ts.design.columns.outerStride()), ts.n,
                        off, multipliers.data(), t.data());
  double worst = 0.0;
  long worst_index = -1;
  for (int i = 0; i < off; ++i) {
    const double violation = std::abs(t[i]) - 1.0;
    if (violation > worst) {
      worst = violation;
      worst_index = i;
    }
  }
  if (worst > 1e-8)
    throw FeasibilityError("dual_value_wI: |lambda' A_i| exceeds 1 at "
                           "off-support column " + std::to_string(worst_index),
                           worst_index);
  return multipliers.dot(-ts.noise.values);
}

double brute_force_l1(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                      int fixed_zero_prefix, const Tolerances& tol) {
  const int n = static_cast<int>(X.rows());
  const int p = static_cast<int>(X.cols());
  if (n > 4 || p > 8)
    throw Intractable("brute_force_l1: guard rails n <= 4, p <= 8");
  if (fixed_zero_prefix < 0 || fixed_zero_prefix > p)
    throw std::invalid_argument("brute_force_l1: bad prefix");

  const double yscale = 1.0 + y.cwiseAbs().maxCoeff();
  const int allowed = p - fixed_zero_prefix;
  if (allowed == 0) {
    if (y.cwiseAbs().maxCoeff() <= 1e-12 * yscale) return 0.0;
    throw NoFeasibleBasis("brute_force_l1: no columns available");
  }
  const int k = std::min(n, allowed);

  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = fixed_zero_prefix + i;
  double best = kInf;
  for (;;) {
    Eigen::MatrixXd sub(n, k);
    for (int i = 0; i < k; ++i) sub.col(i) = X.col(idx[i]);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sub);
    Eigen::VectorXd z = cod.solve(y);
    if ((sub * z - y).cwiseAbs().maxCoeff() <= 1e-9 * yscale)
      best = std::min(best, z.lpNorm<1>());

    // next combination
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == p - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  if (!std::isfinite(best))
    throw NoFeasibleBasis("brute_force_l1: no subset spans y");
  (void)tol;
  return best;
}

}  // namespace bpdd::solvers
