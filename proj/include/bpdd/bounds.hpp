#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bpdd/model_gen.hpp"
#include "bpdd/simplex.hpp"
#include "bpdd/solvers.hpp"
#include "bpdd/tolerances.hpp"

namespace bpdd::bounds {

/// Largest absolute inner product between distinct columns, computed exactly
/// with a blocked scan (memory O(n*block + block^2) beyond the design).
double incoherence(const model::NormalizedDesign& design, int block = 128);

/// Streaming variant for designs too large to materialize: `fill_columns`
/// must write the normalized columns [col0, col0+count) column-major into
/// `out`. Bit-identical to the in-memory scan for the same block size.
double incoherence_streaming(
    int n, int p,
    const std::function<void(int col0, int count, double* out)>& fill_columns,
    int block = 128, int panel_cols = 1024);

/// K = (1+M)/(sM) - 4. Throws DegenerateIncoherence when M <= 1e-15.
double k_factor(double M, int s);

/// Off-support columns sign-corrected toward -noise and ordered by their
/// inner product with -noise (descending); the top q are retained.
struct CorrelationOrder {
  std::vector<int> indices;        // global column indices, best first
  std::vector<double> signs;       // +1 if the column itself points to -eps
  Eigen::VectorXd inner_products;  // descending, non-negative
  int q = 0;
};
CorrelationOrder sorted_noise_correlations(const model::TrainingSet& ts, int q);

enum class BoundKind { upper, lower, expectation };

struct BoundValue {
  double value = 0.0;
  BoundKind kind = BoundKind::upper;
  std::string target;   // wI_l1 | wBP_l1 | wBP_l2 | wBP_l2_over_eps | M | wL2_sq_unscaled
  std::string source;   // closed-form | empirical-LP | empirical-vector
  bool evaluable = false;
  bool unbounded = false;  // relaxed-LP hemisphere case
  bool regime_ok = false;  // the bound's stated preconditions hold
  std::string note;        // reason when not evaluable
};

/// Inputs a bound formula may read. eval_bound throws MissingParam when a
/// required symbol is absent; domain violations (ln p <= 0, K <= 0 where K is
/// needed, negative sqrt arguments) yield a not-evaluable entry instead.
struct BoundParams {
  std::optional<double> n, p, s;
  std::optional<double> eps_norm;
  std::optional<double> M, K;
  std::optional<double> wI_l1, wBP_l1;
  std::optional<double> B1, B5n;
  std::optional<double> beta_norm, sigma;
};

BoundValue eval_bound(const std::string& id, const BoundParams& params);

/// Stable identifier spellings, in ledger order.
const std::vector<std::string>& bound_identifiers();

/// The constant of the detailed noise-interpolator bound,
/// (1/5)(1 - e^{-1/2}) sqrt(2/pi).
double detail_bound_constant();

struct RelaxedDualBound {
  bool unbounded = false;
  double value = 0.0;
  lp::SolveResult lp;
};

/// Optimal value of: maximize lambda'(-noise) s.t. lambda'B_(i) <= 1 for the
/// q retained columns. A relaxation of the noise-interpolator dual, hence an
/// upper bound on ||w_I||_1 whenever bounded; unbounded when the retained
/// columns leave an open escape direction (hemisphere event).
RelaxedDualBound empirical_ub_wI1_lp(const model::TrainingSet& ts,
                                     const CorrelationOrder& order,
                                     const Tolerances& tol = default_tolerances());

struct BoundLedger {
  std::map<std::string, BoundValue> entries;
  std::map<std::string, double> exact;  // exact quantities alongside
};

struct LedgerInputs {
  const solvers::InterpolatorOutput* bp = nullptr;
  const solvers::InterpolatorOutput* wI = nullptr;
  const solvers::InterpolatorOutput* min_l2 = nullptr;
  int q = 0;                   // retained correlations; 0 means min(5n, p-s)
  bool with_lp = true;         // evaluate the relaxed-LP bound
  bool with_incoherence = true;  // run the quadratic M scan
};

/// Evaluates every identifier (plus empirical_ub_wI1_lp) on one instance;
/// per-entry failures are recorded in the entry, never thrown.
BoundLedger bound_ledger(const model::TrainingSet& ts, const LedgerInputs& in,
                         const Tolerances& tol = default_tolerances());

}  // namespace bpdd::bounds
