#include "bpdd/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>

#include "bpdd/errors.hpp"
#include "bpdd/kernels.hpp"
#include "bpdd/thread_pool.hpp"

namespace bpdd::bounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct BlockRange {
  int begin;
  int count;
};

std::vector<BlockRange> make_blocks(int total, int block) {
  std::vector<BlockRange> out;
  for (int b = 0; b < total; b += block)
    out.push_back({b, std::min(block, total - b)});
  return out;
}

/// Max |C_ij| over a computed block product, excluding the global diagonal.
double reduce_absmax(const std::vector<double>& C, int na, int nb, int gi0,
                     int gj0) {
  double best = 0.0;
  for (int j = 0; j < nb; ++j) {
    for (int i = 0; i < na; ++i) {
      if (gi0 + i == gj0 + j) continue;
      best = std::max(best, std::abs(C[i + static_cast<std::size_t>(j) * na]));
    }
  }
  return best;
}

double atomic_max(std::atomic<double>& target, double value) {
  double cur = target.load();
  while (value > cur && !target.compare_exchange_weak(cur, value)) {
  }
  return value;
}

}  // namespace

double incoherence(const model::NormalizedDesign& design, int block) {
  const int p = design.p();
  const int n = design.n();
  if (p < 2) throw std::invalid_argument("incoherence: requires p >= 2");
  if (block < 1) block = 128;

  const auto blocks = make_blocks(p, block);
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t a = 0; a < blocks.size(); ++a)
    for (std::size_t b = a; b < blocks.size(); ++b)
      pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));

  const double* data = design.columns.data();
  const int ld = static_cast<int>(design.columns.outerStride());
  std::atomic<double> best{0.0};
  util::parallel_for(static_cast<int>(pairs.size()), [&](int t) {
    const BlockRange bi = blocks[pairs[t].first];
    const BlockRange bj = blocks[pairs[t].second];
    std::vector<double> C(static_cast<std::size_t>(bi.count) * bj.count);
    kernels::gram_block(data + static_cast<std::size_t>(bi.begin) * ld, ld,
                        bi.count, data + static_cast<std::size_t>(bj.begin) * ld,
                        ld, bj.count, n, C.data());
    atomic_max(best, reduce_absmax(C, bi.count, bj.count, bi.begin, bj.begin));
  });
  return best.load();
}

double incoherence_streaming(
    int n, int p,
    const std::function<void(int col0, int count, double* out)>& fill_columns,
    int block, int panel_cols) {
  if (p < 2) throw std::invalid_argument("incoherence: requires p >= 2");
  if (block < 1) block = 128;
  panel_cols = std::max(panel_cols, block);

  std::atomic<double> best{0.0};
  std::vector<double> panel(static_cast<std::size_t>(n) * panel_cols);
  for (int j0 = 0; j0 < p; j0 += panel_cols) {
    const int jc = std::min(panel_cols, p - j0);
    fill_columns(j0, jc, panel.data());
    const auto jblocks = make_blocks(jc, block);

    // Pairs inside the resident panel.
    for (std::size_t a = 0; a < jblocks.size(); ++a) {
      for (std::size_t b = a; b < jblocks.size(); ++b) {
        const BlockRange bi = jblocks[a];
        const BlockRange bj = jblocks[b];
        std::vector<double> C(static_cast<std::size_t>(bi.count) * bj.count);
        kernels::gram_block(panel.data() + static_cast<std::size_t>(bi.begin) * n,
                            n, bi.count,
                            panel.data() + static_cast<std::size_t>(bj.begin) * n,
                            n, bj.count, n, C.data());
        atomic_max(best, reduce_absmax(C, bi.count, bj.count, j0 + bi.begin,
                                       j0 + bj.begin));
      }
    }

    // Earlier columns against the resident panel, regenerated block-wise.
    const auto iblocks = make_blocks(j0, block);
    util::parallel_for(static_cast<int>(iblocks.size()), [&](int t) {
      const BlockRange bi = iblocks[t];
      std::vector<double> ibuf(static_cast<std::size_t>(n) * bi.count);
      fill_columns(bi.begin, bi.count, ibuf.data());
      std::vector<double> C;
      for (const BlockRange& bj : jblocks) {
        C.assign(static_cast<std::size_t>(bi.count) * bj.count, 0.0);
        kernels::gram_block(ibuf.data(), n, bi.count,
                            panel.data() + static_cast<std::size_t>(bj.begin) * n,
                            n, bj.count, n, C.data());
        atomic_max(best, reduce_absmax(C, bi.count, bj.count, bi.begin,
                                       j0 + bj.begin));
      }
    });
  }
  return best.load();
}

double k_factor(double M, int s) {
  if (s < 1) throw BadSparsity("k_factor: s >= 1");
  if (M <= 1e-15)
    throw DegenerateIncoherence("k_factor: M is numerically zero, K unbounded");
  return (1.0 + M) / (s * M) - 4.0;
}

CorrelationOrder sorted_noise_correlations(const model::TrainingSet& ts, int q) {
  const int off = ts.p - ts.s;
  if (q < 1 || q > off)
    throw BadQ("sorted_noise_correlations: need 1 <= q <= p - s");

  std::vector<double> t(off, 0.0);
  kernels::panel_dots(ts.design.columns.col(ts.s).data(),
                      static_cast<int>(ts.design.columns.outerStride()), ts.n,
                      off, ts.noise.values.data(), t.data());

  std::vector<int> order(off);
  std::iota(order.begin(), order.end(), 0);
  const auto better = [&](int a, int b) {
    const double va = std::abs(t[a]);
    const double vb = std::abs(t[b]);
    if (va != vb) return va > vb;
    return a < b;  // deterministic tie-break
  };
  std::partial_sort(order.begin(), order.begin() + q, order.end(), better);

  CorrelationOrder out;
  out.q = q;
  out.indices.resize(q);
  out.signs.resize(q);
  out.inner_products.resize(q);
  for (int k = 0; k < q; ++k) {
    const int i = order[k];
    out.indices[k] = ts.s + i;
    // B_i = A_i when A_i'(-eps) >= 0; the inner product with -eps is |t_i|
    // because t_i = A_i' eps.
    out.signs[k] = (-t[i] >= 0.0) ? 1.0 : -1.0;
    out.inner_products[k] = std::abs(t[i]);
  }
  return out;
}

double detail_bound_constant() {
  constexpr double pi = 3.14159265358979323846;
  return 0.2 * (1.0 - std::exp(-0.5)) * std::sqrt(2.0 / pi);
}

const std::vector<std::string>& bound_identifiers() {
  static const std::vector<std::string> ids = {
      "main_ub_wBP2",   "floor_ub_wBP2", "lb_wBP2",
      "prop1_ub_wBP1",  "prop2_ub_wBP2", "cor3_ub_wBP2",
      "prop4_ub_wI1",   "prop4d_ub_wI1", "prop5_ub_M",
      "lb_M",           "lb_wI1",        "ub_wBP1",
      "lb_wBP1",        "l2_expected_sq_error",
      "emp_lb_wI1_B1",  "emp_ub_wI1_B5n"};
  return ids;
}

namespace {

struct Eval {
  const BoundParams& p;

  double need(const std::optional<double>& v, const char* name) const {
    if (!v) throw MissingParam(std::string("eval_bound: missing ") + name);
    return *v;
  }
  double n() const { return need(p.n, "n"); }
  double pp() const { return need(p.p, "p"); }
  double s() const { return need(p.s, "s"); }
  double eps() const { return need(p.eps_norm, "eps_norm"); }
  double M() const { return need(p.M, "M"); }
  double K() const { return need(p.K, "K"); }
  double wI() const { return need(p.wI_l1, "wI_l1"); }
  double wBP1() const { return need(p.wBP_l1, "wBP_l1"); }
};

bool theorem_regime(double n, double p, double s) {
  const double lim = std::sqrt(n / (7168.0 * std::log(16.0 * n)));
  return s >= 1.0 && s <= lim && std::log(p) >= 4.0 * std::log(16.0 * n) &&
         std::log(p) <= n / (1792.0 * s * s);
}

bool small_p_regime(double n, double p) {
  // p <= e^{(n-1)/16} / n, n >= 17
  return n >= 17.0 && std::log(p) <= (n - 1.0) / 16.0 - std::log(n);
}

BoundValue not_evaluable(BoundValue v, const std::string& why) {
  v.evaluable = false;
  v.value = std::numeric_limits<double>::quiet_NaN();
  v.note = why;
  return v;
}

}  // namespace

BoundValue eval_bound(const std::string& id, const BoundParams& params) {
  const Eval in{params};
  BoundValue v;
  v.source = "closed-form";
  v.evaluable = true;

  if (id == "main_ub_wBP2") {
    v.kind = BoundKind::upper;
    v.target = "wBP_l2_over_eps";
    const double n = in.n(), p = in.pp(), s = in.s();
    v.regime_ok = theorem_regime(n, p, s);
    if (std::log(p) <= 0.0) return not_evaluable(v, "ln p <= 0");
    v.value = 2.0 + 8.0 * std::pow(7.0 * n / std::log(p), 0.25);
    return v;
  }
  if (id == "floor_ub_wBP2") {
    v.kind = BoundKind::upper;
    v.target = "wBP_l2_over_eps";
    const double n = in.n(), s = in.s();
    v.regime_ok =
        s >= 1.0 && s <= std::sqrt(n / (7168.0 * std::log(16.0 * n)));
    v.value = 2.0 + 32.0 * std::sqrt(14.0) * std::sqrt(s);
    return v;
  }
  if (id == "lb_wBP2") {
    v.kind = BoundKind::lower;
    v.target = "wBP_l2_over_eps";
    const double n = in.n(), p = in.pp(), s = in.s();
    v.regime_ok = small_p_regime(n, p) && n >= s;
    if (std::log(p) <= 0.0) return not_evaluable(v, "ln p <= 0");
    v.value = (1.0 / (3.0 * std::sqrt(2.0))) / std::sqrt(std::log(p));
    return v;
  }
  if (id == "prop1_ub_wBP1") {
    v.kind = BoundKind::upper;
    v.target = "wBP_l1";
    const double K = in.K(), M = in.M(), wI = in.wI(), eps = in.eps();
    v.regime_ok = K > 0.0;
    if (K <= 0.0) return not_evaluable(v, "K <= 0");
    if (M <= 0.0) return not_evaluable(v, "M <= 0");
    v.value = (1.0 + 8.0 / K + 2.0 / std::sqrt(K)) * wI +
              2.0 * eps / std::sqrt(K * M);
    return v;
  }
  if (id == "prop2_ub_wBP2") {
    v.kind = BoundKind::upper;
    v.target = "wBP_l2";
    const double M = in.M();
    if (M < 0.0) return not_evaluable(v, "M < 0");
    v.regime_ok = true;  // deterministic, no side conditions
    v.value = in.eps() + std::sqrt(M) * in.wBP1();
    return v;
  }
  if (id == "cor3_ub_wBP2") {
    v.kind = BoundKind::upper;
    v.target = "wBP_l2";
    const double K = in.K(), M = in.M(), wI = in.wI(), eps = in.eps();
    v.regime_ok = K > 0.0;
    if (K <= 0.0) return not_evaluable(v, "K <= 0");
    if (M < 0.0) return not_evaluable(v, "M < 0");
    v.value = (1.0 + 2.0 / std::sqrt(K)) * eps +
              std::sqrt(M) * (1.0 + 8.0 / K + 2.0 / std::sqrt(K)) * wI;
    return v;
  }
  if (id == "prop4_ub_wI1") {
    v.kind = BoundKind::upper;
    v.target = "wI_l1";
    const double n = in.n(), p = in.pp(), eps = in.eps();
    v.regime_ok = n >= 100.0 && std::log(p) >= 4.0 * std::log(16.0 * n);
    if (std::log(p) <= 0.0) return not_evaluable(v, "ln p <= 0");
    v.value = eps * std::sqrt(1.0 + 1.5 * n / std::log(p));
    return v;
  }
  if (id == "prop4d_ub_wI1") {
    v.kind = BoundKind::upper;
    v.target = "wI_l1";
    const double n = in.n(), p = in.pp(), s = in.s(), eps = in.eps();
    const double C = detail_bound_constant();
    v.regime_ok = (p - s) >= n * std::exp(9.0 / 8.0) / C;
    const double arg = C * (p - s) / n;
    if (arg <= 1.0) return not_evaluable(v, "ln(C(p-s)/n) <= 0");
    const double root = std::sqrt(2.0 * std::log(arg)) - 1.0;
    if (root == 0.0) return not_evaluable(v, "zero denominator");
    v.value = eps * std::sqrt(1.0 + (n + std::sqrt(2.0) * std::sqrt(n - 1.0)) /
                                        (root * root));
    return v;
  }
  if (id == "prop5_ub_M") {
    v.kind = BoundKind::upper;
    v.target = "M";
    const double n = in.n(), p = in.pp();
    v.regime_ok = std::log(p) <= n / 36.0;
    if (std::log(p) <= 0.0) return not_evaluable(v, "ln p <= 0");
    v.value = 2.0 * std::sqrt(7.0) * std::sqrt(std::log(p) / n);
    return v;
  }
  if (id == "lb_M") {
    v.kind = BoundKind::lower;
    v.target = "M";
    const double n = in.n(), p = in.pp();
    v.regime_ok =
        p > n && std::log(p / 2.0) < (2.0 - std::sqrt(3.0)) / 4.0 * n;
    if (std::log(p) <= 0.0) return not_evaluable(v, "ln p <= 0");
    v.value = std::sqrt(2.0) / 8.0 * std::sqrt(std::log(p) / n);
    return v;
  }
  if (id == "lb_wI1") {
    v.kind = BoundKind::lower;
    v.target = "wI_l1";
    const double n = in.n(), p = in.pp(), eps = in.eps();
    v.regime_ok = small_p_regime(n, p);
    if (std::log(p) <= 0.0) return not_evaluable(v, "ln p <= 0");
    v.value = eps * std::sqrt(1.0 + n / (9.0 * std::log(p)));
    return v;
  }
  if (id == "ub_wBP1") {
    v.kind = BoundKind::upper;
    v.target = "wBP_l1";
    const double n = in.n(), p = in.pp(), eps = in.eps();
    v.regime_ok = theorem_regime(n, p, in.s());
    if (std::log(p) <= 0.0) return not_evaluable(v, "ln p <= 0");
    v.value = (4.0 * std::sqrt(2.0) + std::sqrt(1.0 / (2.0 * std::sqrt(7.0)))) *
              std::sqrt(n / std::log(p)) * eps;
    return v;
  }
  if (id == "lb_wBP1") {
    v.kind = BoundKind::lower;
    v.target = "wBP_l1";
    const double n = in.n(), p = in.pp(), eps = in.eps();
    v.regime_ok = small_p_regime(n, p);
    if (std::log(p) <= 0.0) return not_evaluable(v, "ln p <= 0");
    v.value = std::sqrt(n / std::log(p)) * eps / 3.0;
    return v;
  }
  if (id == "l2_expected_sq_error") {
    v.kind = BoundKind::expectation;
    v.target = "wL2_sq_unscaled";
    const double n = in.n(), p = in.pp();
    const double beta = in.need(params.beta_norm, "beta_norm");
    const double sigma = in.need(params.sigma, "sigma");
    v.regime_ok = p >= n + 2.0;
    if (p - n - 1.0 <= 0.0) return not_evaluable(v, "p < n + 2");
    v.value = beta * beta * (1.0 - n / p) + sigma * sigma * n / (p - n - 1.0);
    return v;
  }
  if (id == "emp_lb_wI1_B1") {
    v.kind = BoundKind::lower;
    v.target = "wI_l1";
    v.source = "empirical-vector";
    const double eps = in.eps();
    const double B1 = in.need(params.B1, "B1");
    v.regime_ok = true;  // deterministic (weak duality)
    if (B1 <= 0.0) return not_evaluable(v, "B1'(-eps) <= 0");
    v.value = eps * eps / B1;
    return v;
  }
  if (id == "emp_ub_wI1_B5n") {
    v.kind = BoundKind::upper;
    v.target = "wI_l1";
    v.source = "empirical-vector";
    const double eps = in.eps();
    const double n = in.n(), p = in.pp(), s = in.s();
    v.regime_ok = (p - s) >= 5.0 * n;
    if (!params.B5n) return not_evaluable(v, "B_(5n) does not exist");
    if (*params.B5n <= 0.0) return not_evaluable(v, "B_(5n)'(-eps) <= 0");
    v.value = eps * eps / *params.B5n;
    return v;
  }
  throw std::invalid_argument("eval_bound: unknown identifier " + id);
}

RelaxedDualBound empirical_ub_wI1_lp(const model::TrainingSet& ts,
                                     const CorrelationOrder& order,
                                     const Tolerances& tol) {
  const int q = order.q;
  if (q < 1) throw BadQ("empirical_ub_wI1_lp: q >= 1");
  const int n = ts.n;

  // Equality form of: max lambda'(-eps) s.t. lambda'B_(i) <= 1.
  // Rows are the q constraints; columns are lambda (free) then slacks.
  Eigen::MatrixXd A(q, n + q);
  for (int i = 0; i < q; ++i)
    A.row(i).head(n) =
        order.signs[i] * ts.design.columns.col(order.indices[i]).transpose();
  A.rightCols(q) = Eigen::MatrixXd::Identity(q, q);

  lp::SimplexProblem sp;
  sp.cols = lp::ColumnView{A.data(), q, static_cast<int>(A.outerStride()),
                           n + q};
  sp.rhs = Eigen::VectorXd::Ones(q);
  sp.vars.reserve(n + q);
  for (int j = 0; j < n; ++j)
    sp.vars.push_back({j, 1.0, -kInf, kInf, ts.noise.values[j]});
  for (int i = 0; i < q; ++i) sp.vars.push_back({n + i, 1.0, 0.0, kInf, 0.0});

  RelaxedDualBound out;
  out.lp = lp::simplex_solve(sp, tol);
  if (out.lp.status == lp::Status::unbounded) {
    out.unbounded = true;
    out.value = kInf;
  } else {
    out.value = -out.lp.objective_value;
  }
  return out;
}

BoundLedger bound_ledger(const model::TrainingSet& ts, const LedgerInputs& in,
                         const Tolerances& tol) {
  BoundLedger ledger;
  BoundParams params;
  params.n = ts.n;
  params.p = ts.p;
  params.s = ts.s;
  params.beta_norm = ts.truth.beta_norm;
  params.sigma = ts.noise.level;  // exact-norm level doubles as sigma

  const double eps_norm = ts.noise.values.norm();
  params.eps_norm = eps_norm;
  ledger.exact["eps_norm"] = eps_norm;

  if (in.with_incoherence && ts.p >= 2) {
    const double M = incoherence(ts.design);
    params.M = M;
    ledger.exact["M"] = M;
    try {
      params.K = k_factor(M, ts.s);
    } catch (const DegenerateIncoherence&) {
      params.K = kInf;  // unbounded-favorable
    }
    ledger.exact["K"] = *params.K;
  }

  if (in.bp) {
    params.wBP_l1 = in.bp->model_error_l1;
    ledger.exact["wBP_l1"] = in.bp->model_error_l1;
    ledger.exact["wBP_l2"] = in.bp->model_error_l2;
    ledger.exact["wBP_l2_unscaled"] = in.bp->model_error_l2_unscaled;
    if (eps_norm > 0.0)
      ledger.exact["wBP_l2_over_eps"] = in.bp->model_error_l2 / eps_norm;
  }
  if (in.wI) {
    params.wI_l1 = in.wI->model_error_l1;
    ledger.exact["wI_l1"] = in.wI->model_error_l1;
  }
  if (in.min_l2) {
    ledger.exact["wL2_l2"] = in.min_l2->model_error_l2;
    ledger.exact["wL2_l2_unscaled"] = in.min_l2->model_error_l2_unscaled;
    ledger.exact["wL2_sq_unscaled"] =
        in.min_l2->model_error_l2_unscaled * in.min_l2->model_error_l2_unscaled;
  }

  std::optional<CorrelationOrder> order;
  const int off = ts.p - ts.s;
  if (eps_norm > 0.0 && off >= 1) {
    const int q_want = in.q > 0 ? in.q : 5 * ts.n;
    const int q = std::min(q_want, off);
    order = sorted_noise_correlations(ts, q);
    params.B1 = order->inner_products[0];
    ledger.exact["B1"] = *params.B1;
    if (q >= 5 * ts.n) {
      params.B5n = order->inner_products[5 * ts.n - 1];
      ledger.exact["B5n"] = *params.B5n;
    }
  }

  for (const std::string& id : bound_identifiers()) {
    BoundValue v;
    try {
      v = eval_bound(id, params);
    } catch (const MissingParam& e) {
      v.evaluable = false;
      v.value = std::numeric_limits<double>::quiet_NaN();
      v.note = e.what();
    }
    ledger.entries[id] = v;
  }

  {
    BoundValue v;
    v.kind = BoundKind::upper;
    v.target = "wI_l1";
    v.source = "empirical-LP";
    if (!order || !in.with_lp) {
      v.evaluable = false;
      v.value = std::numeric_limits<double>::quiet_NaN();
      v.note = order ? "disabled" : "noise-free instance";
    } else {
      RelaxedDualBound rb = empirical_ub_wI1_lp(ts, *order, tol);
      v.evaluable = true;
      v.unbounded = rb.unbounded;
      v.value = rb.value;
      v.regime_ok = true;  // relaxation of the dual, deterministic when bounded
    }
    ledger.entries["empirical_ub_wI1_lp"] = v;
  }

  return ledger;
}

}  // namespace bpdd::bounds
