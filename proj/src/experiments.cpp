#include "bpdd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bpdd/errors.hpp"
#include "bpdd/rng.hpp"
#include "bpdd/solvers.hpp"
#include "bpdd/thread_pool.hpp"

namespace bpdd::experiments {

namespace {

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::vector<int> logspace_int(double lo, double hi, int count) {
  std::vector<int> out;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : double(i) / (count - 1);
    const int v = static_cast<int>(std::llround(
        std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))));
    if (out.empty() || v > out.back()) out.push_back(v);
  }
  return out;
}

QuantityStats summarize(std::vector<double> samples) {
  QuantityStats s;
  s.count = static_cast<int>(samples.size());
  if (samples.empty()) return s;
  double sum = 0.0;
  for (double v : samples) sum += v;
  s.mean = sum / samples.size();
  std::sort(samples.begin(), samples.end());
  const auto quantile = [&](double alpha) {
    const double h = alpha * (samples.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    const double frac = h - lo;
    if (lo + 1 >= samples.size()) return samples.back();
    return samples[lo] + frac * (samples[lo + 1] - samples[lo]);
  };
  s.q10 = quantile(0.10);
  s.median = quantile(0.50);
  s.q90 = quantile(0.90);
  return s;
}

const std::map<std::string, std::string>& bound_exact_key() {
  static const std::map<std::string, std::string> m = {
      {"wI_l1", "wI_l1"},
      {"wBP_l1", "wBP_l1"},
      {"wBP_l2", "wBP_l2"},
      {"wBP_l2_over_eps", "wBP_l2_over_eps"},
      {"M", "M"},
      {"wL2_sq_unscaled", "wL2_sq_unscaled"}};
  return m;
}

bool needs_incoherence(const std::vector<std::string>& ids) {
  for (const std::string& id : ids)
    if (id == "prop1_ub_wBP1" || id == "prop2_ub_wBP2" ||
        id == "cor3_ub_wBP2" || id == "prop5_ub_M" || id == "lb_M")
      return true;
  return false;
}

}  // namespace

std::uint64_t instance_seed(const SweepSpec& spec, int variant_idx, int n_idx,
                            int p_idx, int trial) {
  const std::uint64_t preset_hash =
      fnv1a64(spec.figure_preset.empty() ? "adhoc" : spec.figure_preset);
  const std::uint64_t ctx =
      rng::stream_id(preset_hash, static_cast<std::uint64_t>(variant_idx),
                     static_cast<std::uint64_t>(n_idx),
                     spec.nested_p ? 0ull : static_cast<std::uint64_t>(p_idx) + 1);
  return rng::stream_id(spec.base_seed, ctx, static_cast<std::uint64_t>(trial),
                        0x5EEDull);
}

CellStats run_cell(const SweepSpec& spec, int variant_idx, int n_idx, int p_idx,
                   const Tolerances& tol) {
  const VariantConfig& vc = spec.variants.at(variant_idx);
  const int n = spec.n_values.at(n_idx);
  const int p = spec.p_values.at(p_idx);

  CellStats cell;
  cell.variant = vc.label;
  cell.n = n;
  cell.p = p;
  cell.s = vc.s;
  cell.beta_norm = vc.beta_norm;
  cell.noise_level = vc.noise_level;
  cell.trial_count = spec.trials;

  const bool want_bp = spec.estimators.count("bp") > 0 && p > n;
  const bool want_l2 = spec.estimators.count("min_l2") > 0 && p >= n;
  const bool want_wI = spec.estimators.count("wI") > 0 && p - vc.s >= n;
  const bool want_mse = (spec.estimators.count("min_mse") > 0 ||
                         (spec.min_mse_below_n && spec.estimators.count("bp"))) &&
                        p < n;
  const bool want_ledger = !spec.bounds.empty();

  std::map<std::string, std::vector<double>> samples;
  const auto record = [&](const std::string& key, double v) {
    if (std::isfinite(v)) samples[key].push_back(v);
  };

  for (int trial = 0; trial < spec.trials; ++trial) {
    const std::uint64_t seed =
        instance_seed(spec, variant_idx, n_idx, p_idx, trial);
    try {
      model::TrainingSet ts = model::generate_training(
          n, p, vc.s, vc.beta_norm, vc.noise_mode, vc.noise_level, seed);

      std::optional<solvers::InterpolatorOutput> bp, wI, l2, mse;
      if (want_bp) bp = solvers::basis_pursuit(ts, tol);
      if (want_wI) wI = solvers::noise_interpolator(ts, tol);
      if (want_l2) l2 = solvers::min_l2_overfit(ts, tol);
      if (want_mse) mse = solvers::min_mse(ts, tol);

      const double eps_norm = ts.noise.values.norm();
      record("exact_eps_norm", eps_norm);
      if (bp) {
        record("exact_wBP_l1", bp->model_error_l1);
        record("exact_wBP_l2", bp->model_error_l2);
        record("exact_wBP_l2_unscaled", bp->model_error_l2_unscaled);
        record("exact_wBP_nnz", bp->nonzero_count);
        if (eps_norm > 0)
          record("exact_wBP_l2_over_eps", bp->model_error_l2 / eps_norm);
      }
      if (wI) record("exact_wI_l1", wI->model_error_l1);
      if (l2) {
        record("exact_wL2_l2", l2->model_error_l2);
        record("exact_wL2_l2_unscaled", l2->model_error_l2_unscaled);
        record("exact_wL2_sq_unscaled",
               l2->model_error_l2_unscaled * l2->model_error_l2_unscaled);
      }
      if (mse) {
        record("exact_wMSE_l2", mse->model_error_l2);
        record("exact_wMSE_l2_unscaled", mse->model_error_l2_unscaled);
      }
      if (bp)
        record("exact_model_l2", bp->model_error_l2);
      else if (mse)
        record("exact_model_l2", mse->model_error_l2);

      if (want_ledger) {
        bounds::LedgerInputs in;
        in.bp = bp ? &*bp : nullptr;
        in.wI = wI ? &*wI : nullptr;
        in.min_l2 = l2 ? &*l2 : nullptr;
        in.q = spec.q_factor * n;
        in.with_lp = std::count(spec.bounds.begin(), spec.bounds.end(),
                                "empirical_ub_wI1_lp") > 0;
        in.with_incoherence = needs_incoherence(spec.bounds);
        bounds::BoundLedger ledger = bounds::bound_ledger(ts, in, tol);
        if (ledger.exact.count("M")) record("exact_M", ledger.exact["M"]);
        if (ledger.exact.count("K")) record("exact_K", ledger.exact["K"]);

        for (const std::string& id : spec.bounds) {
          const auto it = ledger.entries.find(id);
          if (it == ledger.entries.end()) continue;
          const bounds::BoundValue& bv = it->second;
          if (!bv.evaluable) continue;
          cell.bound_evaluated[id] += bv.unbounded ? 0 : 1;
          if (bv.unbounded) continue;
          record(id, bv.value);
          const auto key_it = bound_exact_key().find(bv.target);
          if (key_it == bound_exact_key().end()) continue;
          const auto exact_it = ledger.exact.find(key_it->second);
          if (exact_it == ledger.exact.end()) continue;
          const double exact = exact_it->second;
          const double slack = 1e-9 * (1.0 + std::abs(bv.value));
          bool violated = false;
          if (bv.kind == bounds::BoundKind::upper)
            violated = exact > bv.value + slack;
          else if (bv.kind == bounds::BoundKind::lower)
            violated = exact < bv.value - slack;
          if (violated) cell.violations[id] += 1;
        }
      }
    } catch (const std::exception&) {
      ++cell.failed_trials;
    }
  }

  for (auto& [key, vec] : samples)
    cell.quantities[key] = summarize(std::move(vec));
  for (const std::string& id : spec.bounds) {
    cell.violations.try_emplace(id, 0);
    cell.bound_evaluated.try_emplace(id, 0);
  }
  return cell;
}

std::vector<CellStats> sweep(const SweepSpec& spec, const Tolerances& tol) {
  if (spec.trials < 1) throw std::invalid_argument("sweep: trials >= 1");
  if (spec.variants.empty()) throw std::invalid_argument("sweep: no variants");
  if (!std::is_sorted(spec.p_values.begin(), spec.p_values.end()))
    throw std::invalid_argument("sweep: p_values must be ascending");

  struct Task {
    int v, n, p;
  };
  std::vector<Task> tasks;
  for (int v = 0; v < static_cast<int>(spec.variants.size()); ++v)
    for (int n = 0; n < static_cast<int>(spec.n_values.size()); ++n)
      for (int p = 0; p < static_cast<int>(spec.p_values.size()); ++p)
        tasks.push_back({v, n, p});

  std::vector<CellStats> cells(tasks.size());
  util::parallel_for(static_cast<int>(tasks.size()), [&](int i) {
    cells[i] = run_cell(spec, tasks[i].v, tasks[i].n, tasks[i].p, tol);
  });
  return cells;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "fig_wI",           "fig_M",       "fig_WB",        "fig_change_n",
      "fig_change_noise", "fig_compare", "fig_validate_n"};
  return names;
}

SweepSpec figure_preset(const std::string& name) {
  SweepSpec spec;
  spec.figure_preset = name;

  if (name == "fig_wI") {
    spec.n_values = {20};
    spec.p_values = logspace_int(101, 20001, 14);
    spec.variants = {{1, 1.0, model::NoiseMode::exact_norm, 0.01, "s1"}};
    spec.trials = 50;
    spec.estimators = {"wI"};
    spec.bounds = {"prop4d_ub_wI1", "emp_ub_wI1_B5n", "empirical_ub_wI1_lp",
                   "emp_lb_wI1_B1"};
    spec.nested_p = true;
    return spec;
  }
  if (name == "fig_M") {
    spec.n_values = {300, 1200};
    spec.p_values = logspace_int(1e3, 1e5, 5);
    spec.variants = {{1, 1.0, model::NoiseMode::exact_norm, 0.01, "s1"}};
    spec.trials = 50;
    spec.estimators = {};
    spec.bounds = {"prop5_ub_M", "lb_M"};
    spec.desk_scale_note =
        "exact incoherence is a p^2 scan; the p=1e5 cells dominate runtime";
    return spec;
  }
  if (name == "fig_WB") {
    spec.n_values = {300};
    spec.p_values = logspace_int(700, 20000, 12);
    spec.variants = {{1, 1.0, model::NoiseMode::exact_norm, 0.01, "s1"},
                     {2, 1.0, model::NoiseMode::exact_norm, 0.01, "s2"}};
    spec.trials = 20;
    spec.estimators = {"bp", "wI"};
    spec.bounds = {"cor3_ub_wBP2"};
    spec.desk_scale_note = "n=300 in place of the published n=3000";
    return spec;
  }
  if (name == "fig_change_n") {
    spec.n_values = {100, 250, 500};
    spec.p_values = logspace_int(20, 20000, 18);
    spec.variants = {{1, 1.0, model::NoiseMode::exact_norm, 0.01, "s1"}};
    spec.trials = 20;
    spec.estimators = {"bp"};
    spec.min_mse_below_n = true;
    spec.desk_scale_note = "n grid {100,250,500} in place of {150,600}";
    return spec;
  }
  if (name == "fig_change_noise") {
    spec.n_values = {100};
    spec.p_values = logspace_int(150, 20000, 14);
    spec.variants = {{1, 1.0, model::NoiseMode::exact_norm, 0.01, "eps0.01"},
                     {1, 1.0, model::NoiseMode::exact_norm, 0.04, "eps0.04"},
                     {1, 1.0, model::NoiseMode::exact_norm, 0.16, "eps0.16"}};
    spec.trials = 20;
    spec.estimators = {"bp"};
    return spec;
  }
  if (name == "fig_compare") {
    spec.n_values = {500};
    spec.p_values = logspace_int(510, 20000, 18);
    spec.variants = {
        {1, 1.0, model::NoiseMode::exact_norm, 0.01, "s1_b1"},
        {100, 1.0, model::NoiseMode::exact_norm, 0.01, "s100_b1"},
        {100, 0.1, model::NoiseMode::exact_norm, 0.01, "s100_b0.1"}};
    spec.trials = 10;
    spec.estimators = {"bp", "min_l2"};
    spec.bounds = {"l2_expected_sq_error"};
    return spec;
  }
  if (name == "fig_validate_n") {
    spec.n_values = {250, 500, 1000, 2000};
    spec.p_values = {5000};
    spec.variants = {
        {1, 1.0, model::NoiseMode::exact_norm, 0.15, "s1_eps0.15"},
        {20, 1.0, model::NoiseMode::exact_norm, 0.15, "s20_eps0.15"},
        {20, 1.0, model::NoiseMode::exact_norm, 0.60, "s20_eps0.6"}};
    spec.trials = 10;
    spec.estimators = {"bp"};
    spec.desk_scale_note = "n grid tops out at 2000 in place of 4000";
    return spec;
  }
  throw UnknownPreset("unknown figure preset: " + name +
                      " (valid: fig_wI fig_M fig_WB fig_change_n "
                      "fig_change_noise fig_compare fig_validate_n)");
}

std::vector<CurveMinimum> extract_minima(const std::vector<CellStats>& cells,
                                         const std::string& quantity) {
  std::map<std::pair<std::string, int>, std::vector<const CellStats*>> curves;
  for (const CellStats& c : cells) curves[{c.variant, c.n}].push_back(&c);

  std::vector<CurveMinimum> out;
  for (auto& [key, pts] : curves) {
    std::sort(pts.begin(), pts.end(), [](const CellStats* a,
                                         const CellStats* b) {
      return a->p < b->p;
    });
    CurveMinimum m;
    m.variant = key.first;
    m.n = key.second;
    bool found = false;
    int with_quantity = 0;
    for (const CellStats* c : pts) {
      const auto it = c->quantities.find(quantity);
      if (it == c->quantities.end() || it->second.count == 0) continue;
      ++with_quantity;
      if (!found || it->second.median < m.min_value) {
        m.min_value = it->second.median;
        m.p_at_min = c->p;
        found = true;
      }
    }
    if (with_quantity >= 2) out.push_back(m);
  }
  return out;
}

}  // namespace bpdd::experiments
