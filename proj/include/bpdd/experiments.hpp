#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bpdd/bounds.hpp"
#include "bpdd/model_gen.hpp"
#include "bpdd/tolerances.hpp"

namespace bpdd::experiments {

/// One curve family: a (s, beta_norm, noise) configuration swept over the
/// (n, p) grid of the owning SweepSpec.
struct VariantConfig {
  int s = 1;
  double beta_norm = 1.0;
  model::NoiseMode noise_mode = model::NoiseMode::exact_norm;
  double noise_level = 0.01;
  std::string label;
};

struct SweepSpec {
  std::vector<int> n_values;
  std::vector<int> p_values;  // ascending
  std::vector<VariantConfig> variants;
  int trials = 20;
  std::uint64_t base_seed = 1;
  std::set<std::string> estimators;  // bp, min_l2, min_mse, wI
  std::vector<std::string> bounds;   // ledger identifiers to report
  bool nested_p = false;
  std::string figure_preset;
  /// Fig. "model error vs n" protocol: cells with p < n report the min-MSE
  /// model error in place of the requested interpolators.
  bool min_mse_below_n = false;
  int q_factor = 5;  // q = q_factor * n for the empirical noise bounds
  std::string desk_scale_note;
};

struct QuantityStats {
  double mean = 0.0;
  double median = 0.0;
  double q10 = 0.0;
  double q90 = 0.0;
  int count = 0;
};

struct CellStats {
  std::string variant;
  int n = 0;
  int p = 0;
  int s = 0;
  double beta_norm = 0.0;
  double noise_level = 0.0;
  int trial_count = 0;
  int failed_trials = 0;
  std::map<std::string, QuantityStats> quantities;
  std::map<std::string, int> violations;      // per bound identifier
  std::map<std::string, int> bound_evaluated; // trials the bound existed on
};

/// Runs all trials of one grid cell. Deterministic given (spec, indices):
/// the instance seed mixes (base_seed, preset, variant, n-index, trial) and,
/// unless nested_p, the p-index; nested sweeps reuse the same streams so the
/// design of a smaller p is a column prefix of the larger one.
CellStats run_cell(const SweepSpec& spec, int variant_idx, int n_idx, int p_idx,
                   const Tolerances& tol = default_tolerances());

/// All cells in (variant, n, p) order. Cells may execute in parallel; the
/// result is identical for any thread count.
std::vector<CellStats> sweep(const SweepSpec& spec,
                             const Tolerances& tol = default_tolerances());

/// Sweep specs reproducing the paper's figures at desk scale. Recognized:
/// fig_wI, fig_M, fig_WB, fig_change_n, fig_change_noise, fig_compare,
/// fig_validate_n. Throws UnknownPreset otherwise.
SweepSpec figure_preset(const std::string& name);
const std::vector<std::string>& preset_names();

struct CurveMinimum {
  std::string variant;
  int n = 0;
  int p_at_min = 0;
  double min_value = 0.0;
};

/// Minimum of each (variant, n) median curve of `quantity` over the swept p
/// range, with its location.
std::vector<CurveMinimum> extract_minima(const std::vector<CellStats>& cells,
                                         const std::string& quantity);

/// Deterministic per-instance seed; exposed so tests can replay one trial.
std::uint64_t instance_seed(const SweepSpec& spec, int variant_idx, int n_idx,
                            int p_idx, int trial);

}  // namespace bpdd::experiments
