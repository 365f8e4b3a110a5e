#pragma once

namespace bpdd {

/// Central numerical tolerances. Feasibility and gap tolerances are relative
/// (scaled by 1 + the magnitude they compare against).
struct Tolerances {
  double feasibility = 1e-8;       // |Ax - b| vs 1 + |b|
  double duality_gap = 1e-7;       // |primal - dual| vs 1 + |primal|
  double pivot = 1e-10;            // smallest acceptable simplex pivot
  double bounds = 1e-9;            // bound violation on reported solutions
  double sparsify_residual = 1e-7; // residual drift during sparsification
  double zero_column = 1e-300;     // column norms below this are an error
  double condition_limit = 1e14;   // basis condition estimate ceiling
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace bpdd
