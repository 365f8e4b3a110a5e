#pragma once

#include <ostream>

#include "bpdd/tolerances.hpp"

namespace bpdd {

struct SelftestOptions {
  /// Fault injection for the reporting path: run the checks with zero
  /// feasibility/gap tolerances so every invariant is reported as violated.
  bool zero_tolerances = false;
};

/// Deterministic invariant suite at tiny sizes (oracle equivalence, solver
/// certificates, bound-ordering chains, sweep determinism). Prints one
/// PASS/FAIL line per check with replay seeds; returns true when all pass.
bool run_selftest(std::ostream& out, const SelftestOptions& opts = {});

}  // namespace bpdd
