#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "bpdd/experiments.hpp"
#include "bpdd/model_gen.hpp"
#include "bpdd/tolerances.hpp"

namespace bpdd::cli {

struct RunConfig {
  std::string command;  // solve | bounds | sweep | figure | selftest | help
  std::string help_text;

  // single-instance commands
  int n = 100;
  int p = 400;
  int s = 1;
  double beta_norm = 1.0;
  model::NoiseMode noise_mode = model::NoiseMode::exact_norm;
  double noise_level = 0.01;
  std::set<std::string> estimators;

  // sweep/figure
  experiments::SweepSpec spec;
  std::string figure;

  std::string out_dir = ".";
  bool want_csv = true;
  bool want_svg = false;
  bool log_y = false;
  std::uint64_t seed = 1;
  int trials = 0;  // 0 = preset default
  Tolerances tol;
  bool zero_tol = false;  // selftest fault injection
};

/// "a,b,c" -> integers. Throws UsageError on junk.
std::vector<int> parse_int_list(const std::string& text);

/// "a:b:k-log" -> k log-spaced integers in [a,b]; plain comma lists pass
/// through parse_int_list.
std::vector<int> parse_p_spec(const std::string& text);

/// Full argv (without program name) -> RunConfig. Throws UsageError on
/// unknown flags, unknown presets, or missing required arguments.
RunConfig parse_args(const std::vector<std::string>& args);

/// Dispatches a parsed config; returns the process exit code
/// (0 ok, 1 usage, 2 runtime/solver, 3 selftest failure).
int run(const RunConfig& config);

}  // namespace bpdd::cli
