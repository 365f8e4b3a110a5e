#include "bpdd/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bpdd/bounds.hpp"
#include "bpdd/csv.hpp"
#include "bpdd/experiments.hpp"
#include "bpdd/model_gen.hpp"
#include "bpdd/rng.hpp"
#include "bpdd/solvers.hpp"

namespace bpdd {

namespace {

struct Reporter {
  std::ostream& out;
  bool all_ok = true;
  int checks = 0;

  void pass(const std::string& name, const std::string& detail = "") {
    ++checks;
    out << "PASS " << name;
    if (!detail.empty()) out << " (" << detail << ")";
    out << "\n";
  }
  void fail(const std::string& name, const std::string& detail) {
    ++checks;
    all_ok = false;
    out << "FAIL " << name << ": " << detail << "\n";
  }
  void check(bool ok, const std::string& name, const std::string& detail) {
    if (ok)
      pass(name, detail);
    else
      fail(name, detail);
  }
};

std::string d2s(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

bool run_selftest(std::ostream& out, const SelftestOptions& opts) {
  Reporter rep{out};
  Tolerances tol;  // solver tolerances stay sane; check slacks may be zeroed
  const double feas_slack = opts.zero_tolerances ? 0.0 : tol.feasibility;
  const double gap_slack = opts.zero_tolerances ? 0.0 : tol.duality_gap;
  const double cmp_slack = opts.zero_tolerances ? 0.0 : 1e-9;

  // Pinned generator vectors.
  {
    const auto z = rng::philox4x32({0, 0, 0, 0}, {0, 0});
    const bool ok = z[0] == 0x6627e8d5u && z[1] == 0xe169c58du &&
                    z[2] == 0xbc57ac4cu && z[3] == 0x9b00dbd8u;
    rep.check(ok, "rng-known-answer", "philox4x32-10 zero vector");
  }

  // Oracle equivalence on tiny instances.
  {
    int bad = 0;
    std::uint64_t bad_seed = 0;
    for (int i = 0; i < 60; ++i) {
      const int n = 1 + i % 3;
      const int p = 4 + i % 3;
      const std::uint64_t seed = rng::stream_id(900, i);
      auto ts = model::generate_training(n, p, 1, 1.0,
                                         model::NoiseMode::exact_norm, 0.05,
                                         seed);
      const double via_lp =
          solvers::l1_fit(ts.design.columns, ts.observations).lp.objective_value;
      const double via_oracle =
          solvers::brute_force_l1(ts.design.columns, ts.observations, 0);
      if (std::abs(via_lp - via_oracle) > cmp_slack * (1.0 + via_oracle)) {
        ++bad;
        if (bad == 1) bad_seed = seed;
      }
    }
    rep.check(bad == 0, "oracle-equivalence",
              bad == 0 ? "60 instances"
                       : std::to_string(bad) +
                             " mismatches, first seed=" +
                             std::to_string(bad_seed));
  }

  // Solver certificates: feasibility, duality gap, sparsity.
  {
    int bad = 0;
    std::string why;
    for (int i = 0; i < 20; ++i) {
      const int n = 5 + (i * 7) % 26;
      const int p = 2 * n + 1 + (i * 13) % 90;
      const std::uint64_t seed = rng::stream_id(901, i);
      auto ts = model::generate_training(n, p, 1, 1.0,
                                         model::NoiseMode::exact_norm, 0.01,
                                         seed);
      auto bp = solvers::basis_pursuit(ts);
      auto wi = solvers::noise_interpolator(ts);
      const double yscale = 1.0 + ts.observations.norm();
      const auto fail_at = [&](const std::string& what) {
        ++bad;
        if (bad == 1) why = what + " seed=" + std::to_string(seed);
      };
      if (bp.solver.primal_residual > feas_slack * yscale)
        fail_at("bp-feasibility residual=" + d2s(bp.solver.primal_residual));
      if (bp.solver.duality_gap >
          gap_slack * (1.0 + std::abs(bp.solver.objective_value)))
        fail_at("bp-duality-gap gap=" + d2s(bp.solver.duality_gap));
      if (bp.nonzero_count > n) fail_at("bp-sparsity");
      if (wi.solver.primal_residual > feas_slack * (1.0 + ts.noise.values.norm()))
        fail_at("wI-feasibility residual=" + d2s(wi.solver.primal_residual));
      if (wi.solver.duality_gap >
          gap_slack * (1.0 + std::abs(wi.solver.objective_value)))
        fail_at("wI-duality-gap gap=" + d2s(wi.solver.duality_gap));
    }
    rep.check(bad == 0, "solver-certificates",
              bad == 0 ? "20 instances" : why);
  }

  // Deterministic bound-ordering chain.
  {
    int bad = 0;
    std::string why;
    for (int i = 0; i < 30; ++i) {
      const int n = 20;
      const int p = 100 + i * 60;
      const std::uint64_t seed = rng::stream_id(902, i);
      auto ts = model::generate_training(n, p, 1, 1.0,
                                         model::NoiseMode::exact_norm, 0.01,
                                         seed);
      auto wi = solvers::noise_interpolator(ts);
      bounds::LedgerInputs in;
      in.wI = &wi;
      auto ledger = bounds::bound_ledger(ts, in);
      const double eps = ledger.exact.at("eps_norm");
      const double wI1 = wi.model_error_l1;
      const auto& lb = ledger.entries.at("emp_lb_wI1_B1");
      const auto& ub = ledger.entries.at("empirical_ub_wI1_lp");
      const auto fail_at = [&](const std::string& what) {
        ++bad;
        if (bad == 1) why = what + " seed=" + std::to_string(seed);
      };
      if (!lb.evaluable || eps > lb.value + cmp_slack * (1.0 + eps))
        fail_at("chain eps<=emp_lb_wI1_B1");
      if (lb.evaluable && lb.value > wI1 + cmp_slack * (1.0 + wI1))
        fail_at("chain emp_lb_wI1_B1<=wI");
      if (ub.evaluable && !ub.unbounded &&
          wI1 > ub.value + cmp_slack * (1.0 + ub.value))
        fail_at("chain wI<=empirical_ub_wI1_lp");
      if (eps > wI1 + cmp_slack * (1.0 + wI1)) fail_at("chain eps<=wI");
    }
    rep.check(bad == 0, "bound-ordering-chain",
              bad == 0 ? "30 instances" : why);
  }

  // Sweep determinism: identical bytes from identical specs.
  {
    experiments::SweepSpec spec;
    spec.n_values = {15};
    spec.p_values = {40, 80};
    spec.variants = {{1, 1.0, model::NoiseMode::exact_norm, 0.01, "selftest"}};
    spec.trials = 3;
    spec.estimators = {"bp", "wI"};
    spec.bounds = {"emp_lb_wI1_B1"};
    spec.base_seed = 7;
    const auto run_once = [&](const std::filesystem::path& path) {
      auto cells = experiments::sweep(spec);
      io::CsvMeta meta;
      meta.seed = spec.base_seed;
      io::emit_csv(cells, meta, path.string());
      std::ifstream f(path, std::ios::binary);
      std::ostringstream ss;
      ss << f.rdbuf();
      return ss.str();
    };
    const auto tmp = std::filesystem::temp_directory_path();
    const std::string a = run_once(tmp / "bpdd_selftest_a.csv");
    const std::string b = run_once(tmp / "bpdd_selftest_b.csv");
    std::filesystem::remove(tmp / "bpdd_selftest_a.csv");
    std::filesystem::remove(tmp / "bpdd_selftest_b.csv");
    rep.check(!a.empty() && a == b, "sweep-determinism",
              "2 runs, " + std::to_string(a.size()) + " bytes");
  }

  out << (rep.all_ok ? "selftest: all checks passed\n"
                     : "selftest: FAILURES detected\n");
  return rep.all_ok;
}

}  // namespace bpdd
