#include "doctest.h"

#include <cmath>

#include "bpdd/errors.hpp"
#include "bpdd/experiments.hpp"
#include "bpdd/model_gen.hpp"
#include "bpdd/solvers.hpp"

using namespace bpdd;
namespace ex = bpdd::experiments;

namespace {

ex::SweepSpec tiny_spec() {
  ex::SweepSpec spec;
  spec.n_values = {10};
  spec.p_values = {30, 60, 120};
  spec.variants = {{1, 1.0, model::NoiseMode::exact_norm, 0.01, "v"}};
  spec.trials = 4;
  spec.base_seed = 77;
  spec.estimators = {"bp", "wI"};
  spec.bounds = {"emp_lb_wI1_B1"};
  return spec;
}

}  // namespace

TEST_CASE("run_cell with one trial collapses stats onto the trial") {
  auto spec = tiny_spec();
  spec.trials = 1;
  auto cell = ex::run_cell(spec, 0, 0, 0);
  CHECK(cell.failed_trials == 0);
  const auto& q = cell.quantities.at("exact_wBP_l2");
  CHECK(q.count == 1);
  CHECK(q.mean == q.median);
  CHECK(q.q10 == q.q90);
  CHECK(q.median == q.q10);
}

TEST_CASE("cells are bit-reproducible and independent of sweep parallelism") {
  auto spec = tiny_spec();
  auto a = ex::sweep(spec);
  auto b = ex::sweep(spec);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (const auto& [k, qa] : a[i].quantities) {
      const auto& qb = b[i].quantities.at(k);
      CHECK(qa.mean == qb.mean);
      CHECK(qa.median == qb.median);
      CHECK(qa.q10 == qb.q10);
      CHECK(qa.q90 == qb.q90);
    }
  }
}

TEST_CASE("quantile ordering holds in every cell") {
  auto cells = ex::sweep(tiny_spec());
  for (const auto& c : cells)
    for (const auto& [k, q] : c.quantities) {
      CHECK(q.q10 <= q.median);
      CHECK(q.median <= q.q90);
    }
}

TEST_CASE("nested sweeps reuse design prefixes: w_I is monotone per trial") {
  auto spec = tiny_spec();
  spec.nested_p = true;
  // per-trial check against the instances the sweep would generate
  for (int trial = 0; trial < spec.trials; ++trial) {
    double previous = -1.0;
    for (int p_idx = 0; p_idx < 3; ++p_idx) {
      const auto seed = ex::instance_seed(spec, 0, 0, p_idx, trial);
      auto ts = model::generate_training(10, spec.p_values[p_idx], 1, 1.0,
                                         model::NoiseMode::exact_norm, 0.01,
                                         seed);
      auto wi = solvers::noise_interpolator(ts);
      if (previous >= 0.0) CHECK(wi.model_error_l1 <= previous + 1e-9);
      previous = wi.model_error_l1;
    }
  }
}

TEST_CASE("non-nested seeds differ across the p grid, nested ones do not") {
  auto spec = tiny_spec();
  const auto s0 = ex::instance_seed(spec, 0, 0, 0, 3);
  const auto s1 = ex::instance_seed(spec, 0, 0, 1, 3);
  CHECK(s0 != s1);
  spec.nested_p = true;
  CHECK(ex::instance_seed(spec, 0, 0, 0, 3) ==
        ex::instance_seed(spec, 0, 0, 1, 3));
  CHECK(ex::instance_seed(spec, 0, 0, 0, 3) !=
        ex::instance_seed(spec, 0, 0, 0, 4));
}

TEST_CASE("figure presets carry the published parameters") {
  auto fm = ex::figure_preset("fig_M");
  CHECK(fm.n_values == std::vector<int>{300, 1200});
  CHECK(fm.p_values.front() == 1000);
  CHECK(fm.p_values.back() == 100000);

  auto fn = ex::figure_preset("fig_change_noise");
  REQUIRE(fn.variants.size() == 3);
  CHECK(fn.variants[0].noise_level == 0.01);
  CHECK(fn.variants[1].noise_level == 0.04);
  CHECK(fn.variants[2].noise_level == 0.16);
  CHECK(fn.n_values == std::vector<int>{100});

  auto fv = ex::figure_preset("fig_validate_n");
  CHECK(fv.p_values == std::vector<int>{5000});
  REQUIRE(fv.variants.size() == 3);
  CHECK(fv.variants[0].s == 1);
  CHECK(fv.variants[1].s == 20);
  CHECK(fv.variants[2].noise_level == 0.60);

  auto fc = ex::figure_preset("fig_compare");
  REQUIRE(fc.variants.size() == 3);
  CHECK(fc.variants[1].s == 100);
  CHECK(fc.variants[2].beta_norm == 0.1);
  CHECK(fc.estimators.count("min_l2") == 1);

  CHECK(ex::figure_preset("fig_wI").nested_p);
  CHECK(ex::figure_preset("fig_change_n").min_mse_below_n);
  CHECK_THROWS_AS(ex::figure_preset("nope"), UnknownPreset);
}

TEST_CASE("extract_minima finds the vertex of a V-shaped curve") {
  std::vector<ex::CellStats> cells;
  const std::vector<double> values = {5.0, 3.0, 1.0, 2.0, 4.0};
  for (int i = 0; i < 5; ++i) {
    ex::CellStats c;
    c.variant = "v";
    c.n = 10;
    c.p = 100 * (i + 1);
    ex::QuantityStats q;
    q.count = 3;
    q.median = values[i];
    c.quantities["exact_wBP_l2"] = q;
    cells.push_back(c);
  }
  auto minima = ex::extract_minima(cells, "exact_wBP_l2");
  REQUIRE(minima.size() == 1);
  CHECK(minima[0].p_at_min == 300);
  CHECK(minima[0].min_value == 1.0);

  // monotone decreasing: last point wins
  for (int i = 0; i < 5; ++i)
    cells[i].quantities["exact_wBP_l2"].median = 5.0 - i;
  auto tail = ex::extract_minima(cells, "exact_wBP_l2");
  CHECK(tail[0].p_at_min == 500);
}

TEST_CASE("min_mse stands in below p = n when requested") {
  ex::SweepSpec spec;
  spec.n_values = {12};
  spec.p_values = {6, 30};
  spec.variants = {{1, 1.0, model::NoiseMode::exact_norm, 0.05, "v"}};
  spec.trials = 2;
  spec.base_seed = 5;
  spec.estimators = {"bp"};
  spec.min_mse_below_n = true;
  auto cells = ex::sweep(spec);
  REQUIRE(cells.size() == 2);
  CHECK(cells[0].quantities.count("exact_wMSE_l2") == 1);
  CHECK(cells[0].quantities.count("exact_wBP_l2") == 0);
  CHECK(cells[0].quantities.at("exact_model_l2").count == 2);
  CHECK(cells[1].quantities.count("exact_wBP_l2") == 1);
  CHECK(cells[1].quantities.at("exact_model_l2").count == 2);
}

TEST_CASE("noiseless sparse-free cells report zero model error") {
  ex::SweepSpec spec;
  spec.n_values = {8};
  spec.p_values = {20};
  // beta_norm cannot be zero (precondition), so use a tiny noise level and
  // a zero-support check through the solvers instead: zero noise mode is
  // covered by solver tests; here we check the sweep plumbing end to end.
  spec.variants = {{1, 1.0, model::NoiseMode::exact_norm, 1e-12, "v"}};
  spec.trials = 2;
  spec.base_seed = 6;
  spec.estimators = {"bp"};
  auto cells = ex::sweep(spec);
  CHECK(cells[0].quantities.at("exact_wBP_l2").median <= 1e-9);
}
