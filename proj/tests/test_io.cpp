#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bpdd/cli.hpp"
#include "bpdd/csv.hpp"
#include "bpdd/errors.hpp"
#include "bpdd/experiments.hpp"
#include "bpdd/selftest.hpp"
#include "bpdd/svg.hpp"

using namespace bpdd;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<experiments::CellStats> sample_cells() {
  experiments::SweepSpec spec;
  spec.n_values = {8};
  spec.p_values = {20, 40};
  spec.variants = {{1, 1.0, model::NoiseMode::exact_norm, 0.01, "v"}};
  spec.trials = 3;
  spec.base_seed = 9;
  spec.estimators = {"bp", "wI"};
  spec.bounds = {"emp_lb_wI1_B1"};
  return experiments::sweep(spec);
}

}  // namespace

TEST_CASE("csv bytes are deterministic and round-trip through the reader") {
  auto cells = sample_cells();
  io::CsvMeta meta;
  meta.preset = "unit";
  meta.seed = 9;
  const auto tmp = fs::temp_directory_path();
  const auto p1 = tmp / "bpdd_io_a.csv";
  const auto p2 = tmp / "bpdd_io_b.csv";
  io::emit_csv(cells, meta, p1.string());
  io::emit_csv(cells, meta, p2.string());
  const std::string a = slurp(p1);
  CHECK(a == slurp(p2));
  CHECK(a.find("\r") == std::string::npos);  // LF endings only
  CHECK(a.find("emp_lb_wI1_B1_median") != std::string::npos);
  CHECK(a.find("# preset=unit") != std::string::npos);

  auto table = io::read_csv(p1.string());
  REQUIRE(table.rows.size() == 2);
  CHECK(table.col("n") >= 0);
  CHECK(table.num(0, table.col("n")).value() == 8.0);
  CHECK(table.num(0, table.col("exact_wBP_l2_median")).has_value());
  // 12-significant-digit cap
  CHECK(io::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(io::format_number(2.0) == "2");
  fs::remove(p1);
  fs::remove(p2);

  CHECK_THROWS_AS(io::emit_csv({}, meta, (tmp / "x.csv").string()), IoError);
}

TEST_CASE("svg writer renders curves and validates input") {
  const auto tmp = fs::temp_directory_path() / "bpdd_plot.svg";
  io::Curve two;
  two.label = "pair";
  two.x = {10.0, 100.0};
  two.y = {1.0, 2.0};
  io::PlotSpec spec;
  spec.title = "t";
  spec.y_label = "y";
  io::emit_svg({two}, spec, tmp.string());
  const std::string svg = slurp(tmp);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("pair") != std::string::npos);
  CHECK(std::count(svg.begin(), svg.end(), '\n') > 5);
  fs::remove(tmp);

  io::Curve bad;
  bad.label = "bad";
  bad.x = {1.0, 2.0, 3.0};
  bad.y = {1.0, 2.0};
  CHECK_THROWS_AS(io::emit_svg({bad}, spec, tmp.string()), DegeneratePlot);
  io::Curve single;
  single.label = "one";
  single.x = {1.0};
  single.y = {1.0};
  CHECK_THROWS_AS(io::emit_svg({single}, spec, tmp.string()), DegeneratePlot);
}

TEST_CASE("argument parsing: ranges, lists, presets") {
  auto p = cli::parse_p_spec("200:20000:15-log");
  CHECK(p.size() == 15);
  CHECK(p.front() == 200);
  CHECK(p.back() == 20000);
  for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i] > p[i - 1]);

  CHECK(cli::parse_int_list("100,250,500") ==
        std::vector<int>{100, 250, 500});
  CHECK_THROWS_AS(cli::parse_int_list("10,x"), UsageError);
  CHECK_THROWS_AS(cli::parse_p_spec("10:100:abc-log"), UsageError);
  CHECK_THROWS_AS(cli::parse_p_spec("10:100:5"), UsageError);

  auto cfg = cli::parse_args({"figure", "--figure", "fig_M", "--out", "r"});
  CHECK(cfg.command == "figure");
  CHECK(cfg.figure == "fig_M");
  CHECK(cfg.out_dir == "r");

  auto sw = cli::parse_args({"sweep", "--n", "100", "--p", "200:20000:15-log",
                             "--s", "1", "--noise-norm", "0.01", "--trials",
                             "20", "--seed", "42"});
  CHECK(sw.command == "sweep");
  CHECK(sw.spec.p_values.size() == 15);
  CHECK(sw.seed == 42);
  CHECK(sw.trials == 20);

  CHECK_THROWS_AS(cli::parse_args({"figure", "--figure", "nope"}), UsageError);
  try {
    cli::parse_args({"figure", "--figure", "nope"});
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("fig_M") != std::string::npos);
  }
  CHECK_THROWS_AS(cli::parse_args({"sweep", "--bogus-flag", "1"}), UsageError);
  CHECK_THROWS_AS(cli::parse_args({"sweep", "--estimators", "magic"}),
                  UsageError);
  CHECK_THROWS_AS(cli::parse_args({"sweep", "--bounds", "not_a_bound"}),
                  UsageError);
  CHECK(cli::parse_args({"--help"}).command == "help");
}

TEST_CASE("figure command writes csv and an svg derived from it") {
  cli::RunConfig cfg;
  cfg = cli::parse_args({"figure", "--figure", "fig_change_noise", "--trials",
                         "1", "--seed", "3", "--format", "csv,svg", "--out",
                         (fs::temp_directory_path() / "bpdd_fig").string()});
  // shrink the preset through the public surface: run() consumes the preset
  // as-is, so use a tiny ad-hoc sweep here instead of the full figure.
  cli::RunConfig sweep_cfg = cli::parse_args(
      {"sweep", "--n", "10", "--p", "30,60", "--s", "1", "--noise-norm",
       "0.01", "--trials", "2", "--seed", "3", "--estimators", "bp",
       "--format", "csv,svg", "--out",
       (fs::temp_directory_path() / "bpdd_fig").string()});
  CHECK(cli::run(sweep_cfg) == 0);
  const auto dir = fs::temp_directory_path() / "bpdd_fig";
  CHECK(fs::exists(dir / "sweep.csv"));
  CHECK(fs::exists(dir / "sweep.svg"));
  const std::string svg = slurp(dir / "sweep.svg");
  CHECK(svg.find("exact_wBP_l2") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("selftest reporting: stable text, named failures under zero tol") {
  std::ostringstream a, b;
  CHECK(run_selftest(a));
  CHECK(run_selftest(b));
  CHECK(a.str() == b.str());
  CHECK(a.str().find("PASS oracle-equivalence") != std::string::npos);

  std::ostringstream z;
  SelftestOptions opts;
  opts.zero_tolerances = true;
  CHECK_FALSE(run_selftest(z, opts));
  CHECK(z.str().find("FAIL") != std::string::npos);
  // failures name the violated invariant and carry a replay seed
  CHECK(z.str().find("seed=") != std::string::npos);
}
