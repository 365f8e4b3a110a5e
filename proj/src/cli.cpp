#include "bpdd/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>

#include "bpdd/bounds.hpp"
#include "bpdd/csv.hpp"
#include "bpdd/errors.hpp"
#include "bpdd/selftest.hpp"
#include "bpdd/solvers.hpp"
#include "bpdd/svg.hpp"
#include "bpdd/version.hpp"

namespace bpdd::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
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

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& piece : split(text, ',')) {
    if (piece.empty()) throw UsageError("empty entry in list: " + text);
    try {
      std::size_t pos = 0;
      const int v = std::stoi(piece, &pos);
      if (pos != piece.size() || v < 1)
        throw UsageError("bad count '" + piece + "'");
      out.push_back(v);
    } catch (const UsageError&) {
      throw;
    } catch (...) {
      throw UsageError("bad count '" + piece + "'");
    }
  }
  return out;
}

std::vector<int> parse_p_spec(const std::string& text) {
  // a:b:k-log  ->  k log-spaced values in [a, b]
  if (text.find(':') == std::string::npos) return parse_int_list(text);
  const auto parts = split(text, ':');
  if (parts.size() != 3)
    throw UsageError("range syntax is a:b:k-log, got '" + text + "'");
  std::string steps = parts[2];
  if (steps.size() < 5 || steps.substr(steps.size() - 4) != "-log")
    throw UsageError("only log-spaced ranges are supported (a:b:k-log)");
  steps = steps.substr(0, steps.size() - 4);
  try {
    const double a = std::stod(parts[0]);
    const double b = std::stod(parts[1]);
    const int k = std::stoi(steps);
    if (a < 1 || b < a || k < 1) throw UsageError("bad range " + text);
    return logspace_int(a, b, k);
  } catch (const UsageError&) {
    throw;
  } catch (...) {
    throw UsageError("bad range '" + text + "'");
  }
}

namespace {

std::set<std::string> parse_estimators(const std::string& text) {
  std::set<std::string> out;
  for (const std::string& e : split(text, ',')) {
    if (e != "bp" && e != "min_l2" && e != "min_mse" && e != "wI")
      throw UsageError("unknown estimator '" + e +
                       "' (valid: bp,min_l2,min_mse,wI)");
    out.insert(e);
  }
  return out;
}

std::vector<std::string> parse_bounds(const std::string& text) {
  std::vector<std::string> out;
  const auto& known = bounds::bound_identifiers();
  for (const std::string& b : split(text, ',')) {
    if (b == "empirical_ub_wI1_lp" ||
        std::count(known.begin(), known.end(), b)) {
      out.push_back(b);
    } else {
      std::string names = "empirical_ub_wI1_lp";
      for (const auto& k : known) names += "," + k;
      throw UsageError("unknown bound '" + b + "' (valid: " + names + ")");
    }
  }
  return out;
}

struct RawArgs {
  std::string n_list, p_list, estimators, bound_list, formats;
  double sigma = 0.0;
  bool nested = false;
};

void add_instance_flags(CLI::App* cmd, RunConfig& cfg, RawArgs& raw) {
  cmd->add_option("--n", raw.n_list, "sample count(s), comma separated");
  cmd->add_option("--p", raw.p_list,
                  "feature count(s): comma list or a:b:k-log");
  cmd->add_option("--s", cfg.s, "sparsity of the ground truth");
  cmd->add_option("--beta-norm", cfg.beta_norm, "l2 norm of the ground truth");
  cmd->add_option("--noise-norm", cfg.noise_level,
                  "exact l2 norm of the training noise");
  cmd->add_option("--sigma", raw.sigma,
                  "Gaussian noise level (overrides --noise-norm)");
  cmd->add_option("--seed", cfg.seed, "base seed");
  cmd->add_option("--trials", cfg.trials, "Monte Carlo trials per cell");
  cmd->add_option("--estimators", raw.estimators,
                  "subset of bp,min_l2,min_mse,wI");
  cmd->add_option("--bounds", raw.bound_list, "ledger identifiers to report");
  cmd->add_option("--q-factor", cfg.spec.q_factor,
                  "q = q_factor * n for the empirical noise bounds");
  cmd->add_flag("--nested", raw.nested,
                "reuse design prefixes across the p grid");
  cmd->add_option("--out", cfg.out_dir, "output directory");
  cmd->add_option("--format", raw.formats, "outputs: csv,svg");
  cmd->add_flag("--logy", cfg.log_y, "log-scale y axis in plots");
  cmd->add_option("--feas-tol", cfg.tol.feasibility, "feasibility tolerance");
  cmd->add_option("--gap-tol", cfg.tol.duality_gap, "duality gap tolerance");
  cmd->add_option("--pivot-tol", cfg.tol.pivot, "simplex pivot threshold");
}

void finish_config(RunConfig& cfg, RawArgs& raw) {
  if (!raw.estimators.empty()) cfg.estimators = parse_estimators(raw.estimators);
  if (!raw.bound_list.empty()) cfg.spec.bounds = parse_bounds(raw.bound_list);
  if (!raw.formats.empty()) {
    cfg.want_csv = false;
    cfg.want_svg = false;
    for (const std::string& f : split(raw.formats, ',')) {
      if (f == "csv")
        cfg.want_csv = true;
      else if (f == "svg")
        cfg.want_svg = true;
      else
        throw UsageError("unknown format '" + f + "' (valid: csv,svg)");
    }
  }
  if (raw.sigma > 0.0) {
    cfg.noise_mode = model::NoiseMode::gaussian_sigma;
    cfg.noise_level = raw.sigma;
  }
  if (!raw.n_list.empty()) {
    cfg.spec.n_values = parse_int_list(raw.n_list);
    cfg.n = cfg.spec.n_values.front();
  }
  if (!raw.p_list.empty()) {
    cfg.spec.p_values = parse_p_spec(raw.p_list);
    cfg.p = cfg.spec.p_values.front();
  }
  cfg.spec.nested_p = raw.nested;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  RawArgs raw;
  CLI::App app{"Basis-pursuit double-descent simulator"};
  app.require_subcommand(1);

  CLI::App* solve = app.add_subcommand("solve", "solve one instance");
  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "evaluate the bound ledger on one instance");
  CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over (n,p)");
  CLI::App* figure =
      app.add_subcommand("figure", "run a figure preset (see --figure)");
  CLI::App* selftest =
      app.add_subcommand("selftest", "fast deterministic invariant suite");
  for (CLI::App* c : {solve, bounds_cmd, sweep, figure})
    add_instance_flags(c, cfg, raw);
  figure->add_option("--figure", cfg.figure, "preset name")->required();
  selftest->add_flag("--zero-tol", cfg.zero_tol,
                     "inject zero tolerances (reporting-path check)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    cfg.command = "help";
    cfg.help_text = app.help();
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (solve->parsed()) cfg.command = "solve";
  if (bounds_cmd->parsed()) cfg.command = "bounds";
  if (sweep->parsed()) cfg.command = "sweep";
  if (figure->parsed()) cfg.command = "figure";
  if (selftest->parsed()) cfg.command = "selftest";
  finish_config(cfg, raw);

  if (cfg.command == "figure") {
    const auto& names = experiments::preset_names();
    if (!std::count(names.begin(), names.end(), cfg.figure)) {
      std::string list;
      for (const auto& nm : names) list += (list.empty() ? "" : " ") + nm;
      throw UsageError("unknown figure preset '" + cfg.figure +
                       "'; valid presets: " + list);
    }
  }
  return cfg;
}

namespace {

void print_estimator(const std::string& name,
                     const solvers::InterpolatorOutput& o) {
  std::cout << name << ": l1=" << io::format_number(o.model_error_l1)
            << " l2=" << io::format_number(o.model_error_l2)
            << " l2_unscaled=" << io::format_number(o.model_error_l2_unscaled)
            << " nnz=" << o.nonzero_count
            << " lp_objective=" << io::format_number(o.solver.objective_value)
            << " iters=" << o.solver.iterations
            << " residual=" << io::format_number(o.solver.primal_residual)
            << " gap=" << io::format_number(o.solver.duality_gap) << "\n";
}

int cmd_solve(const RunConfig& cfg, bool with_ledger) {
  auto ts = model::generate_training(cfg.n, cfg.p, cfg.s, cfg.beta_norm,
                                     cfg.noise_mode, cfg.noise_level, cfg.seed);
  std::cout << "instance n=" << ts.n << " p=" << ts.p << " s=" << ts.s
            << " beta_norm=" << io::format_number(cfg.beta_norm)
            << " eps_norm=" << io::format_number(ts.noise.values.norm())
            << " seed=" << cfg.seed << "\n";

  std::set<std::string> est = cfg.estimators;
  if (est.empty()) {
    if (ts.p > ts.n) est.insert("bp");
    if (ts.p - ts.s >= ts.n) est.insert("wI");
    if (ts.p >= ts.n) est.insert("min_l2");
    if (ts.p < ts.n) est.insert("min_mse");
  }

  std::optional<solvers::InterpolatorOutput> bp, wI, l2, mse;
  if (est.count("bp") && ts.p > ts.n) bp = solvers::basis_pursuit(ts, cfg.tol);
  if (est.count("wI") && ts.p - ts.s >= ts.n)
    wI = solvers::noise_interpolator(ts, cfg.tol);
  if (est.count("min_l2") && ts.p >= ts.n)
    l2 = solvers::min_l2_overfit(ts, cfg.tol);
  if (est.count("min_mse") && ts.p < ts.n) mse = solvers::min_mse(ts, cfg.tol);

  if (bp) print_estimator("bp", *bp);
  if (wI) print_estimator("wI", *wI);
  if (l2) print_estimator("min_l2", *l2);
  if (mse) print_estimator("min_mse", *mse);

  if (with_ledger) {
    bounds::LedgerInputs in;
    in.bp = bp ? &*bp : nullptr;
    in.wI = wI ? &*wI : nullptr;
    in.min_l2 = l2 ? &*l2 : nullptr;
    in.q = cfg.spec.q_factor * ts.n;
    auto ledger = bounds::bound_ledger(ts, in, cfg.tol);
    std::cout << "exact:";
    for (const auto& [k, v] : ledger.exact)
      std::cout << " " << k << "=" << io::format_number(v);
    std::cout << "\nbound,value,kind,target,source,regime_ok,evaluable,note\n";
    for (const auto& [id, bv] : ledger.entries) {
      const char* kind = bv.kind == bounds::BoundKind::upper     ? "upper"
                         : bv.kind == bounds::BoundKind::lower   ? "lower"
                                                                 : "expectation";
      std::cout << id << ","
                << (bv.evaluable
                        ? (bv.unbounded ? "unbounded" : io::format_number(bv.value))
                        : "")
                << "," << kind << "," << bv.target << "," << bv.source << ","
                << (bv.regime_ok ? 1 : 0) << "," << (bv.evaluable ? 1 : 0) << ","
                << bv.note << "\n";
    }
  }
  return 0;
}

experiments::SweepSpec sweep_spec_from(const RunConfig& cfg) {
  experiments::SweepSpec spec = cfg.spec;
  if (spec.n_values.empty()) spec.n_values = {cfg.n};
  if (spec.p_values.empty()) spec.p_values = {cfg.p};
  experiments::VariantConfig vc;
  vc.s = cfg.s;
  vc.beta_norm = cfg.beta_norm;
  vc.noise_mode = cfg.noise_mode;
  vc.noise_level = cfg.noise_level;
  vc.label = "sweep";
  spec.variants = {vc};
  spec.trials = cfg.trials > 0 ? cfg.trials : 20;
  spec.base_seed = cfg.seed;
  spec.estimators = cfg.estimators.empty()
                        ? std::set<std::string>{"bp"}
                        : cfg.estimators;
  return spec;
}

struct CurveKey {
  std::string variant;
  std::string n;
};

std::vector<io::Curve> curves_from_table(const io::Table& table,
                                         const std::vector<std::string>& keys,
                                         bool x_is_n, double n_power) {
  const int c_variant = table.col("variant");
  const int c_n = table.col("n");
  const int c_p = table.col("p");
  std::vector<io::Curve> curves;
  for (const std::string& key : keys) {
    const int c_med = table.col(key + "_median");
    if (c_med < 0) continue;
    std::map<std::pair<std::string, std::string>, io::Curve> by_group;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const auto med = table.num(r, c_med);
      if (!med) continue;
      const auto x = table.num(r, x_is_n ? c_n : c_p);
      if (!x) continue;
      const std::string variant = table.field(r, c_variant);
      const std::string ngroup = x_is_n ? "" : table.field(r, c_n);
      auto& curve = by_group[{variant, ngroup}];
      curve.x.push_back(*x);
      double y = *med;
      if (n_power != 0.0) y *= std::pow(*x, n_power);
      curve.y.push_back(y);
    }
    for (auto& [group, curve] : by_group) {
      curve.label = key;
      if (!group.first.empty()) curve.label += " " + group.first;
      if (!group.second.empty()) curve.label += " n=" + group.second;
      if (curve.x.size() >= 2) curves.push_back(std::move(curve));
    }
  }
  return curves;
}

struct FigurePlot {
  std::vector<std::string> quantities;
  bool log_y = false;
  bool x_is_n = false;
  double n_power = 0.0;
  std::string y_label;
};

FigurePlot figure_plot(const std::string& name) {
  if (name == "fig_wI")
    return {{"exact_wI_l1", "prop4d_ub_wI1", "emp_ub_wI1_B5n",
             "empirical_ub_wI1_lp", "emp_lb_wI1_B1"},
            false,
            false,
            0.0,
            "||w_I||_1"};
  if (name == "fig_M")
    return {{"exact_M", "prop5_ub_M"}, false, false, 0.0, "M"};
  if (name == "fig_WB")
    return {{"exact_wBP_l2", "cor3_ub_wBP2"}, true, false, 0.0, "||w_BP||_2"};
  if (name == "fig_change_n")
    return {{"exact_model_l2"}, true, false, 0.0, "model error"};
  if (name == "fig_change_noise")
    return {{"exact_wBP_l2"}, true, false, 0.0, "||w_BP||_2"};
  if (name == "fig_compare")
    return {{"exact_wBP_l2", "exact_wL2_l2"}, true, false, 0.0, "model error"};
  if (name == "fig_validate_n")
    return {{"exact_wBP_l2"}, false, true, -0.25, "n^{-1/4} ||w_BP||_2"};
  return {};
}

int cmd_sweep_like(const RunConfig& cfg, const std::string& name,
                   experiments::SweepSpec spec, const FigurePlot& plot) {
  std::filesystem::create_directories(cfg.out_dir);
  auto cells = experiments::sweep(spec, cfg.tol);

  io::CsvMeta meta;
  meta.preset = spec.figure_preset;
  meta.seed = spec.base_seed;
  meta.note = spec.desk_scale_note;
  meta.extra.emplace_back("trials", std::to_string(spec.trials));
  const std::string csv_path = cfg.out_dir + "/" + name + ".csv";
  io::emit_csv(cells, meta, csv_path);
  std::cout << "wrote " << csv_path << " (" << cells.size() << " cells)\n";

  if (cfg.want_svg) {
    const io::Table table = io::read_csv(csv_path);
    std::vector<std::string> keys = plot.quantities;
    if (keys.empty()) {
      for (const std::string& k :
           {"exact_model_l2", "exact_wBP_l2", "exact_wI_l1", "exact_wL2_l2",
            "exact_wMSE_l2", "exact_M"})
        if (table.col(std::string(k) + "_median") >= 0) keys.push_back(k);
      for (const std::string& b : spec.bounds) keys.push_back(b);
    }
    io::PlotSpec ps;
    ps.title = name;
    ps.x_label = plot.x_is_n ? "n" : "p";
    ps.y_label = plot.y_label.empty() ? "value" : plot.y_label;
    ps.log_y = plot.log_y || cfg.log_y;
    auto curves = curves_from_table(table, keys, plot.x_is_n, plot.n_power);
    const std::string svg_path = cfg.out_dir + "/" + name + ".svg";
    io::emit_svg(curves, ps, svg_path);
    std::cout << "wrote " << svg_path << " (" << curves.size() << " curves)\n";
  }
  return 0;
}

}  // namespace

int run(const RunConfig& cfg) {
  try {
    if (cfg.command == "help") {
      std::cout << cfg.help_text;
      return 0;
    }
    if (cfg.command == "selftest") {
      SelftestOptions opts;
      opts.zero_tolerances = cfg.zero_tol;
      return run_selftest(std::cout, opts) ? 0 : 3;
    }
    if (cfg.command == "solve") return cmd_solve(cfg, false);
    if (cfg.command == "bounds") return cmd_solve(cfg, true);
    if (cfg.command == "sweep") {
      auto spec = sweep_spec_from(cfg);
      FigurePlot plot;
      plot.log_y = cfg.log_y;
      return cmd_sweep_like(cfg, "sweep", std::move(spec), plot);
    }
    if (cfg.command == "figure") {
      auto spec = experiments::figure_preset(cfg.figure);
      if (cfg.trials > 0) spec.trials = cfg.trials;
      spec.base_seed = cfg.seed;
      return cmd_sweep_like(cfg, cfg.figure, std::move(spec),
                            figure_plot(cfg.figure));
    }
    throw UsageError("no command given (try --help)");
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace bpdd::cli
