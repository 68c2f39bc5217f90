#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "moat/anytime.hpp"
#include "moat/eaf.hpp"
#include "moat/errors.hpp"
#include "moat/experiment.hpp"
#include "moat/indicators.hpp"
#include "moat/logging.hpp"
#include "moat/ranking.hpp"
#include "moat/textio.hpp"

#include "export.hpp"
#include "svg.hpp"

namespace moat::tools {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct IndicatorOptions {
  std::string indicator = "hv";
  std::string refpoint;  // "v1,v2[,v3...]"
  std::string refset;    // path
  int partitions = 0;    // 0: smallest lattice with >= 100 vectors
};

struct SelectionOptions {
  std::string input;
  std::vector<std::string> problems;
  std::vector<std::string> algorithms;
};

struct GridOptions {
  std::string budgets;  // "LO:HI:COUNT[:log|lin]"
};

DataSet ingest_selected(const SelectionOptions& sel) {
  std::set<std::string> problems(sel.problems.begin(), sel.problems.end());
  std::set<std::string> algorithms(sel.algorithms.begin(),
                                   sel.algorithms.end());
  DataSet::Filter filter;
  if (!problems.empty() || !algorithms.empty()) {
    filter = [problems, algorithms](const RunMeta& meta) {
      if (!problems.empty() && !problems.count(meta.problem)) return false;
      if (!algorithms.empty() && !algorithms.count(meta.algorithm)) {
        return false;
      }
      return true;
    };
  }
  return DataSet::ingest(sel.input, filter);
}

std::int64_t max_declared_budget(const DataSet& dataset) {
  std::int64_t hi = 1;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    hi = std::max(hi, dataset.meta(i).budget);
  }
  return hi;
}

BudgetGrid resolve_grid(const GridOptions& opts, const DataSet& dataset) {
  if (opts.budgets.empty()) {
    const std::int64_t hi = max_declared_budget(dataset);
    if (hi <= 1) return BudgetGrid{{1}};
    return make_budget_grid(1, hi, 50, GridScale::log);
  }
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= opts.budgets.size()) {
    std::size_t end = opts.budgets.find(':', start);
    if (end == std::string::npos) end = opts.budgets.size();
    parts.push_back(opts.budgets.substr(start, end - start));
    start = end + 1;
  }
  if (parts.size() < 3 || parts.size() > 4) {
    throw ConfigError("--budgets expects LO:HI:COUNT[:log|lin]");
  }
  auto lo = parse_int(parts[0]);
  auto hi = parse_int(parts[1]);
  auto count = parse_int(parts[2]);
  if (!lo || !hi || !count) {
    throw ConfigError("--budgets expects integer LO:HI:COUNT");
  }
  const GridScale scale =
      parts.size() == 4 ? grid_scale_from_string(parts[3]) : GridScale::log;
  if (*lo < 1) throw ConfigError("--budgets: LO must be at least 1");
  if (*lo == *hi) return BudgetGrid{{*lo}};
  return make_budget_grid(*lo, *hi, static_cast<int>(*count), scale);
}

ObjectiveVector parse_point(const std::string& text, const char* flag) {
  ObjectiveVector point;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    auto v = parse_finite_double(text.substr(start, end - start));
    if (!v) {
      throw ConfigError(std::string(flag) + ": bad component in '" + text +
                        "'");
    }
    point.push_back(*v);
    start = end + 1;
  }
  return point;
}

std::map<std::string, NormalizationBounds> bounds_per_problem(
    const DataSet& dataset, bool raw) {
  std::map<std::string, NormalizationBounds> bounds;
  for (const auto& problem : dataset.problems()) {
    if (raw) {
      const auto runs = dataset.runs_for(problem);
      const std::size_t m = static_cast<std::size_t>(
          dataset.meta(runs.front()).m);
      bounds.emplace(problem, NormalizationBounds::identity(m));
    } else {
      bounds.emplace(problem, compute_bounds(dataset, problem));
    }
  }
  return bounds;
}

// Per-problem indicator spec. Reference sets come from --refset when given
// (single problem only) or are extracted from the ingested data.
IndicatorSpec build_spec(const IndicatorOptions& opts, const DataSet& dataset,
                         const std::string& problem, std::size_t m,
                         std::size_t n_selected_problems) {
  const IndicatorKind kind = indicator_from_string(opts.indicator);
  IndicatorSpec spec;
  spec.kind = kind;
  switch (kind) {
    case IndicatorKind::hypervolume:
      if (!opts.refpoint.empty()) {
        spec.reference_point = parse_point(opts.refpoint, "--refpoint");
      }
      break;
    case IndicatorKind::igd_plus:
    case IndicatorKind::eps_additive:
    case IndicatorKind::eps_multiplicative:
      if (!opts.refset.empty()) {
        if (n_selected_problems > 1) {
          throw IndicatorInputError(
              "--refset applies to a single problem; restrict the selection "
              "with --problem");
        }
        spec.reference_set = read_reference_set(opts.refset);
        if (spec.reference_set.empty()) {
          throw IndicatorInputError("--refset: file holds no points");
        }
      } else {
        spec.reference_set = extract_reference_set(dataset, problem, 1000);
      }
      break;
    case IndicatorKind::r2: {
      const int partitions =
          opts.partitions > 0 ? opts.partitions
                              : partitions_for_weight_count(m, 100);
      spec.weights = generate_weights(m, partitions);
      break;
    }
  }
  spec.validate(m);
  return spec;
}

std::string check_format(const std::string& format) {
  if (format != "csv" && format != "json" && format != "svg") {
    throw ConfigError("--format must be csv, json or svg");
  }
  return format;
}

fs::path ensure_out_dir(const std::string& out) {
  if (out.empty()) throw ConfigError("--out: missing output path");
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

std::size_t problem_m(const DataSet& dataset, const std::string& problem) {
  const auto runs = dataset.runs_for(problem);
  return static_cast<std::size_t>(dataset.meta(runs.front()).m);
}

// ---------------------------------------------------------------- run ----

int cmd_run(const std::string& config_path) {
  const ExperimentConfig config = load_experiment_config(config_path);
  run_experiment(config, [](const RunProgress& p) {
    std::printf("[%zu/%zu] %s on %s run %d: %lld evals\n", p.cell, p.total,
                p.algorithm.c_str(), p.problem.c_str(), p.run_id,
                static_cast<long long>(p.evaluations));
  });
  std::printf("experiment written to %s\n", config.output_dir.c_str());
  return 0;
}

// -------------------------------------------------------------- trace ----

struct TraceOptions {
  SelectionOptions sel;
  GridOptions grid;
  IndicatorOptions indicator;
  std::string out;
  std::string format = "csv";
  double confidence = 0.95;
  bool raw = false;
};

int cmd_trace(const TraceOptions& opts) {
  check_format(opts.format);
  const DataSet dataset = ingest_selected(opts.sel);
  const auto bounds = bounds_per_problem(dataset, opts.raw);
  const BudgetGrid grid = resolve_grid(opts.grid, dataset);
  const fs::path out_dir = ensure_out_dir(opts.out);
  const auto problems = dataset.problems();

  for (const auto& problem : problems) {
    const std::size_t m = problem_m(dataset, problem);
    const IndicatorSpec spec =
        build_spec(opts.indicator, dataset, problem, m, problems.size());
    for (const auto& algorithm : dataset.algorithms()) {
      const auto runs = dataset.runs_for(problem, algorithm);
      if (runs.empty()) continue;
      std::vector<TrajectorySeries> series;
      series.reserve(runs.size());
      for (std::size_t r : runs) {
        series.push_back(
            trajectory(dataset.archive(r), spec, grid, bounds.at(problem)));
      }
      const AggregatedCurve curve = aggregate(series, opts.confidence);
      const std::string stem =
          "trace_" + opts.indicator.indicator + "_" + algorithm + "_" + problem;
      if (opts.format == "svg") {
        LabeledCurve lc{algorithm, curve.budgets, curve.mean, curve.lo,
                        curve.hi};
        write_curves_svg(out_dir / (stem + ".svg"),
                         opts.indicator.indicator + " on " + problem,
                         opts.indicator.indicator,
                         {lc});
        continue;
      }
      Table table;
      table.header = {"budget", "mean", "ci_lo", "ci_hi"};
      for (std::size_t i = 0; i < curve.budgets.size(); ++i) {
        table.rows.push_back({Cell::integer_of(curve.budgets[i]),
                              Cell::num(curve.mean[i]), Cell::num(curve.lo[i]),
                              Cell::num(curve.hi[i])});
      }
      if (opts.format == "csv") {
        write_csv(out_dir / (stem + ".csv"), table);
      } else {
        write_json(out_dir / (stem + ".json"), table);
      }
    }
  }
  return 0;
}

// --------------------------------------------------------------- ecdf ----

struct EcdfOptions {
  SelectionOptions sel;
  GridOptions grid;
  std::string out;
  std::string format = "csv";
};

int cmd_ecdf(const EcdfOptions& opts) {
  check_format(opts.format);
  const DataSet dataset = ingest_selected(opts.sel);
  const auto bounds = bounds_per_problem(dataset, false);
  const BudgetGrid grid = resolve_grid(opts.grid, dataset);
  const fs::path out_dir = ensure_out_dir(opts.out);
  const EcdfCurves curves = ecdf(dataset, grid, bounds);

  if (opts.format == "svg") {
    std::vector<LabeledCurve> lcs;
    for (std::size_t a = 0; a < curves.algorithms.size(); ++a) {
      lcs.push_back(LabeledCurve{curves.algorithms[a], curves.budgets,
                                 curves.values[a], {}, {}});
    }
    write_curves_svg(out_dir / "ecdf.svg", "hypervolume fraction ECDF",
                     "mean hv fraction", lcs);
    return 0;
  }
  for (std::size_t a = 0; a < curves.algorithms.size(); ++a) {
    Table table;
    table.header = {"budget", "hv_fraction"};
    for (std::size_t i = 0; i < curves.budgets.size(); ++i) {
      table.rows.push_back({Cell::integer_of(curves.budgets[i]),
                            Cell::num(curves.values[a][i])});
    }
    const std::string stem = "ecdf_" + curves.algorithms[a];
    if (opts.format == "csv") {
      write_csv(out_dir / (stem + ".csv"), table);
    } else {
      write_json(out_dir / (stem + ".json"), table);
    }
  }
  return 0;
}

// ---------------------------------------------------------------- eaf ----

struct EafOptions {
  SelectionOptions sel;
  std::string input_b;
  bool vs_final_pop = false;
  int surface_level = 0;  // 0: full grid
  std::string out;
  std::string format = "csv";
};

std::string single_problem(const DataSet& dataset) {
  const auto problems = dataset.problems();
  if (problems.size() != 1) {
    throw CoverageError(
        "attainment analysis works on one problem at a time; restrict the "
        "selection with --problem");
  }
  return problems.front();
}

std::vector<std::vector<ObjectiveVector>> archive_point_sets(
    const DataSet& dataset) {
  std::vector<std::vector<ObjectiveVector>> sets;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    std::vector<ObjectiveVector> points;
    for (const Solution& s : dataset.records(i)) {
      points.push_back(s.objectives);
    }
    sets.push_back(std::move(points));
  }
  return sets;
}

int cmd_eaf(const EafOptions& opts) {
  check_format(opts.format);
  const DataSet dataset = ingest_selected(opts.sel);
  const std::string problem = single_problem(dataset);
  if (problem_m(dataset, problem) != 2) {
    throw DimensionError("attainment analysis supports 2-objective data only");
  }
  const auto sets_a = archive_point_sets(dataset);
  if (!opts.out.empty() && fs::path(opts.out).has_parent_path()) {
    std::error_code ec;
    fs::create_directories(fs::path(opts.out).parent_path(), ec);
  }
  if (opts.out.empty()) throw ConfigError("--out: missing output path");

  if (opts.surface_level < 0) {
    throw ConfigError("--surface expects a positive attainment level");
  }
  const bool diff_mode = !opts.input_b.empty() || opts.vs_final_pop;
  if (diff_mode && opts.surface_level > 0) {
    throw ConfigError("--surface cannot be combined with a difference mode");
  }

  if (diff_mode) {
    std::vector<std::vector<ObjectiveVector>> sets_b;
    if (!opts.input_b.empty()) {
      SelectionOptions sel_b = opts.sel;
      sel_b.input = opts.input_b;
      const DataSet other = ingest_selected(sel_b);
      if (single_problem(other) != problem) {
        throw CoverageError("the two inputs cover different problems");
      }
      sets_b = archive_point_sets(other);
    } else {
      for (std::size_t i = 0; i < dataset.size(); ++i) {
        const RunMeta& meta = dataset.meta(i);
        auto it = meta.params.find("mu");
        if (it == meta.params.end()) {
          throw ConfigError(
              "--final-pop needs a 'mu' entry in the run parameters of " +
              meta.algorithm);
        }
        const auto mu = parse_int(it->second);
        if (!mu || *mu < 1) {
          throw ConfigError("--final-pop: bad mu '" + it->second + "'");
        }
        std::vector<ObjectiveVector> points;
        for (const Solution& s :
             final_population(dataset.archive(i),
                              static_cast<std::size_t>(*mu))) {
          points.push_back(s.objectives);
        }
        sets_b.push_back(std::move(points));
      }
    }
    const EafDiffGrid grid = eaf_diff(sets_a, sets_b);
    if (opts.format == "svg") {
      write_eaf_diff_svg(opts.out, "EAF difference on " + problem, grid);
      return 0;
    }
    Table table;
    table.header = {"x_lo", "y_lo", "x_hi", "y_hi", "fraction"};
    for (const auto& c : grid.cells) {
      table.rows.push_back({Cell::num(c.x_lo), Cell::num(c.y_lo),
                            Cell::num(c.x_hi), Cell::num(c.y_hi),
                            Cell::num(c.value)});
    }
    opts.format == "csv" ? write_csv(opts.out, table)
                         : write_json(opts.out, table);
    return 0;
  }

  const EafGrid grid = eaf(sets_a);
  if (opts.surface_level > 0) {
    if (opts.format == "svg") {
      throw ConfigError("--surface exports csv or json");
    }
    const ParetoSet surface = attainment_surface(grid, opts.surface_level);
    Table table;
    table.header = {"x", "y"};
    for (const auto& p : surface.points) {
      table.rows.push_back({Cell::num(p[0]), Cell::num(p[1])});
    }
    opts.format == "csv" ? write_csv(opts.out, table)
                         : write_json(opts.out, table);
    return 0;
  }
  if (opts.format == "svg") {
    write_eaf_svg(opts.out,
                  "EAF on " + problem + " (" +
                      std::to_string(grid.n_runs) + " runs)",
                  grid);
    return 0;
  }
  Table table;
  table.header = {"x_lo", "y_lo", "x_hi", "y_hi", "fraction"};
  for (const auto& c : grid.cells) {
    table.rows.push_back(
        {Cell::num(c.x_lo), Cell::num(c.y_lo), Cell::num(c.x_hi),
         Cell::num(c.y_hi),
         Cell::num(static_cast<double>(c.count) / grid.n_runs)});
  }
  opts.format == "csv" ? write_csv(opts.out, table)
                       : write_json(opts.out, table);
  return 0;
}

// --------------------------------------------------------------- rank ----

struct RankOptions {
  SelectionOptions sel;
  GridOptions grid;
  IndicatorOptions indicator;
  std::string out;
  std::string format = "json";
  std::string method = "bootstrap";
  double alpha = 0.05;
  int samples = 10000;
  std::uint64_t seed = 0;
  std::string aggregator = "mean";
  double confidence = 0.95;
};

json ranking_to_json(const RankingResult& r,
                     const std::vector<BootstrapInterval>& ci,
                     double confidence) {
  json j;
  j["budget"] = r.budget;
  j["algorithms"] = r.algorithms;
  j["groups"] = r.groups;
  j["win_fraction"] = r.win_fraction;
  j["mean_rank"] = r.mean_rank;
  json jci;
  jci["confidence"] = confidence;
  std::vector<double> lo, median, hi;
  for (const auto& e : ci) {
    lo.push_back(e.lo);
    median.push_back(e.median);
    hi.push_back(e.hi);
  }
  jci["lo"] = lo;
  jci["median"] = median;
  jci["hi"] = hi;
  j["ci"] = jci;
  return j;
}

int cmd_rank(const RankOptions& opts) {
  if (opts.format != "json") {
    throw ConfigError("rank reports are JSON; use --format json");
  }
  if (opts.method != "bootstrap" && opts.method != "cd") {
    throw ConfigError("--method must be bootstrap or cd");
  }
  const DataSet dataset = ingest_selected(opts.sel);
  const auto bounds = bounds_per_problem(dataset, false);
  const auto problems = dataset.problems();
  std::map<std::string, IndicatorSpec> specs;
  for (const auto& problem : problems) {
    specs.emplace(problem,
                  build_spec(opts.indicator, dataset, problem,
                             problem_m(dataset, problem), problems.size()));
  }
  BudgetGrid grid;
  if (opts.grid.budgets.empty()) {
    grid.budgets = {max_declared_budget(dataset)};
  } else {
    grid = resolve_grid(opts.grid, dataset);
  }

  json report;
  report["indicator"] = opts.indicator.indicator;
  report["method"] = opts.method;
  report["alpha"] = opts.alpha;
  report["budgets"] = grid.budgets;
  json rankings = json::array();

  if (opts.method == "cd") {
    for (std::int64_t budget : grid.budgets) {
      const FriedmanResult fr =
          friedman_cd(dataset, specs, budget, opts.alpha, bounds);
      json j;
      j["budget"] = budget;
      j["algorithms"] = fr.algorithms;
      j["avg_ranks"] = fr.avg_ranks;
      j["n_blocks"] = fr.n_blocks;
      j["statistic"] = fr.statistic;
      j["p_value"] = fr.p_value;
      j["critical_difference"] = fr.critical_difference;
      rankings.push_back(std::move(j));
    }
  } else {
    BootstrapConfig config;
    config.n_samples = opts.samples;
    config.alpha = opts.alpha;
    config.seed = opts.seed;
    config.aggregator = aggregator_from_string(opts.aggregator);
    report["samples"] = opts.samples;
    report["seed"] = opts.seed;
    report["aggregator"] = opts.aggregator;
    for (std::int64_t budget : grid.budgets) {
      const auto table = performance_table(dataset, specs, budget, bounds);
      auto ranking = robust_rank(table, config);
      ranking.budget = budget;
      const auto ci = bootstrap_ci(table, config, opts.confidence);
      rankings.push_back(ranking_to_json(ranking, ci, opts.confidence));
    }
  }
  report["rankings"] = std::move(rankings);

  if (opts.out.empty()) throw ConfigError("--out: missing output path");
  if (fs::path(opts.out).has_parent_path()) {
    std::error_code ec;
    fs::create_directories(fs::path(opts.out).parent_path(), ec);
  }
  std::ofstream out(opts.out, std::ios::trunc);
  if (!out) throw IoError("cannot write " + opts.out);
  out << report.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + opts.out);
  return 0;
}

// ------------------------------------------------------------- refset ----

struct RefsetOptions {
  std::string input;
  std::string problem;
  int max_size = 1000;
  std::string out;
};

int cmd_refset(const RefsetOptions& opts) {
  const DataSet dataset = DataSet::ingest(opts.input);
  if (opts.max_size < 1) throw ConfigError("--max-size must be positive");
  const ParetoSet set = extract_reference_set(
      dataset, opts.problem, static_cast<std::size_t>(opts.max_size));
  if (fs::path(opts.out).has_parent_path()) {
    std::error_code ec;
    fs::create_directories(fs::path(opts.out).parent_path(), ec);
  }
  write_reference_set(opts.out, set);
  std::printf("%zu reference points written to %s\n", set.size(),
              opts.out.c_str());
  return 0;
}

void add_selection_flags(CLI::App* cmd, SelectionOptions& sel) {
  cmd->add_option("--input", sel.input, "experiment directory")->required();
  cmd->add_option("--problem", sel.problems, "restrict to these problems");
  cmd->add_option("--algorithm", sel.algorithms,
                  "restrict to these algorithms");
}

void add_indicator_flags(CLI::App* cmd, IndicatorOptions& ind) {
  cmd->add_option("--indicator", ind.indicator,
                  "hv, igdplus, r2, epsadd or epsmul");
  cmd->add_option("--refpoint", ind.refpoint,
                  "hypervolume reference point v1,v2[,v3...] in normalized "
                  "space (default 1.1 everywhere)");
  cmd->add_option("--refset", ind.refset,
                  "reference-set file (default: extracted from the data)");
  cmd->add_option("--partitions", ind.partitions,
                  "simplex-lattice partitions for r2 weights");
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"anytime benchmarking of multi-objective optimizers"};
  app.require_subcommand(1);

  std::string run_config;
  auto* run_cmd = app.add_subcommand("run", "execute an experiment config");
  run_cmd->add_option("config", run_config, "experiment JSON file")->required();

  TraceOptions trace_opts;
  auto* trace_cmd =
      app.add_subcommand("trace", "aggregated indicator curves over time");
  add_selection_flags(trace_cmd, trace_opts.sel);
  add_indicator_flags(trace_cmd, trace_opts.indicator);
  trace_cmd->add_option("--budgets", trace_opts.grid.budgets,
                        "LO:HI:COUNT[:log|lin]");
  trace_cmd->add_option("--out", trace_opts.out, "output directory")
      ->required();
  trace_cmd->add_option("--format", trace_opts.format, "csv, json or svg");
  trace_cmd->add_option("--confidence", trace_opts.confidence,
                        "confidence level of the band (default 0.95)");
  trace_cmd->add_flag("--raw", trace_opts.raw,
                      "skip min-max normalization of objectives");

  EcdfOptions ecdf_opts;
  auto* ecdf_cmd = app.add_subcommand(
      "ecdf", "aggregated hypervolume-fraction curves across problems");
  add_selection_flags(ecdf_cmd, ecdf_opts.sel);
  ecdf_cmd->add_option("--budgets", ecdf_opts.grid.budgets,
                       "LO:HI:COUNT[:log|lin]");
  ecdf_cmd->add_option("--out", ecdf_opts.out, "output directory")->required();
  ecdf_cmd->add_option("--format", ecdf_opts.format, "csv, json or svg");

  EafOptions eaf_opts;
  auto* eaf_cmd =
      app.add_subcommand("eaf", "empirical attainment function exports");
  add_selection_flags(eaf_cmd, eaf_opts.sel);
  eaf_cmd->add_option("--input-b", eaf_opts.input_b,
                      "second directory: export the EAF difference A - B");
  eaf_cmd->add_flag("--final-pop", eaf_opts.vs_final_pop,
                    "difference against the replayed final populations");
  eaf_cmd->add_option("--surface", eaf_opts.surface_level,
                      "export the k-th attainment surface instead");
  eaf_cmd->add_option("--out", eaf_opts.out, "output file")->required();
  eaf_cmd->add_option("--format", eaf_opts.format, "csv, json or svg");

  RankOptions rank_opts;
  auto* rank_cmd =
      app.add_subcommand("rank", "bootstrap robust ranking / CD report");
  add_selection_flags(rank_cmd, rank_opts.sel);
  add_indicator_flags(rank_cmd, rank_opts.indicator);
  rank_cmd->add_option("--budgets", rank_opts.grid.budgets,
                       "LO:HI:COUNT[:log|lin] (default: final budget only)");
  rank_cmd->add_option("--out", rank_opts.out, "output JSON file")->required();
  rank_cmd->add_option("--format", rank_opts.format, "json");
  rank_cmd->add_option("--method", rank_opts.method, "bootstrap or cd");
  rank_cmd->add_option("--alpha", rank_opts.alpha,
                       "significance threshold (default 0.05)");
  rank_cmd->add_option("--samples", rank_opts.samples,
                       "bootstrap resamples (default 10000)");
  rank_cmd->add_option("--seed", rank_opts.seed, "bootstrap seed");
  rank_cmd->add_option("--aggregator", rank_opts.aggregator,
                       "mean or median (default mean)");
  rank_cmd->add_option("--confidence", rank_opts.confidence,
                       "bootstrap CI level (default 0.95)");

  RefsetOptions refset_opts;
  auto* refset_cmd = app.add_subcommand(
      "refset", "extract a reference set from logged data");
  refset_cmd->add_option("--input", refset_opts.input, "experiment directory")
      ->required();
  refset_cmd->add_option("--problem", refset_opts.problem, "problem name")
      ->required();
  refset_cmd->add_option("--max-size", refset_opts.max_size,
                         "maximum number of points (default 1000)");
  refset_cmd->add_option("--out", refset_opts.out, "output file")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("moat");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_config);
    if (trace_cmd->parsed()) return cmd_trace(trace_opts);
    if (ecdf_cmd->parsed()) return cmd_ecdf(ecdf_opts);
    if (eaf_cmd->parsed()) return cmd_eaf(eaf_opts);
    if (rank_cmd->parsed()) return cmd_rank(rank_opts);
    if (refset_cmd->parsed()) return cmd_refset(refset_opts);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const IndicatorInputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const DimensionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const CoverageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 5;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}

}  // namespace moat::tools
