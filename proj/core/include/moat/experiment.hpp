#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "moat/logging.hpp"
#include "moat/problems.hpp"

namespace moat {

/// One algorithm configuration of an experiment. The logged identifier
/// defaults to the name, with "_mu<mu>" appended when a population size is
/// set, so differently sized configurations stay distinct.
struct AlgorithmConfig {
  std::string name;  // "random_search" or "nsga2"
  int mu = 0;        // population size (nsga2)
  std::string id;    // logged algorithm identifier; empty: derived

  [[nodiscard]] std::string identifier() const;
};

struct ExperimentConfig {
  std::string suite;  // empty: per-problem family ("ZDT"/"DTLZ")
  std::vector<ProblemSpec> problems;
  std::vector<AlgorithmConfig> algorithms;
  int runs = 25;
  std::int64_t budget = 50000;
  std::uint64_t seed = 0;
  std::string output_dir;
  StoreMode store_mode = StoreMode::all;
  bool log_decision = false;
};

/// Parses the experiment JSON (schema in the README). Throws ConfigError
/// naming the offending field.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
ExperimentConfig parse_experiment_config(const std::string& text,
                                         const std::string& origin);

struct RunProgress {
  std::size_t cell = 0;   // 1-based (algorithm, problem, run) counter
  std::size_t total = 0;
  std::string algorithm;
  std::string problem;
  int run_id = 0;
  std::int64_t evaluations = 0;
};
using ProgressFn = std::function<void(const RunProgress&)>;

/// Executes every (algorithm, problem, run) cell sequentially and writes one
/// log file per cell plus the shared metadata file into output_dir. Per-run
/// seeds derive deterministically from (seed, algorithm id, problem, run),
/// so equal configs produce byte-identical files. A cell that fails is
/// deleted before the error propagates.
void run_experiment(const ExperimentConfig& config,
                    const ProgressFn& progress = {});

}  // namespace moat
