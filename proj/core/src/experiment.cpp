#include "moat/experiment.hpp"

#include <fstream>

#include <json.hpp>

#include "moat/algorithms.hpp"
#include "moat/errors.hpp"
#include "moat/rng.hpp"

namespace moat {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string family_of(const std::string& problem_name) {
  std::string family;
  for (char c : problem_name) {
    if (c >= '0' && c <= '9') break;
    family += c;
  }
  return family.empty() ? problem_name : family;
}

ProblemSpec problem_from_json(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return make_problem(j.get<std::string>());
    if (j.is_object()) {
      if (!j.contains("name")) {
        throw ConfigError(where + ".name: missing");
      }
      std::optional<int> n;
      if (j.contains("n")) n = j.at("n").get<int>();
      return make_problem(j.at("name").get<std::string>(), n);
    }
  } catch (const json::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": expected a problem name or object");
}

AlgorithmConfig algorithm_from_json(const json& j, const std::string& where) {
  AlgorithmConfig alg;
  try {
    if (j.is_string()) {
      alg.name = j.get<std::string>();
    } else if (j.is_object()) {
      if (!j.contains("name")) throw ConfigError(where + ".name: missing");
      alg.name = j.at("name").get<std::string>();
      if (j.contains("mu")) alg.mu = j.at("mu").get<int>();
      if (j.contains("id")) alg.id = j.at("id").get<std::string>();
    } else {
      throw ConfigError(where + ": expected an algorithm name or object");
    }
  } catch (const json::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
  if (alg.name != "random_search" && alg.name != "nsga2") {
    throw ConfigError(where + ".name: unknown algorithm '" + alg.name +
                      "' (available: random_search, nsga2)");
  }
  if (alg.name == "nsga2" && alg.mu < 2) {
    throw ConfigError(where + ".mu: nsga2 needs a population size >= 2");
  }
  return alg;
}

}  // namespace

std::string AlgorithmConfig::identifier() const {
  if (!id.empty()) return id;
  if (mu > 0) return name + "_mu" + std::to_string(mu);
  return name;
}

ExperimentConfig parse_experiment_config(const std::string& text,
                                         const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(origin + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError(origin + ": expected a JSON object");

  ExperimentConfig config;
  try {
    if (j.contains("suite")) config.suite = j.at("suite").get<std::string>();
    if (!j.contains("problems") || !j.at("problems").is_array() ||
        j.at("problems").empty()) {
      throw ConfigError("problems: need a non-empty array");
    }
    for (std::size_t i = 0; i < j.at("problems").size(); ++i) {
      config.problems.push_back(problem_from_json(
          j.at("problems")[i], "problems[" + std::to_string(i) + "]"));
    }
    if (!j.contains("algorithms") || !j.at("algorithms").is_array() ||
        j.at("algorithms").empty()) {
      throw ConfigError("algorithms: need a non-empty array");
    }
    for (std::size_t i = 0; i < j.at("algorithms").size(); ++i) {
      config.algorithms.push_back(algorithm_from_json(
          j.at("algorithms")[i], "algorithms[" + std::to_string(i) + "]"));
    }
    if (j.contains("runs")) config.runs = j.at("runs").get<int>();
    if (j.contains("budget")) {
      config.budget = j.at("budget").get<std::int64_t>();
    }
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    if (!j.contains("output_dir")) {
      throw ConfigError("output_dir: missing");
    }
    config.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("store_mode")) {
      config.store_mode =
          store_mode_from_string(j.at("store_mode").get<std::string>());
    }
    if (j.contains("log_decision")) {
      config.log_decision = j.at("log_decision").get<bool>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  if (config.runs < 1) throw ConfigError("runs: must be at least 1");
  if (config.budget < 1) throw ConfigError("budget: must be at least 1");
  for (const auto& alg : config.algorithms) {
    if (alg.name == "nsga2" && config.budget < alg.mu) {
      throw ConfigError("budget: " + std::to_string(config.budget) +
                        " is smaller than the population size of " +
                        alg.identifier());
    }
  }
  if (config.output_dir.empty()) throw ConfigError("output_dir: empty");
  return config;
}

ExperimentConfig load_experiment_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_experiment_config(text, path.string());
}

void run_experiment(const ExperimentConfig& config, const ProgressFn& progress) {
  const fs::path directory = config.output_dir;
  const std::size_t total =
      config.algorithms.size() * config.problems.size() *
      static_cast<std::size_t>(config.runs);
  std::size_t cell = 0;

  for (const auto& alg : config.algorithms) {
    const std::string alg_id = alg.identifier();
    for (const auto& problem : config.problems) {
      for (int run = 1; run <= config.runs; ++run) {
        ++cell;
        RunMeta meta;
        meta.suite = config.suite.empty() ? family_of(problem.name)
                                          : config.suite;
        meta.problem = problem.name;
        meta.m = problem.m;
        meta.n = problem.n;
        meta.algorithm = alg_id;
        if (alg.mu > 0) meta.params["mu"] = std::to_string(alg.mu);
        meta.run_id = run;
        meta.seed = derive_run_seed(config.seed, alg_id, problem.name,
                                    static_cast<std::uint64_t>(run));
        meta.budget = config.budget;
        meta.store_mode = config.store_mode;

        LoggerOptions log_options;
        log_options.log_decision = config.log_decision;
        log_options.decision_columns =
            problem.is_bitstring() ? problem.total_bits() : problem.n;
        Logger logger = Logger::open(meta, directory, log_options);
        const fs::path data_path = directory / logger.meta().data_file;
        std::int64_t evals = 0;
        try {
          Rng rng(meta.seed);
          auto sink = [&](const Solution& s) {
            logger.log_eval(s);
            evals = s.eval_index;
          };
          if (alg.name == "random_search") {
            random_search(problem, config.budget, rng, sink);
          } else {
            Nsga2Params params;
            params.mu = alg.mu;
            nsga2_baseline(problem, params, config.budget, rng, sink);
          }
          logger.finalize();
        } catch (...) {
          // Drop the partial run before propagating.
          logger.abandon();
          std::error_code ec;
          fs::remove(data_path, ec);
          throw;
        }

        if (progress) {
          progress(RunProgress{cell, total, alg_id, problem.name, run, evals});
        }
      }
    }
  }
}

}  // namespace moat
