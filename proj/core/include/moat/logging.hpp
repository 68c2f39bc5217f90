#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "moat/pareto.hpp"
#include "moat/types.hpp"

namespace moat {

enum class StoreMode { all, nondominated_only };

std::string to_string(StoreMode mode);
StoreMode store_mode_from_string(const std::string& s);

/// Per-run metadata, persisted as one entry of the experiment directory's
/// `experiment_meta.json` (a top-level array of these objects).
struct RunMeta {
  std::string suite;
  std::string problem;
  int m = 0;
  int n = 0;
  std::string algorithm;
  std::map<std::string, std::string> params;
  int run_id = 0;
  std::uint64_t seed = 0;
  std::int64_t budget = 0;
  StoreMode store_mode = StoreMode::all;
  std::string data_file;  // relative to the experiment directory

  friend bool operator==(const RunMeta&, const RunMeta&) = default;
};

/// Parsed run: metadata plus the full record sequence.
struct RunArchive {
  RunMeta meta;
  std::vector<Solution> records;
};

/// Options controlling what a logger writes beyond the objective columns.
struct LoggerOptions {
  /// Adds x1..xk decision columns to the data file (self-described by the
  /// header; not part of the metadata schema).
  bool log_decision = false;
  /// Number of decision columns; 0 falls back to the metadata's n. Bitstring
  /// problems log one column per bit, which exceeds their variable count.
  int decision_columns = 0;
};

/// Streaming writer for one run. Data lines are appended by log_eval;
/// finalize() flushes the data file and records the run in
/// experiment_meta.json. Destruction finalizes automatically.
class Logger {
 public:
  /// Creates `<algorithm>_<problem>_r<run_id>.dat` in `directory` (created if
  /// absent) and writes the header line. Throws IoError if the path is not
  /// writable or if the directory already holds a run with the same
  /// (problem, algorithm, run_id).
  static Logger open(RunMeta meta, const std::filesystem::path& directory,
                     LoggerOptions options = {});

  Logger(Logger&&) noexcept = default;
  Logger& operator=(Logger&&) noexcept = default;
  ~Logger();

  /// Appends one record. In nondominated_only mode the line is written only
  /// when no previously written point of this run dominates it. Throws Error
  /// on a non-increasing eval_index.
  void log_eval(const Solution& solution);

  /// Flushes and closes the data file and upserts this run's entry in the
  /// metadata file. Idempotent.
  void finalize();

  /// Closes the data file without recording the run (failure path; the
  /// caller removes the partial file).
  void abandon();

  [[nodiscard]] const RunMeta& meta() const { return meta_; }
  [[nodiscard]] std::int64_t lines_written() const { return lines_written_; }

 private:
  Logger() = default;

  RunMeta meta_;
  LoggerOptions options_;
  std::filesystem::path directory_;
  std::unique_ptr<std::ofstream> out_;
  std::int64_t last_eval_index_ = 0;
  std::int64_t lines_written_ = 0;
  ParetoArchive front_;  // nondominated_only bookkeeping
  bool finalized_ = false;
};

/// Reads the i-th run recorded in a metadata file. The single-argument form
/// requires the file to describe exactly one run.
RunArchive parse_run(const std::filesystem::path& meta_path);
RunArchive parse_run(const std::filesystem::path& meta_path, std::size_t index);

/// Reads all metadata entries of a file (no record loading).
std::vector<RunMeta> read_meta_file(const std::filesystem::path& meta_path);

/// Ingested collection of runs; metadata is loaded eagerly, records lazily on
/// first access. Immutable and cheap to copy once built. Runs are ordered
/// lexicographically by (suite, problem, algorithm, params, run_id).
class DataSet {
 public:
  using Filter = std::function<bool(const RunMeta&)>;

  /// Loads every run under `directory` whose metadata passes `filter`.
  /// Throws CoverageError when nothing matches.
  static DataSet ingest(const std::filesystem::path& directory,
                        const Filter& filter = {});

  [[nodiscard]] std::size_t size() const { return runs_->size(); }
  [[nodiscard]] const RunMeta& meta(std::size_t i) const;

  /// Records of run i (parsed and validated on first access).
  const std::vector<Solution>& records(std::size_t i) const;

  /// Full archive view of run i.
  [[nodiscard]] RunArchive archive(std::size_t i) const;

  /// Distinct problem / algorithm names, sorted.
  [[nodiscard]] std::vector<std::string> problems() const;
  [[nodiscard]] std::vector<std::string> algorithms() const;

  /// Indices of runs on `problem` (all algorithms), or of one algorithm.
  [[nodiscard]] std::vector<std::size_t> runs_for(
      const std::string& problem) const;
  [[nodiscard]] std::vector<std::size_t> runs_for(
      const std::string& problem, const std::string& algorithm) const;

 private:
  struct LazyRun {
    RunMeta meta;
    std::filesystem::path directory;
    mutable std::mutex mutex;
    mutable std::optional<std::vector<Solution>> records;
  };

  std::shared_ptr<std::vector<std::shared_ptr<LazyRun>>> runs_ =
      std::make_shared<std::vector<std::shared_ptr<LazyRun>>>();
};

/// Non-dominated filter over the union of every logged point of `problem`
/// across all runs and algorithms in the data set. Fronts larger than
/// `max_size` are thinned deterministically: the front is sorted
/// lexicographically and max_size evenly spaced ranks are kept.
ParetoSet extract_reference_set(const DataSet& dataset,
                                const std::string& problem,
                                std::size_t max_size);

/// Reference-set files: same data-line format as log files minus the
/// evaluation column, header `raw_y1 ... raw_y<m>`.
ParetoSet read_reference_set(const std::filesystem::path& path);
void write_reference_set(const std::filesystem::path& path,
                         const ParetoSet& set);

}  // namespace moat
