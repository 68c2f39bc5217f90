#include "moat/logging.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include <json.hpp>

#include "moat/errors.hpp"
#include "moat/textio.hpp"

namespace moat {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kMetaFileName = "experiment_meta.json";

// Serializes the metadata file as a whole; writers of distinct runs in one
// process share the file.
std::mutex& meta_file_mutex() {
  static std::mutex m;
  return m;
}

json meta_to_json(const RunMeta& meta) {
  json params = json::object();
  for (const auto& [k, v] : meta.params) params[k] = v;
  return json{{"suite", meta.suite},
              {"problem", meta.problem},
              {"m", meta.m},
              {"n", meta.n},
              {"algorithm", meta.algorithm},
              {"params", std::move(params)},
              {"run_id", meta.run_id},
              {"seed", meta.seed},
              {"budget", meta.budget},
              {"store_mode", to_string(meta.store_mode)},
              {"data_file", meta.data_file}};
}

RunMeta meta_from_json(const json& j, const fs::path& origin) {
  auto require = [&](const char* key) -> const json& {
    auto it = j.find(key);
    if (it == j.end()) {
      throw IoError(origin.string() + ": metadata entry is missing key '" +
                    key + "'");
    }
    return *it;
  };
  RunMeta meta;
  try {
    meta.suite = require("suite").get<std::string>();
    meta.problem = require("problem").get<std::string>();
    meta.m = require("m").get<int>();
    meta.n = require("n").get<int>();
    meta.algorithm = require("algorithm").get<std::string>();
    for (const auto& [k, v] : require("params").items()) {
      meta.params[k] = v.get<std::string>();
    }
    meta.run_id = require("run_id").get<int>();
    meta.seed = require("seed").get<std::uint64_t>();
    meta.budget = require("budget").get<std::int64_t>();
    meta.store_mode =
        store_mode_from_string(require("store_mode").get<std::string>());
    meta.data_file = require("data_file").get<std::string>();
  } catch (const json::exception& e) {
    throw IoError(origin.string() + ": malformed metadata entry: " + e.what());
  }
  if (meta.m < 2) {
    throw IoError(origin.string() + ": metadata declares m < 2");
  }
  return meta;
}

std::vector<RunMeta> read_meta_entries(const fs::path& meta_path) {
  std::ifstream in(meta_path);
  if (!in) throw IoError("cannot open metadata file " + meta_path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError(meta_path.string() + ": invalid JSON: " + e.what());
  }
  if (!j.is_array()) {
    throw IoError(meta_path.string() + ": expected a top-level array");
  }
  std::vector<RunMeta> entries;
  entries.reserve(j.size());
  for (const auto& entry : j) entries.push_back(meta_from_json(entry, meta_path));
  return entries;
}

void upsert_meta_entry(const fs::path& directory, const RunMeta& meta) {
  std::lock_guard<std::mutex> lock(meta_file_mutex());
  const fs::path meta_path = directory / kMetaFileName;
  json entries = json::array();
  if (fs::exists(meta_path)) {
    std::ifstream in(meta_path);
    if (!in) throw IoError("cannot open metadata file " + meta_path.string());
    try {
      in >> entries;
    } catch (const json::exception& e) {
      throw IoError(meta_path.string() + ": invalid JSON: " + e.what());
    }
    if (!entries.is_array()) {
      throw IoError(meta_path.string() + ": expected a top-level array");
    }
  }
  json updated = meta_to_json(meta);
  bool replaced = false;
  for (auto& entry : entries) {
    if (entry.value("problem", "") == meta.problem &&
        entry.value("algorithm", "") == meta.algorithm &&
        entry.value("run_id", -1) == meta.run_id) {
      entry = updated;
      replaced = true;
      break;
    }
  }
  if (!replaced) entries.push_back(updated);
  std::ofstream out(meta_path, std::ios::trunc);
  if (!out) throw IoError("cannot write metadata file " + meta_path.string());
  out << entries.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + meta_path.string());
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (start <= line.size()) {
    std::size_t end = line.find(' ', start);
    if (end == std::string::npos) end = line.size();
    fields.push_back(line.substr(start, end - start));
    start = end + 1;
  }
  return fields;
}

std::string expected_header(int m, int n_decision) {
  std::string h = "evaluations";
  for (int i = 1; i <= m; ++i) h += " raw_y" + std::to_string(i);
  for (int i = 1; i <= n_decision; ++i) h += " x" + std::to_string(i);
  return h;
}

std::vector<Solution> parse_data_file(const fs::path& path,
                                      const RunMeta& meta) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open data file " + path.string());
  std::string line;
  if (!std::getline(in, line)) {
    throw IoError(path.string() + ":1: missing header line");
  }
  // Header: "evaluations raw_y1 .. raw_y<m>" plus any number of trailing
  // decision columns "x1 .. x<k>" (self-describing).
  const auto header = split_fields(line);
  const std::size_t n_total = header.size();
  bool header_ok = n_total >= 1 + static_cast<std::size_t>(meta.m) &&
                   header[0] == "evaluations";
  for (int i = 0; header_ok && i < meta.m; ++i) {
    header_ok = header[1 + i] == "raw_y" + std::to_string(i + 1);
  }
  const int n_decision =
      static_cast<int>(n_total) - 1 - meta.m;
  for (int i = 0; header_ok && i < n_decision; ++i) {
    header_ok = header[1 + meta.m + i] == "x" + std::to_string(i + 1);
  }
  if (!header_ok) {
    throw IoError(path.string() + ":1: header does not match " +
                  std::to_string(meta.m) + " objective columns");
  }

  std::vector<Solution> records;
  std::int64_t last_index = 0;
  std::size_t line_no = 1;
  ParetoArchive front;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    auto fields = split_fields(line);
    if (fields.size() != static_cast<std::size_t>(1 + meta.m + n_decision)) {
      throw IoError(where + ": expected " +
                    std::to_string(1 + meta.m + n_decision) + " fields, got " +
                    std::to_string(fields.size()));
    }
    Solution s;
    auto idx = parse_int(fields[0]);
    if (!idx || *idx < 1) {
      throw IoError(where + ": bad evaluation index '" + fields[0] + "'");
    }
    s.eval_index = *idx;
    if (s.eval_index <= last_index) {
      throw IoError(where + ": evaluation index not strictly increasing");
    }
    last_index = s.eval_index;
    s.objectives.reserve(meta.m);
    for (int i = 0; i < meta.m; ++i) {
      auto v = parse_finite_double(fields[1 + i]);
      if (!v) {
        throw IoError(where + ": bad objective value '" + fields[1 + i] + "'");
      }
      s.objectives.push_back(*v);
    }
    for (int i = 0; i < n_decision; ++i) {
      auto v = parse_finite_double(fields[1 + meta.m + i]);
      if (!v) {
        throw IoError(where + ": bad decision value '" +
                      fields[1 + meta.m + i] + "'");
      }
      s.decision.push_back(*v);
    }
    if (meta.store_mode == StoreMode::nondominated_only) {
      if (front.would_reject(s.objectives)) {
        throw IoError(where +
                      ": record dominated by an earlier record in a "
                      "nondominated_only log");
      }
      front.offer(s.objectives);
    }
    records.push_back(std::move(s));
  }
  if (last_index > meta.budget) {
    throw IoError(path.string() + ": last evaluation index " +
                  std::to_string(last_index) + " exceeds budget " +
                  std::to_string(meta.budget));
  }
  return records;
}

std::string params_token(const std::map<std::string, std::string>& params) {
  std::string token;
  for (const auto& [k, v] : params) {
    token += k;
    token += '=';
    token += v;
    token += ';';
  }
  return token;
}

}  // namespace

std::string to_string(StoreMode mode) {
  return mode == StoreMode::all ? "all" : "nondominated_only";
}

StoreMode store_mode_from_string(const std::string& s) {
  if (s == "all") return StoreMode::all;
  if (s == "nondominated_only") return StoreMode::nondominated_only;
  throw ConfigError("unknown store_mode '" + s + "'");
}

Logger Logger::open(RunMeta meta, const fs::path& directory,
                    LoggerOptions options) {
  if (meta.problem.empty() || meta.algorithm.empty()) {
    throw ConfigError("logger metadata needs problem and algorithm names");
  }
  if (meta.m < 2) throw ConfigError("logger metadata needs m >= 2");
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) {
    throw IoError("cannot create directory " + directory.string() + ": " +
                  ec.message());
  }

  const std::string file_name = meta.algorithm + "_" + meta.problem + "_r" +
                                std::to_string(meta.run_id) + ".dat";
  meta.data_file = file_name;
  const fs::path data_path = directory / file_name;

  const fs::path meta_path = directory / kMetaFileName;
  if (fs::exists(meta_path)) {
    for (const auto& existing : read_meta_entries(meta_path)) {
      if (existing.problem == meta.problem &&
          existing.algorithm == meta.algorithm &&
          existing.run_id == meta.run_id) {
        throw IoError("duplicate run (" + meta.problem + ", " +
                      meta.algorithm + ", r" + std::to_string(meta.run_id) +
                      ") in " + directory.string());
      }
    }
  }
  if (fs::exists(data_path)) {
    throw IoError("data file already exists: " + data_path.string());
  }

  Logger logger;
  logger.meta_ = std::move(meta);
  logger.options_ = options;
  if (logger.options_.log_decision && logger.options_.decision_columns <= 0) {
    logger.options_.decision_columns = logger.meta_.n;
  }
  logger.directory_ = directory;
  logger.out_ = std::make_unique<std::ofstream>(data_path);
  if (!*logger.out_) {
    throw IoError("cannot create data file " + data_path.string());
  }
  *logger.out_ << expected_header(
                      logger.meta_.m,
                      options.log_decision ? logger.options_.decision_columns
                                           : 0)
               << '\n';
  if (!*logger.out_) {
    throw IoError("failed writing header to " + data_path.string());
  }
  return logger;
}

Logger::~Logger() {
  try {
    finalize();
  } catch (...) {
    // Destructors must not throw; an explicit finalize() reports failures.
  }
}

void Logger::log_eval(const Solution& solution) {
  if (!out_ || finalized_) {
    throw Error("log_eval on a finalized or moved-from logger");
  }
  if (solution.eval_index <= last_eval_index_) {
    throw Error("evaluation index " + std::to_string(solution.eval_index) +
                " not greater than previous " +
                std::to_string(last_eval_index_));
  }
  if (solution.objectives.size() != static_cast<std::size_t>(meta_.m)) {
    throw DimensionError("logged solution has " +
                         std::to_string(solution.objectives.size()) +
                         " objectives, expected " + std::to_string(meta_.m));
  }
  if (options_.log_decision &&
      solution.decision.size() !=
          static_cast<std::size_t>(options_.decision_columns)) {
    throw DimensionError("logged solution has " +
                         std::to_string(solution.decision.size()) +
                         " decision values, expected " +
                         std::to_string(options_.decision_columns));
  }
  last_eval_index_ = solution.eval_index;

  if (meta_.store_mode == StoreMode::nondominated_only) {
    if (!front_.offer(solution.objectives)) return;
  }
  std::string line = std::to_string(solution.eval_index);
  for (double v : solution.objectives) {
    line += ' ';
    line += format_double(v);
  }
  if (options_.log_decision) {
    for (double v : solution.decision) {
      line += ' ';
      line += format_double(v);
    }
  }
  *out_ << line << '\n';
  if (!*out_) {
    throw IoError("failed writing to " + (directory_ / meta_.data_file).string());
  }
  ++lines_written_;
}

void Logger::finalize() {
  if (finalized_ || !out_) return;
  out_->flush();
  if (!*out_) {
    throw IoError("failed flushing " + (directory_ / meta_.data_file).string());
  }
  out_->close();
  upsert_meta_entry(directory_, meta_);
  finalized_ = true;
}

void Logger::abandon() {
  if (finalized_ || !out_) return;
  out_->close();
  finalized_ = true;
}

std::vector<RunMeta> read_meta_file(const fs::path& meta_path) {
  return read_meta_entries(meta_path);
}

RunArchive parse_run(const fs::path& meta_path, std::size_t index) {
  auto entries = read_meta_entries(meta_path);
  if (index >= entries.size()) {
    throw CoverageError("metadata file " + meta_path.string() + " has " +
                        std::to_string(entries.size()) + " runs, asked for #" +
                        std::to_string(index));
  }
  RunArchive archive;
  archive.meta = entries[index];
  archive.records = parse_data_file(
      meta_path.parent_path() / archive.meta.data_file, archive.meta);
  return archive;
}

RunArchive parse_run(const fs::path& meta_path) {
  auto entries = read_meta_entries(meta_path);
  if (entries.size() != 1) {
    throw CoverageError("metadata file " + meta_path.string() + " describes " +
                        std::to_string(entries.size()) +
                        " runs; select one by index");
  }
  RunArchive archive;
  archive.meta = entries[0];
  archive.records = parse_data_file(
      meta_path.parent_path() / archive.meta.data_file, archive.meta);
  return archive;
}

DataSet DataSet::ingest(const fs::path& directory, const Filter& filter) {
  const fs::path meta_path = directory / kMetaFileName;
  if (!fs::exists(meta_path)) {
    throw CoverageError("no runs found: " + meta_path.string() +
                        " does not exist");
  }
  auto entries = read_meta_entries(meta_path);
  DataSet dataset;
  for (auto& meta : entries) {
    if (filter && !filter(meta)) continue;
    auto run = std::make_shared<LazyRun>();
    run->meta = std::move(meta);
    run->directory = directory;
    dataset.runs_->push_back(std::move(run));
  }
  if (dataset.runs_->empty()) {
    throw CoverageError("no runs in " + directory.string() +
                        " match the selection");
  }
  std::sort(dataset.runs_->begin(), dataset.runs_->end(),
            [](const auto& a, const auto& b) {
              const RunMeta& x = a->meta;
              const RunMeta& y = b->meta;
              const std::string xp = params_token(x.params);
              const std::string yp = params_token(y.params);
              return std::tie(x.suite, x.problem, x.algorithm, xp, x.run_id) <
                     std::tie(y.suite, y.problem, y.algorithm, yp, y.run_id);
            });

  // Index keys must be unique and all runs of one problem must agree on m.
  std::map<std::string, int> problem_m;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const RunMeta& meta = dataset.meta(i);
    auto [it, inserted] = problem_m.emplace(meta.problem, meta.m);
    if (!inserted && it->second != meta.m) {
      throw IoError("runs of problem " + meta.problem +
                    " disagree on the objective count");
    }
    if (i > 0) {
      const RunMeta& prev = dataset.meta(i - 1);
      if (prev.suite == meta.suite && prev.problem == meta.problem &&
          prev.algorithm == meta.algorithm &&
          params_token(prev.params) == params_token(meta.params) &&
          prev.run_id == meta.run_id) {
        throw IoError("duplicate run key (" + meta.problem + ", " +
                      meta.algorithm + ", r" + std::to_string(meta.run_id) +
                      ") in " + directory.string());
      }
    }
  }
  return dataset;
}

const RunMeta& DataSet::meta(std::size_t i) const { return (*runs_)[i]->meta; }

const std::vector<Solution>& DataSet::records(std::size_t i) const {
  const LazyRun& run = *(*runs_)[i];
  std::lock_guard<std::mutex> lock(run.mutex);
  if (!run.records) {
    run.records = parse_data_file(run.directory / run.meta.data_file, run.meta);
  }
  return *run.records;
}

RunArchive DataSet::archive(std::size_t i) const {
  return RunArchive{meta(i), records(i)};
}

std::vector<std::string> DataSet::problems() const {
  std::set<std::string> names;
  for (const auto& run : *runs_) names.insert(run->meta.problem);
  return {names.begin(), names.end()};
}

std::vector<std::string> DataSet::algorithms() const {
  std::set<std::string> names;
  for (const auto& run : *runs_) names.insert(run->meta.algorithm);
  return {names.begin(), names.end()};
}

std::vector<std::size_t> DataSet::runs_for(const std::string& problem) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (meta(i).problem == problem) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> DataSet::runs_for(const std::string& problem,
                                           const std::string& algorithm) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (meta(i).problem == problem && meta(i).algorithm == algorithm) {
      out.push_back(i);
    }
  }
  return out;
}

ParetoSet extract_reference_set(const DataSet& dataset,
                                const std::string& problem,
                                std::size_t max_size) {
  if (max_size < 1) throw ConfigError("reference set size must be at least 1");
  auto run_ids = dataset.runs_for(problem);
  if (run_ids.empty()) {
    throw CoverageError("problem " + problem + " not present in the data set");
  }
  std::vector<ObjectiveVector> pool;
  for (std::size_t i : run_ids) {
    for (const Solution& s : dataset.records(i)) {
      pool.push_back(s.objectives);
    }
  }
  auto front = nondominated_filter(pool).points;
  std::sort(front.begin(), front.end());
  ParetoSet result;
  if (front.size() <= max_size) {
    result.points = std::move(front);
    return result;
  }
  // Evenly spaced ranks across the lexicographically sorted front; the
  // stride is >= 1, so the picked ranks are distinct and include both ends.
  result.points.reserve(max_size);
  for (std::size_t i = 0; i < max_size; ++i) {
    std::size_t rank = i * (front.size() - 1) / (max_size - 1);
    result.points.push_back(front[rank]);
  }
  return result;
}

ParetoSet read_reference_set(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open reference set " + path.string());
  std::string line;
  if (!std::getline(in, line)) {
    throw IoError(path.string() + ":1: missing header line");
  }
  auto header = split_fields(line);
  const std::size_t m = header.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (header[i] != "raw_y" + std::to_string(i + 1)) {
      throw IoError(path.string() + ":1: malformed reference-set header");
    }
  }
  ParetoSet set;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (fields.size() != m) {
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": expected " + std::to_string(m) + " fields");
    }
    ObjectiveVector p;
    p.reserve(m);
    for (const auto& f : fields) {
      auto v = parse_finite_double(f);
      if (!v) {
        throw IoError(path.string() + ":" + std::to_string(line_no) +
                      ": bad value '" + f + "'");
      }
      p.push_back(*v);
    }
    set.points.push_back(std::move(p));
  }
  return set;
}

void write_reference_set(const fs::path& path, const ParetoSet& set) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write reference set " + path.string());
  const std::size_t m = set.empty() ? 2 : set.points[0].size();
  for (std::size_t i = 0; i < m; ++i) {
    out << (i ? " " : "") << "raw_y" << (i + 1);
  }
  out << '\n';
  for (const auto& p : set.points) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      out << (i ? " " : "") << format_double(p[i]);
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace moat
