#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "moat/logging.hpp"
#include "moat/types.hpp"

namespace testutil {

// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("moat_test_" + tag + "_" + std::to_string(++counter) + "_" +
             std::to_string(::getpid()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  [[nodiscard]] const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline moat::RunMeta make_meta(const std::string& problem, int m,
                               const std::string& algorithm, int run_id,
                               std::int64_t budget,
                               moat::StoreMode mode = moat::StoreMode::all) {
  moat::RunMeta meta;
  meta.suite = "test";
  meta.problem = problem;
  meta.m = m;
  meta.n = 2;
  meta.algorithm = algorithm;
  meta.run_id = run_id;
  meta.seed = 1;
  meta.budget = budget;
  meta.store_mode = mode;
  return meta;
}

inline moat::RunArchive make_archive(
    const std::string& problem, const std::string& algorithm, int run_id,
    const std::vector<moat::ObjectiveVector>& points) {
  moat::RunArchive archive;
  archive.meta = make_meta(problem, points.empty() ? 2 : points[0].size(),
                           algorithm, run_id, points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    moat::Solution s;
    s.eval_index = static_cast<std::int64_t>(i + 1);
    s.objectives = points[i];
    archive.records.push_back(std::move(s));
  }
  return archive;
}

// Logs one run per point list and returns the directory holding them.
inline void write_run(const std::filesystem::path& dir,
                      const std::string& problem, const std::string& algorithm,
                      int run_id,
                      const std::vector<moat::ObjectiveVector>& points,
                      moat::StoreMode mode = moat::StoreMode::all) {
  const int m = points.empty() ? 2 : static_cast<int>(points[0].size());
  auto meta = make_meta(problem, m, algorithm, run_id,
                        static_cast<std::int64_t>(points.size()), mode);
  auto logger = moat::Logger::open(meta, dir);
  for (std::size_t i = 0; i < points.size(); ++i) {
    moat::Solution s;
    s.eval_index = static_cast<std::int64_t>(i + 1);
    s.objectives = points[i];
    logger.log_eval(s);
  }
  logger.finalize();
}

}  // namespace testutil
