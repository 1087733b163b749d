#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tracelogic/pipeline.hpp"
#include "tracelogic/solver.hpp"

namespace tracelogic {

/// Outcomes of every benchmark x solver-setting pair. `cells[b][c]` belongs to
/// benchmark `b` and column `c`.
struct BenchmarkResult {
  std::vector<std::string> benchmarks;
  std::vector<std::string> columns;
  std::vector<std::vector<SolverOutcome>> cells;

  /// Proved cells in column `c`.
  int total(std::size_t c) const;
  /// Benchmarks proved in column `c` and in no other column.
  int unique(std::size_t c) const;
  /// Benchmarks proved in at least one column.
  int solved_by_any() const;

  /// Grid with one row per benchmark, then Total and Unique rows.
  std::string render() const;
  /// One JSON record per cell.
  std::string jsonl() const;
};

/// `*.spec` files of a directory (sorted), or the given files as they are.
std::vector<std::filesystem::path> collect_specs(const std::vector<std::filesystem::path>& paths);

/// Encodes every spec into `out_dir` and runs every solver on it. A spec that
/// fails to encode gets SolverError cells; the run continues. Throws
/// ConfigError before running anything if a solver executable is missing.
BenchmarkResult run_bench(const std::vector<std::filesystem::path>& specs,
                          const std::vector<SolverConfig>& solvers, const EncodeOptions& opt,
                          const std::filesystem::path& out_dir, unsigned workers = 0);

}  // namespace tracelogic
