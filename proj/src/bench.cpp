#include "tracelogic/bench.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "tracelogic/error.hpp"

namespace tracelogic {

int BenchmarkResult::total(std::size_t c) const {
  int n = 0;
  for (const auto& row : cells) n += row.at(c).verdict == Verdict::Proved;
  return n;
}

int BenchmarkResult::unique(std::size_t c) const {
  int n = 0;
  for (const auto& row : cells) {
    if (row.at(c).verdict != Verdict::Proved) continue;
    bool other = false;
    for (std::size_t k = 0; k < row.size(); ++k) other |= k != c && row[k].verdict == Verdict::Proved;
    n += !other;
  }
  return n;
}

int BenchmarkResult::solved_by_any() const {
  int n = 0;
  for (const auto& row : cells) {
    n += std::any_of(row.begin(), row.end(), [](const SolverOutcome& o) { return o.verdict == Verdict::Proved; });
  }
  return n;
}

namespace {

// pads by code points so the check mark lines up
std::string pad(const std::string& s, std::size_t width) {
  std::size_t len = 0;
  for (unsigned char ch : s) len += (ch & 0xC0) != 0x80;
  return s + std::string(width > len ? width - len : 0, ' ');
}

}  // namespace

std::string BenchmarkResult::render() const {
  std::size_t first = std::string("Unique").size();
  for (const auto& b : benchmarks) first = std::max(first, b.size());
  std::vector<std::size_t> width;
  for (const auto& c : columns) width.push_back(std::max<std::size_t>(c.size(), 4));

  std::ostringstream os;
  auto row = [&](const std::string& head, const std::vector<std::string>& items) {
    os << pad(head, first);
    for (std::size_t c = 0; c < items.size(); ++c) os << "  " << pad(items[c], width[c]);
    os << '\n';
  };
  row("Benchmark", columns);
  for (std::size_t b = 0; b < benchmarks.size(); ++b) {
    std::vector<std::string> marks;
    for (const auto& o : cells[b]) marks.push_back(o.verdict == Verdict::Proved ? "✓" : "–");
    row(benchmarks[b], marks);
  }
  std::vector<std::string> totals, uniques;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    totals.push_back(std::to_string(total(c)));
    uniques.push_back(std::to_string(unique(c)));
  }
  row("Total", totals);
  row("Unique", uniques);
  os << "Solved by any setting: " << solved_by_any() << "/" << benchmarks.size() << '\n';
  return os.str();
}

std::string BenchmarkResult::jsonl() const {
  std::ostringstream os;
  for (std::size_t b = 0; b < benchmarks.size(); ++b) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto& o = cells[b][c];
      nlohmann::json j{{"benchmark", benchmarks[b]},
                       {"solver", columns[c]},
                       {"verdict", to_string(o.verdict)},
                       {"seconds", o.seconds},
                       {"excerpt", o.excerpt}};
      os << j.dump() << '\n';
    }
  }
  return os.str();
}

std::vector<std::filesystem::path> collect_specs(const std::vector<std::filesystem::path>& paths) {
  std::vector<std::filesystem::path> out;
  for (const auto& p : paths) {
    if (!std::filesystem::is_directory(p)) {
      out.push_back(p);
      continue;
    }
    std::vector<std::filesystem::path> found;
    for (const auto& e : std::filesystem::directory_iterator(p)) {
      if (e.is_regular_file() && e.path().extension() == ".spec") found.push_back(e.path());
    }
    std::sort(found.begin(), found.end());
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

BenchmarkResult run_bench(const std::vector<std::filesystem::path>& specs,
                          const std::vector<SolverConfig>& solvers, const EncodeOptions& opt,
                          const std::filesystem::path& out_dir, unsigned workers) {
  if (solvers.empty()) throw ConfigError("no solver configured");
  for (const auto& s : solvers) {
    if (!find_executable(s.executable)) {
      throw ConfigError("solver executable '" + s.executable + "' not found (" + s.name + ")");
    }
  }

  BenchmarkResult result;
  for (const auto& s : solvers) result.columns.push_back(s.name);

  std::vector<SolverJob> jobs;
  std::vector<std::pair<std::size_t, std::size_t>> where;
  for (const auto& spec : specs) {
    std::size_t b = result.benchmarks.size();
    result.benchmarks.push_back(spec.stem().string());
    result.cells.emplace_back(solvers.size());
    try {
      auto file = write_smtlib(encode_file(spec, opt), out_dir);
      for (std::size_t c = 0; c < solvers.size(); ++c) {
        jobs.push_back({file, solvers[c]});
        where.emplace_back(b, c);
      }
    } catch (const Error& e) {
      for (auto& cell : result.cells[b]) cell.excerpt = e.what();
    }
  }

  auto outcomes = run_solver_jobs(jobs, workers);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    result.cells[where[i].first][where[i].second] = std::move(outcomes[i]);
  }
  return result;
}

}  // namespace tracelogic
