#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tracelogic {

enum class Verdict { Proved, NotProved, Unknown, Timeout, SolverError };

const char* to_string(Verdict v);
std::optional<Verdict> parse_verdict(const std::string& s);

/// Maps solver output lines to verdicts. `exact` rules match a whole trimmed
/// line, the others any line containing `text`.
struct ResultRule {
  std::string text;
  Verdict verdict = Verdict::Unknown;
  bool exact = true;
};

struct SolverConfig {
  std::string name;        // column name in reports, e.g. "z3" or "vampire-S+A"
  std::string executable;  // bare name (looked up on PATH) or path
  /// `{file}` and `{timeout}` are substituted.
  std::vector<std::string> args;
  int timeout_seconds = 60;
  std::vector<ResultRule> results;
};

struct SolverOutcome {
  Verdict verdict = Verdict::SolverError;
  double seconds = 0;
  std::string excerpt;  // first lines of the combined output
};

/// Stock configurations: z3, cvc4, cvc5, and vampire in the four settings
/// S, S+A, F, F+A (partial/full theory axioms, with/without AVATAR).
std::vector<SolverConfig> builtin_solvers();

/// Solvers named `name`: an exact config name, or a family prefix such as
/// "vampire" selecting every "vampire-*" setting. Entries from `config_file`
/// (JSON) replace built-ins with the same name. Throws ConfigError when
/// nothing matches.
std::vector<SolverConfig> select_solvers(const std::string& name,
                                         const std::optional<std::filesystem::path>& config_file = {});

/// Parses `{"solvers": [{"name", "executable", "args", "timeout", "results"}]}`.
std::vector<SolverConfig> load_solver_configs(const std::filesystem::path& path);

/// PATH lookup; paths containing '/' are checked directly.
std::optional<std::filesystem::path> find_executable(const std::string& name);

/// First line matching a rule decides; `(error` lines and output matching
/// nothing are SolverError.
Verdict classify_output(const std::string& output, const std::vector<ResultRule>& rules);

/// Runs one solver on one file. The process group is killed one second after
/// the configured timeout. Throws ConfigError if the executable is missing.
SolverOutcome run_solver(const std::filesystem::path& file, const SolverConfig& cfg);

struct SolverJob {
  std::filesystem::path file;
  SolverConfig config;
};

/// Runs the jobs on `workers` threads (hardware concurrency when 0); results
/// are returned in job order.
std::vector<SolverOutcome> run_solver_jobs(const std::vector<SolverJob>& jobs, unsigned workers = 0);

}  // namespace tracelogic
