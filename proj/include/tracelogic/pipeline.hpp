#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tracelogic/lemmas.hpp"
#include "tracelogic/oracle.hpp"
#include "tracelogic/property.hpp"
#include "tracelogic/smtlib.hpp"

namespace tracelogic {

struct EncodeOptions {
  std::optional<int> traces;  // overrides (set-traces N)
  bool lemmas = true;
  LemmaConfig lemma_config;
  Mutation mutation = Mutation::None;
};

/// Everything derived from one `.spec` file.
struct EncodedSpec {
  SpecFile spec;
  std::shared_ptr<const ProgramModel> model;
  ReasoningTask task;
  std::size_t semantics_count = 0;
  std::size_t lemma_count = 0;
};

/// parse -> timepoints -> semantics -> lemmas -> property. Errors propagate
/// with source positions.
EncodedSpec encode_spec(std::string_view text, const std::string& name, const EncodeOptions& opt = {});
EncodedSpec encode_file(const std::filesystem::path& path, const EncodeOptions& opt = {});

/// Writes `<out_dir>/<stem>.smt2` and returns its path.
std::filesystem::path write_smtlib(const EncodedSpec& enc, const std::filesystem::path& out_dir);

struct NamedInput {
  std::string name;
  Input input;
};

/// `*.in` files of a directory, sorted by name. Throws Error when there are none.
std::vector<NamedInput> load_inputs(const std::filesystem::path& dir);
/// Default fixture directory of a spec: `foo.spec` -> `foo.inputs/`.
std::filesystem::path inputs_dir_for(const std::filesystem::path& spec);

struct CheckRun {
  std::string inputs;  // "a.in" or "a.in,b.in"
  std::optional<OracleReport> report;
  std::string error;   // interpreter failure (fuel, overflow)
};

struct CheckResult {
  std::vector<CheckRun> runs;

  bool pass() const;
  std::size_t failed_runs() const;
};

/// Runs the interpreter on every input (every ordered pair of inputs in pair
/// mode) and evaluates all axioms and the conjecture.
CheckResult check_inputs(const EncodedSpec& enc, const std::vector<NamedInput>& inputs,
                         const OracleOptions& options = {});

/// Runs the interpreter on one input (single mode) or a pair and evaluates the task.
OracleReport check_records(const EncodedSpec& enc, const std::vector<const Input*>& inputs,
                           const OracleOptions& options = {});

}  // namespace tracelogic
