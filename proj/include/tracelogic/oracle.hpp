#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tracelogic/interpreter.hpp"
#include "tracelogic/program_model.hpp"
#include "tracelogic/smtlib.hpp"

namespace tracelogic {

enum class Truth { False, True, Undetermined };

const char* to_string(Truth t);

struct OracleOptions {
  /// Added to the Int quantifier domain.
  std::vector<std::int64_t> extra_ints;
};

/// Bounded three-valued evaluation of closed formulas in the model given by
/// one (single mode) or two (pair mode) execution records.
///
/// Terms naming a timepoint or loop instance the records do not contain are
/// undetermined. A quantifier ignores undetermined instances: forall is false
/// if some instance is false, true if none is and some instance is true, and
/// undetermined otherwise (exists dually).
class Oracle {
 public:
  Oracle(const ProgramModel& model, std::vector<const TraceRecord*> records,
         OracleOptions options = {});

  Truth evaluate(const fol::Expr& formula) const;

  std::uint64_t nat_bound() const { return nat_bound_; }
  /// Int domain used for a formula: record and input values, the formula's
  /// literals, extra ints, and one past each end.
  std::vector<std::int64_t> int_domain(const fol::Expr& formula) const;

  struct Value {
    fol::Sort sort = fol::Sort::Int;
    std::int64_t v = 0;  // Nat/Int value, Bool 0/1, trace index, timepoint id (-1: unrecorded)
  };
  using Env = std::vector<std::pair<const std::string*, Value>>;

 private:
  enum class SymKind { Zero, Succ, Pred, Add, Sub, Mul, Lt, Le, Gt, Ge, NatLess, End, Trace, Loc, Last, Var };
  struct SymInfo {
    SymKind kind = SymKind::Var;
    int line = 0;                          // Loc, Last
    int trace = 0;                         // Trace
    const ast::VarDecl* decl = nullptr;    // Var
  };

  struct Domains {
    std::vector<std::int64_t> ints;
  };

  std::optional<Value> term(const fol::Expr& e, Env& env, const Domains& d) const;
  Truth formula(const fol::Expr& e, Env& env, const Domains& d) const;
  Truth quantified(const fol::Expr& e, std::size_t k, Env& env, const Domains& d, bool& any_true,
                   bool& any_false) const;
  std::vector<std::int64_t> domain_of(fol::Sort s, const Domains& d) const;
  const TraceRecord& record(std::int64_t trace) const;

  const ProgramModel& model_;
  std::vector<const TraceRecord*> records_;
  OracleOptions options_;
  std::unordered_map<std::string, SymInfo> symbols_;
  std::map<GroundTimepoint, std::int64_t> timepoint_ids_;
  std::vector<GroundTimepoint> timepoints_;
  std::int64_t end_id_ = 0;
  std::uint64_t nat_bound_ = 2;
  std::vector<std::int64_t> base_ints_;
};

struct AxiomVerdict {
  std::string label;
  Truth verdict = Truth::Undetermined;
};

struct OracleReport {
  std::vector<AxiomVerdict> axioms;  // theory, semantics and lemmas in task order
  Truth conjecture = Truth::Undetermined;

  bool pass() const;
  std::vector<std::string> failures() const;
};

/// Evaluates every axiom of the task and, separately, the conjecture.
OracleReport check_task(const ReasoningTask& task, const ProgramModel& model,
                        const std::vector<const TraceRecord*>& records, const OracleOptions& options = {});

}  // namespace tracelogic
