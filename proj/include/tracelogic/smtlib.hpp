#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tracelogic/fol.hpp"
#include "tracelogic/program_model.hpp"
#include "tracelogic/sexpr.hpp"

namespace tracelogic {

/// Signature, labeled axioms and the goal of one prover run.
struct ReasoningTask {
  std::string name;
  TraceMode mode = TraceMode::Pair;
  fol::Signature signature;
  std::vector<fol::LabeledFormula> theory;  // Nat ordering axioms, emitted with Nat_less
  std::vector<fol::LabeledFormula> axioms;  // semantics, then lemmas
  fol::Formula conjecture;
};

/// Deterministic SMT-LIB 2 text asserting the axioms and the negated
/// conjecture. Throws SortError if a formula uses an undeclared symbol.
std::string emit_smtlib(const ReasoningTask& task);

/// Converts an S-expression into a term or formula over `sig`. Names in
/// `scope` are bound variables; later entries shadow earlier ones.
/// `<`/`<=`/`>`/`>=` on Nat arguments map to the Nat ordering.
fol::Expr read_term(const SExpr& e, const fol::Signature& sig,
                    const std::vector<fol::BoundVar>& scope = {});

/// Result of reading back an emitted file.
struct SmtFile {
  fol::Signature signature;
  bool distinct_traces = false;
  std::vector<fol::LabeledFormula> named;  // every `(! f :named l)` in order
  std::optional<fol::Formula> negated_goal;  // the conjecture under the final (assert (not ...))
  bool check_sat = false;
};

/// Strict reader for the subset emit_smtlib produces. Anything else, including
/// unknown commands, misplaced goals and ill-sorted terms, is a ParseError.
SmtFile read_smtlib(std::string_view text);

}  // namespace tracelogic
