#pragma once

#include <vector>

#include "tracelogic/program_model.hpp"

namespace tracelogic {

/// Deliberate encoder defects, used to check that the oracle notices them.
enum class Mutation {
  None,
  DropAssignFrame,   // integer assignments lose their frame conjunct
  FlipArrayGuard,    // pointwise array frame guarded by pos = e1 instead of pos != e1
  LoopSuccIdentity,  // end of a loop body is l_w(..., It) instead of l_w(..., s(It))
};

const char* to_string(Mutation m);

/// Structural semantics of a program as trace-logic axioms over a free trace
/// variable `tr`.
class SemanticsEncoder {
 public:
  explicit SemanticsEncoder(const ProgramModel& model, Mutation mutation = Mutation::None);

  const ProgramModel& model() const { return model_; }

  /// Integer expressions become Int terms, boolean expressions formulas.
  fol::Expr eval(const ast::Expr& e, const fol::Expr& tp, const fol::Expr& tr) const;

  fol::Expr eq_var(const ast::VarDecl& v, const fol::Expr& tp1, const fol::Expr& tp2,
                   const fol::Expr& tr) const;
  /// Conjunction of eq_var over all mutable variables.
  fol::Expr eq_all(const fol::Expr& tp1, const fol::Expr& tp2, const fol::Expr& tr) const;

  fol::Expr encode_statement(const ast::Statement& s, const fol::Expr& tr) const;

  /// One axiom `semantics-l<line>` per top-level statement, closed over tr in
  /// pair mode.
  std::vector<fol::LabeledFormula> encode_program() const;

 private:
  fol::Expr end(const ast::Statement& s) const;
  fol::Expr frame(const std::string& except, const fol::Expr& end, const fol::Expr& tp,
                  const fol::Expr& tr) const;
  fol::Expr encode_block(const std::vector<ast::Statement>& block, const fol::Expr& tr) const;

  const ProgramModel& model_;
  Mutation mutation_;
  std::string pos_name_;
};

}  // namespace tracelogic
