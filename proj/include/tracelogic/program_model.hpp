#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "tracelogic/ast.hpp"
#include "tracelogic/fol.hpp"

namespace tracelogic {

/// Relational tasks reason about two traces t1, t2; plain tasks about one,
/// in which case every trace argument is dropped from the signature.
enum class TraceMode { Single, Pair };

inline int trace_count(TraceMode m) { return m == TraceMode::Pair ? 2 : 1; }

/// Timepoint calculus over one program: symbols l<line>, n<line>, main_end,
/// variable symbols, and the derived terms tp/start/end/lastIt.
class ProgramModel {
 public:
  struct StatementInfo {
    const ast::Statement* stmt = nullptr;
    std::vector<const ast::Statement*> loops;  // enclosing whiles, outermost first
    const ast::Statement* parent = nullptr;    // enclosing IfElse or While
    bool in_else = false;
    const ast::Statement* next = nullptr;      // successor in the same block
  };

  ProgramModel(ast::Program program, TraceMode mode);

  const ast::Program& program() const { return *program_; }
  TraceMode mode() const { return mode_; }
  bool relational() const { return mode_ == TraceMode::Pair; }

  /// All statements in source order.
  const std::vector<const ast::Statement*>& statements() const { return order_; }
  std::vector<const ast::Statement*> loops() const;
  const StatementInfo& info(const ast::Statement& s) const;
  const ast::Statement* at_line(int line) const;

  // --- symbols --------------------------------------------------------------
  fol::FunctionSymbol location_symbol(const ast::Statement& s) const;
  fol::FunctionSymbol last_iteration_symbol(const ast::Statement& w) const;
  fol::FunctionSymbol variable_symbol(const ast::VarDecl& v) const;
  fol::BoundVar iteration_var(const ast::Statement& w) const;

  /// t1, t2 (pair mode), Nat_less, main_end, l*, n*, program variables.
  const fol::Signature& signature() const { return signature_; }

  // --- terms ----------------------------------------------------------------
  fol::Expr main_end() const;
  fol::Expr trace_var() const { return fol::var("tr", fol::Sort::Trace); }
  fol::Expr trace(int i) const;  // t1 or t2

  std::vector<fol::Expr> enclosing_iterations(const ast::Statement& s) const;
  /// l_s(It_w1, ..., It_wk) for a non-loop statement.
  fol::Expr tp(const ast::Statement& s) const;
  /// l_w(It_w1, ..., It_wk, it) for a loop.
  fol::Expr tp(const ast::Statement& w, fol::Expr it) const;
  fol::Expr start(const ast::Statement& s) const;
  /// With `loop_succ_identity` the last statement of a loop body ends at
  /// l_w(..., It_w) instead of l_w(..., s(It_w)); only used by mutation tests.
  fol::Expr end(const ast::Statement& s, bool loop_succ_identity = false) const;
  fol::Expr last_iteration(const ast::Statement& w, const fol::Expr& tr) const;

  /// Start of the first statement of main.
  fol::Expr first_timepoint() const;

  /// Value of a scalar at a timepoint: v(tp, tr), v(tr) for constants.
  /// The timepoint is ignored for constants; the trace is dropped in single mode.
  fol::Expr scalar_at(const ast::VarDecl& v, const fol::Expr& tp, const fol::Expr& tr) const;
  fol::Expr array_at(const ast::VarDecl& v, const fol::Expr& tp, fol::Expr pos,
                     const fol::Expr& tr) const;

 private:
  void index_block(const std::vector<ast::Statement>& block,
                   std::vector<const ast::Statement*>& loops, const ast::Statement* parent,
                   bool in_else);
  void build_signature();

  std::shared_ptr<const ast::Program> program_;
  TraceMode mode_;
  std::vector<const ast::Statement*> order_;
  std::unordered_map<const ast::Statement*, StatementInfo> info_;
  std::unordered_map<int, const ast::Statement*> by_line_;
  fol::Signature signature_;
};

}  // namespace tracelogic
