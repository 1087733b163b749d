#include "tracelogic/program_model.hpp"

#include <algorithm>

namespace tracelogic {

using fol::Expr;
using fol::Sort;

ProgramModel::ProgramModel(ast::Program program, TraceMode mode)
    : program_(std::make_shared<const ast::Program>(std::move(program))), mode_(mode) {
  std::vector<const ast::Statement*> loops;
  index_block(program_->body, loops, nullptr, false);
  std::sort(order_.begin(), order_.end(),
            [](const ast::Statement* a, const ast::Statement* b) { return a->line < b->line; });
  build_signature();
}

void ProgramModel::index_block(const std::vector<ast::Statement>& block,
                               std::vector<const ast::Statement*>& loops,
                               const ast::Statement* parent, bool in_else) {
  for (std::size_t i = 0; i < block.size(); ++i) {
    const ast::Statement& s = block[i];
    StatementInfo si;
    si.stmt = &s;
    si.loops = loops;
    si.parent = parent;
    si.in_else = in_else;
    si.next = i + 1 < block.size() ? &block[i + 1] : nullptr;
    info_.emplace(&s, std::move(si));
    by_line_.emplace(s.line, &s);
    order_.push_back(&s);

    if (s.kind == ast::Statement::Kind::While) {
      loops.push_back(&s);
      index_block(s.body, loops, &s, false);
      loops.pop_back();
    } else if (s.kind == ast::Statement::Kind::IfElse) {
      index_block(s.body, loops, &s, false);
      index_block(s.orelse, loops, &s, true);
    }
  }
}

void ProgramModel::build_signature() {
  if (relational()) {
    signature_.declare({"t1", {}, Sort::Trace, false});
    signature_.declare({"t2", {}, Sort::Trace, false});
  }
  signature_.declare(fol::nat_less_symbol());
  signature_.declare({"main_end", {}, Sort::Time, false});
  for (const auto* s : order_) signature_.declare(location_symbol(*s));
  for (const auto* s : order_) {
    if (s->is_while()) signature_.declare(last_iteration_symbol(*s));
  }
  for (const auto& d : program_->decls) signature_.declare(variable_symbol(d));
}

std::vector<const ast::Statement*> ProgramModel::loops() const {
  std::vector<const ast::Statement*> out;
  for (const auto* s : order_) {
    if (s->is_while()) out.push_back(s);
  }
  return out;
}

const ProgramModel::StatementInfo& ProgramModel::info(const ast::Statement& s) const {
  auto it = info_.find(&s);
  if (it == info_.end()) throw Error("statement does not belong to this program");
  return it->second;
}

const ast::Statement* ProgramModel::at_line(int line) const {
  auto it = by_line_.find(line);
  return it == by_line_.end() ? nullptr : it->second;
}

fol::FunctionSymbol ProgramModel::location_symbol(const ast::Statement& s) const {
  std::size_t arity = info(s).loops.size() + (s.is_while() ? 1 : 0);
  return {"l" + std::to_string(s.line), std::vector<Sort>(arity, Sort::Nat), Sort::Time, false};
}

fol::FunctionSymbol ProgramModel::last_iteration_symbol(const ast::Statement& w) const {
  std::vector<Sort> args(info(w).loops.size(), Sort::Nat);
  if (relational()) args.push_back(Sort::Trace);
  return {"n" + std::to_string(w.line), std::move(args), Sort::Nat, false};
}

fol::FunctionSymbol ProgramModel::variable_symbol(const ast::VarDecl& v) const {
  std::vector<Sort> args;
  if (!v.is_const) args.push_back(Sort::Time);
  if (v.is_array) args.push_back(Sort::Int);
  if (relational()) args.push_back(Sort::Trace);
  return {v.name, std::move(args), Sort::Int, false};
}

fol::BoundVar ProgramModel::iteration_var(const ast::Statement& w) const {
  return {"It" + std::to_string(w.line), Sort::Nat};
}

Expr ProgramModel::main_end() const { return fol::app("main_end", {}, Sort::Time); }

Expr ProgramModel::trace(int i) const {
  return fol::app(i == 1 ? "t1" : "t2", {}, Sort::Trace);
}

std::vector<Expr> ProgramModel::enclosing_iterations(const ast::Statement& s) const {
  std::vector<Expr> out;
  for (const auto* w : info(s).loops) out.push_back(fol::var(iteration_var(*w)));
  return out;
}

Expr ProgramModel::tp(const ast::Statement& s) const {
  if (s.is_while()) throw Error("tp of a loop needs an iteration term");
  return fol::app("l" + std::to_string(s.line), enclosing_iterations(s), Sort::Time);
}

Expr ProgramModel::tp(const ast::Statement& w, Expr it) const {
  auto args = enclosing_iterations(w);
  args.push_back(std::move(it));
  return fol::app("l" + std::to_string(w.line), std::move(args), Sort::Time);
}

Expr ProgramModel::start(const ast::Statement& s) const {
  return s.is_while() ? tp(s, fol::zero()) : tp(s);
}

Expr ProgramModel::end(const ast::Statement& s, bool loop_succ_identity) const {
  const StatementInfo& si = info(s);
  if (si.next) return start(*si.next);
  if (!si.parent) return main_end();
  if (si.parent->is_while()) {
    Expr it = fol::var(iteration_var(*si.parent));
    return tp(*si.parent, loop_succ_identity ? it : fol::succ(it));
  }
  return end(*si.parent, loop_succ_identity);
}

Expr ProgramModel::last_iteration(const ast::Statement& w, const Expr& tr) const {
  auto args = enclosing_iterations(w);
  if (relational()) args.push_back(tr);
  return fol::app("n" + std::to_string(w.line), std::move(args), Sort::Nat);
}

Expr ProgramModel::first_timepoint() const {
  if (program_->body.empty()) return main_end();
  return start(program_->body.front());
}

Expr ProgramModel::scalar_at(const ast::VarDecl& v, const Expr& tp, const Expr& tr) const {
  std::vector<Expr> args;
  if (!v.is_const) args.push_back(tp);
  if (relational()) args.push_back(tr);
  return fol::app(v.name, std::move(args), Sort::Int);
}

Expr ProgramModel::array_at(const ast::VarDecl& v, const Expr& tp, Expr pos,
                            const Expr& tr) const {
  std::vector<Expr> args;
  if (!v.is_const) args.push_back(tp);
  args.push_back(std::move(pos));
  if (relational()) args.push_back(tr);
  return fol::app(v.name, std::move(args), Sort::Int);
}

}  // namespace tracelogic
