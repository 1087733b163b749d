#include "tracelogic/semantics.hpp"

namespace tracelogic {

using fol::Expr;
using fol::Sort;
using ast::BinaryOp;
using StmtKind = ast::Statement::Kind;

const char* to_string(Mutation m) {
  switch (m) {
    case Mutation::None: return "none";
    case Mutation::DropAssignFrame: return "drop-assign-frame";
    case Mutation::FlipArrayGuard: return "flip-array-guard";
    case Mutation::LoopSuccIdentity: return "loop-succ-identity";
  }
  return "?";
}

SemanticsEncoder::SemanticsEncoder(const ProgramModel& model, Mutation mutation)
    : model_(model), mutation_(mutation), pos_name_(model.signature().fresh_name("pos")) {}

Expr SemanticsEncoder::eval(const ast::Expr& e, const Expr& tp, const Expr& tr) const {
  const auto& p = model_.program();
  switch (e.kind) {
    case ast::Expr::Kind::IntLit: return fol::int_const(e.value);
    case ast::Expr::Kind::VarRef: return model_.scalar_at(*p.find(e.name), tp, tr);
    case ast::Expr::Kind::ArrayRead:
      return model_.array_at(*p.find(e.name), tp, eval(*e.operands[0], tp, tr), tr);
    case ast::Expr::Kind::Not: return fol::mk_not(eval(*e.operands[0], tp, tr));
    case ast::Expr::Kind::Binary: break;
  }
  Expr a = eval(*e.operands[0], tp, tr);
  Expr b = eval(*e.operands[1], tp, tr);
  switch (e.op) {
    case BinaryOp::Add: return fol::plus(a, b);
    case BinaryOp::Sub: return fol::minus(a, b);
    case BinaryOp::Mul: return fol::times(a, b);
    case BinaryOp::Lt: return fol::int_less(a, b);
    case BinaryOp::Le: return fol::int_le(a, b);
    case BinaryOp::Gt: return fol::int_greater(a, b);
    case BinaryOp::Ge: return fol::int_ge(a, b);
    case BinaryOp::Eq: return fol::eq(a, b);
    case BinaryOp::Ne: return fol::neq(a, b);
    case BinaryOp::And: return fol::mk_and({a, b});
    case BinaryOp::Or: return fol::mk_or({a, b});
  }
  return a;
}

Expr SemanticsEncoder::eq_var(const ast::VarDecl& v, const Expr& tp1, const Expr& tp2,
                              const Expr& tr) const {
  if (!v.is_array) return fol::eq(model_.scalar_at(v, tp1, tr), model_.scalar_at(v, tp2, tr));
  fol::BoundVar pos{pos_name_, Sort::Int};
  return fol::forall({pos}, fol::eq(model_.array_at(v, tp1, fol::var(pos), tr),
                                    model_.array_at(v, tp2, fol::var(pos), tr)));
}

Expr SemanticsEncoder::eq_all(const Expr& tp1, const Expr& tp2, const Expr& tr) const {
  std::vector<Expr> parts;
  for (const auto* v : model_.program().mutable_vars()) parts.push_back(eq_var(*v, tp1, tp2, tr));
  return fol::mk_and(std::move(parts));
}

Expr SemanticsEncoder::end(const ast::Statement& s) const {
  return model_.end(s, mutation_ == Mutation::LoopSuccIdentity);
}

Expr SemanticsEncoder::frame(const std::string& except, const Expr& end, const Expr& tp,
                             const Expr& tr) const {
  std::vector<Expr> parts;
  for (const auto* v : model_.program().mutable_vars()) {
    if (v->name != except) parts.push_back(eq_var(*v, end, tp, tr));
  }
  return fol::mk_and(std::move(parts));
}

Expr SemanticsEncoder::encode_block(const std::vector<ast::Statement>& block,
                                    const Expr& tr) const {
  std::vector<Expr> parts;
  for (const auto& s : block) parts.push_back(encode_statement(s, tr));
  return fol::mk_and(std::move(parts));
}

Expr SemanticsEncoder::encode_statement(const ast::Statement& s, const Expr& tr) const {
  const auto& p = model_.program();
  switch (s.kind) {
    case StmtKind::Skip: return eq_all(end(s), model_.tp(s), tr);

    case StmtKind::IntAssign: {
      Expr tp = model_.tp(s);
      Expr e = end(s);
      Expr update = fol::eq(model_.scalar_at(*p.find(s.target), e, tr), eval(*s.value, tp, tr));
      if (mutation_ == Mutation::DropAssignFrame) return update;
      return fol::mk_and({update, frame(s.target, e, tp, tr)});
    }

    case StmtKind::ArrayAssign: {
      const ast::VarDecl& a = *p.find(s.target);
      Expr tp = model_.tp(s);
      Expr e = end(s);
      Expr index = eval(*s.index, tp, tr);
      fol::BoundVar pos{pos_name_, Sort::Int};
      Expr guard = mutation_ == Mutation::FlipArrayGuard ? fol::eq(fol::var(pos), index)
                                                         : fol::neq(fol::var(pos), index);
      Expr pointwise = fol::forall(
          {pos}, fol::implies(guard, fol::eq(model_.array_at(a, e, fol::var(pos), tr),
                                             model_.array_at(a, tp, fol::var(pos), tr))));
      Expr update = fol::eq(model_.array_at(a, e, index, tr), eval(*s.value, tp, tr));
      return fol::mk_and({pointwise, update, frame(s.target, e, tp, tr)});
    }

    case StmtKind::IfElse: {
      Expr tp = model_.tp(s);
      Expr cond = eval(*s.condition, tp, tr);
      return fol::mk_and({
          fol::implies(cond, eq_all(model_.start(s.body.front()), tp, tr)),
          fol::implies(fol::mk_not(cond), eq_all(model_.start(s.orelse.front()), tp, tr)),
          fol::implies(cond, encode_block(s.body, tr)),
          fol::implies(fol::mk_not(cond), encode_block(s.orelse, tr)),
      });
    }

    case StmtKind::While: {
      fol::BoundVar it_var = model_.iteration_var(s);
      Expr it = fol::var(it_var);
      Expr last = model_.last_iteration(s, tr);
      Expr tp_it = model_.tp(s, it);
      Expr tp_last = model_.tp(s, last);
      Expr below = fol::nat_less(it, last);
      return fol::mk_and({
          fol::forall({it_var}, fol::implies(below, eval(*s.condition, tp_it, tr))),
          fol::mk_not(eval(*s.condition, tp_last, tr)),
          fol::forall({it_var},
                      fol::implies(below, eq_all(model_.start(s.body.front()), tp_it, tr))),
          fol::forall({it_var}, fol::implies(below, encode_block(s.body, tr))),
          eq_all(end(s), tp_last, tr),
      });
    }
  }
  return fol::mk_true();
}

std::vector<fol::LabeledFormula> SemanticsEncoder::encode_program() const {
  std::vector<fol::LabeledFormula> out;
  Expr tr = model_.trace_var();
  for (const auto& s : model_.program().body) {
    Expr f = encode_statement(s, tr);
    if (model_.relational()) f = fol::forall({{"tr", Sort::Trace}}, std::move(f));
    out.push_back({"semantics-l" + std::to_string(s.line), std::move(f)});
  }
  return out;
}

}  // namespace tracelogic
