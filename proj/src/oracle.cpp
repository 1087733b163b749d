#include "tracelogic/oracle.hpp"

#include <algorithm>
#include <set>

namespace tracelogic {

using fol::Expr;
using fol::Kind;
using fol::Sort;

const char* to_string(Truth t) {
  switch (t) {
    case Truth::False: return "false";
    case Truth::True: return "true";
    case Truth::Undetermined: return "undetermined";
  }
  return "?";
}

namespace {

Truth kleene_not(Truth t) {
  if (t == Truth::True) return Truth::False;
  if (t == Truth::False) return Truth::True;
  return t;
}

Truth from_bool(bool b) { return b ? Truth::True : Truth::False; }

void collect_literals(const Expr& e, std::set<std::int64_t>& out) {
  if (e.kind() == Kind::IntConst) out.insert(e.value());
  for (const auto& a : e.args()) collect_literals(a, out);
}

}  // namespace

Oracle::Oracle(const ProgramModel& model, std::vector<const TraceRecord*> records,
               OracleOptions options)
    : model_(model), records_(std::move(records)), options_(std::move(options)) {
  std::size_t expected = model.relational() ? 2 : 1;
  if (records_.size() != expected) {
    throw Error("oracle needs " + std::to_string(expected) + " execution records");
  }

  auto add = [&](const std::string& name, SymInfo info) { symbols_.emplace(name, info); };
  add("zero", {SymKind::Zero});
  add("s", {SymKind::Succ});
  add("p", {SymKind::Pred});
  add("+", {SymKind::Add});
  add("-", {SymKind::Sub});
  add("*", {SymKind::Mul});
  add("<", {SymKind::Lt});
  add("<=", {SymKind::Le});
  add(">", {SymKind::Gt});
  add(">=", {SymKind::Ge});
  add(std::string(fol::kNatLess), {SymKind::NatLess});
  add("main_end", {SymKind::End});
  if (model.relational()) {
    add("t1", {SymKind::Trace, 0, 0});
    add("t2", {SymKind::Trace, 0, 1});
  }
  for (const auto* s : model.statements()) {
    add("l" + std::to_string(s->line), {SymKind::Loc, s->line});
    if (s->is_while()) add("n" + std::to_string(s->line), {SymKind::Last, s->line});
  }
  for (const auto& d : model.program().decls) add(d.name, {SymKind::Var, 0, 0, &d});

  // timepoints recorded in any trace share ids; main_end is recorded last in each
  std::set<std::int64_t> ints;
  for (const auto* r : records_) {
    for (const auto& [tp, st] : r->visits) {
      if (timepoint_ids_.emplace(tp, static_cast<std::int64_t>(timepoints_.size())).second) {
        timepoints_.push_back(tp);
      }
      for (const auto& [name, v] : st.scalars) ints.insert(v);
      for (const auto& [name, cells] : st.arrays) {
        for (const auto& [k, v] : cells) {
          ints.insert(k);
          ints.insert(v);
        }
      }
    }
    for (const auto& [loop, n] : r->last_iterations) nat_bound_ = std::max(nat_bound_, n + 2);
    for (const auto& [name, v] : r->input.scalars) ints.insert(v);
    for (const auto& [name, cells] : r->input.arrays) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        ints.insert(static_cast<std::int64_t>(i));
        ints.insert(cells[i]);
      }
    }
  }
  end_id_ = timepoint_ids_.at(GroundTimepoint{});
  for (auto v : options_.extra_ints) ints.insert(v);
  base_ints_.assign(ints.begin(), ints.end());
}

std::vector<std::int64_t> Oracle::int_domain(const Expr& f) const {
  std::set<std::int64_t> ints(base_ints_.begin(), base_ints_.end());
  collect_literals(f, ints);
  if (ints.empty()) ints.insert(0);
  std::int64_t lo = *ints.begin(), hi = *ints.rbegin();
  if (lo > INT64_MIN) ints.insert(lo - 1);
  if (hi < INT64_MAX) ints.insert(hi + 1);
  return {ints.begin(), ints.end()};
}

const TraceRecord& Oracle::record(std::int64_t trace) const {
  return *records_.at(static_cast<std::size_t>(trace));
}

Truth Oracle::evaluate(const Expr& f) const {
  if (!f.is_formula()) throw Error("oracle evaluates formulas only");
  Domains d{int_domain(f)};
  Env env;
  return formula(f, env, d);
}

std::vector<std::int64_t> Oracle::domain_of(Sort s, const Domains& d) const {
  std::vector<std::int64_t> out;
  switch (s) {
    case Sort::Nat:
      for (std::uint64_t i = 0; i <= nat_bound_; ++i) out.push_back(static_cast<std::int64_t>(i));
      break;
    case Sort::Int: out = d.ints; break;
    case Sort::Time:
      for (std::size_t i = 0; i < timepoints_.size(); ++i) out.push_back(static_cast<std::int64_t>(i));
      break;
    case Sort::Trace:
      for (std::size_t i = 0; i < records_.size(); ++i) out.push_back(static_cast<std::int64_t>(i));
      break;
    case Sort::Bool: throw Error("cannot quantify over Bool");
  }
  return out;
}

std::optional<Oracle::Value> Oracle::term(const Expr& e, Env& env, const Domains& d) const {
  switch (e.kind()) {
    case Kind::IntConst: return Value{Sort::Int, e.value()};
    case Kind::Var:
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (*it->first == e.name()) return it->second;
      }
      throw Error("unbound variable '" + e.name() + "'");
    case Kind::App: break;
    default: {
      Truth t = formula(e, env, d);
      if (t == Truth::Undetermined) return std::nullopt;
      return Value{Sort::Bool, t == Truth::True ? 1 : 0};
    }
  }

  auto sym = symbols_.find(e.name());
  if (sym == symbols_.end()) throw Error("unbound symbol '" + e.name() + "'");
  const SymInfo& info = sym->second;

  std::vector<Value> args;
  args.reserve(e.args().size());
  for (const auto& a : e.args()) {
    auto v = term(a, env, d);
    if (!v) return std::nullopt;
    args.push_back(*v);
  }

  auto arith = [&](auto op) -> std::optional<Value> {
    std::int64_t r;
    if (op(args[0].v, args[1].v, &r)) return std::nullopt;
    return Value{Sort::Int, r};
  };
  auto boolean = [](bool b) { return Value{Sort::Bool, b ? 1 : 0}; };

  switch (info.kind) {
    case SymKind::Zero: return Value{Sort::Nat, 0};
    case SymKind::Succ: return Value{Sort::Nat, args[0].v + 1};
    case SymKind::Pred:
      if (args[0].v == 0) return std::nullopt;
      return Value{Sort::Nat, args[0].v - 1};
    case SymKind::Add:
      return arith([](std::int64_t a, std::int64_t b, std::int64_t* r) { return __builtin_add_overflow(a, b, r); });
    case SymKind::Sub:
      return arith([](std::int64_t a, std::int64_t b, std::int64_t* r) { return __builtin_sub_overflow(a, b, r); });
    case SymKind::Mul:
      return arith([](std::int64_t a, std::int64_t b, std::int64_t* r) { return __builtin_mul_overflow(a, b, r); });
    case SymKind::Lt: return boolean(args[0].v < args[1].v);
    case SymKind::Le: return boolean(args[0].v <= args[1].v);
    case SymKind::Gt: return boolean(args[0].v > args[1].v);
    case SymKind::Ge: return boolean(args[0].v >= args[1].v);
    case SymKind::NatLess: return boolean(args[0].v < args[1].v);
    case SymKind::End: return Value{Sort::Time, end_id_};
    case SymKind::Trace: return Value{Sort::Trace, info.trace};
    case SymKind::Loc: {
      GroundTimepoint tp{info.line, {}};
      for (const auto& a : args) tp.iters.push_back(static_cast<std::uint64_t>(a.v));
      auto it = timepoint_ids_.find(tp);
      return Value{Sort::Time, it == timepoint_ids_.end() ? -1 : it->second};
    }
    case SymKind::Last: {
      LoopInstance loop{info.line, {}};
      std::size_t n = model_.relational() ? args.size() - 1 : args.size();
      for (std::size_t i = 0; i < n; ++i) loop.outer.push_back(static_cast<std::uint64_t>(args[i].v));
      auto last = record(model_.relational() ? args.back().v : 0).last_iteration(loop);
      if (!last) return std::nullopt;
      return Value{Sort::Nat, static_cast<std::int64_t>(*last)};
    }
    case SymKind::Var: {
      const ast::VarDecl& v = *info.decl;
      std::size_t i = 0;
      std::int64_t time = v.is_const ? end_id_ : args[i++].v;
      std::optional<std::int64_t> index;
      if (v.is_array) index = args[i++].v;
      const TraceRecord& r = record(model_.relational() ? args[i].v : 0);
      if (time < 0) return std::nullopt;
      const State* st = r.at(timepoints_[static_cast<std::size_t>(time)]);
      if (!st) return std::nullopt;
      return Value{Sort::Int, index ? st->element(v.name, *index) : st->scalar(v.name)};
    }
  }
  return std::nullopt;
}

Truth Oracle::formula(const Expr& e, Env& env, const Domains& d) const {
  switch (e.kind()) {
    case Kind::True: return Truth::True;
    case Kind::False: return Truth::False;
    case Kind::Not: return kleene_not(formula(e.arg(0), env, d));
    case Kind::And: {
      Truth acc = Truth::True;
      for (const auto& a : e.args()) {
        Truth t = formula(a, env, d);
        if (t == Truth::False) return Truth::False;
        if (t == Truth::Undetermined) acc = Truth::Undetermined;
      }
      return acc;
    }
    case Kind::Or: {
      Truth acc = Truth::False;
      for (const auto& a : e.args()) {
        Truth t = formula(a, env, d);
        if (t == Truth::True) return Truth::True;
        if (t == Truth::Undetermined) acc = Truth::Undetermined;
      }
      return acc;
    }
    case Kind::Implies: {
      Truth lhs = formula(e.arg(0), env, d);
      if (lhs == Truth::False) return Truth::True;
      Truth rhs = formula(e.arg(1), env, d);
      if (rhs == Truth::True) return Truth::True;
      if (lhs == Truth::True) return rhs;
      return Truth::Undetermined;
    }
    case Kind::Eq: {
      auto a = term(e.arg(0), env, d);
      if (!a) return Truth::Undetermined;
      auto b = term(e.arg(1), env, d);
      if (!b) return Truth::Undetermined;
      if (a->sort == Sort::Time && (a->v < 0 || b->v < 0)) return Truth::Undetermined;
      return from_bool(a->v == b->v);
    }
    case Kind::App: {
      auto v = term(e, env, d);
      if (!v) return Truth::Undetermined;
      return from_bool(v->v != 0);
    }
    case Kind::Forall:
    case Kind::Exists: {
      bool any_true = false, any_false = false;
      Truth early = quantified(e, 0, env, d, any_true, any_false);
      if (early != Truth::Undetermined) return early;
      if (e.kind() == Kind::Forall) {
        if (any_false) return Truth::False;
        return any_true ? Truth::True : Truth::Undetermined;
      }
      if (any_true) return Truth::True;
      return any_false ? Truth::False : Truth::Undetermined;
    }
    case Kind::Var:
    case Kind::IntConst: break;
  }
  throw Error("not a formula: " + fol::to_smtlib(e));
}

// Enumerates the bound variables from position k on; returns the verdict as
// soon as one instance decides the quantifier.
Truth Oracle::quantified(const Expr& e, std::size_t k, Env& env, const Domains& d, bool& any_true,
                         bool& any_false) const {
  const auto& bound = e.bound();
  if (k == bound.size()) {
    Truth t = formula(e.body(), env, d);
    if (t == Truth::True) any_true = true;
    if (t == Truth::False) any_false = true;
    if (e.kind() == Kind::Forall && t == Truth::False) return Truth::False;
    if (e.kind() == Kind::Exists && t == Truth::True) return Truth::True;
    return Truth::Undetermined;
  }
  for (std::int64_t v : domain_of(bound[k].sort, d)) {
    env.emplace_back(&bound[k].name, Value{bound[k].sort, v});
    Truth t = quantified(e, k + 1, env, d, any_true, any_false);
    env.pop_back();
    if (t != Truth::Undetermined) return t;
  }
  return Truth::Undetermined;
}

// ---------------------------------------------------------------------------

bool OracleReport::pass() const {
  return std::none_of(axioms.begin(), axioms.end(),
                      [](const AxiomVerdict& a) { return a.verdict == Truth::False; });
}

std::vector<std::string> OracleReport::failures() const {
  std::vector<std::string> out;
  for (const auto& a : axioms) {
    if (a.verdict == Truth::False) out.push_back(a.label);
  }
  return out;
}

OracleReport check_task(const ReasoningTask& task, const ProgramModel& model,
                        const std::vector<const TraceRecord*>& records, const OracleOptions& options) {
  Oracle oracle(model, records, options);
  OracleReport report;
  for (const auto* list : {&task.theory, &task.axioms}) {
    for (const auto& f : *list) report.axioms.push_back({f.label, oracle.evaluate(f.formula)});
  }
  report.conjecture = oracle.evaluate(task.conjecture);
  return report;
}

}  // namespace tracelogic
