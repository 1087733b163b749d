#include "tracelogic/fol.hpp"

#include <algorithm>
#include <sstream>

namespace tracelogic::fol {

const char* to_string(Sort s) {
  switch (s) {
    case Sort::Bool: return "Bool";
    case Sort::Nat: return "Nat";
    case Sort::Int: return "Int";
    case Sort::Time: return "Time";
    case Sort::Trace: return "Trace";
  }
  return "?";
}

std::optional<Sort> parse_sort(std::string_view name) {
  if (name == "Bool") return Sort::Bool;
  if (name == "Nat") return Sort::Nat;
  if (name == "Int") return Sort::Int;
  if (name == "Time") return Sort::Time;
  if (name == "Trace") return Sort::Trace;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Signature

Signature::Signature() {
  auto builtin = [this](std::string name, std::vector<Sort> args, Sort result) {
    declare({std::move(name), std::move(args), result, true});
  };
  builtin("zero", {}, Sort::Nat);
  builtin("s", {Sort::Nat}, Sort::Nat);
  builtin("p", {Sort::Nat}, Sort::Nat);
  for (const char* op : {"+", "-", "*"}) builtin(op, {Sort::Int, Sort::Int}, Sort::Int);
  for (const char* op : {"<", "<=", ">", ">="}) builtin(op, {Sort::Int, Sort::Int}, Sort::Bool);
}

void Signature::declare(FunctionSymbol sym) {
  if (index_.contains(sym.name)) {
    throw SortError("symbol '" + sym.name + "' declared twice");
  }
  index_.emplace(sym.name, symbols_.size());
  symbols_.push_back(std::move(sym));
}

const FunctionSymbol* Signature::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? nullptr : &symbols_[it->second];
}

std::vector<const FunctionSymbol*> Signature::declared() const {
  std::vector<const FunctionSymbol*> out;
  for (const auto& s : symbols_) {
    if (!s.builtin) out.push_back(&s);
  }
  return out;
}

std::string Signature::fresh_name(const std::string& base) const {
  if (!contains(base)) return base;
  for (int i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!contains(candidate)) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Construction

namespace {

Expr make(Kind kind, Sort sort, std::string name = {}, std::vector<Expr> args = {},
          std::vector<BoundVar> bound = {}, std::int64_t value = 0) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  n->sort = sort;
  n->name = std::move(name);
  n->args = std::move(args);
  n->bound = std::move(bound);
  n->value = value;
  return Expr(std::move(n));
}

const Expr& true_node() {
  static const Expr t = make(Kind::True, Sort::Bool);
  return t;
}

}  // namespace

Expr::Expr() : Expr(true_node()) {}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.sort == y.sort && x.name == y.name && x.value == y.value &&
         x.bound == y.bound && x.args == y.args;
}

Expr var(std::string name, Sort sort) { return make(Kind::Var, sort, std::move(name)); }
Expr var(const BoundVar& v) { return var(v.name, v.sort); }

Expr app(const FunctionSymbol& sym, std::vector<Expr> args) {
  return make(Kind::App, sym.result, sym.name, std::move(args));
}

Expr app(std::string name, std::vector<Expr> args, Sort result) {
  return make(Kind::App, result, std::move(name), std::move(args));
}

Expr int_const(std::int64_t v) { return make(Kind::IntConst, Sort::Int, {}, {}, {}, v); }
Expr mk_true() { return true_node(); }
Expr mk_false() { return make(Kind::False, Sort::Bool); }
Expr mk_not(Expr f) { return make(Kind::Not, Sort::Bool, {}, {std::move(f)}); }

Expr mk_and(std::vector<Expr> fs) {
  if (fs.empty()) return mk_true();
  if (fs.size() == 1) return std::move(fs.front());
  return make(Kind::And, Sort::Bool, {}, std::move(fs));
}

Expr mk_or(std::vector<Expr> fs) {
  if (fs.empty()) return mk_false();
  if (fs.size() == 1) return std::move(fs.front());
  return make(Kind::Or, Sort::Bool, {}, std::move(fs));
}

Expr implies(Expr lhs, Expr rhs) {
  return make(Kind::Implies, Sort::Bool, {}, {std::move(lhs), std::move(rhs)});
}

Expr eq(Expr lhs, Expr rhs) {
  return make(Kind::Eq, Sort::Bool, {}, {std::move(lhs), std::move(rhs)});
}

Expr neq(Expr lhs, Expr rhs) { return mk_not(eq(std::move(lhs), std::move(rhs))); }

Expr forall(std::vector<BoundVar> vars, Expr body) {
  if (vars.empty()) return body;
  return make(Kind::Forall, Sort::Bool, {}, {std::move(body)}, std::move(vars));
}

Expr exists(std::vector<BoundVar> vars, Expr body) {
  if (vars.empty()) return body;
  return make(Kind::Exists, Sort::Bool, {}, {std::move(body)}, std::move(vars));
}

Expr zero() { return app("zero", {}, Sort::Nat); }
Expr succ(Expr n) { return app("s", {std::move(n)}, Sort::Nat); }
Expr pred(Expr n) { return app("p", {std::move(n)}, Sort::Nat); }
Expr nat_less(Expr a, Expr b) {
  return app(std::string(kNatLess), {std::move(a), std::move(b)}, Sort::Bool);
}
Expr nat_le(Expr a, Expr b) { return mk_or({nat_less(a, b), eq(a, b)}); }

Expr plus(Expr a, Expr b) { return app("+", {std::move(a), std::move(b)}, Sort::Int); }
Expr minus(Expr a, Expr b) { return app("-", {std::move(a), std::move(b)}, Sort::Int); }
Expr times(Expr a, Expr b) { return app("*", {std::move(a), std::move(b)}, Sort::Int); }
Expr int_less(Expr a, Expr b) { return app("<", {std::move(a), std::move(b)}, Sort::Bool); }
Expr int_le(Expr a, Expr b) { return app("<=", {std::move(a), std::move(b)}, Sort::Bool); }
Expr int_greater(Expr a, Expr b) { return app(">", {std::move(a), std::move(b)}, Sort::Bool); }
Expr int_ge(Expr a, Expr b) { return app(">=", {std::move(a), std::move(b)}, Sort::Bool); }

FunctionSymbol nat_less_symbol() {
  return {std::string(kNatLess), {Sort::Nat, Sort::Nat}, Sort::Bool, false};
}

std::vector<LabeledFormula> nat_order_axioms() {
  const BoundVar bx{"x", Sort::Nat}, by{"y", Sort::Nat}, bz{"z", Sort::Nat};
  const Expr x = var(bx), y = var(by), z = var(bz);
  return {
      {"nat-less-irreflexive", forall({bx}, mk_not(nat_less(x, x)))},
      {"nat-less-transitive",
       forall({bx, by, bz}, implies(mk_and({nat_less(x, y), nat_less(y, z)}), nat_less(x, z)))},
      {"nat-less-total", forall({bx, by}, mk_or({nat_less(x, y), eq(x, y), nat_less(y, x)}))},
      {"nat-less-zero-min", forall({bx}, mk_not(nat_less(x, zero())))},
      {"nat-less-succ",
       forall({bx, by}, eq(nat_less(x, succ(y)), mk_or({nat_less(x, y), eq(x, y)})))},
      {"nat-less-succ-monotone",
       forall({bx, by}, implies(nat_less(x, y), nat_less(succ(x), succ(y))))},
  };
}

// ---------------------------------------------------------------------------
// Free variables and substitution

namespace {

void collect_free(const Expr& e, std::vector<std::string>& scope, std::set<std::string>& out) {
  switch (e.kind()) {
    case Kind::Var:
      if (std::find(scope.begin(), scope.end(), e.name()) == scope.end()) out.insert(e.name());
      return;
    case Kind::Forall:
    case Kind::Exists: {
      std::size_t mark = scope.size();
      for (const auto& b : e.bound()) scope.push_back(b.name);
      collect_free(e.body(), scope, out);
      scope.resize(mark);
      return;
    }
    default:
      for (const auto& a : e.args()) collect_free(a, scope, out);
  }
}

Expr rebuild(const Expr& e, std::vector<Expr> args) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = e.kind();
  n->sort = e.sort();
  n->name = e.name();
  n->value = e.value();
  n->bound = e.bound();
  n->args = std::move(args);
  return Expr(std::move(n));
}

Expr subst(const Expr& e, const Bindings& b) {
  if (b.empty()) return e;
  switch (e.kind()) {
    case Kind::Var: {
      auto it = b.find(e.name());
      if (it == b.end()) return e;
      if (it->second.sort() != e.sort()) {
        throw SortError("substitution for '" + e.name() + "' of sort " + to_string(e.sort()) +
                        " has sort " + to_string(it->second.sort()));
      }
      return it->second;
    }
    case Kind::Forall:
    case Kind::Exists: {
      Bindings inner = b;
      for (const auto& v : e.bound()) inner.erase(v.name);
      if (inner.empty()) return e;

      std::set<std::string> incoming;
      for (const auto& [name, t] : inner) {
        auto fv = free_variables(t);
        incoming.insert(fv.begin(), fv.end());
      }
      std::set<std::string> avoid = incoming;
      auto body_fv = free_variables(e.body());
      avoid.insert(body_fv.begin(), body_fv.end());
      for (const auto& v : e.bound()) avoid.insert(v.name);

      std::vector<BoundVar> vars = e.bound();
      Bindings renaming;
      for (auto& v : vars) {
        if (!incoming.contains(v.name)) continue;
        std::string fresh;
        for (int i = 1;; ++i) {
          fresh = v.name + "_" + std::to_string(i);
          if (!avoid.contains(fresh)) break;
        }
        avoid.insert(fresh);
        renaming.emplace(v.name, var(fresh, v.sort));
        v.name = fresh;
      }
      Expr body = renaming.empty() ? e.body() : subst(e.body(), renaming);
      body = subst(body, inner);
      return e.kind() == Kind::Forall ? forall(std::move(vars), std::move(body))
                                      : exists(std::move(vars), std::move(body));
    }
    default: {
      if (e.args().empty()) return e;
      std::vector<Expr> args;
      args.reserve(e.args().size());
      for (const auto& a : e.args()) args.push_back(subst(a, b));
      return rebuild(e, std::move(args));
    }
  }
}

}  // namespace

std::set<std::string> free_variables(const Expr& e) {
  std::set<std::string> out;
  std::vector<std::string> scope;
  collect_free(e, scope, out);
  return out;
}

bool is_closed(const Expr& e) { return free_variables(e).empty(); }

Expr substitute(const Expr& e, const Bindings& bindings) { return subst(e, bindings); }

// ---------------------------------------------------------------------------
// Sort checking

namespace {

void require_bool(const Expr& e, const char* where) {
  if (e.sort() != Sort::Bool) {
    throw SortError(std::string(where) + " expects a formula, got " + to_string(e.sort()) +
                    " term " + to_smtlib(e));
  }
}

}  // namespace

void check_sorts(const Expr& e, const Signature& sig) {
  switch (e.kind()) {
    case Kind::Var:
      if (e.sort() == Sort::Bool) throw SortError("Bool-sorted variable '" + e.name() + "'");
      return;
    case Kind::IntConst:
      if (e.sort() != Sort::Int) throw SortError("integer literal with non-Int sort");
      return;
    case Kind::True:
    case Kind::False: return;
    case Kind::App: {
      const FunctionSymbol* sym = sig.find(e.name());
      if (!sym) throw SortError("undeclared symbol '" + e.name() + "'");
      if (sym->args.size() != e.args().size()) {
        throw SortError("'" + e.name() + "' expects " + std::to_string(sym->args.size()) +
                        " arguments, got " + std::to_string(e.args().size()));
      }
      for (std::size_t i = 0; i < sym->args.size(); ++i) {
        check_sorts(e.arg(i), sig);
        if (e.arg(i).sort() != sym->args[i]) {
          throw SortError("argument " + std::to_string(i + 1) + " of '" + e.name() +
                          "' must be " + to_string(sym->args[i]) + ", got " +
                          to_string(e.arg(i).sort()) + " in " + to_smtlib(e));
        }
      }
      if (sym->result != e.sort()) {
        throw SortError("'" + e.name() + "' has result sort " + to_string(sym->result));
      }
      return;
    }
    case Kind::Eq:
      check_sorts(e.arg(0), sig);
      check_sorts(e.arg(1), sig);
      if (e.arg(0).sort() != e.arg(1).sort()) {
        throw SortError("equality between " + std::string(to_string(e.arg(0).sort())) + " and " +
                        to_string(e.arg(1).sort()) + " in " + to_smtlib(e));
      }
      return;
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      for (const auto& a : e.args()) {
        check_sorts(a, sig);
        require_bool(a, "connective");
      }
      return;
    case Kind::Forall:
    case Kind::Exists:
      for (const auto& v : e.bound()) {
        if (v.sort == Sort::Bool) throw SortError("quantified Bool variable '" + v.name + "'");
      }
      check_sorts(e.body(), sig);
      require_bool(e.body(), "quantifier");
      return;
  }
}

bool well_sorted(const Expr& e, const Signature& sig) {
  try {
    check_sorts(e, sig);
    return true;
  } catch (const SortError&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_smt(std::ostream& os, const Expr& e) {
  auto list = [&](const char* head) {
    os << '(' << head;
    for (const auto& a : e.args()) {
      os << ' ';
      print_smt(os, a);
    }
    os << ')';
  };
  switch (e.kind()) {
    case Kind::Var: os << e.name(); return;
    case Kind::IntConst:
      if (e.value() < 0) {
        // -(v) without negating INT64_MIN
        os << "(- " << static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(e.value())
           << ')';
      } else {
        os << e.value();
      }
      return;
    case Kind::True: os << "true"; return;
    case Kind::False: os << "false"; return;
    case Kind::App:
      if (e.args().empty()) {
        os << e.name();
      } else {
        list(e.name().c_str());
      }
      return;
    case Kind::Not: list("not"); return;
    case Kind::And: list("and"); return;
    case Kind::Or: list("or"); return;
    case Kind::Implies: list("=>"); return;
    case Kind::Eq: list("="); return;
    case Kind::Forall:
    case Kind::Exists:
      os << '(' << (e.kind() == Kind::Forall ? "forall" : "exists") << " (";
      for (std::size_t i = 0; i < e.bound().size(); ++i) {
        if (i) os << ' ';
        os << '(' << e.bound()[i].name << ' ' << to_string(e.bound()[i].sort) << ')';
      }
      os << ") ";
      print_smt(os, e.body());
      os << ')';
      return;
  }
}

bool is_infix(const Expr& e) {
  if (e.kind() != Kind::App || e.args().size() != 2) return false;
  const auto& n = e.name();
  return n == "+" || n == "-" || n == "*" || n == "<" || n == "<=" || n == ">" || n == ">=";
}

void print_term(std::ostream& os, const Expr& e, bool nested) {
  auto infix = [&](const char* op) {
    if (nested) os << '(';
    print_term(os, e.arg(0), true);
    os << ' ' << op << ' ';
    print_term(os, e.arg(1), true);
    if (nested) os << ')';
  };
  auto joined = [&](const char* op) {
    if (nested) os << '(';
    for (std::size_t i = 0; i < e.args().size(); ++i) {
      if (i) os << ' ' << op << ' ';
      print_term(os, e.arg(i), true);
    }
    if (nested) os << ')';
  };
  switch (e.kind()) {
    case Kind::Var: os << e.name(); return;
    case Kind::IntConst: os << e.value(); return;
    case Kind::True: os << "true"; return;
    case Kind::False: os << "false"; return;
    case Kind::App:
      if (is_infix(e)) {
        infix(e.name().c_str());
        return;
      }
      os << e.name();
      if (!e.args().empty()) {
        os << '(';
        for (std::size_t i = 0; i < e.args().size(); ++i) {
          if (i) os << ", ";
          print_term(os, e.arg(i), false);
        }
        os << ')';
      }
      return;
    case Kind::Not:
      os << '~';
      print_term(os, e.arg(0), true);
      return;
    case Kind::And: joined("&"); return;
    case Kind::Or: joined("|"); return;
    case Kind::Implies: infix("->"); return;
    case Kind::Eq: infix("="); return;
    case Kind::Forall:
    case Kind::Exists:
      if (nested) os << '(';
      os << (e.kind() == Kind::Forall ? "forall " : "exists ");
      for (std::size_t i = 0; i < e.bound().size(); ++i) {
        if (i) os << ", ";
        os << e.bound()[i].name << ':' << to_string(e.bound()[i].sort);
      }
      os << ". ";
      print_term(os, e.body(), false);
      if (nested) os << ')';
      return;
  }
}

}  // namespace

std::string to_smtlib(const Expr& e) {
  std::ostringstream os;
  print_smt(os, e);
  return os.str();
}

std::string to_term_string(const Expr& e) {
  std::ostringstream os;
  print_term(os, e, false);
  return os.str();
}

}  // namespace tracelogic::fol
