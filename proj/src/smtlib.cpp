#include "tracelogic/smtlib.hpp"

#include <charconv>
#include <regex>
#include <sstream>

namespace tracelogic {

using fol::Expr;
using fol::Sort;

namespace {

constexpr const char* kNatDatatype = "(declare-datatypes ((Nat 0)) (((zero) (s (p Nat)))))";

void check_formula(const fol::LabeledFormula& f, const fol::Signature& sig) {
  fol::check_sorts(f.formula, sig);
  if (!f.formula.is_formula()) throw SortError(f.label + ": not a formula");
  auto fv = fol::free_variables(f.formula);
  if (!fv.empty()) throw SortError(f.label + ": free variable '" + *fv.begin() + "'");
}

void emit_assert(std::ostream& os, const fol::LabeledFormula& f) {
  os << "(assert (! " << fol::to_smtlib(f.formula) << " :named " << f.label << "))\n";
}

void emit_decl(std::ostream& os, const fol::FunctionSymbol& s) {
  os << "(declare-fun " << s.name << " (";
  for (std::size_t i = 0; i < s.args.size(); ++i) {
    if (i) os << ' ';
    os << fol::to_string(s.args[i]);
  }
  os << ") " << fol::to_string(s.result) << ")\n";
}

}  // namespace

std::string emit_smtlib(const ReasoningTask& task) {
  const auto& sig = task.signature;
  for (const auto& f : task.theory) check_formula(f, sig);
  for (const auto& f : task.axioms) check_formula(f, sig);
  check_formula({"conjecture", task.conjecture}, sig);

  std::ostringstream os;
  os << "(set-logic ALL)\n" << kNatDatatype << "\n(declare-sort Time 0)\n(declare-sort Trace 0)\n";
  bool theory_done = false;
  for (const auto* s : sig.declared()) {
    emit_decl(os, *s);
    if (s->name == "t2") os << "(assert (distinct t1 t2))\n";
    if (s->name == fol::kNatLess) {
      for (const auto& f : task.theory) emit_assert(os, f);
      theory_done = true;
    }
  }
  if (!theory_done && !task.theory.empty()) throw SortError("theory axioms without Nat_less");
  for (const auto& f : task.axioms) emit_assert(os, f);
  os << "(assert (not " << fol::to_smtlib(task.conjecture) << "))\n(check-sat)\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Reading

namespace {

bool is_numeral(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::int64_t numeral(const SExpr& e) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(e.atom.data(), e.atom.data() + e.atom.size(), v);
  if (ec != std::errc() || ptr != e.atom.data() + e.atom.size()) {
    throw ParseError(e.pos, "integer literal out of range: " + e.atom);
  }
  return v;
}

bool looks_like_variable(const std::string& name) {
  static const std::regex iteration("^It[0-9]+$");
  return name == "tr" || std::regex_match(name, iteration);
}

class TermReader {
 public:
  TermReader(const fol::Signature& sig, std::vector<fol::BoundVar> scope)
      : sig_(sig), scope_(std::move(scope)) {}

  Expr read(const SExpr& e) {
    if (e.is_atom()) return atom(e);
    if (e.items.empty()) throw ParseError(e.pos, "empty application");
    const SExpr& head = e.items.front();
    if (head.is_list) throw ParseError(head.pos, "expected a symbol in head position");
    const std::string& h = head.atom;
    std::size_t n = e.items.size() - 1;

    if (h == "forall" || h == "exists") return quantifier(e, h == "forall");
    if (h == "!") throw ParseError(e.pos, "annotation not allowed here");

    std::vector<Expr> args;
    for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(read(e.items[i]));

    auto need = [&](std::size_t k) {
      if (n != k) {
        throw ParseError(e.pos, "'" + h + "' expects " + std::to_string(k) + " arguments, got " +
                                    std::to_string(n));
      }
    };
    auto need_formulas = [&] {
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (!args[i].is_formula()) {
          throw ParseError(e.items[i + 1].pos, "sort error: '" + h + "' expects Bool arguments");
        }
      }
    };

    if (h == "not") {
      need(1);
      need_formulas();
      return fol::mk_not(args[0]);
    }
    if (h == "and" || h == "or") {
      if (n == 0) throw ParseError(e.pos, "'" + h + "' needs arguments");
      need_formulas();
      return h == "and" ? fol::mk_and(std::move(args)) : fol::mk_or(std::move(args));
    }
    if (h == "=>") {
      if (n < 2) throw ParseError(e.pos, "'=>' expects at least 2 arguments");
      need_formulas();
      Expr out = args.back();
      for (std::size_t i = args.size() - 1; i-- > 0;) out = fol::implies(args[i], out);
      return out;
    }
    if (h == "=" || h == "distinct") {
      need(2);
      if (args[0].sort() != args[1].sort()) {
        throw ParseError(e.pos, std::string("sort error: '") + h + "' between " +
                                    fol::to_string(args[0].sort()) + " and " +
                                    fol::to_string(args[1].sort()));
      }
      return h == "=" ? fol::eq(args[0], args[1]) : fol::neq(args[0], args[1]);
    }
    if (h == "-" && n == 1) {
      if (e.items[1].is_atom() && is_numeral(e.items[1].atom)) return fol::int_const(-args[0].value());
      require(args, Sort::Int, e);
      return fol::minus(fol::int_const(0), args[0]);
    }
    if (h == "+" || h == "-" || h == "*") {
      if (n < 2) throw ParseError(e.pos, "'" + h + "' expects at least 2 arguments");
      require(args, Sort::Int, e);
      Expr out = args[0];
      for (std::size_t i = 1; i < args.size(); ++i) out = fol::app(h, {out, args[i]}, Sort::Int);
      return out;
    }
    if (h == "<" || h == "<=" || h == ">" || h == ">=") {
      need(2);
      if (args[0].sort() == Sort::Nat && args[1].sort() == Sort::Nat) {
        if (h == "<") return fol::nat_less(args[0], args[1]);
        if (h == ">") return fol::nat_less(args[1], args[0]);
        if (h == "<=") return fol::nat_le(args[0], args[1]);
        return fol::nat_le(args[1], args[0]);
      }
      require(args, Sort::Int, e);
      return fol::app(h, {args[0], args[1]}, Sort::Bool);
    }

    const fol::FunctionSymbol* sym = lookup(head);
    if (sym->args.size() != n) {
      throw ParseError(e.pos, "sort error: '" + h + "' expects " + std::to_string(sym->args.size()) +
                                  " arguments, got " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (args[i].sort() != sym->args[i]) {
        throw ParseError(e.items[i + 1].pos, "sort error: argument " + std::to_string(i + 1) +
                                                 " of '" + h + "' must be " +
                                                 fol::to_string(sym->args[i]) + ", got " +
                                                 fol::to_string(args[i].sort()));
      }
    }
    return fol::app(*sym, std::move(args));
  }

 private:
  void require(const std::vector<Expr>& args, Sort s, const SExpr& e) {
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i].sort() != s) {
        throw ParseError(e.items[i + 1].pos, std::string("sort error: expected ") +
                                                 fol::to_string(s) + ", got " +
                                                 fol::to_string(args[i].sort()));
      }
    }
  }

  const fol::FunctionSymbol* lookup(const SExpr& name) {
    const fol::FunctionSymbol* sym = sig_.find(name.atom);
    if (sym) return sym;
    if (looks_like_variable(name.atom)) {
      throw ParseError(name.pos, "unbound variable '" + name.atom + "'");
    }
    throw ParseError(name.pos, "unknown symbol '" + name.atom + "'");
  }

  Expr atom(const SExpr& e) {
    if (is_numeral(e.atom)) return fol::int_const(numeral(e));
    if (e.atom == "true") return fol::mk_true();
    if (e.atom == "false") return fol::mk_false();
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->name == e.atom) return fol::var(*it);
    }
    const fol::FunctionSymbol* sym = lookup(e);
    if (!sym->args.empty()) {
      throw ParseError(e.pos, "sort error: '" + e.atom + "' expects " +
                                  std::to_string(sym->args.size()) + " arguments");
    }
    return fol::app(*sym, {});
  }

  Expr quantifier(const SExpr& e, bool universal) {
    if (e.items.size() != 3 || !e.items[1].is_list || e.items[1].items.empty()) {
      throw ParseError(e.pos, "malformed quantifier");
    }
    std::vector<fol::BoundVar> vars;
    for (const auto& b : e.items[1].items) {
      if (!b.is_list || b.items.size() != 2 || !b.items[0].is_atom() || !b.items[1].is_atom()) {
        throw ParseError(b.pos, "malformed binder");
      }
      auto sort = fol::parse_sort(b.items[1].atom);
      if (!sort || *sort == Sort::Bool) {
        throw ParseError(b.items[1].pos, "unknown sort '" + b.items[1].atom + "'");
      }
      vars.push_back({b.items[0].atom, *sort});
    }
    std::size_t mark = scope_.size();
    scope_.insert(scope_.end(), vars.begin(), vars.end());
    Expr body = read(e.items[2]);
    scope_.resize(mark);
    if (!body.is_formula()) throw ParseError(e.items[2].pos, "sort error: quantifier body is not a formula");
    return universal ? fol::forall(std::move(vars), std::move(body))
                     : fol::exists(std::move(vars), std::move(body));
  }

  const fol::Signature& sig_;
  std::vector<fol::BoundVar> scope_;
};

fol::FunctionSymbol read_declaration(const SExpr& e) {
  if (e.items.size() != 4 || !e.items[1].is_atom() || !e.items[2].is_list || !e.items[3].is_atom()) {
    throw ParseError(e.pos, "malformed declare-fun");
  }
  fol::FunctionSymbol sym{e.items[1].atom, {}, Sort::Int, false};
  for (const auto& a : e.items[2].items) {
    auto s = a.is_atom() ? fol::parse_sort(a.atom) : std::nullopt;
    if (!s || *s == Sort::Bool) throw ParseError(a.pos, "bad argument sort");
    sym.args.push_back(*s);
  }
  auto r = fol::parse_sort(e.items[3].atom);
  if (!r) throw ParseError(e.items[3].pos, "bad result sort");
  sym.result = *r;
  return sym;
}

}  // namespace

Expr read_term(const SExpr& e, const fol::Signature& sig, const std::vector<fol::BoundVar>& scope) {
  return TermReader(sig, scope).read(e);
}

SmtFile read_smtlib(std::string_view text) {
  SmtFile out;
  auto cmds = parse_sexprs(text);
  bool logic = false, datatype = false, time = false, trace = false;
  for (const auto& c : cmds) {
    if (!c.is_list || c.items.empty() || !c.items[0].is_atom()) {
      throw ParseError(c.pos, "expected a command");
    }
    if (out.check_sat) throw ParseError(c.pos, "command after check-sat");
    const std::string& h = c.items[0].atom;
    if (h == "set-logic") {
      if (logic || c.items.size() != 2 || !c.items[1].is_atom("ALL")) {
        throw ParseError(c.pos, "expected a single (set-logic ALL)");
      }
      logic = true;
    } else if (h == "declare-datatypes") {
      if (datatype || c.to_string() != kNatDatatype) throw ParseError(c.pos, "unexpected datatype");
      datatype = true;
    } else if (h == "declare-sort") {
      if (c.items.size() != 3 || !c.items[2].is_atom("0")) throw ParseError(c.pos, "bad declare-sort");
      bool& seen = c.items[1].is_atom("Time") ? time : trace;
      if (!(c.items[1].is_atom("Time") || c.items[1].is_atom("Trace")) || seen) {
        throw ParseError(c.pos, "unexpected sort declaration");
      }
      seen = true;
    } else if (h == "declare-fun") {
      if (!logic || !datatype || !time || !trace) throw ParseError(c.pos, "declaration before preamble");
      if (out.negated_goal) throw ParseError(c.pos, "declaration after goal");
      try {
        out.signature.declare(read_declaration(c));
      } catch (const SortError& err) {
        throw ParseError(c.pos, err.what());
      }
    } else if (h == "assert") {
      if (c.items.size() != 2) throw ParseError(c.pos, "malformed assert");
      if (out.negated_goal) throw ParseError(c.pos, "assertion after goal");
      const SExpr& body = c.items[1];
      if (body.has_head("!")) {
        if (body.items.size() != 4 || !body.items[2].is_atom(":named") || !body.items[3].is_atom()) {
          throw ParseError(body.pos, "expected (! <formula> :named <label>)");
        }
        Expr f = read_term(body.items[1], out.signature);
        if (!f.is_formula()) throw ParseError(body.pos, "sort error: assertion is not a formula");
        out.named.push_back({body.items[3].atom, f});
      } else if (body.has_head("distinct")) {
        if (body.to_string() != "(distinct t1 t2)" || out.distinct_traces ||
            !out.signature.contains("t2")) {
          throw ParseError(body.pos, "unexpected distinct assertion");
        }
        out.distinct_traces = true;
      } else if (body.has_head("not") && body.items.size() == 2) {
        Expr f = read_term(body.items[1], out.signature);
        if (!f.is_formula()) throw ParseError(body.pos, "sort error: goal is not a formula");
        out.negated_goal = f;
      } else {
        throw ParseError(body.pos, "unnamed assertion");
      }
    } else if (h == "check-sat") {
      if (c.items.size() != 1 || !out.negated_goal) throw ParseError(c.pos, "check-sat without goal");
      out.check_sat = true;
    } else {
      throw ParseError(c.pos, "unsupported command '" + h + "'");
    }
  }
  if (!out.check_sat) throw ParseError({1, 1}, "missing check-sat");
  return out;
}

}  // namespace tracelogic
