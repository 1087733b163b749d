#include "tracelogic/property.hpp"

#include <algorithm>

#include "tracelogic/parser.hpp"
#include "tracelogic/smtlib.hpp"

namespace tracelogic {

using fol::Expr;
using fol::Sort;

namespace {

void check_declared(const ast::Program& p, const SExpr& name) {
  if (!name.is_atom()) throw ParseError(name.pos, "expected a variable name");
  if (!p.find(name.atom)) throw ParseError(name.pos, "undeclared variable '" + name.atom + "'");
}

std::optional<int> read_at(const SExpr& e, const ast::Program& p) {
  if (!e.has_head("at") || e.items.size() != 2 || !e.items[1].is_atom()) {
    throw ParseError(e.pos, "expected (at l<line>)");
  }
  const std::string& loc = e.items[1].atom;
  int line = 0;
  if (loc.size() < 2 || loc[0] != 'l' ||
      !std::all_of(loc.begin() + 1, loc.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError(e.items[1].pos, "expected a location l<line>");
  }
  line = std::stoi(loc.substr(1));
  bool top_level = std::any_of(p.body.begin(), p.body.end(),
                               [&](const ast::Statement& s) { return s.line == line; });
  if (!top_level) {
    throw ParseError(e.items[1].pos, "no top-level statement at line " + std::to_string(line));
  }
  return line;
}

}  // namespace

SpecFile parse_spec(std::string_view text) {
  ParsedProgram parsed = parse_program_prefix(text);
  SpecFile spec;
  spec.program = std::move(parsed.program);
  const auto& prog = spec.program;

  for (const auto& block : parse_sexprs(text.substr(parsed.end_offset), parsed.end_pos)) {
    if (!block.is_list || block.items.empty() || !block.items[0].is_atom()) {
      throw ParseError(block.pos, "expected a property block");
    }
    const std::string& head = block.items[0].atom;
    if (head == "set-traces") {
      if (block.items.size() != 2 || !(block.items[1].is_atom("1") || block.items[1].is_atom("2"))) {
        throw ParseError(block.pos, "expected (set-traces 1) or (set-traces 2)");
      }
      if (spec.traces) throw ParseError(block.pos, "duplicate set-traces");
      spec.traces = block.items[1].atom == "1" ? 1 : 2;
    } else if (head == "levels") {
      for (std::size_t i = 1; i < block.items.size(); ++i) {
        const SExpr& lv = block.items[i];
        if (!lv.is_list || lv.items.size() != 2 || !(lv.items[1].is_atom("L") || lv.items[1].is_atom("H"))) {
          throw ParseError(lv.pos, "expected (<variable> L) or (<variable> H)");
        }
        check_declared(prog, lv.items[0]);
        (lv.items[1].atom == "L" ? spec.annotation.low : spec.annotation.high)
            .push_back(lv.items[0].atom);
      }
    } else if (head == "out" || head == "deviation") {
      auto& dst = head == "out" ? spec.annotation.out : spec.annotation.deviation;
      for (std::size_t i = 1; i < block.items.size(); ++i) {
        check_declared(prog, block.items[i]);
        const ast::VarDecl* d = prog.find(block.items[i].atom);
        if (d->is_array) throw ParseError(block.items[i].pos, "'" + head + "' expects scalar variables");
        dst.push_back(d->name);
      }
    } else if (head == "property" || head == "conjecture") {
      if (spec.property) throw ParseError(block.pos, "more than one property");
      PropertySpec ps;
      ps.pos = block.pos;
      if (head == "conjecture") {
        if (block.items.size() != 2) throw ParseError(block.pos, "expected (conjecture <formula>)");
        ps.kind = PropertyKind::Conjecture;
        ps.formula = block.items[1];
      } else {
        if (block.items.size() < 2 || block.items.size() > 3) {
          throw ParseError(block.pos, "expected (property <kind> [(at l<line>)])");
        }
        if (block.items[1].is_atom("noninterference")) {
          ps.kind = PropertyKind::NonInterference;
        } else if (block.items[1].is_atom("sensitivity")) {
          ps.kind = PropertyKind::Sensitivity;
        } else {
          throw ParseError(block.items[1].pos, "unknown property '" + block.items[1].to_string() + "'");
        }
        if (block.items.size() == 3) ps.at_line = read_at(block.items[2], prog);
      }
      spec.property = std::move(ps);
    } else {
      throw ParseError(block.items[0].pos, "unknown block '" + head + "'");
    }
  }
  return spec;
}

// ---------------------------------------------------------------------------

PropertyBuilder::PropertyBuilder(const SemanticsEncoder& encoder)
    : enc_(encoder), model_(encoder.model()) {}

const ast::VarDecl& PropertyBuilder::decl(const std::string& name) const {
  const ast::VarDecl* d = model_.program().find(name);
  if (!d) throw Error("undeclared variable '" + name + "'");
  return *d;
}

Expr PropertyBuilder::anchor(std::optional<int> at_line) const {
  if (!at_line) return model_.first_timepoint();
  const ast::Statement* s = model_.at_line(*at_line);
  if (!s || model_.info(*s).parent) {
    throw Error("no top-level statement at line " + std::to_string(*at_line));
  }
  return model_.start(*s);
}

Expr PropertyBuilder::eq_tr(const ast::VarDecl& v, const Expr& tp) const {
  if (!model_.relational()) throw Error("property requires 2 traces");
  Expr t1 = model_.trace(1), t2 = model_.trace(2);
  if (!v.is_array) return fol::eq(model_.scalar_at(v, tp, t1), model_.scalar_at(v, tp, t2));
  fol::BoundVar pos{model_.signature().fresh_name("pos"), Sort::Int};
  return fol::forall({pos}, fol::eq(model_.array_at(v, tp, fol::var(pos), t1),
                                    model_.array_at(v, tp, fol::var(pos), t2)));
}

Expr PropertyBuilder::delta(const ast::VarDecl& v, const Expr& tp) const {
  return fol::minus(model_.scalar_at(v, tp, model_.trace(1)),
                    model_.scalar_at(v, tp, model_.trace(2)));
}

Expr PropertyBuilder::abs_less(const Expr& d, const Expr& k) {
  Expr zero = fol::int_const(0);
  return fol::mk_or({fol::mk_and({fol::int_le(zero, d), fol::int_less(d, k)}),
                     fol::mk_and({fol::int_less(d, zero), fol::int_less(fol::minus(zero, d), k)})});
}

Conjecture PropertyBuilder::noninterference(const SecurityAnnotation& ann,
                                            std::optional<int> at_line) const {
  if (!model_.relational()) throw Error("property requires 2 traces");
  if (ann.low.empty()) throw Error("non-interference needs at least one L variable");
  Expr start = anchor(at_line);
  Expr end = model_.main_end();
  std::vector<Expr> before, after;
  for (const auto& name : ann.low) {
    before.push_back(eq_tr(decl(name), start));
    after.push_back(eq_tr(decl(name), end));
  }
  return {"noninterference", fol::implies(fol::mk_and(before), fol::mk_and(after))};
}

Conjecture PropertyBuilder::sensitivity(const SecurityAnnotation& ann,
                                        std::optional<int> at_line) const {
  if (!model_.relational()) throw Error("property requires 2 traces");
  if (ann.out.empty()) throw Error("sensitivity needs at least one output variable");
  Expr start = anchor(at_line);
  Expr end = model_.main_end();
  fol::BoundVar kv{model_.signature().fresh_name("k"), Sort::Int};
  Expr k = fol::var(kv);

  std::vector<Expr> hyps;
  for (const auto& name : ann.low) hyps.push_back(eq_tr(decl(name), start));

  Expr body;
  if (ann.deviation.empty()) {
    std::vector<Expr> outs;
    for (const auto& name : ann.out) {
      const auto& v = decl(name);
      outs.push_back(fol::implies(abs_less(delta(v, start), k), abs_less(delta(v, end), k)));
    }
    body = hyps.empty() ? fol::mk_and(outs) : fol::implies(fol::mk_and(hyps), fol::mk_and(outs));
  } else {
    for (const auto& name : ann.deviation) hyps.push_back(abs_less(delta(decl(name), start), k));
    std::vector<Expr> outs;
    for (const auto& name : ann.out) outs.push_back(abs_less(delta(decl(name), end), k));
    body = fol::implies(fol::mk_and(hyps), fol::mk_and(outs));
  }
  return {"sensitivity", fol::forall({kv}, body)};
}

Conjecture PropertyBuilder::conjecture(const SExpr& formula) const {
  Expr f = read_term(formula, model_.signature());
  if (!f.is_formula()) throw ParseError(formula.pos, "sort error: conjecture is not a formula");
  return {"conjecture", f};
}

Conjecture PropertyBuilder::conjecture(std::string_view text) const {
  auto items = parse_sexprs(text);
  if (items.size() != 1) throw ParseError({1, 1}, "expected exactly one formula");
  return conjecture(items.front());
}

Conjecture PropertyBuilder::build(const SpecFile& spec) const {
  if (!spec.property) throw ParseError({1, 1}, "no conjecture");
  const PropertySpec& ps = *spec.property;
  try {
    switch (ps.kind) {
      case PropertyKind::NonInterference: return noninterference(spec.annotation, ps.at_line);
      case PropertyKind::Sensitivity: return sensitivity(spec.annotation, ps.at_line);
      case PropertyKind::Conjecture: return conjecture(ps.formula);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(ps.pos, e.what());
  }
  return {};
}

}  // namespace tracelogic
