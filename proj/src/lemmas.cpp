#include "tracelogic/lemmas.hpp"

#include <sstream>

namespace tracelogic {

using fol::BoundVar;
using fol::Expr;
using fol::Sort;

const std::vector<std::string>& all_schemas() {
  static const std::vector<std::string> ids = {
      schema::kEqPres,       schema::kEqSuffix,  schema::kMonotonic,  schema::kInjective,
      schema::kIntermediate, schema::kUnchanged, schema::kSameValues, schema::kEqPresArray,
      schema::kTermination,  schema::kAtLeastOne};
  return ids;
}

bool is_relational_schema(const std::string& id) {
  return id == schema::kEqPres || id == schema::kEqSuffix || id == schema::kEqPresArray ||
         id == schema::kTermination || id == schema::kSameValues;
}

LemmaConfig parse_lemma_list(const std::string& comma_separated) {
  LemmaConfig cfg;
  std::stringstream ss(comma_separated);
  std::string id;
  while (std::getline(ss, id, ',')) {
    auto b = id.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    id = id.substr(b, id.find_last_not_of(" \t") - b + 1);
    bool known = false;
    for (const auto& s : all_schemas()) known = known || s == id;
    if (!known) throw ConfigError("unknown lemma schema '" + id + "'");
    cfg.enabled.insert(id);
  }
  return cfg;
}

LemmaGenerator::LemmaGenerator(const SemanticsEncoder& encoder)
    : enc_(encoder), model_(encoder.model()) {
  const auto& sig = model_.signature();
  it_ = sig.fresh_name("it");
  it1_ = sig.fresh_name("it1");
  it2_ = sig.fresh_name("it2");
  itb_ = sig.fresh_name("itB");
  itl_ = sig.fresh_name("itL");
  pos_ = sig.fresh_name("pos");
  val_ = sig.fresh_name("val");
}

Expr LemmaGenerator::value(const ast::Statement& w, const ast::VarDecl& v, Expr it,
                           const Expr& tr) const {
  return model_.scalar_at(v, model_.tp(w, std::move(it)), tr);
}

Expr LemmaGenerator::equal_across(const ast::Statement& w, const ast::VarDecl& v, Expr it) const {
  return fol::eq(value(w, v, it, model_.trace(1)), value(w, v, it, model_.trace(2)));
}

Expr LemmaGenerator::reach_guard(const ast::Statement& w, const Expr& tr) const {
  // walk from w to the top, collecting what must hold for w to execute
  std::vector<Expr> conds;
  const ast::Statement* child = &w;
  const ast::Statement* parent = model_.info(w).parent;
  while (parent) {
    if (parent->is_while()) {
      conds.push_back(fol::nat_less(fol::var(model_.iteration_var(*parent)),
                                    model_.last_iteration(*parent, tr)));
    } else {
      Expr c = enc_.eval(*parent->condition, model_.tp(*parent), tr);
      conds.push_back(model_.info(*child).in_else ? fol::mk_not(c) : c);
    }
    child = parent;
    parent = model_.info(*parent).parent;
  }
  return fol::mk_and({conds.rbegin(), conds.rend()});
}

Expr LemmaGenerator::relational(const ast::Statement& w, Expr body) const {
  const auto& outer = model_.info(w).loops;
  if (!model_.info(w).parent) return body;
  std::vector<BoundVar> its;
  for (const auto* l : outer) its.push_back(model_.iteration_var(*l));
  Expr guard = fol::mk_and({reach_guard(w, model_.trace(1)), reach_guard(w, model_.trace(2))});
  return fol::forall(std::move(its), fol::implies(guard, std::move(body)));
}

Expr LemmaGenerator::per_trace(const ast::Statement& w, Expr body) const {
  Expr tr = model_.trace_var();
  if (model_.info(w).parent) {
    std::vector<BoundVar> its;
    for (const auto* l : model_.info(w).loops) its.push_back(model_.iteration_var(*l));
    body = fol::forall(std::move(its), fol::implies(reach_guard(w, tr), std::move(body)));
  }
  if (model_.relational()) body = fol::forall({{"tr", Sort::Trace}}, std::move(body));
  return body;
}

Expr LemmaGenerator::denseness(const ast::Statement& w, const ast::VarDecl& v,
                               const Expr& tr) const {
  BoundVar it{it_, Sort::Nat};
  Expr i = fol::var(it);
  return fol::forall(
      {it}, fol::implies(fol::nat_less(i, model_.last_iteration(w, tr)),
                         fol::eq(value(w, v, fol::succ(i), tr),
                                 fol::plus(value(w, v, i, tr), fol::int_const(1)))));
}

Expr LemmaGenerator::eq_preservation(const ast::Statement& w, const ast::VarDecl& v) const {
  BoundVar itb{itb_, Sort::Nat}, it{it_, Sort::Nat};
  Expr b = fol::var(itb), i = fol::var(it);
  Expr step = fol::forall(
      {it}, fol::implies(fol::mk_and({fol::nat_less(i, b), equal_across(w, v, i)}),
                         equal_across(w, v, fol::succ(i))));
  return relational(w, fol::forall({itb}, fol::implies(fol::mk_and({equal_across(w, v, fol::zero()), step}),
                                                       equal_across(w, v, b))));
}

Expr LemmaGenerator::eq_preservation_array(const ast::Statement& w, const ast::VarDecl& v) const {
  BoundVar pos{pos_, Sort::Int}, itb{itb_, Sort::Nat}, it{it_, Sort::Nat};
  Expr p = fol::var(pos), b = fol::var(itb), i = fol::var(it);
  auto eq_at = [&](Expr n) {
    Expr tp = model_.tp(w, std::move(n));
    return fol::eq(model_.array_at(v, tp, p, model_.trace(1)),
                   model_.array_at(v, tp, p, model_.trace(2)));
  };
  Expr step = fol::forall(
      {it}, fol::implies(fol::mk_and({fol::nat_less(i, b), eq_at(i)}), eq_at(fol::succ(i))));
  return relational(
      w, fol::forall({pos, itb}, fol::implies(fol::mk_and({eq_at(fol::zero()), step}), eq_at(b))));
}

Expr LemmaGenerator::eq_preservation_suffix(const ast::Statement& w, const ast::VarDecl& v) const {
  BoundVar itl{itl_, Sort::Nat}, it{it_, Sort::Nat};
  Expr l = fol::var(itl), i = fol::var(it);
  Expr n1 = model_.last_iteration(w, model_.trace(1));
  Expr n2 = model_.last_iteration(w, model_.trace(2));
  Expr step = fol::forall(
      {it}, fol::implies(fol::mk_and({fol::nat_le(l, i), fol::nat_less(i, n1), equal_across(w, v, i)}),
                         equal_across(w, v, fol::succ(i))));
  Expr premise =
      fol::mk_and({fol::eq(n1, n2), fol::nat_le(l, n1), equal_across(w, v, l), step});
  Expr conclusion =
      fol::eq(value(w, v, n1, model_.trace(1)), value(w, v, n2, model_.trace(2)));
  return relational(w, fol::forall({itl}, fol::implies(premise, conclusion)));
}

Expr LemmaGenerator::same_termination(const ast::Statement& w) const {
  BoundVar it{it_, Sort::Nat};
  Expr i = fol::var(it);
  Expr t2 = model_.trace(2);
  Expr n1 = model_.last_iteration(w, model_.trace(1));
  Expr n2 = model_.last_iteration(w, t2);
  Expr holds = fol::forall(
      {it}, fol::implies(fol::nat_less(i, n1), enc_.eval(*w.condition, model_.tp(w, i), t2)));
  Expr fails = fol::mk_not(enc_.eval(*w.condition, model_.tp(w, n1), t2));
  return relational(w, fol::implies(fol::mk_and({holds, fails}), fol::eq(n2, n1)));
}

Expr LemmaGenerator::value_monotonicity(const ast::Statement& w, const ast::VarDecl& v) const {
  Expr tr = model_.trace_var();
  BoundVar it1{it1_, Sort::Nat}, it2{it2_, Sort::Nat};
  Expr a = fol::var(it1), b = fol::var(it2);
  Expr body = fol::forall(
      {it1, it2},
      fol::implies(fol::mk_and({fol::nat_less(a, b), fol::nat_le(b, model_.last_iteration(w, tr))}),
                   fol::int_less(value(w, v, a, tr), value(w, v, b, tr))));
  return per_trace(w, fol::implies(denseness(w, v, tr), body));
}

Expr LemmaGenerator::injectivity(const ast::Statement& w, const ast::VarDecl& v) const {
  Expr tr = model_.trace_var();
  BoundVar it1{it1_, Sort::Nat}, it2{it2_, Sort::Nat};
  Expr a = fol::var(it1), b = fol::var(it2);
  Expr last = model_.last_iteration(w, tr);
  Expr body = fol::forall(
      {it1, it2},
      fol::implies(fol::mk_and({fol::nat_le(a, last), fol::nat_le(b, last)}),
                   fol::implies(fol::eq(value(w, v, a, tr), value(w, v, b, tr)), fol::eq(a, b))));
  return per_trace(w, fol::implies(denseness(w, v, tr), body));
}

Expr LemmaGenerator::intermediate_value(const ast::Statement& w, const ast::VarDecl& v) const {
  Expr tr = model_.trace_var();
  BoundVar val{val_, Sort::Int}, it{it_, Sort::Nat};
  Expr x = fol::var(val), i = fol::var(it);
  Expr last = model_.last_iteration(w, tr);
  Expr range = fol::mk_and({fol::int_le(value(w, v, fol::zero(), tr), x),
                            fol::int_less(x, value(w, v, last, tr))});
  Expr witness = fol::exists(
      {it}, fol::mk_and({fol::eq(x, value(w, v, i, tr)), fol::nat_less(i, last)}));
  Expr body = fol::forall({val}, fol::implies(range, witness));
  return per_trace(w, fol::implies(denseness(w, v, tr), body));
}

Expr LemmaGenerator::unchanged_induction(const ast::Statement& w, const ast::VarDecl& v) const {
  Expr tr = model_.trace_var();
  BoundVar it{it_, Sort::Nat};
  Expr i = fol::var(it);
  Expr last = model_.last_iteration(w, tr);
  Expr steps = fol::forall(
      {it}, fol::implies(fol::nat_less(i, last),
                         fol::eq(value(w, v, i, tr), value(w, v, fol::succ(i), tr))));
  return per_trace(
      w, fol::implies(steps, fol::eq(value(w, v, fol::zero(), tr), value(w, v, last, tr))));
}

Expr LemmaGenerator::same_values(const ast::Statement& w, const ast::VarDecl& v) const {
  BoundVar it{it_, Sort::Nat};
  Expr i = fol::var(it);
  Expr step = fol::forall({it}, fol::implies(equal_across(w, v, i), equal_across(w, v, fol::succ(i))));
  return relational(w, fol::implies(fol::mk_and({equal_across(w, v, fol::zero()), step}),
                                    fol::forall({it}, equal_across(w, v, i))));
}

Expr LemmaGenerator::at_least_one_iteration(const ast::Statement& w) const {
  Expr tr = model_.trace_var();
  BoundVar it{it_, Sort::Nat};
  Expr i = fol::var(it);
  return per_trace(w, fol::implies(enc_.eval(*w.condition, model_.tp(w, fol::zero()), tr),
                                   fol::exists({it}, fol::eq(fol::succ(i),
                                                             model_.last_iteration(w, tr)))));
}

std::vector<LemmaInstance> LemmaGenerator::generate_all(const LemmaConfig& config) const {
  std::vector<LemmaInstance> out;
  auto wanted = [&](const std::string& id) {
    return config.allows(id) && (model_.relational() || !is_relational_schema(id));
  };
  auto add = [&](const std::string& id, const ast::Statement& w, const ast::VarDecl* v, Expr f) {
    std::string label = "lemma-" + id + "-l" + std::to_string(w.line);
    if (v) label += "-" + v->name;
    out.push_back({id, &w, v ? std::optional<std::string>(v->name) : std::nullopt,
                   {std::move(label), std::move(f)}});
  };

  for (const auto* w : model_.loops()) {
    for (const auto* v : model_.program().mutable_vars()) {
      if (v->is_array) {
        if (wanted(schema::kEqPresArray)) {
          add(schema::kEqPresArray, *w, v, eq_preservation_array(*w, *v));
        }
        continue;
      }
      if (wanted(schema::kEqPres)) add(schema::kEqPres, *w, v, eq_preservation(*w, *v));
      if (wanted(schema::kEqSuffix)) add(schema::kEqSuffix, *w, v, eq_preservation_suffix(*w, *v));
      if (wanted(schema::kMonotonic)) add(schema::kMonotonic, *w, v, value_monotonicity(*w, *v));
      if (wanted(schema::kInjective)) add(schema::kInjective, *w, v, injectivity(*w, *v));
      if (wanted(schema::kIntermediate)) {
        add(schema::kIntermediate, *w, v, intermediate_value(*w, *v));
      }
      if (wanted(schema::kUnchanged)) add(schema::kUnchanged, *w, v, unchanged_induction(*w, *v));
      if (wanted(schema::kSameValues)) add(schema::kSameValues, *w, v, same_values(*w, *v));
    }
    if (wanted(schema::kTermination)) add(schema::kTermination, *w, nullptr, same_termination(*w));
    if (wanted(schema::kAtLeastOne)) add(schema::kAtLeastOne, *w, nullptr, at_least_one_iteration(*w));
  }
  return out;
}

}  // namespace tracelogic
