#include <gtest/gtest.h>

#include "tracelogic/error.hpp"
#include "tracelogic/fol.hpp"

using namespace tracelogic;
using namespace tracelogic::fol;

TEST(Fol, SortNames) {
  for (Sort s : {Sort::Bool, Sort::Nat, Sort::Int, Sort::Time, Sort::Trace}) {
    EXPECT_EQ(parse_sort(to_string(s)), s);
  }
  EXPECT_FALSE(parse_sort("Real"));
}

TEST(Fol, SignatureBuiltinsAndFreshNames) {
  Signature sig;
  EXPECT_TRUE(sig.contains("zero"));
  EXPECT_TRUE(sig.contains("s"));
  EXPECT_TRUE(sig.contains("p"));
  EXPECT_TRUE(sig.contains("+"));
  sig.declare({"pos", {}, Sort::Int, false});
  EXPECT_NE(sig.fresh_name("pos"), "pos");
  EXPECT_EQ(sig.fresh_name("val"), "val");
}

TEST(Fol, ConnectiveCollapsing) {
  Expr a = app("a", {}, Sort::Bool);
  EXPECT_EQ(mk_and({}), mk_true());
  EXPECT_EQ(mk_or({}), mk_false());
  EXPECT_EQ(mk_and({a}), a);
  EXPECT_EQ(to_smtlib(mk_and({a, a})), "(and a a)");
  EXPECT_EQ(to_smtlib(implies(a, a)), "(=> a a)");
}

TEST(Fol, Printing) {
  Expr t = app("l9", {succ(var("It9", Sort::Nat))}, Sort::Time);
  EXPECT_EQ(to_term_string(t), "l9(s(It9))");
  EXPECT_EQ(to_smtlib(t), "(l9 (s It9))");
  EXPECT_EQ(to_smtlib(int_const(-3)), "(- 3)");
  EXPECT_EQ(to_smtlib(forall({{"x", Sort::Nat}}, nat_less(var("x", Sort::Nat), zero()))),
            "(forall ((x Nat)) (Nat_less x zero))");
}

TEST(Fol, FreeVariablesAndClosure) {
  Expr x = var("x", Sort::Int);
  Expr f = eq(x, int_const(1));
  EXPECT_EQ(free_variables(f), std::set<std::string>{"x"});
  EXPECT_FALSE(is_closed(f));
  EXPECT_TRUE(is_closed(forall({{"x", Sort::Int}}, f)));
}

TEST(Fol, SubstitutionAvoidsCapture) {
  Expr x = var("x", Sort::Int);
  Expr y = var("y", Sort::Int);
  // forall y. x < y   with x := y  must not become  forall y. y < y
  Expr f = forall({{"y", Sort::Int}}, int_less(x, y));
  Expr g = substitute(f, {{"x", y}});
  ASSERT_TRUE(g.is_quantifier());
  EXPECT_NE(g.bound()[0].name, "y");
  EXPECT_EQ(free_variables(g), std::set<std::string>{"y"});
  // bound occurrences are untouched
  EXPECT_EQ(substitute(f, {{"y", int_const(0)}}), f);
}

TEST(Fol, SortChecking) {
  Signature sig;
  sig.declare({"v", {Sort::Time, Sort::Trace}, Sort::Int, false});
  sig.declare({"l1", {}, Sort::Time, false});
  sig.declare({"t1", {}, Sort::Trace, false});
  Expr ok = eq(app("v", {app("l1", {}, Sort::Time), app("t1", {}, Sort::Trace)}, Sort::Int), int_const(0));
  EXPECT_TRUE(well_sorted(ok, sig));
  Expr swapped = eq(app("v", {app("t1", {}, Sort::Trace), app("l1", {}, Sort::Time)}, Sort::Int), int_const(0));
  EXPECT_FALSE(well_sorted(swapped, sig));
  EXPECT_THROW(check_sorts(swapped, sig), SortError);
  Expr unknown = eq(app("w", {}, Sort::Int), int_const(0));
  EXPECT_FALSE(well_sorted(unknown, sig));
  Expr mixed = eq(zero(), int_const(0));
  EXPECT_FALSE(well_sorted(mixed, sig));
}

TEST(Fol, NatOrderAxioms) {
  auto axioms = nat_order_axioms();
  std::vector<std::string> labels;
  for (const auto& a : axioms) labels.push_back(a.label);
  EXPECT_EQ(labels, (std::vector<std::string>{"nat-less-irreflexive", "nat-less-transitive", "nat-less-total",
                                              "nat-less-zero-min", "nat-less-succ", "nat-less-succ-monotone"}));
  Signature sig;
  sig.declare(nat_less_symbol());
  for (const auto& a : axioms) {
    EXPECT_TRUE(is_closed(a.formula)) << a.label;
    EXPECT_TRUE(well_sorted(a.formula, sig)) << a.label;
  }
}

TEST(Fol, StructuralEquality) {
  EXPECT_EQ(succ(zero()), succ(zero()));
  EXPECT_FALSE(succ(zero()) == zero());
  EXPECT_EQ(plus(int_const(1), int_const(2)), plus(int_const(1), int_const(2)));
}
