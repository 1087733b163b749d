#include <gtest/gtest.h>

#include "support.hpp"
#include "tracelogic/parser.hpp"
#include "tracelogic/semantics.hpp"

using namespace tracelogic;
using tracelogic::fixtures::kArraySum;

namespace {

std::vector<std::string> labels(const std::vector<fol::LabeledFormula>& fs) {
  std::vector<std::string> out;
  for (const auto& f : fs) out.push_back(f.label);
  return out;
}

// Names of symbols applied anywhere inside `e`.
void collect_symbols(const fol::Expr& e, std::multiset<std::string>& out) {
  if (e.kind() == fol::Kind::App) out.insert(e.name());
  for (const auto& a : e.args()) collect_symbols(a, out);
}

}  // namespace

TEST(Semantics, OneAxiomPerTopLevelStatement) {
  ProgramModel m(parse_program(kArraySum), TraceMode::Pair);
  SemanticsEncoder enc(m);
  auto axioms = enc.encode_program();
  EXPECT_EQ(labels(axioms), (std::vector<std::string>{"semantics-l6", "semantics-l7", "semantics-l9"}));
  for (const auto& a : axioms) {
    EXPECT_TRUE(fol::is_closed(a.formula)) << a.label;
    EXPECT_TRUE(fol::well_sorted(a.formula, m.signature())) << a.label;
    ASSERT_EQ(a.formula.kind(), fol::Kind::Forall);
    EXPECT_EQ(a.formula.bound()[0].name, "tr");
  }
}

TEST(Semantics, SingleTraceHasNoTraceBinder) {
  ProgramModel m(parse_program(kArraySum), TraceMode::Single);
  for (const auto& a : SemanticsEncoder(m).encode_program()) {
    EXPECT_TRUE(fol::is_closed(a.formula));
    EXPECT_TRUE(fol::well_sorted(a.formula, m.signature()));
    EXPECT_EQ(fol::to_smtlib(a.formula).find("Trace"), std::string::npos);
  }
}

TEST(Semantics, IntegerAssignment) {
  ProgramModel m(parse_program(kArraySum), TraceMode::Pair);
  SemanticsEncoder enc(m);
  EXPECT_EQ(fol::to_smtlib(enc.encode_statement(*m.at_line(6), m.trace_var())),
            "(and (= (i l7 tr) 0) (= (hw l7 tr) (hw l6 tr)))");
  EXPECT_EQ(fol::to_smtlib(enc.encode_statement(*m.at_line(11), m.trace_var())),
            "(and (= (hw (l12 It9) tr) (+ (hw (l11 It9) tr) (a (i (l11 It9) tr) tr))) "
            "(= (i (l12 It9) tr) (i (l11 It9) tr)))");
}

TEST(Semantics, EqAllCoversMutableVariables) {
  ProgramModel m(parse_program(kArraySum), TraceMode::Pair);
  SemanticsEncoder enc(m);
  auto f = enc.eq_all(m.main_end(), m.tp(*m.at_line(6)), m.trace_var());
  EXPECT_EQ(fol::to_smtlib(f), "(and (= (i main_end tr) (i l6 tr)) (= (hw main_end tr) (hw l6 tr)))");

  ProgramModel none(parse_program("func main(){ const Int c; skip; }"), TraceMode::Pair);
  EXPECT_EQ(SemanticsEncoder(none).eq_all(none.main_end(), none.main_end(), none.trace_var()), fol::mk_true());
}

TEST(Semantics, EqVarOfArrayQuantifiesPositions) {
  ProgramModel m(parse_program("func main(){ Int[] b; b[0] = 1; }"), TraceMode::Pair);
  SemanticsEncoder enc(m);
  auto f = enc.eq_var(*m.program().find("b"), m.main_end(), m.tp(*m.at_line(1)), m.trace_var());
  EXPECT_EQ(fol::to_smtlib(f), "(forall ((pos Int)) (= (b main_end pos tr) (b l1 pos tr)))");
}

TEST(Semantics, ArrayAssignment) {
  ProgramModel m(parse_program("func main()\n{\n  Int[] b;\n  Int x;\n  b[x] = x + 1;\n}\n"), TraceMode::Single);
  SemanticsEncoder enc(m);
  EXPECT_EQ(fol::to_smtlib(enc.encode_statement(*m.at_line(5), m.trace_var())),
            "(and (forall ((pos Int)) (=> (not (= pos (x l5))) (= (b main_end pos) (b l5 pos)))) "
            "(= (b main_end (x l5)) (+ (x l5) 1)) (= (x main_end) (x l5)))");
  SemanticsEncoder flipped(m, Mutation::FlipArrayGuard);
  EXPECT_NE(fol::to_smtlib(flipped.encode_statement(*m.at_line(5), m.trace_var())).find("(=> (= pos (x l5))"),
            std::string::npos);
}

TEST(Semantics, SkipIsEqAll) {
  ProgramModel m(parse_program("func main()\n{\n  Int x;\n  skip;\n}\n"), TraceMode::Single);
  SemanticsEncoder enc(m);
  EXPECT_EQ(fol::to_smtlib(enc.encode_statement(*m.at_line(4), m.trace_var())), "(= (x main_end) (x l4))");
}

TEST(Semantics, WhileHasFiveConjuncts) {
  ProgramModel m(parse_program(kArraySum), TraceMode::Pair);
  SemanticsEncoder enc(m);
  auto f = enc.encode_statement(*m.at_line(9), m.trace_var());
  ASSERT_EQ(f.kind(), fol::Kind::And);
  ASSERT_EQ(f.args().size(), 5u);
  EXPECT_EQ(fol::to_smtlib(f.arg(0)), "(forall ((It9 Nat)) (=> (Nat_less It9 (n9 tr)) (< (i (l9 It9) tr) (alength tr))))");
  EXPECT_EQ(fol::to_smtlib(f.arg(1)), "(not (< (i (l9 (n9 tr)) tr) (alength tr)))");
  EXPECT_EQ(fol::to_smtlib(f.arg(4)),
            "(and (= (i main_end tr) (i (l9 (n9 tr)) tr)) (= (hw main_end tr) (hw (l9 (n9 tr)) tr)))");
  // the body's last statement ends in the next iteration
  EXPECT_NE(fol::to_smtlib(f.arg(3)).find("(i (l9 (s It9)) tr)"), std::string::npos);
  SemanticsEncoder ident(m, Mutation::LoopSuccIdentity);
  EXPECT_EQ(fol::to_smtlib(ident.encode_statement(*m.at_line(9), m.trace_var())).find("(s It9)"),
            std::string::npos);
}

// an empty frame stays as `true`: generated formulas are never simplified
TEST(Semantics, IfElseGuardsBothBranches) {
  auto src = fixtures::read_file(fixtures::kCorpus / "3-ni-high-guard-equal-branches.spec");
  ProgramModel m(parse_program_prefix(src).program, TraceMode::Pair);
  SemanticsEncoder enc(m);
  auto axioms = enc.encode_program();
  EXPECT_EQ(labels(axioms), std::vector<std::string>{"semantics-l6"});
  auto f = enc.encode_statement(*m.at_line(6), m.trace_var());
  EXPECT_EQ(fol::to_smtlib(f),
            "(and (=> (> (hi tr) 0) (= (lo l8 tr) (lo l6 tr))) "
            "(=> (not (> (hi tr) 0)) (= (lo l12 tr) (lo l6 tr))) "
            "(=> (> (hi tr) 0) (and (= (lo main_end tr) (+ (lo l8 tr) 1)) true)) "
            "(=> (not (> (hi tr) 0)) (and (= (lo main_end tr) (+ (lo l12 tr) 1)) true)))");
}

TEST(Semantics, FrameCompleteness) {
  // every mutable variable appears at the end timepoint of an assignment
  // exactly once, either in the update or in the frame
  std::mt19937_64 rng(11);
  for (int n = 0; n < 100; ++n) {
    ProgramModel m(parse_program(fixtures::random_program(rng)), TraceMode::Single);
    SemanticsEncoder enc(m);
    ast::for_each_statement(m.program().body, [&](const ast::Statement& s) {
      if (s.kind != ast::Statement::Kind::IntAssign) return;
      auto f = enc.encode_statement(s, m.trace_var());
      std::string end = fol::to_smtlib(m.end(s));
      std::string text = fol::to_smtlib(f);
      for (const auto* v : m.program().mutable_vars()) {
        if (v->is_array) continue;
        std::string needle = "(" + v->name + " " + end + ")";
        std::size_t count = 0;
        for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++count;
        EXPECT_EQ(count, 1u) << v->name << " in " << text;
      }
    });
  }
}

TEST(Semantics, MutationsChangeTheEncoding) {
  ProgramModel m(parse_program(kArraySum), TraceMode::Pair);
  auto base = SemanticsEncoder(m).encode_program();
  auto dropped = SemanticsEncoder(m, Mutation::DropAssignFrame).encode_program();
  EXPECT_NE(fol::to_smtlib(base[0].formula), fol::to_smtlib(dropped[0].formula));
  std::multiset<std::string> syms;
  collect_symbols(dropped[0].formula, syms);
  EXPECT_EQ(syms.count("hw"), 0u);
}
