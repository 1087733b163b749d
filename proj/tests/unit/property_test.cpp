#include <gtest/gtest.h>

#include "support.hpp"
#include "tracelogic/error.hpp"
#include "tracelogic/parser.hpp"
#include "tracelogic/pipeline.hpp"
#include "tracelogic/property.hpp"

using namespace tracelogic;
using tracelogic::fixtures::kArraySum;

namespace {

std::string parse_error(const std::string& text) {
  try {
    encode_spec(text, "t");
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Property, EqTrFourCases) {
  ProgramModel m(parse_program("func main(){ Int lo; Int[] b; const Int k; const Int[] a; skip; }"),
                 TraceMode::Pair);
  SemanticsEncoder enc(m);
  PropertyBuilder pb(enc);
  const auto& p = m.program();
  auto l0 = m.first_timepoint();
  EXPECT_EQ(fol::to_smtlib(pb.eq_tr(*p.find("lo"), l0)), "(= (lo l1 t1) (lo l1 t2))");
  EXPECT_EQ(fol::to_smtlib(pb.eq_tr(*p.find("b"), l0)), "(forall ((pos Int)) (= (b l1 pos t1) (b l1 pos t2)))");
  EXPECT_EQ(fol::to_smtlib(pb.eq_tr(*p.find("k"), l0)), "(= (k t1) (k t2))");
  EXPECT_EQ(fol::to_smtlib(pb.eq_tr(*p.find("a"), l0)), "(forall ((pos Int)) (= (a pos t1) (a pos t2)))");
}

TEST(Property, NonInterference) {
  auto enc = encode_file(fixtures::kCorpus / "3-ni-high-guard-equal-branches.spec");
  EXPECT_EQ(fol::to_smtlib(enc.task.conjecture), "(=> (= (lo l6 t1) (lo l6 t2)) (= (lo main_end t1) (lo main_end t2)))");
}

TEST(Property, NonInterferenceAtLocation) {
  auto text = fixtures::read_file(fixtures::kCorpus / "9-ni-equal-output.spec");
  auto pos = text.find("(property noninterference)");
  text.replace(pos, std::string("(property noninterference)").size(), "(property noninterference (at l6))");
  auto enc = encode_spec(text, "t");
  EXPECT_NE(fol::to_smtlib(enc.task.conjecture).find("(output l6 pos t1)"), std::string::npos);
  text.replace(text.find("(at l6)"), 7, "(at l11)");
  EXPECT_NE(parse_error(text).find("no top-level statement at line 11"), std::string::npos);
}

TEST(Property, SensitivityWithDeviation) {
  auto enc = encode_file(fixtures::kCorpus / "3-sens-abs-diff-up-to-k.spec");
  auto text = fol::to_smtlib(enc.task.conjecture);
  EXPECT_EQ(text.rfind("(forall ((k Int)) (=> (and ", 0), 0u) << text;
  EXPECT_NE(text.find("(forall ((pos Int)) (= (a pos t1) (a pos t2)))"), std::string::npos);
  EXPECT_NE(text.find("(= (alength t1) (alength t2))"), std::string::npos);
  EXPECT_NE(text.find("(- (z t1) (z t2))"), std::string::npos);
  EXPECT_NE(text.find("(- (x main_end t1) (x main_end t2))"), std::string::npos);
}

TEST(Property, SensitivityWithoutDeviationBoundsEachOutput) {
  auto enc = encode_file(fixtures::kCorpus / "1-sens-equal-sums.spec");
  auto text = fol::to_smtlib(enc.task.conjecture);
  EXPECT_NE(text.find("(=> (or (and (<= 0 (- (x l6 t1) (x l6 t2)))"), std::string::npos) << text;
}

TEST(Property, AbsLess) {
  auto f = PropertyBuilder::abs_less(fol::app("d", {}, fol::Sort::Int), fol::app("k", {}, fol::Sort::Int));
  EXPECT_EQ(fol::to_smtlib(f), "(or (and (<= 0 d) (< d k)) (and (< d 0) (< (- 0 d) k)))");
}

TEST(Property, SpecErrors) {
  std::string prog = "func main(){ const Int hi; Int lo; lo = lo + 1; }\n";
  EXPECT_NE(parse_error(prog).find("no conjecture"), std::string::npos);
  EXPECT_NE(parse_error(prog + "(levels (x L))").find("undeclared variable 'x'"), std::string::npos);
  EXPECT_NE(parse_error(prog + "(levels (lo L))(property noninterference)(conjecture true)")
                .find("more than one property"),
            std::string::npos);
  EXPECT_NE(parse_error(prog + "(bogus)").find("unknown block"), std::string::npos);
  EXPECT_NE(parse_error(prog + "(conjecture (= (lo main_end t1) zero))").find("sort error"), std::string::npos);
  EXPECT_NE(parse_error(prog + "(conjecture (= (q main_end t1) 0))").find("unknown symbol 'q'"),
            std::string::npos);
  EXPECT_NE(parse_error(prog + "(conjecture (= (lo main_end tr) 0))").find("unbound variable 'tr'"),
            std::string::npos);
  EXPECT_NE(parse_error(prog + "(set-traces 1)(levels (lo L))(property noninterference)")
                .find("property requires 2 traces"),
            std::string::npos);
}

TEST(Property, ErrorPositionsAreInTheSpecFile) {
  std::string text = "func main(){ Int lo; lo = 1; }\n(levels (lo L))\n(conjecture (= (lo main_end t1) nope))\n";
  try {
    encode_spec(text, "t");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.pos().line, 3);
    EXPECT_EQ(e.pos().column, 33);
  }
}

TEST(Property, TracesOverride) {
  EncodeOptions opt;
  opt.traces = 1;
  EXPECT_THROW(encode_file(fixtures::kCorpus / "1-ni-assign-to-high.spec", opt), ParseError);
  std::string single = std::string(kArraySum) + "(conjecture (<= 0 (i main_end)))\n";
  auto enc = encode_spec(single, "t", opt);
  EXPECT_EQ(enc.task.mode, TraceMode::Single);
  EXPECT_GT(enc.lemma_count, 0u);
}
