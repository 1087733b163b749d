#include <gtest/gtest.h>

#include "support.hpp"
#include "tracelogic/parser.hpp"
#include "tracelogic/program_model.hpp"

using namespace tracelogic;
using tracelogic::fixtures::kArraySum;

namespace {

ProgramModel fig1(TraceMode mode = TraceMode::Pair) { return ProgramModel(parse_program(kArraySum), mode); }

}  // namespace

TEST(ProgramModel, TimepointNamesOfMotivatingExample) {
  auto m = fig1();
  const auto& w = *m.at_line(9);
  ASSERT_TRUE(w.is_while());
  EXPECT_EQ(fol::to_term_string(m.tp(*m.at_line(6))), "l6");
  EXPECT_EQ(fol::to_term_string(m.tp(w, fol::zero())), "l9(zero)");
  EXPECT_EQ(fol::to_term_string(m.tp(w, m.last_iteration(w, m.trace_var()))), "l9(n9(tr))");
  EXPECT_EQ(fol::to_term_string(m.tp(*m.at_line(11))), "l11(It9)");
  EXPECT_EQ(fol::to_term_string(m.tp(*m.at_line(12))), "l12(It9)");
  EXPECT_EQ(fol::to_term_string(m.end(*m.at_line(12))), "l9(s(It9))");
  EXPECT_EQ(fol::to_term_string(m.end(*m.at_line(7))), "l9(zero)");
  EXPECT_EQ(fol::to_term_string(m.end(w)), "main_end");
  EXPECT_EQ(fol::to_term_string(m.start(w)), "l9(zero)");
  EXPECT_EQ(fol::to_term_string(m.first_timepoint()), "l6");
  EXPECT_EQ(fol::to_term_string(m.end(*m.at_line(12), true)), "l9(It9)");
}

TEST(ProgramModel, SignatureOrderAndArities) {
  auto m = fig1();
  std::vector<std::string> names;
  for (const auto* s : m.signature().declared()) names.push_back(s->name);
  EXPECT_EQ(names, (std::vector<std::string>{"t1", "t2", "Nat_less", "main_end", "l6", "l7", "l9", "l11", "l12",
                                             "n9", "a", "alength", "i", "hw"}));
  const auto* hw = m.signature().find("hw");
  EXPECT_EQ(hw->args, (std::vector<fol::Sort>{fol::Sort::Time, fol::Sort::Trace}));
  const auto* a = m.signature().find("a");
  EXPECT_EQ(a->args, (std::vector<fol::Sort>{fol::Sort::Int, fol::Sort::Trace}));
  EXPECT_EQ(m.signature().find("l11")->args, (std::vector<fol::Sort>{fol::Sort::Nat}));
  EXPECT_EQ(m.signature().find("n9")->args, (std::vector<fol::Sort>{fol::Sort::Trace}));
}

TEST(ProgramModel, SingleTraceDropsTraceArguments) {
  auto m = fig1(TraceMode::Single);
  EXPECT_FALSE(m.signature().contains("t1"));
  EXPECT_TRUE(m.signature().find("n9")->args.empty());
  EXPECT_EQ(m.signature().find("hw")->args, (std::vector<fol::Sort>{fol::Sort::Time}));
  EXPECT_TRUE(m.signature().find("alength")->args.empty());
}

TEST(ProgramModel, NestedLoopsAndConditionals) {
  auto m = ProgramModel(parse_program(R"(func main()
{
  Int x = 0;
  Int y;
  while (x < 3)
  {
    y = 0;
    while (y < x)
    {
      if (y > 1)
      {
        y = y + 1;
      }
      else
      {
        y = y + 2;
      }
    }
    x = x + 1;
  }
}
)"),
                        TraceMode::Pair);
  EXPECT_EQ(fol::to_term_string(m.tp(*m.at_line(8), fol::zero())), "l8(It5, zero)");
  EXPECT_EQ(fol::to_term_string(m.tp(*m.at_line(12))), "l12(It5, It8)");
  // the last statement of a branch ends where the enclosing If ends
  EXPECT_EQ(fol::to_term_string(m.end(*m.at_line(12))), "l8(It5, s(It8))");
  EXPECT_EQ(fol::to_term_string(m.end(*m.at_line(16))), "l8(It5, s(It8))");
  EXPECT_EQ(fol::to_term_string(m.end(*m.at_line(8))), "l19(It5)");
  EXPECT_EQ(fol::to_term_string(m.end(*m.at_line(19))), "l5(s(It5))");
  EXPECT_EQ(fol::to_term_string(m.last_iteration(*m.at_line(8), m.trace_var())), "n8(It5, tr)");
  EXPECT_EQ(m.signature().find("l12")->args.size(), 2u);
  const auto& info = m.info(*m.at_line(12));
  ASSERT_EQ(info.loops.size(), 2u);
  EXPECT_EQ(info.loops[0]->line, 5);
  EXPECT_FALSE(info.in_else);
  EXPECT_TRUE(m.info(*m.at_line(16)).in_else);
}

TEST(ProgramModel, TpOfLoopNeedsIteration) {
  auto m = fig1();
  EXPECT_THROW(m.tp(*m.at_line(9)), Error);
}
