#include <gtest/gtest.h>

#include <numeric>

#include "support.hpp"
#include "tracelogic/error.hpp"
#include "tracelogic/interpreter.hpp"
#include "tracelogic/parser.hpp"

using namespace tracelogic;
using tracelogic::fixtures::kArraySum;

TEST(Interpreter, SumsTheArray) {
  auto p = parse_program(kArraySum);
  Input in = parse_input("a = [3, -1, 4]\nalength = 3\n");
  auto rec = run(p, in);
  EXPECT_EQ(rec.final_state().scalar("hw"), 6);
  EXPECT_EQ(rec.final_state().scalar("i"), 3);
  EXPECT_EQ(rec.last_iteration({9, {}}), 3u);
  // l6, l7, l9(0..3), l11(0..2), l12(0..2), main_end
  EXPECT_EQ(rec.visits.size(), 2u + 4u + 3u + 3u + 1u);
  EXPECT_TRUE(rec.visits.back().first.is_end());
  ASSERT_NE(rec.at({12, {1}}), nullptr);
  EXPECT_EQ(rec.at({12, {1}})->scalar("hw"), 2);
  EXPECT_EQ(rec.at({9, {4}}), nullptr);
}

TEST(Interpreter, EmptyLoop) {
  auto rec = run(parse_program(kArraySum), parse_input("alength = 0\n"));
  EXPECT_EQ(rec.last_iteration({9, {}}), 0u);
  EXPECT_EQ(rec.final_state().scalar("hw"), 0);
}

TEST(Interpreter, NestedLoopsRecordLastIterationPerInstance) {
  auto p = parse_program(R"(func main()
{
  Int x = 0;
  Int y;
  while (x < 3)
  {
    y = 0;
    while (y < x)
    {
      y = y + 1;
    }
    x = x + 1;
  }
}
)");
  auto rec = run(p, {});
  EXPECT_EQ(rec.last_iteration({5, {}}), 3u);
  for (std::uint64_t k = 0; k < 3; ++k) EXPECT_EQ(rec.last_iteration({8, {k}}), k);
  EXPECT_FALSE(rec.last_iteration({8, {3}}));
}

TEST(Interpreter, ArraysAreTotalMaps) {
  auto p = parse_program("func main()\n{\n  Int[] m;\n  Int x;\n  m[-5] = 2;\n  x = m[-5] + m[100];\n}\n");
  auto rec = run(p, {});
  EXPECT_EQ(rec.final_state().scalar("x"), 2);
  EXPECT_EQ(rec.final_state().element("m", -5), 2);
  EXPECT_EQ(rec.final_state().element("m", 7), 0);
}

TEST(Interpreter, FuelAndOverflow) {
  auto loop = parse_program("func main()\n{\n  Int x = 0;\n  while (x >= 0)\n  {\n    skip;\n  }\n}\n");
  EXPECT_THROW(run(loop, {}, 1000), FuelExhausted);
  auto big = parse_program("func main()\n{\n  Int x = 9223372036854775807;\n  x = x + 1;\n}\n");
  EXPECT_THROW(run(big, {}), Error);
  EXPECT_EQ(checked_mul(-3, 4), -12);
  EXPECT_THROW(checked_mul(INT64_MAX, 2), Error);
  EXPECT_THROW(checked_sub(INT64_MIN, 1), Error);
}

TEST(Interpreter, InputFiles) {
  Input in = parse_input("# fixture\nx = -4\nb = [1, 2,3]\n\n");
  EXPECT_EQ(in.scalars.at("x"), -4);
  EXPECT_EQ(in.arrays.at("b"), (std::vector<std::int64_t>{1, 2, 3}));
  EXPECT_EQ(parse_input(format_input(in)), in);
  EXPECT_THROW(parse_input("x 3"), ParseError);
  EXPECT_THROW(parse_input("x = 3\nx = 4"), ParseError);
  EXPECT_THROW(parse_input("b = [1, 2"), ParseError);
}

TEST(Interpreter, RandomInputsRespectRanges) {
  auto p = parse_program(kArraySum);
  std::mt19937_64 rng(5);
  for (int n = 0; n < 200; ++n) {
    Input in = random_input(p, rng);
    ASSERT_TRUE(in.arrays.contains("a"));
    EXPECT_LE(in.arrays.at("a").size(), 6u);
    EXPECT_EQ(in.scalars.at("alength"), static_cast<std::int64_t>(in.arrays.at("a").size()));
    for (auto v : in.arrays.at("a")) {
      EXPECT_GE(v, -10);
      EXPECT_LE(v, 10);
    }
    // i and hw are assigned before they are read
    EXPECT_FALSE(in.scalars.contains("i"));
    EXPECT_FALSE(in.scalars.contains("hw"));
    auto rec = run(p, in);
    EXPECT_EQ(rec.final_state().scalar("hw"),
              std::accumulate(in.arrays.at("a").begin(), in.arrays.at("a").end(), std::int64_t{0}));

    Input q = perturb_input(in, rng);
    int diffs = q.scalars != in.scalars;
    for (const auto& [name, cells] : in.arrays) {
      for (std::size_t k = 0; k < cells.size(); ++k) diffs += cells[k] != q.arrays.at(name)[k];
    }
    if (!in.arrays.at("a").empty()) EXPECT_EQ(diffs, 1);
  }
}

TEST(Interpreter, TimepointsVisitedOnce) {
  std::mt19937_64 rng(9);
  for (int n = 0; n < 100; ++n) {
    auto p = parse_program(fixtures::random_program(rng));
    Input in = random_input(p, rng);
    try {
      auto rec = run(p, in);
      EXPECT_EQ(rec.index.size(), rec.visits.size());
      EXPECT_TRUE(rec.visits.back().first.is_end());
    } catch (const FuelExhausted&) {
      ADD_FAILURE() << "generated programs terminate";
    } catch (const Error&) {
      // overflow is allowed
    }
  }
}
