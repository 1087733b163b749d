#include <gtest/gtest.h>

#include "support.hpp"
#include "tracelogic/error.hpp"
#include "tracelogic/parser.hpp"

using namespace tracelogic;
using tracelogic::fixtures::kArraySum;

namespace {

SourcePos error_pos(std::string_view src) {
  try {
    parse_program(src);
  } catch (const ParseError& e) {
    return e.pos();
  }
  ADD_FAILURE() << "no error for: " << src;
  return {};
}

std::string error_message(std::string_view src) {
  try {
    parse_program(src);
  } catch (const ParseError& e) {
    return e.message();
  }
  return "";
}

}  // namespace

TEST(Parser, MotivatingExample) {
  auto p = parse_program(kArraySum);
  ASSERT_EQ(p.decls.size(), 4u);
  EXPECT_EQ(p.decls[0].name, "a");
  EXPECT_TRUE(p.decls[0].is_const && p.decls[0].is_array);
  EXPECT_EQ(p.decls[1].name, "alength");
  EXPECT_TRUE(p.decls[1].is_const && !p.decls[1].is_array);
  EXPECT_EQ(p.decls[2].name, "i");
  EXPECT_TRUE(p.decls[2].is_mutable());
  EXPECT_EQ(p.decls[3].name, "hw");

  // initializers desugar to assignments on the declaration line
  ASSERT_EQ(p.body.size(), 3u);
  EXPECT_EQ(p.body[0].kind, ast::Statement::Kind::IntAssign);
  EXPECT_EQ(p.body[0].line, 6);
  EXPECT_EQ(p.body[1].line, 7);
  ASSERT_TRUE(p.body[2].is_while());
  EXPECT_EQ(p.body[2].line, 9);
  ASSERT_EQ(p.body[2].body.size(), 2u);
  EXPECT_EQ(p.body[2].body[0].line, 11);
  EXPECT_EQ(p.body[2].body[1].line, 12);
}

TEST(Parser, SkipOnly) {
  auto p = parse_program("func main(){ skip; }");
  ASSERT_EQ(p.body.size(), 1u);
  EXPECT_EQ(p.body[0].kind, ast::Statement::Kind::Skip);
}

TEST(Parser, AssignmentToConst) {
  EXPECT_NE(error_message("func main(){ const Int x; x = 1; }").find("assignment to const"), std::string::npos);
  EXPECT_NE(error_message("func main(){ const Int x = 1; }").find("assignment to const"), std::string::npos);
}

TEST(Parser, StatementsOnDistinctLines) {
  auto msg = error_message("func main()\n{\n  Int x;\n  x = 1; x = 2;\n}\n");
  EXPECT_NE(msg.find("distinct lines"), std::string::npos);
  auto pos = error_pos("func main()\n{\n  Int x;\n  x = 1; x = 2;\n}\n");
  EXPECT_EQ(pos.line, 4);
  EXPECT_EQ(pos.column, 10);
}

TEST(Parser, TypeErrors) {
  EXPECT_NE(error_message("func main(){ Int x; Int[] a; x = a; }").find("type mismatch"), std::string::npos);
  EXPECT_NE(error_message("func main(){ Int x; x[0] = 1; }").find("type mismatch"), std::string::npos);
  EXPECT_NE(error_message("func main(){ Int x; if (x) { skip; } else { skip; } }").find("type mismatch"),
            std::string::npos);
  EXPECT_NE(error_message("func main(){ Int x; x = 1 < 2; }").find("type mismatch"), std::string::npos);
}

TEST(Parser, UndeclaredAndDuplicate) {
  EXPECT_NE(error_message("func main(){ y = 1; }").find("undeclared"), std::string::npos);
  EXPECT_NE(error_message("func main(){ Int x; Int x; skip; }").find("duplicate"), std::string::npos);
}

TEST(Parser, ReservedNames) {
  for (const char* name : {"l6", "n9", "It3", "tr", "t1", "main_end", "zero", "s"}) {
    EXPECT_TRUE(is_reserved_identifier(name)) << name;
    std::string src = std::string("func main(){ Int ") + name + "; skip; }";
    EXPECT_THROW(parse_program(src), ParseError) << name;
  }
  EXPECT_FALSE(is_reserved_identifier("hw"));
  EXPECT_FALSE(is_reserved_identifier("lo"));
}

TEST(Parser, DeclarationsOnlyAtTopLevel) {
  EXPECT_THROW(parse_program("func main(){ Int x = 0; while (x < 1) { Int y; x = x + 1; } }"), ParseError);
}

TEST(Parser, TrailingText) {
  EXPECT_THROW(parse_program("func main(){ skip; } extra"), ParseError);
  EXPECT_NO_THROW(parse_program("func main(){ skip; } // done\n"));
  auto prefix = parse_program_prefix("func main(){ skip; }\n(conjecture true)");
  EXPECT_EQ(prefix.end_pos.line, 1);
}

TEST(Parser, ErrorPositionsPointAtToken) {
  auto pos = error_pos("func main()\n{\n  Int x;\n  x = x + ;\n}\n");
  EXPECT_EQ(pos.line, 4);
  EXPECT_EQ(pos.column, 11);
}

TEST(Parser, Precedence) {
  auto p = parse_program("func main(){ Int x; x = 1 + 2 * 3 - 4; }");
  const auto& sub = *p.body[0].value;
  ASSERT_EQ(sub.op, ast::BinaryOp::Sub);
  EXPECT_EQ(sub.operands[0]->op, ast::BinaryOp::Add);
  EXPECT_EQ(sub.operands[0]->operands[1]->op, ast::BinaryOp::Mul);
  auto q = parse_program("func main()\n{\n  Int x;\n  if (x < 1 || x > 2 && !(x == 3))\n  {\n    skip;\n  }\n"
                         "  else\n  {\n    skip;\n  }\n}\n");
  const auto& cond = *q.body[0].condition;
  ASSERT_EQ(cond.op, ast::BinaryOp::Or);
  EXPECT_EQ(cond.operands[1]->op, ast::BinaryOp::And);
  EXPECT_EQ(cond.operands[1]->operands[1]->kind, ast::Expr::Kind::Not);
  auto r = parse_program("func main(){ Int x; x = (1 + 2) * 3; }");
  EXPECT_EQ(ast::print_expr(*r.body[0].value), "(1 + 2) * 3");
}

TEST(Parser, PrintedProgramReparses) {
  auto p = parse_program(kArraySum);
  auto q = parse_program(ast::print_program(p));
  EXPECT_TRUE(ast::same_structure(p, q));
}

TEST(Parser, RandomProgramsRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    std::string src = tracelogic::fixtures::random_program(rng);
    ast::Program p;
    ASSERT_NO_THROW(p = parse_program(src)) << src;
    auto q = parse_program(ast::print_program(p));
    EXPECT_TRUE(ast::same_structure(p, q)) << src;
  }
}
