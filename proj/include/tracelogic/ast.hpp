#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tracelogic/error.hpp"

namespace tracelogic::ast {

struct VarDecl {
  std::string name;
  bool is_const = false;
  bool is_array = false;
  int line = 0;

  bool is_mutable() const { return !is_const; }
  friend bool operator==(const VarDecl&, const VarDecl&) = default;
};

enum class BinaryOp { Add, Sub, Mul, Lt, Le, Gt, Ge, Eq, Ne, And, Or };

const char* to_string(BinaryOp op);
bool is_arithmetic(BinaryOp op);
bool is_comparison(BinaryOp op);
bool is_connective(BinaryOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Side-effect free W expression. Integer-valued kinds are IntLit, VarRef,
/// ArrayRead and arithmetic Binary; the rest are boolean.
struct Expr {
  enum class Kind { IntLit, VarRef, ArrayRead, Binary, Not };

  Kind kind = Kind::IntLit;
  std::int64_t value = 0;    // IntLit
  std::string name;          // VarRef, ArrayRead
  BinaryOp op = BinaryOp::Add;
  std::vector<ExprPtr> operands;  // ArrayRead: {index}; Binary: {lhs, rhs}; Not: {arg}
  SourcePos pos;

  bool is_bool() const;

  static ExprPtr int_lit(std::int64_t v, SourcePos pos = {});
  static ExprPtr var(std::string name, SourcePos pos = {});
  static ExprPtr array_read(std::string name, ExprPtr index, SourcePos pos = {});
  static ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
  static ExprPtr negation(ExprPtr arg, SourcePos pos = {});
};

/// Structural equality, ignoring source positions.
bool same_structure(const Expr& a, const Expr& b);

struct Statement {
  enum class Kind { Skip, IntAssign, ArrayAssign, IfElse, While };

  Kind kind = Kind::Skip;
  int line = 0;
  int column = 0;
  std::string target;             // IntAssign, ArrayAssign
  ExprPtr index;                  // ArrayAssign
  ExprPtr value;                  // IntAssign, ArrayAssign
  ExprPtr condition;              // IfElse, While
  std::vector<Statement> body;    // IfElse then-branch, While body
  std::vector<Statement> orelse;  // IfElse else-branch

  bool is_while() const { return kind == Kind::While; }
};

/// Structural equality including line labels but ignoring columns.
bool same_structure(const Statement& a, const Statement& b);

struct Program {
  std::vector<VarDecl> decls;
  std::vector<Statement> body;  // statements of `func main`

  const VarDecl* find(const std::string& name) const;
  std::vector<const VarDecl*> mutable_vars() const;
};

bool same_structure(const Program& a, const Program& b);

/// Calls f on every statement reachable from `block`, parents before children.
template <typename F>
void for_each_statement(const std::vector<Statement>& block, F&& f) {
  for (const auto& s : block) {
    f(s);
    for_each_statement(s.body, f);
    for_each_statement(s.orelse, f);
  }
}

/// Renders a program as W source. Every statement and declaration is placed
/// on its recorded line, so the output re-parses to the same AST.
std::string print_program(const Program& p);
std::string print_expr(const Expr& e);

}  // namespace tracelogic::ast
