#include "tracelogic/ast.hpp"

#include <algorithm>
#include <tuple>
#include <sstream>

namespace tracelogic::ast {

const char* to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

bool is_arithmetic(BinaryOp op) {
  return op == BinaryOp::Add || op == BinaryOp::Sub || op == BinaryOp::Mul;
}

bool is_comparison(BinaryOp op) {
  switch (op) {
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
    case BinaryOp::Eq:
    case BinaryOp::Ne: return true;
    default: return false;
  }
}

bool is_connective(BinaryOp op) { return op == BinaryOp::And || op == BinaryOp::Or; }

bool Expr::is_bool() const {
  switch (kind) {
    case Kind::IntLit:
    case Kind::VarRef:
    case Kind::ArrayRead: return false;
    case Kind::Binary: return !is_arithmetic(op);
    case Kind::Not: return true;
  }
  return false;
}

ExprPtr Expr::int_lit(std::int64_t v, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::IntLit;
  e->value = v;
  e->pos = pos;
  return e;
}

ExprPtr Expr::var(std::string name, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::VarRef;
  e->name = std::move(name);
  e->pos = pos;
  return e;
}

ExprPtr Expr::array_read(std::string name, ExprPtr index, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::ArrayRead;
  e->name = std::move(name);
  e->operands = {std::move(index)};
  e->pos = pos;
  return e;
}

ExprPtr Expr::binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Binary;
  e->op = op;
  e->operands = {std::move(lhs), std::move(rhs)};
  e->pos = pos;
  return e;
}

ExprPtr Expr::negation(ExprPtr arg, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Not;
  e->operands = {std::move(arg)};
  e->pos = pos;
  return e;
}

bool same_structure(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.operands.size() != b.operands.size()) return false;
  switch (a.kind) {
    case Expr::Kind::IntLit:
      if (a.value != b.value) return false;
      break;
    case Expr::Kind::VarRef:
    case Expr::Kind::ArrayRead:
      if (a.name != b.name) return false;
      break;
    case Expr::Kind::Binary:
      if (a.op != b.op) return false;
      break;
    case Expr::Kind::Not: break;
  }
  for (std::size_t i = 0; i < a.operands.size(); ++i) {
    if (!same_structure(*a.operands[i], *b.operands[i])) return false;
  }
  return true;
}

namespace {

bool same_opt(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return same_structure(*a, *b);
}

bool same_block(const std::vector<Statement>& a, const std::vector<Statement>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_structure(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace

bool same_structure(const Statement& a, const Statement& b) {
  return a.kind == b.kind && a.line == b.line && a.target == b.target &&
         same_opt(a.index, b.index) && same_opt(a.value, b.value) &&
         same_opt(a.condition, b.condition) && same_block(a.body, b.body) &&
         same_block(a.orelse, b.orelse);
}

bool same_structure(const Program& a, const Program& b) {
  return a.decls == b.decls && same_block(a.body, b.body);
}

const VarDecl* Program::find(const std::string& name) const {
  for (const auto& d : decls) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

std::vector<const VarDecl*> Program::mutable_vars() const {
  std::vector<const VarDecl*> out;
  for (const auto& d : decls) {
    if (d.is_mutable()) out.push_back(&d);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(const Expr& e) {
  if (e.kind == Expr::Kind::Binary) {
    switch (e.op) {
      case BinaryOp::Or: return 1;
      case BinaryOp::And: return 2;
      case BinaryOp::Add:
      case BinaryOp::Sub: return 4;
      case BinaryOp::Mul: return 5;
      default: return 3;
    }
  }
  return 7;
}

void print(std::ostream& os, const Expr& e);

void print_operand(std::ostream& os, const Expr& child, int parent_prec, bool right) {
  int p = precedence(child);
  bool paren = p < parent_prec || (right && p == parent_prec);
  if (paren) os << '(';
  print(os, child);
  if (paren) os << ')';
}

void print(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::IntLit: os << e.value; break;
    case Expr::Kind::VarRef: os << e.name; break;
    case Expr::Kind::ArrayRead:
      os << e.name << '[';
      print(os, *e.operands[0]);
      os << ']';
      break;
    case Expr::Kind::Binary: {
      int p = precedence(e);
      // comparisons do not chain, so both sides need parentheses at equal level
      print_operand(os, *e.operands[0], is_comparison(e.op) ? p + 1 : p, false);
      os << ' ' << to_string(e.op) << ' ';
      print_operand(os, *e.operands[1], p, true);
      break;
    }
    case Expr::Kind::Not:
      os << '!';
      print_operand(os, *e.operands[0], 7, false);
      break;
  }
}

class LinePrinter {
 public:
  void at_line(int line) {
    if (line < current_) line = current_;
    if (line > current_) {
      out_ << std::string(static_cast<std::size_t>(line - current_), '\n');
      current_ = line;
      fresh_ = true;
    }
    if (!fresh_) out_ << ' ';
    fresh_ = false;
  }
  std::ostream& os() { return out_; }
  std::string str() { return out_.str(); }

 private:
  std::ostringstream out_;
  int current_ = 1;
  bool fresh_ = true;
};

void print_block(LinePrinter& lp, const std::vector<Statement>& block);

void print_statement(LinePrinter& lp, const Statement& s) {
  lp.at_line(s.line);
  auto& os = lp.os();
  switch (s.kind) {
    case Statement::Kind::Skip: os << "skip;"; break;
    case Statement::Kind::IntAssign:
      os << s.target << " = ";
      print(os, *s.value);
      os << ';';
      break;
    case Statement::Kind::ArrayAssign:
      os << s.target << '[';
      print(os, *s.index);
      os << "] = ";
      print(os, *s.value);
      os << ';';
      break;
    case Statement::Kind::IfElse:
      os << "if (";
      print(os, *s.condition);
      os << ") {";
      print_block(lp, s.body);
      lp.os() << " } else {";
      print_block(lp, s.orelse);
      lp.os() << " }";
      break;
    case Statement::Kind::While:
      os << "while (";
      print(os, *s.condition);
      os << ") {";
      print_block(lp, s.body);
      lp.os() << " }";
      break;
  }
}

void print_block(LinePrinter& lp, const std::vector<Statement>& block) {
  for (const auto& s : block) print_statement(lp, s);
}

}  // namespace

std::string print_expr(const Expr& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

std::string print_program(const Program& p) {
  struct Item {
    int line;
    int order;
    const VarDecl* decl;
    const Statement* stmt;
  };
  std::vector<Item> items;
  for (const auto& d : p.decls) items.push_back({d.line, 0, &d, nullptr});
  for (const auto& s : p.body) items.push_back({s.line, 1, nullptr, &s});
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return std::tie(a.line, a.order) < std::tie(b.line, b.order);
  });

  LinePrinter lp;
  lp.at_line(1);
  lp.os() << "func main() {";
  for (const auto& item : items) {
    if (item.decl) {
      lp.at_line(item.line);
      lp.os() << (item.decl->is_const ? "const " : "") << "Int" << (item.decl->is_array ? "[]" : "")
              << ' ' << item.decl->name << ';';
    } else {
      print_statement(lp, *item.stmt);
    }
  }
  lp.os() << "\n}\n";
  return lp.str();
}

}  // namespace tracelogic::ast
