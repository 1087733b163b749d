#include "tracelogic/parser.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <regex>
#include <set>

namespace tracelogic {

bool is_reserved_identifier(std::string_view name) {
  static const std::set<std::string_view> words = {
      // encoding symbols
      "t1", "t2", "tr", "zero", "s", "p", "main_end", "Nat_less", "Nat", "Time", "Trace", "Bool",
      // SMT-LIB reserved words and core/ints symbols
      "and", "or", "not", "xor", "ite", "distinct", "true", "false", "let", "forall", "exists",
      "match", "par", "as", "abs", "div", "mod", "assert", "check-sat"};
  if (words.contains(name)) return true;
  static const std::regex generated("^(l|n|It)[0-9]+$");
  return std::regex_match(name.begin(), name.end(), generated);
}

namespace {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Semi,
  Assign,
  Plus,
  Minus,
  Star,
  Lt,
  Le,
  Gt,
  Ge,
  EqEq,
  NotEq,
  AndAnd,
  OrOr,
  Bang,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
  std::size_t offset = 0;
  std::size_t end_offset = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_trivia();
    Token t;
    t.pos = {line_, col_};
    t.offset = i_;
    if (i_ >= src_.size()) {
      t.kind = Tok::End;
      t.end_offset = i_;
      return t;
    }
    char c = src_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i_;
      while (i_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) {
        advance();
      }
      t.kind = Tok::Ident;
      t.text = std::string(src_.substr(start, i_ - start));
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) advance();
      t.kind = Tok::Number;
      t.text = std::string(src_.substr(start, i_ - start));
    } else {
      auto two = src_.substr(i_, 2);
      auto single = [&](Tok k) {
        advance();
        t.kind = k;
        t.text = std::string(1, c);
      };
      auto dual = [&](Tok k) {
        advance();
        advance();
        t.kind = k;
        t.text = std::string(two);
      };
      if (two == "<=") dual(Tok::Le);
      else if (two == ">=") dual(Tok::Ge);
      else if (two == "==") dual(Tok::EqEq);
      else if (two == "!=") dual(Tok::NotEq);
      else if (two == "&&") dual(Tok::AndAnd);
      else if (two == "||") dual(Tok::OrOr);
      else {
        switch (c) {
          case '(': single(Tok::LParen); break;
          case ')': single(Tok::RParen); break;
          case '{': single(Tok::LBrace); break;
          case '}': single(Tok::RBrace); break;
          case '[': single(Tok::LBracket); break;
          case ']': single(Tok::RBracket); break;
          case ';': single(Tok::Semi); break;
          case '=': single(Tok::Assign); break;
          case '+': single(Tok::Plus); break;
          case '-': single(Tok::Minus); break;
          case '*': single(Tok::Star); break;
          case '<': single(Tok::Lt); break;
          case '>': single(Tok::Gt); break;
          case '!': single(Tok::Bang); break;
          default:
            throw ParseError(t.pos, std::string("unexpected character '") + c + "'");
        }
      }
    }
    t.end_offset = i_;
    return t;
  }

  SourcePos pos() const { return {line_, col_}; }

 private:
  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_trivia() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (src_.substr(i_, 2) == "//") {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else if (src_.substr(i_, 2) == "/*") {
        SourcePos start{line_, col_};
        advance();
        advance();
        while (i_ < src_.size() && src_.substr(i_, 2) != "*/") advance();
        if (i_ >= src_.size()) throw ParseError(start, "unterminated comment");
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { tok_ = lexer_.next(); }

  ParsedProgram parse() {
    expect_keyword("func");
    expect_keyword("main");
    expect(Tok::LParen, "'('");
    expect(Tok::RParen, "')'");
    expect(Tok::LBrace, "'{'");
    while (tok_.kind != Tok::RBrace) {
      if (tok_.kind == Tok::End) throw ParseError(tok_.pos, "expected '}' at end of main");
      if (at_declaration()) {
        parse_declaration();
      } else {
        program_.body.push_back(parse_statement());
      }
    }
    ParsedProgram out;
    out.end_offset = tok_.end_offset;
    out.end_pos = tok_.pos;
    out.end_pos.column += 1;
    check_distinct_lines();
    out.program = std::move(program_);
    return out;
  }

  /// True when nothing but whitespace and comments follows the closing brace of main.
  bool only_trivia_follows() {
    advance();
    return tok_.kind == Tok::End;
  }

  SourcePos current_pos() const { return tok_.pos; }

 private:
  void advance() { tok_ = lexer_.next(); }

  bool is_keyword(std::string_view kw) const { return tok_.kind == Tok::Ident && tok_.text == kw; }

  void expect_keyword(std::string_view kw) {
    if (!is_keyword(kw)) throw ParseError(tok_.pos, "expected '" + std::string(kw) + "'");
    advance();
  }

  Token expect(Tok k, std::string_view what) {
    if (tok_.kind != k) {
      throw ParseError(tok_.pos, "expected " + std::string(what) + describe_found());
    }
    Token t = tok_;
    advance();
    return t;
  }

  std::string describe_found() const {
    if (tok_.kind == Tok::End) return " but reached end of input";
    return " but found '" + tok_.text + "'";
  }

  bool at_declaration() const { return is_keyword("const") || is_keyword("Int"); }

  void parse_declaration() {
    SourcePos start = tok_.pos;
    ast::VarDecl d;
    d.line = start.line;
    if (is_keyword("const")) {
      d.is_const = true;
      advance();
    }
    expect_keyword("Int");
    if (tok_.kind == Tok::LBracket) {
      advance();
      expect(Tok::RBracket, "']'");
      d.is_array = true;
    }
    Token name = expect(Tok::Ident, "variable name");
    check_identifier(name);
    d.name = name.text;
    if (program_.find(d.name)) {
      throw ParseError(name.pos, "duplicate declaration of '" + d.name + "'");
    }
    std::optional<ast::ExprPtr> init;
    SourcePos init_pos;
    if (tok_.kind == Tok::Assign) {
      init_pos = tok_.pos;
      advance();
      init = parse_expr();
    }
    expect(Tok::Semi, "';'");
    program_.decls.push_back(d);
    if (init) {
      if (d.is_const) throw ParseError(init_pos, "assignment to const variable '" + d.name + "'");
      if (d.is_array) {
        throw ParseError(init_pos, "type mismatch: array '" + d.name + "' cannot be initialized");
      }
      require_int(**init, "initializer");
      ast::Statement s;
      s.kind = ast::Statement::Kind::IntAssign;
      s.line = start.line;
      s.column = start.column;
      s.target = d.name;
      s.value = *init;
      program_.body.push_back(std::move(s));
    }
  }

  void check_identifier(const Token& t) {
    static const std::set<std::string_view> keywords = {"func", "main",  "const", "Int",
                                                        "skip", "if",    "else",  "while"};
    if (keywords.contains(t.text)) {
      throw ParseError(t.pos, "keyword '" + t.text + "' cannot be used as a variable name");
    }
    if (is_reserved_identifier(t.text)) {
      throw ParseError(t.pos, "identifier '" + t.text + "' is reserved by the encoding");
    }
  }

  std::vector<ast::Statement> parse_block() {
    Token open = expect(Tok::LBrace, "'{'");
    std::vector<ast::Statement> block;
    while (tok_.kind != Tok::RBrace) {
      if (tok_.kind == Tok::End) throw ParseError(tok_.pos, "expected '}'");
      if (at_declaration()) {
        throw ParseError(tok_.pos, "declarations are only allowed at the top level of main");
      }
      block.push_back(parse_statement());
    }
    advance();
    if (block.empty()) throw ParseError(open.pos, "empty block");
    return block;
  }

  ast::Statement parse_statement() {
    ast::Statement s;
    s.line = tok_.pos.line;
    s.column = tok_.pos.column;
    if (is_keyword("skip")) {
      advance();
      expect(Tok::Semi, "';'");
      s.kind = ast::Statement::Kind::Skip;
      return s;
    }
    if (is_keyword("if")) {
      advance();
      expect(Tok::LParen, "'('");
      s.condition = parse_expr();
      require_bool(*s.condition, "if condition");
      expect(Tok::RParen, "')'");
      s.kind = ast::Statement::Kind::IfElse;
      s.body = parse_block();
      expect_keyword("else");
      s.orelse = parse_block();
      return s;
    }
    if (is_keyword("while")) {
      advance();
      expect(Tok::LParen, "'('");
      s.condition = parse_expr();
      require_bool(*s.condition, "loop condition");
      expect(Tok::RParen, "')'");
      s.kind = ast::Statement::Kind::While;
      s.body = parse_block();
      return s;
    }
    Token target = expect(Tok::Ident, "statement");
    const ast::VarDecl* decl = lookup(target);
    s.target = target.text;
    if (tok_.kind == Tok::LBracket) {
      advance();
      s.index = parse_expr();
      require_int(*s.index, "array index");
      expect(Tok::RBracket, "']'");
      if (!decl->is_array) {
        throw ParseError(target.pos, "type mismatch: '" + decl->name + "' is not an array");
      }
      s.kind = ast::Statement::Kind::ArrayAssign;
    } else {
      if (decl->is_array) {
        throw ParseError(target.pos,
                         "type mismatch: array '" + decl->name + "' assigned as a scalar");
      }
      s.kind = ast::Statement::Kind::IntAssign;
    }
    if (decl->is_const) {
      throw ParseError(target.pos, "assignment to const variable '" + decl->name + "'");
    }
    expect(Tok::Assign, "'='");
    s.value = parse_expr();
    require_int(*s.value, "assigned value");
    expect(Tok::Semi, "';'");
    return s;
  }

  const ast::VarDecl* lookup(const Token& t) const {
    const ast::VarDecl* d = program_.find(t.text);
    if (!d) throw ParseError(t.pos, "undeclared variable '" + t.text + "'");
    return d;
  }

  static void require_int(const ast::Expr& e, std::string_view what) {
    if (e.is_bool()) {
      throw ParseError(e.pos, "type mismatch: " + std::string(what) + " must be an integer");
    }
  }

  static void require_bool(const ast::Expr& e, std::string_view what) {
    if (!e.is_bool()) {
      throw ParseError(e.pos, "type mismatch: " + std::string(what) + " must be a boolean");
    }
  }

  // Precedence climbing: || < && < comparison < + - < * < unary.
  ast::ExprPtr parse_expr() { return parse_or(); }

  ast::ExprPtr parse_or() {
    auto lhs = parse_and();
    while (tok_.kind == Tok::OrOr) {
      SourcePos pos = tok_.pos;
      advance();
      auto rhs = parse_and();
      require_bool(*lhs, "operand of '||'");
      require_bool(*rhs, "operand of '||'");
      lhs = ast::Expr::binary(ast::BinaryOp::Or, lhs, rhs, pos);
    }
    return lhs;
  }

  ast::ExprPtr parse_and() {
    auto lhs = parse_not();
    while (tok_.kind == Tok::AndAnd) {
      SourcePos pos = tok_.pos;
      advance();
      auto rhs = parse_not();
      require_bool(*lhs, "operand of '&&'");
      require_bool(*rhs, "operand of '&&'");
      lhs = ast::Expr::binary(ast::BinaryOp::And, lhs, rhs, pos);
    }
    return lhs;
  }

  ast::ExprPtr parse_not() {
    if (tok_.kind == Tok::Bang) {
      SourcePos pos = tok_.pos;
      advance();
      auto arg = parse_not();
      require_bool(*arg, "operand of '!'");
      return ast::Expr::negation(arg, pos);
    }
    return parse_comparison();
  }

  ast::ExprPtr parse_comparison() {
    auto lhs = parse_additive();
    std::optional<ast::BinaryOp> op;
    switch (tok_.kind) {
      case Tok::Lt: op = ast::BinaryOp::Lt; break;
      case Tok::Le: op = ast::BinaryOp::Le; break;
      case Tok::Gt: op = ast::BinaryOp::Gt; break;
      case Tok::Ge: op = ast::BinaryOp::Ge; break;
      case Tok::EqEq: op = ast::BinaryOp::Eq; break;
      case Tok::NotEq: op = ast::BinaryOp::Ne; break;
      default: break;
    }
    if (!op) return lhs;
    SourcePos pos = tok_.pos;
    std::string sym = tok_.text;
    advance();
    auto rhs = parse_additive();
    require_int(*lhs, "operand of '" + sym + "'");
    require_int(*rhs, "operand of '" + sym + "'");
    return ast::Expr::binary(*op, lhs, rhs, pos);
  }

  ast::ExprPtr parse_additive() {
    auto lhs = parse_multiplicative();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      auto op = tok_.kind == Tok::Plus ? ast::BinaryOp::Add : ast::BinaryOp::Sub;
      SourcePos pos = tok_.pos;
      std::string sym = tok_.text;
      advance();
      auto rhs = parse_multiplicative();
      require_int(*lhs, "operand of '" + sym + "'");
      require_int(*rhs, "operand of '" + sym + "'");
      lhs = ast::Expr::binary(op, lhs, rhs, pos);
    }
    return lhs;
  }

  ast::ExprPtr parse_multiplicative() {
    auto lhs = parse_primary();
    while (tok_.kind == Tok::Star) {
      SourcePos pos = tok_.pos;
      advance();
      auto rhs = parse_primary();
      require_int(*lhs, "operand of '*'");
      require_int(*rhs, "operand of '*'");
      lhs = ast::Expr::binary(ast::BinaryOp::Mul, lhs, rhs, pos);
    }
    return lhs;
  }

  ast::ExprPtr parse_primary() {
    SourcePos pos = tok_.pos;
    if (tok_.kind == Tok::LParen) {
      advance();
      auto e = parse_expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (tok_.kind == Tok::Minus) {
      advance();
      if (tok_.kind != Tok::Number) throw ParseError(tok_.pos, "expected integer after '-'");
      return number(pos, true);
    }
    if (tok_.kind == Tok::Number) return number(pos, false);
    if (tok_.kind == Tok::Ident) {
      Token name = tok_;
      advance();
      const ast::VarDecl* d = lookup(name);
      if (tok_.kind == Tok::LBracket) {
        advance();
        auto index = parse_expr();
        require_int(*index, "array index");
        expect(Tok::RBracket, "']'");
        if (!d->is_array) {
          throw ParseError(name.pos, "type mismatch: '" + d->name + "' is not an array");
        }
        return ast::Expr::array_read(name.text, index, pos);
      }
      if (d->is_array) {
        throw ParseError(name.pos, "type mismatch: array '" + d->name + "' used as a scalar");
      }
      return ast::Expr::var(name.text, pos);
    }
    throw ParseError(tok_.pos, "expected expression" + describe_found());
  }

  ast::ExprPtr number(SourcePos pos, bool negative) {
    std::string digits = (negative ? "-" : "") + tok_.text;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw ParseError(pos, "integer literal out of range");
    }
    advance();
    return ast::Expr::int_lit(v, pos);
  }

  void check_distinct_lines() const {
    std::map<int, int> seen;  // line -> column of first statement
    ast::for_each_statement(program_.body, [&](const ast::Statement& s) {
      auto [it, inserted] = seen.emplace(s.line, s.column);
      if (!inserted) {
        throw ParseError({s.line, s.column},
                         "statements must start on distinct lines (another statement starts at "
                         "column " + std::to_string(it->second) + ")");
      }
    });
  }

  Lexer lexer_;
  Token tok_;
  ast::Program program_;
};

}  // namespace

ParsedProgram parse_program_prefix(std::string_view source) {
  Parser parser(source);
  return parser.parse();
}

ast::Program parse_program(std::string_view source) {
  Parser parser(source);
  ParsedProgram parsed = parser.parse();
  if (!parser.only_trivia_follows()) {
    throw ParseError(parser.current_pos(), "unexpected text after end of main");
  }
  return std::move(parsed.program);
}

}  // namespace tracelogic
