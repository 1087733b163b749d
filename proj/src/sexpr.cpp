#include "tracelogic/sexpr.hpp"

#include <cctype>

namespace tracelogic {

std::string SExpr::to_string() const {
  if (!is_list) return atom;
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ' ';
    out += items[i].to_string();
  }
  return out + ")";
}

namespace {

class Reader {
 public:
  Reader(std::string_view text, SourcePos origin) : text_(text), pos_(origin) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip_trivia();
    while (i_ < text_.size()) {
      out.push_back(read());
      skip_trivia();
    }
    return out;
  }

 private:
  void advance() {
    if (text_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  void skip_trivia() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == ';') {
        while (i_ < text_.size() && text_[i_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    SExpr e;
    e.pos = pos_;
    char c = text_[i_];
    if (c == ')') throw ParseError(pos_, "unexpected ')'");
    if (c == '(') {
      e.is_list = true;
      advance();
      skip_trivia();
      while (true) {
        if (i_ >= text_.size()) throw ParseError(e.pos, "unbalanced '('");
        if (text_[i_] == ')') {
          advance();
          return e;
        }
        e.items.push_back(read());
        skip_trivia();
      }
    }
    if (c == '|') {
      // quoted symbol, kept with its bars
      e.atom += c;
      advance();
      while (i_ < text_.size() && text_[i_] != '|') {
        e.atom += text_[i_];
        advance();
      }
      if (i_ >= text_.size()) throw ParseError(e.pos, "unterminated quoted symbol");
      e.atom += '|';
      advance();
      return e;
    }
    if (c == '"') {
      e.atom += c;
      advance();
      while (i_ < text_.size() && text_[i_] != '"') {
        e.atom += text_[i_];
        advance();
      }
      if (i_ >= text_.size()) throw ParseError(e.pos, "unterminated string");
      e.atom += '"';
      advance();
      return e;
    }
    while (i_ < text_.size()) {
      char d = text_[i_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';') break;
      if (!std::isprint(static_cast<unsigned char>(d))) {
        throw ParseError(pos_, "unexpected character");
      }
      e.atom += d;
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

}  // namespace

std::vector<SExpr> parse_sexprs(std::string_view text, SourcePos origin) {
  return Reader(text, origin).read_all();
}

}  // namespace tracelogic
