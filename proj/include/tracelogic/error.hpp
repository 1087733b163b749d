#pragma once

#include <stdexcept>
#include <string>

namespace tracelogic {

/// Base class for every error the library reports to callers.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A position in a source file, 1-based.
struct SourcePos {
  int line = 0;
  int column = 0;

  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

/// Lexical, syntactic and static-checking errors carry the offending position.
class ParseError : public Error {
 public:
  ParseError(SourcePos pos, const std::string& message)
      : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
        pos_(pos),
        message_(message) {}

  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

class SortError : public Error {
 public:
  using Error::Error;
};

/// Bad command line, missing solver executable, malformed config file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The interpreter ran out of steps before reaching the end of main.
class FuelExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace tracelogic
