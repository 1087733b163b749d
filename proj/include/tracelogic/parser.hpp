#pragma once

#include <cstddef>
#include <string_view>

#include "tracelogic/ast.hpp"

namespace tracelogic {

/// Result of parsing the `func main(){...}` part of a source file.
struct ParsedProgram {
  ast::Program program;
  std::size_t end_offset = 0;  // byte offset just past the closing brace of main
  SourcePos end_pos;           // position of that offset
};

/// Parses and statically checks a W program. Trailing text after main is an error.
ast::Program parse_program(std::string_view source);

/// Parses a W program that may be followed by arbitrary text (property blocks).
ParsedProgram parse_program_prefix(std::string_view source);

/// True for identifiers the encoding reserves for its own symbols
/// (`l<digits>`, `n<digits>`, `It<digits>`, trace constants, theory and SMT-LIB names).
bool is_reserved_identifier(std::string_view name);

}  // namespace tracelogic
