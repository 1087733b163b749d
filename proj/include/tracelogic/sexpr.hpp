#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tracelogic/error.hpp"

namespace tracelogic {

/// Minimal S-expression tree shared by the property-block reader and the
/// SMT-LIB reader. `;` starts a comment running to the end of the line.
struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  SourcePos pos;

  bool is_atom() const { return !is_list; }
  bool is_atom(std::string_view s) const { return !is_list && atom == s; }
  /// A list whose first element is the atom `head`.
  bool has_head(std::string_view head) const {
    return is_list && !items.empty() && items.front().is_atom(head);
  }
  std::string to_string() const;
};

/// Parses every top-level S-expression in `text`. `origin` is the position of
/// the first character, so errors point into the enclosing file.
std::vector<SExpr> parse_sexprs(std::string_view text, SourcePos origin = {1, 1});

}  // namespace tracelogic
