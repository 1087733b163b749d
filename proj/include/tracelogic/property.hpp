#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tracelogic/semantics.hpp"
#include "tracelogic/sexpr.hpp"

namespace tracelogic {

struct SecurityAnnotation {
  std::vector<std::string> low;
  std::vector<std::string> high;
  std::vector<std::string> out;        // sensitivity outputs
  std::vector<std::string> deviation;  // inputs allowed to differ by less than k
};

enum class PropertyKind { NonInterference, Sensitivity, Conjecture };

struct PropertySpec {
  PropertyKind kind = PropertyKind::Conjecture;
  std::optional<int> at_line;  // hypothesis anchor, default: first statement
  SExpr formula;               // Conjecture only
  SourcePos pos;
};

/// A `.spec` file: the program plus its property blocks.
struct SpecFile {
  ast::Program program;
  std::optional<int> traces;  // from (set-traces N)
  SecurityAnnotation annotation;
  std::optional<PropertySpec> property;

  /// 2 unless the file says otherwise.
  TraceMode mode() const {
    return traces.value_or(2) == 1 ? TraceMode::Single : TraceMode::Pair;
  }
};

/// Parses the program and the property blocks; names in annotations must be
/// declared. A missing property is not an error here.
SpecFile parse_spec(std::string_view text);

struct Conjecture {
  std::string name;
  fol::Formula formula;
};

class PropertyBuilder {
 public:
  explicit PropertyBuilder(const SemanticsEncoder& encoder);

  /// v equal in t1 and t2 at tp (tp is ignored for constants).
  fol::Expr eq_tr(const ast::VarDecl& v, const fol::Expr& tp) const;

  /// (/\ EqTr(v, l0)) -> (/\ EqTr(v, main_end)) over the low variables.
  Conjecture noninterference(const SecurityAnnotation& ann, std::optional<int> at_line = {}) const;
  Conjecture sensitivity(const SecurityAnnotation& ann, std::optional<int> at_line = {}) const;
  /// Reads a closed formula over the task signature.
  Conjecture conjecture(const SExpr& formula) const;
  Conjecture conjecture(std::string_view text) const;

  /// Dispatches on the spec's property; throws ParseError "no conjecture"
  /// when there is none.
  Conjecture build(const SpecFile& spec) const;

  /// |d| < k as a case split, since the signature has no absolute value.
  static fol::Expr abs_less(const fol::Expr& d, const fol::Expr& k);

 private:
  fol::Expr anchor(std::optional<int> at_line) const;
  fol::Expr delta(const ast::VarDecl& v, const fol::Expr& tp) const;
  const ast::VarDecl& decl(const std::string& name) const;

  const SemanticsEncoder& enc_;
  const ProgramModel& model_;
};

}  // namespace tracelogic
