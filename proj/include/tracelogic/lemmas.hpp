#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tracelogic/semantics.hpp"

namespace tracelogic {

/// Lemma schema ids, in generation order within one loop.
namespace schema {
inline constexpr const char* kEqPres = "eqpres";
inline constexpr const char* kEqSuffix = "eqsuffix";
inline constexpr const char* kMonotonic = "monotonic";
inline constexpr const char* kInjective = "injective";
inline constexpr const char* kIntermediate = "intermediate";
inline constexpr const char* kUnchanged = "unchanged";
inline constexpr const char* kSameValues = "samevalues";
inline constexpr const char* kEqPresArray = "eqpres-array";
inline constexpr const char* kTermination = "termination";
inline constexpr const char* kAtLeastOne = "atleastone";
}  // namespace schema

/// All schema ids in generation order.
const std::vector<std::string>& all_schemas();
/// Schemas that relate two traces and are skipped in single-trace mode.
bool is_relational_schema(const std::string& id);

struct LemmaInstance {
  std::string schema;
  const ast::Statement* loop = nullptr;
  std::optional<std::string> variable;
  fol::LabeledFormula lemma;
};

struct LemmaConfig {
  /// Empty means every schema.
  std::set<std::string> enabled;

  bool allows(const std::string& id) const { return enabled.empty() || enabled.contains(id); }
};

/// Throws ConfigError on an unknown id.
LemmaConfig parse_lemma_list(const std::string& comma_separated);

class LemmaGenerator {
 public:
  explicit LemmaGenerator(const SemanticsEncoder& encoder);

  fol::Expr eq_preservation(const ast::Statement& w, const ast::VarDecl& v) const;
  fol::Expr eq_preservation_array(const ast::Statement& w, const ast::VarDecl& v) const;
  fol::Expr eq_preservation_suffix(const ast::Statement& w, const ast::VarDecl& v) const;
  fol::Expr same_termination(const ast::Statement& w) const;
  fol::Expr value_monotonicity(const ast::Statement& w, const ast::VarDecl& v) const;
  fol::Expr injectivity(const ast::Statement& w, const ast::VarDecl& v) const;
  fol::Expr intermediate_value(const ast::Statement& w, const ast::VarDecl& v) const;
  fol::Expr unchanged_induction(const ast::Statement& w, const ast::VarDecl& v) const;
  fol::Expr same_values(const ast::Statement& w, const ast::VarDecl& v) const;
  fol::Expr at_least_one_iteration(const ast::Statement& w) const;

  /// x(tp_w(s(it)),tr) = x(tp_w(it),tr) + 1 below lastIt_w(tr).
  fol::Expr denseness(const ast::Statement& w, const ast::VarDecl& v, const fol::Expr& tr) const;

  /// Ordered by loop line, then variable declaration order, then schema.
  std::vector<LemmaInstance> generate_all(const LemmaConfig& config = {}) const;

 private:
  fol::Expr reach_guard(const ast::Statement& w, const fol::Expr& tr) const;
  /// Closes a lemma over the enclosing iteration variables, guarded by the
  /// conditions under which the loop is reached.
  fol::Expr relational(const ast::Statement& w, fol::Expr body) const;
  fol::Expr per_trace(const ast::Statement& w, fol::Expr body) const;

  fol::Expr value(const ast::Statement& w, const ast::VarDecl& v, fol::Expr it,
                  const fol::Expr& tr) const;
  fol::Expr equal_across(const ast::Statement& w, const ast::VarDecl& v, fol::Expr it) const;

  const SemanticsEncoder& enc_;
  const ProgramModel& model_;
  std::string it_, it1_, it2_, itb_, itl_, pos_, val_;
};

}  // namespace tracelogic
