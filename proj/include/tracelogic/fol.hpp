#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tracelogic/error.hpp"

/// Many-sorted first-order logic with equality: the intermediate representation
/// shared by the semantics encoder, the lemma generator, the property builders,
/// the SMT-LIB backend and the bounded oracle.
namespace tracelogic::fol {

enum class Sort { Bool, Nat, Int, Time, Trace };

const char* to_string(Sort s);
std::optional<Sort> parse_sort(std::string_view name);

struct FunctionSymbol {
  std::string name;
  std::vector<Sort> args;
  Sort result = Sort::Int;
  /// Interpreted by the background theory (term algebra for Nat, integer
  /// arithmetic). Builtin symbols are never declared in emitted SMT-LIB.
  bool builtin = false;

  friend bool operator==(const FunctionSymbol&, const FunctionSymbol&) = default;
};

/// Symbol table. Pre-populated with the theory symbols zero, s, p (Nat term
/// algebra) and +, -, *, <, <=, >, >= over Int. Declaration order is kept so
/// emission is deterministic.
class Signature {
 public:
  Signature();

  /// Throws SortError if the name is already declared.
  void declare(FunctionSymbol sym);
  const FunctionSymbol* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  /// Non-builtin symbols in declaration order.
  std::vector<const FunctionSymbol*> declared() const;

  /// `base` if it names no symbol, otherwise the first of base1, base2, ...
  /// that is free. Used to pick bound-variable names that never shadow symbols.
  std::string fresh_name(const std::string& base) const;

 private:
  std::vector<FunctionSymbol> symbols_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct BoundVar {
  std::string name;
  Sort sort = Sort::Int;

  friend bool operator==(const BoundVar&, const BoundVar&) = default;
};

enum class Kind { Var, App, IntConst, True, False, Not, And, Or, Implies, Eq, Forall, Exists };

/// Immutable expression node handle. Terms and formulas share one type:
/// formulas are the expressions of sort Bool.
class Expr {
 public:
  Expr();  // the formula `true`

  Kind kind() const { return node_->kind; }
  Sort sort() const { return node_->sort; }
  /// Variable or symbol name; empty for other kinds.
  const std::string& name() const { return node_->name; }
  std::int64_t value() const { return node_->value; }
  std::span<const Expr> args() const { return node_->args; }
  const Expr& arg(std::size_t i) const { return node_->args.at(i); }
  const std::vector<BoundVar>& bound() const { return node_->bound; }
  const Expr& body() const { return node_->args.at(0); }

  bool is_quantifier() const { return kind() == Kind::Forall || kind() == Kind::Exists; }
  bool is_formula() const { return sort() == Sort::Bool; }

  /// Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);

  struct Node {
    Kind kind = Kind::True;
    Sort sort = Sort::Bool;
    std::string name;
    std::int64_t value = 0;
    std::vector<Expr> args;
    std::vector<BoundVar> bound;
  };

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<const Node> node_;
};

using Term = Expr;
using Formula = Expr;

struct LabeledFormula {
  std::string label;
  Formula formula;
};

// --- construction ---------------------------------------------------------

Expr var(std::string name, Sort sort);
Expr var(const BoundVar& v);
Expr app(const FunctionSymbol& sym, std::vector<Expr> args);
/// Application without a signature at hand; the caller vouches for the sort.
Expr app(std::string name, std::vector<Expr> args, Sort result);
Expr int_const(std::int64_t v);
Expr mk_true();
Expr mk_false();
Expr mk_not(Expr f);
/// Empty conjunction is `true`; a single conjunct is returned as is.
Expr mk_and(std::vector<Expr> fs);
/// Empty disjunction is `false`; a single disjunct is returned as is.
Expr mk_or(std::vector<Expr> fs);
Expr implies(Expr lhs, Expr rhs);
Expr eq(Expr lhs, Expr rhs);
Expr neq(Expr lhs, Expr rhs);
/// An empty variable list yields the body unchanged.
Expr forall(std::vector<BoundVar> vars, Expr body);
Expr exists(std::vector<BoundVar> vars, Expr body);

// Nat term algebra and its ordering.
inline constexpr std::string_view kNatLess = "Nat_less";
Expr zero();
Expr succ(Expr n);
Expr pred(Expr n);
Expr nat_less(Expr a, Expr b);
/// a <= b over Nat, written as (a < b or a = b).
Expr nat_le(Expr a, Expr b);

// Int arithmetic.
Expr plus(Expr a, Expr b);
Expr minus(Expr a, Expr b);
Expr times(Expr a, Expr b);
Expr int_less(Expr a, Expr b);
Expr int_le(Expr a, Expr b);
Expr int_greater(Expr a, Expr b);
Expr int_ge(Expr a, Expr b);

/// Declaration of Nat_less and its (incomplete) axiomatization, in emission order.
FunctionSymbol nat_less_symbol();
std::vector<LabeledFormula> nat_order_axioms();

// --- analysis ---------------------------------------------------------------

std::set<std::string> free_variables(const Expr& e);
bool is_closed(const Expr& e);

using Bindings = std::map<std::string, Expr>;

/// Capture-avoiding simultaneous substitution of free variables. Throws
/// SortError when a replacement's sort differs from the variable's sort.
Expr substitute(const Expr& e, const Bindings& bindings);

/// Throws SortError describing the first ill-sorted node.
void check_sorts(const Expr& e, const Signature& sig);
bool well_sorted(const Expr& e, const Signature& sig);

// --- printing ---------------------------------------------------------------

/// SMT-LIB 2 concrete syntax, on a single line.
std::string to_smtlib(const Expr& e);
/// Mathematical application notation for terms, e.g. `l9(s(It9))`.
std::string to_term_string(const Expr& e);

}  // namespace tracelogic::fol
