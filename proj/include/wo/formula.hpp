#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "wo/error.hpp"

namespace wo {

// First-order formulas over the single binary relation <. Nodes are immutable
// after construction and shared freely (safe across threads). Quantifier rank
// is cached on every node.
enum class Kind : uint8_t { True, False, Lt, Eq, Not, And, Or, Implies, Iff, Forall, Exists };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Kind kind;
  std::string v1, v2;  // Lt/Eq operands; v1 is the bound variable of a quantifier
  FormulaPtr l, r;     // Not: l only; quantifiers: l is the body
  uint16_t rank;       // cached quantifier rank

  bool is_quantifier() const { return kind == Kind::Forall || kind == Kind::Exists; }
};

// Node constructors. Variable names must be nonempty ASCII identifiers.
FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_lt(std::string x, std::string y);
FormulaPtr f_eq(std::string x, std::string y);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b);
FormulaPtr f_forall(std::string v, FormulaPtr body);
FormulaPtr f_exists(std::string v, FormulaPtr body);

unsigned quantifier_rank(const FormulaPtr& f);
std::set<std::string> free_variables(const FormulaPtr& f);
bool is_sentence(const FormulaPtr& f);
// Structural equality (variable names compared literally, no alpha-renaming).
bool equal(const FormulaPtr& a, const FormulaPtr& b);

// Every variable name occurring in f, free or bound.
std::set<std::string> all_variables(const FormulaPtr& f);
// A name not in `taken`: `base` itself if possible, else base1, base2, ...
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

// Capture-avoiding substitution of variable `from` by variable `to`.
// Binders that would capture `to` are renamed with deterministic fresh names.
FormulaPtr substitute_var(const FormulaPtr& f, const std::string& from, const std::string& to);

// Grammar (precedence low to high: <->, -> right-assoc, |, &, ~; a quantifier
// body extends maximally to the right):
//   formula := "forall" IDENT formula | "exists" IDENT formula | iff ;
//   iff := imp ("<->" imp)* ; imp := or ("->" imp)? ;
//   or := and ("|" and)* ; and := neg ("&" neg)* ;
//   neg := "~" neg | atom ;
//   atom := "(" formula ")" | "true" | "false" | IDENT ("<" | "=" | "<=") IDENT ;
// "a <= b" desugars to (a < b | a = b). Unicode aliases accepted on input:
// forall/exists/not/and/or/implies/iff/leq symbols map to the ASCII forms.
FormulaPtr parse_formula(const std::string& text, bool require_sentence = false);

// Prints with minimal parentheses; output reparses to a structurally equal
// AST. Non-quantifier quantifier bodies are parenthesized.
std::string print_formula(const FormulaPtr& f, bool full_parens = false);

// Relativization guards. For Pred, `pred` with designated variable `hole`
// plays the role of a definable-set membership test.
struct Guard {
  enum class GKind { Below, AtLeast, Interval, Pred };
  GKind kind;
  std::string x, y;  // Below/AtLeast use x; Interval uses [x, y)
  FormulaPtr pred;   // Pred only
  std::string hole;  // Pred only: the designated variable of pred

  static Guard below(std::string x);
  static Guard at_least(std::string x);
  static Guard interval(std::string x, std::string y);
  static Guard where(FormulaPtr p, std::string hole);
};

struct RelativizeResult {
  FormulaPtr formula;
  unsigned rank;        // quantifier rank of `formula`
  unsigned rank_bound;  // declared bound: rank(f) for interval guards,
                        // rank(f) + rank(guard) for Pred guards
};

// Restricts every quantifier of f to the guard's set: Exists(v, b) becomes
// Exists(v, guard(v) & b), Forall(v, b) becomes Forall(v, guard(v) -> b).
// Bound variables colliding with the guard's variables are renamed first.
RelativizeResult relativize(const FormulaPtr& f, const Guard& g);

}  // namespace wo
