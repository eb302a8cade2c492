#pragma once

#include <string>
#include <vector>

#include "wo/formula.hpp"
#include "wo/ordinal.hpp"

namespace wo {

struct AxiomOptions {
  // Use the verbatim historic display of the limit-point test (inner "y < x"),
  // which is trivially true everywhere; kept only for documentation. The
  // default is the corrected reading.
  bool literal_lambda = false;
  // Build the finite part as a direct "exactly n elements" sentence
  // (rank ~ log2 n) instead of the n-fold iterated sum (rank n).
  bool direct_finite = false;
};

struct AxiomResult {
  FormulaPtr sentence;
  unsigned rank;                   // == quantifier_rank(sentence)
  std::vector<std::string> trace;  // postfix build program, see replay_trace
};

// The "x is not a successor" test: true at the minimum and at limit points.
//   corrected: forall y (y < x -> exists z (z < x & y < z))
//   literal:   forall y (y < x -> exists z (z < x & y < x))
FormulaPtr lambda_formula(const std::string& x, bool literal = false);

// Characteristic sentence of a positive ordinal: among nonempty well orders,
// true exactly in those of order type a. Built by recursion on the Cantor
// normal form: base sentences for 1 and w, a split rule for sums, and a
// limit-point relativization rule for w*(limit).
AxiomResult t_alpha(const Ordinal& a, const AxiomOptions& opts = {});

// Rebuilds a sentence from a t_alpha trace: a postfix program over
//   "T1"        push the one-element sentence
//   "Tw"        push the three-axiom omega sentence
//   "sum"       pop b, pop a, push  exists x (a^{<x} & b^{>=x})
//   "w-limit"   pop d, push the limit-rule conjunction over d
//   "finite:N"  push the direct exactly-N sentence (direct_finite only)
FormulaPtr replay_trace(const std::vector<std::string>& trace,
                        const AxiomOptions& opts = {});

// Induction-schema instance for phi with designated free variable `hole`:
//   forall x (forall y (y < x -> phi[y]) -> phi[x]) -> forall x phi[x]
// x/y are renamed deterministically if they collide with phi's variables.
// Errors if phi has free variables besides `hole`.
FormulaPtr ti_instance(const FormulaPtr& phi, const std::string& hole,
                       const std::string& x = "x", const std::string& y = "y");

}  // namespace wo
