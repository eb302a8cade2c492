#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wo/formula.hpp"
#include "wo/ordinal.hpp"
#include "wo/typealg.hpp"

namespace wo {

// A model-checking configuration: a linear order presented as alternating
// segments and distinguished points
//   seg_0, p_1, seg_1, p_2, ..., p_m, seg_m
// where each segment is a level-`level` type standing for an arbitrary order
// of that type, and points p_1..p_m are concrete elements. The assignment
// maps variable ids to point indices (1-based). Evaluating a quantifier
// either reuses a point or splits one segment at a new point, both at level
// one lower, so `level` must bound the remaining quantifier rank.
struct EvalState {
  unsigned level = 0;
  std::vector<TypeId> segments;                          // m+1 entries
  std::vector<std::pair<uint32_t, uint32_t>> assignment; // (var id, point), sorted by id
  size_t points() const { return segments.size() - 1; }
};

// Compositional truth evaluation on k-types. One instance per top-level
// query; the memo keys formula nodes by address, so all formulas passed to
// one instance must outlive it.
class Evaluator {
 public:
  explicit Evaluator(TypeTable& tt) : tt_(tt) {}

  uint32_t var_id(const std::string& name);

  // Truth of f under st. Requires quantifier_rank(f) <= st.level and every
  // free variable of f assigned in st.
  bool eval(const FormulaPtr& f, const EvalState& st);

  // Truth of a sentence in the well order of type `a`, at level = rank(f).
  bool holds(const Ordinal& a, const FormulaPtr& f);

  // One-segment state for the order of type `a`.
  EvalState state_of_ordinal(const Ordinal& a, unsigned level);

  void set_deadline(std::chrono::steady_clock::time_point d) { deadline_ = d; has_deadline_ = true; }

  size_t memo_entries() const { return memo_.size(); }
  uint64_t eval_calls() const { return calls_; }

 private:
  bool eval_rec(const Formula* f, const EvalState& st);
  bool eval_quantifier(const Formula* f, const EvalState& st);
  const std::vector<uint32_t>& fv_ids(const Formula* f);
  void check_budget();

  TypeTable& tt_;
  std::unordered_map<std::string, uint32_t> var_ids_;
  std::vector<std::string> var_names_;
  std::unordered_map<const Formula*, std::vector<uint32_t>> fv_cache_;
  struct KeyHash {
    size_t operator()(const std::vector<uint64_t>& v) const {
      uint64_t h = 1469598103934665603ULL;
      for (uint64_t w : v) {
        h ^= w;
        h *= 1099511628211ULL;
      }
      return static_cast<size_t>(h);
    }
  };
  std::unordered_map<std::vector<uint64_t>, bool, KeyHash> memo_;
  uint64_t calls_ = 0;
  std::chrono::steady_clock::time_point deadline_{};
  bool has_deadline_ = false;
};

// Convenience wrappers, each using a fresh Evaluator.
bool holds(TypeTable& tt, const Ordinal& a, const FormulaPtr& f);
bool equiv(TypeTable& tt, const Ordinal& a, const Ordinal& b, unsigned k);

// Independent oracle: explicit quantification over {0,...,n-1}. Guarded to
// n <= 8 and rank <= 4 (worst case ~ n^rank assignments, fine at the guard).
bool holds_finite_bruteforce(uint64_t n, const FormulaPtr& f);

}  // namespace wo
