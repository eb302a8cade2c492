#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wo/evaluator.hpp"
#include "wo/formula.hpp"
#include "wo/ordinal.hpp"
#include "wo/typealg.hpp"

namespace wo {

// Derivation term over {1, +, *w}: records how a closure entry was produced
// and evaluates to a concrete ordinal.
struct BuildTerm;
using TermPtr = std::shared_ptr<const BuildTerm>;
struct BuildTerm {
  enum class Kind : uint8_t { Zero, One, Sum, OmegaMult };
  Kind kind;
  TermPtr l, r;  // Sum: both; OmegaMult: l
};

TermPtr term_zero();
TermPtr term_one();
TermPtr term_sum(TermPtr a, TermPtr b);
TermPtr term_omega(TermPtr t);
Ordinal eval_term(const TermPtr& t);
std::string term_to_string(const TermPtr& t);  // e.g. "((1+1)*w)"

struct Limits {
  double max_seconds = 120.0;
  size_t max_closure = 1'000'000;  // cap on interned types
  int threads = 1;                 // 1 = serial reference lane; 0 = all cores
};

struct ClosureEntry {
  TypeId type;
  TermPtr witness;   // first derivation found, breadth-first
  unsigned depth;    // BFS layer
};

struct Closure {
  unsigned level = 0;
  bool with_empty = false;
  std::vector<ClosureEntry> entries;  // discovery order (deterministic)
  double seconds = 0.0;
};

// Least set of level-k types containing the one-point type (and the empty
// type when allow_empty) closed under sum and omega_mult; breadth-first, so
// the entry order is canonical. These are exactly the level-k types of
// ordinals in [1, w^w) (resp. [0, w^w)).
Closure reachable_closure(TypeTable& tt, unsigned k, bool allow_empty = false,
                          const Limits& limits = {});

struct Verdict {
  enum class Status { Valid, Invalid };
  Status status;
  unsigned rank = 0;
  size_t closure_size = 0;
  std::optional<Ordinal> counterexample;  // set iff Invalid
  TermPtr witness;                        // derivation of the counterexample
  bool valid() const { return status == Status::Valid; }
};

// Decision procedure for sentences over well orders. Caches closures per
// (level, empty-convention) so repeated calls share work.
class Decider {
 public:
  explicit Decider(TypeTable& tt) : tt_(tt) {}

  // VALID iff f holds in every well order (equivalently every ordinal below
  // w^w; equivalently f is provable from transfinite induction). INVALID
  // comes with the least-depth counterexample witness.
  Verdict decide(const FormulaPtr& f, bool allow_empty = false,
                 const Limits& limits = {});

  // Whether t is the level-k type of some ordinal in [1, w^w), k = level(t).
  bool is_wo_type(TypeId t, const Limits& limits = {});

  const Closure& closure(unsigned k, bool allow_empty, const Limits& limits = {});

 private:
  TypeTable& tt_;
  std::map<std::pair<unsigned, bool>, Closure> cache_;
};

// One-shot convenience wrapper.
Verdict decide(TypeTable& tt, const FormulaPtr& f, bool allow_empty = false,
               const Limits& limits = {});

}  // namespace wo
