#include "wo/decider.hpp"

#include <atomic>
#include <chrono>
#include <unordered_set>

#ifdef WO_HAVE_OPENMP
#include <omp.h>
#endif

namespace wo {

namespace {
using Clock = std::chrono::steady_clock;

Clock::time_point deadline_for(const Limits& limits) {
  if (limits.max_seconds <= 0) throw PreconditionError("time budget must be positive");
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(limits.max_seconds));
}

int resolve_threads(const Limits& limits) {
  int t = limits.threads;
#ifdef WO_HAVE_OPENMP
  if (t == 0) t = omp_get_max_threads();
#else
  if (t != 1) t = 1;
#endif
  if (t < 1) throw PreconditionError("thread count must be >= 0");
  return t;
}
}  // namespace

TermPtr term_zero() {
  static const TermPtr z = std::make_shared<const BuildTerm>(BuildTerm{BuildTerm::Kind::Zero, nullptr, nullptr});
  return z;
}

TermPtr term_one() {
  static const TermPtr o = std::make_shared<const BuildTerm>(BuildTerm{BuildTerm::Kind::One, nullptr, nullptr});
  return o;
}

TermPtr term_sum(TermPtr a, TermPtr b) {
  return std::make_shared<const BuildTerm>(BuildTerm{BuildTerm::Kind::Sum, std::move(a), std::move(b)});
}

TermPtr term_omega(TermPtr t) {
  return std::make_shared<const BuildTerm>(BuildTerm{BuildTerm::Kind::OmegaMult, std::move(t), nullptr});
}

Ordinal eval_term(const TermPtr& t) {
  if (!t) throw PreconditionError("eval_term requires a term");
  switch (t->kind) {
    case BuildTerm::Kind::Zero:
      return Ordinal{};
    case BuildTerm::Kind::One:
      return Ordinal::one();
    case BuildTerm::Kind::Sum:
      return add(eval_term(t->l), eval_term(t->r));
    case BuildTerm::Kind::OmegaMult: {
      Ordinal base = eval_term(t->l);
      if (base.is_zero()) return base;
      return mul_omega_right(base);
    }
  }
  throw Error("internal: unknown term kind");
}

std::string term_to_string(const TermPtr& t) {
  if (!t) throw PreconditionError("term_to_string requires a term");
  switch (t->kind) {
    case BuildTerm::Kind::Zero:
      return "0";
    case BuildTerm::Kind::One:
      return "1";
    case BuildTerm::Kind::Sum:
      return "(" + term_to_string(t->l) + "+" + term_to_string(t->r) + ")";
    case BuildTerm::Kind::OmegaMult:
      return "(" + term_to_string(t->l) + "*w)";
  }
  throw Error("internal: unknown term kind");
}

Closure reachable_closure(TypeTable& tt, unsigned k, bool allow_empty,
                          const Limits& limits) {
  const auto start = Clock::now();
  const auto deadline = deadline_for(limits);
  const int threads = resolve_threads(limits);
  (void)threads;

  Closure c;
  c.level = k;
  c.with_empty = allow_empty;
  std::unordered_set<TypeId> seen;
  auto push = [&](TypeId t, TermPtr w, unsigned depth) {
    if (seen.insert(t).second) c.entries.push_back({t, std::move(w), depth});
  };
  if (allow_empty) push(tt.type_empty(k), term_zero(), 0);
  push(tt.type_singleton(k), term_one(), 0);

  auto check_size = [&]() {
    if (tt.size() > limits.max_closure)
      throw ResourceLimitError("interned-type budget exceeded during closure",
                               "closure", c.entries.size(), tt.size());
  };

  size_t layer_begin = 0;
  unsigned depth = 0;
  while (layer_begin < c.entries.size()) {
    const size_t layer_end = c.entries.size();
    const size_t fcount = layer_end - layer_begin;
    ++depth;
    // Candidate items of this layer, in canonical order: sums with a new
    // left operand, sums with an old left and new right operand, then
    // omega-multiples of new entries. The merge below walks this order
    // serially, so discovery order never depends on the thread schedule.
    const size_t n_a = fcount * layer_end;
    const size_t n_b = layer_begin * fcount;
    const size_t n_items = n_a + n_b + fcount;
    std::vector<TypeId> results(n_items);

    auto compute = [&](size_t i) -> TypeId {
      if (i < n_a) {
        size_t x = layer_begin + i / layer_end;
        size_t y = i % layer_end;
        return tt.sum_raw(c.entries[x].type, c.entries[y].type);
      }
      if (i < n_a + n_b) {
        size_t j = i - n_a;
        size_t y = j / fcount;
        size_t x = layer_begin + j % fcount;
        return tt.sum_raw(c.entries[y].type, c.entries[x].type);
      }
      return tt.omega_mult_raw(c.entries[i - n_a - n_b].type);
    };

#ifdef WO_HAVE_OPENMP
    if (threads > 1) {
      std::exception_ptr err;
      std::atomic<bool> failed{false};
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
      for (size_t i = 0; i < n_items; ++i) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
          if ((i & 0xff) == 0 && Clock::now() > deadline)
            throw ResourceLimitError("time budget exceeded during closure",
                                     "closure", c.entries.size(), tt.size());
          results[i] = compute(i);
        } catch (...) {
          bool expected = false;
          if (failed.compare_exchange_strong(expected, true)) {
#pragma omp critical(wo_closure_err)
            err = std::current_exception();
          }
        }
      }
      if (failed.load()) std::rethrow_exception(err);
    } else
#endif
    {
      for (size_t i = 0; i < n_items; ++i) {
        if ((i & 0xff) == 0) {
          if (Clock::now() > deadline)
            throw ResourceLimitError("time budget exceeded during closure",
                                     "closure", c.entries.size(), tt.size());
          check_size();
        }
        results[i] = compute(i);
      }
    }

    for (size_t i = 0; i < n_items; ++i) {
      TypeId t = results[i];
      if (seen.count(t)) continue;
      TermPtr w;
      if (i < n_a) {
        size_t x = layer_begin + i / layer_end;
        size_t y = i % layer_end;
        w = term_sum(c.entries[x].witness, c.entries[y].witness);
      } else if (i < n_a + n_b) {
        size_t j = i - n_a;
        size_t y = j / fcount;
        size_t x = layer_begin + j % fcount;
        w = term_sum(c.entries[y].witness, c.entries[x].witness);
      } else {
        w = term_omega(c.entries[i - n_a - n_b].witness);
      }
      push(t, std::move(w), depth);
    }
    check_size();
    if (Clock::now() > deadline)
      throw ResourceLimitError("time budget exceeded during closure", "closure",
                               c.entries.size(), tt.size());
    layer_begin = layer_end;
  }
  c.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return c;
}

const Closure& Decider::closure(unsigned k, bool allow_empty, const Limits& limits) {
  auto key = std::make_pair(k, allow_empty);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  Closure c = reachable_closure(tt_, k, allow_empty, limits);
  return cache_.emplace(key, std::move(c)).first->second;
}

Verdict Decider::decide(const FormulaPtr& f, bool allow_empty, const Limits& limits) {
  if (!f) throw PreconditionError("decide requires a formula");
  if (!is_sentence(f)) throw PreconditionError("decide requires a sentence");
  const unsigned k = quantifier_rank(f);
  const Closure& cl = closure(k, allow_empty, limits);
  const auto deadline = deadline_for(limits);
  const int threads = resolve_threads(limits);
  const size_t n = cl.entries.size();

  size_t first_failure = n;
#ifdef WO_HAVE_OPENMP
  if (threads > 1) {
    std::atomic<size_t> best{n};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
#pragma omp parallel num_threads(threads)
    {
      Evaluator ev(tt_);
      ev.set_deadline(deadline);
#pragma omp for schedule(dynamic, 1)
      for (size_t i = 0; i < n; ++i) {
        if (failed.load(std::memory_order_relaxed)) continue;
        if (i > best.load(std::memory_order_relaxed)) continue;
        try {
          EvalState st;
          st.level = k;
          st.segments.push_back(cl.entries[i].type);
          if (!ev.eval(f, st)) {
            size_t cur = best.load(std::memory_order_relaxed);
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
          }
        } catch (...) {
          bool expected = false;
          if (failed.compare_exchange_strong(expected, true)) {
#pragma omp critical(wo_decide_err)
            err = std::current_exception();
          }
        }
      }
    }
    if (failed.load()) std::rethrow_exception(err);
    first_failure = best.load();
  } else
#endif
  {
    Evaluator ev(tt_);
    ev.set_deadline(deadline);
    for (size_t i = 0; i < n; ++i) {
      EvalState st;
      st.level = k;
      st.segments.push_back(cl.entries[i].type);
      if (!ev.eval(f, st)) {
        first_failure = i;
        break;
      }
    }
  }

  Verdict v;
  v.rank = k;
  v.closure_size = n;
  if (first_failure == n) {
    v.status = Verdict::Status::Valid;
  } else {
    v.status = Verdict::Status::Invalid;
    v.witness = cl.entries[first_failure].witness;
    v.counterexample = eval_term(v.witness);
  }
  return v;
}

bool Decider::is_wo_type(TypeId t, const Limits& limits) {
  const Closure& cl = closure(tt_.level(t), false, limits);
  for (const auto& e : cl.entries)
    if (e.type == t) return true;
  return false;
}

Verdict decide(TypeTable& tt, const FormulaPtr& f, bool allow_empty,
               const Limits& limits) {
  Decider d(tt);
  return d.decide(f, allow_empty, limits);
}

}  // namespace wo
