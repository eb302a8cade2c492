#include "wo/evaluator.hpp"

#include <algorithm>
#include <map>

namespace wo {

uint32_t Evaluator::var_id(const std::string& name) {
  auto it = var_ids_.find(name);
  if (it != var_ids_.end()) return it->second;
  uint32_t id = static_cast<uint32_t>(var_names_.size());
  var_names_.push_back(name);
  var_ids_.emplace(name, id);
  return id;
}

const std::vector<uint32_t>& Evaluator::fv_ids(const Formula* f) {
  auto it = fv_cache_.find(f);
  if (it != fv_cache_.end()) return it->second;
  std::vector<uint32_t> ids;
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
      break;
    case Kind::Lt:
    case Kind::Eq:
      ids.push_back(var_id(f->v1));
      ids.push_back(var_id(f->v2));
      break;
    case Kind::Not:
      ids = fv_ids(f->l.get());
      break;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff: {
      ids = fv_ids(f->l.get());
      const auto& rs = fv_ids(f->r.get());
      ids.insert(ids.end(), rs.begin(), rs.end());
      break;
    }
    case Kind::Forall:
    case Kind::Exists: {
      uint32_t bound = var_id(f->v1);
      for (uint32_t v : fv_ids(f->l.get()))
        if (v != bound) ids.push_back(v);
      break;
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return fv_cache_.emplace(f, std::move(ids)).first->second;
}

void Evaluator::check_budget() {
  if (has_deadline_ && std::chrono::steady_clock::now() > deadline_)
    throw ResourceLimitError("evaluation time budget exceeded", "eval", 0, tt_.size());
}

namespace {

uint32_t point_of(const EvalState& st, uint32_t var) {
  auto it = std::lower_bound(st.assignment.begin(), st.assignment.end(),
                             std::make_pair(var, uint32_t{0}));
  if (it == st.assignment.end() || it->first != var)
    throw Error("internal: atom over unassigned variable");
  return it->second;
}

void assign(std::vector<std::pair<uint32_t, uint32_t>>& a, uint32_t var, uint32_t pt) {
  auto it = std::lower_bound(a.begin(), a.end(), std::make_pair(var, uint32_t{0}));
  if (it != a.end() && it->first == var)
    it->second = pt;
  else
    a.insert(it, {var, pt});
}

}  // namespace

bool Evaluator::eval(const FormulaPtr& f, const EvalState& st) {
  check_budget();
  if (!f) throw PreconditionError("eval requires a formula");
  if (st.segments.empty()) throw PreconditionError("state needs at least one segment");
  if (f->rank > st.level)
    throw PreconditionError("state level " + std::to_string(st.level) +
                            " below quantifier rank " + std::to_string(f->rank));
  for (TypeId s : st.segments)
    if (tt_.level(s) != st.level)
      throw PreconditionError("segment level does not match state level");
  for (auto [v, pt] : st.assignment)
    if (pt < 1 || pt > st.points())
      throw PreconditionError("assignment references a missing point");
  for (uint32_t v : fv_ids(f.get())) {
    auto it = std::lower_bound(st.assignment.begin(), st.assignment.end(),
                               std::make_pair(v, uint32_t{0}));
    if (it == st.assignment.end() || it->first != v)
      throw PreconditionError("free variable not assigned: " + var_names_[v]);
  }
  return eval_rec(f.get(), st);
}

bool Evaluator::eval_rec(const Formula* f, const EvalState& st) {
  if (((++calls_) & 0x1fff) == 0) check_budget();
  switch (f->kind) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Lt:
      return point_of(st, var_id(f->v1)) < point_of(st, var_id(f->v2));
    case Kind::Eq:
      return point_of(st, var_id(f->v1)) == point_of(st, var_id(f->v2));
    case Kind::Not:
      return !eval_rec(f->l.get(), st);
    case Kind::And:
      return eval_rec(f->l.get(), st) && eval_rec(f->r.get(), st);
    case Kind::Or:
      return eval_rec(f->l.get(), st) || eval_rec(f->r.get(), st);
    case Kind::Implies:
      return !eval_rec(f->l.get(), st) || eval_rec(f->r.get(), st);
    case Kind::Iff:
      return eval_rec(f->l.get(), st) == eval_rec(f->r.get(), st);
    case Kind::Forall:
    case Kind::Exists:
      return eval_quantifier(f, st);
  }
  throw Error("internal: unknown formula kind");
}

bool Evaluator::eval_quantifier(const Formula* f, const EvalState& st) {
  // Memo key: node address, level, segments, and the assignment restricted
  // to the node's free variables (extra bindings cannot affect the value).
  const auto& fv = fv_ids(f);
  std::vector<uint64_t> key;
  key.reserve(3 + st.segments.size() + fv.size());
  key.push_back(reinterpret_cast<uint64_t>(f));
  key.push_back(st.level);
  key.push_back(st.segments.size());
  for (TypeId s : st.segments) key.push_back(s);
  {
    auto it = fv.begin();
    for (auto [v, pt] : st.assignment) {
      while (it != fv.end() && *it < v) ++it;
      if (it != fv.end() && *it == v) key.push_back((uint64_t{v} << 32) | pt);
    }
  }
  auto hit = memo_.find(key);
  if (hit != memo_.end()) return hit->second;

  const bool is_forall = f->kind == Kind::Forall;
  const uint32_t v = var_id(f->v1);
  const Formula* body = f->l.get();
  const unsigned low_level = st.level - 1;

  std::vector<TypeId> low_segs;
  low_segs.reserve(st.segments.size());
  for (TypeId s : st.segments) low_segs.push_back(tt_.lower(s));

  bool result = is_forall;
  EvalState child;
  child.level = low_level;

  // The witness can be one of the already-distinguished points...
  for (uint32_t pt = 1; pt <= st.points() && result == is_forall; ++pt) {
    child.segments = low_segs;
    child.assignment = st.assignment;
    assign(child.assignment, v, pt);
    if (eval_rec(body, child) != is_forall) result = !is_forall;
  }
  // ...or a fresh point inside some segment: each content pair (l, r) of the
  // segment's type is one way an element partitions an order of that type.
  for (size_t i = 0; i < st.segments.size() && result == is_forall; ++i) {
    for (auto [lt, rt] : tt_.pairs(st.segments[i])) {
      child.segments.clear();
      child.segments.insert(child.segments.end(), low_segs.begin(), low_segs.begin() + i);
      child.segments.push_back(lt);
      child.segments.push_back(rt);
      child.segments.insert(child.segments.end(), low_segs.begin() + i + 1, low_segs.end());
      child.assignment.clear();
      const uint32_t new_pt = static_cast<uint32_t>(i) + 1;
      for (auto [w, pt] : st.assignment)
        child.assignment.emplace_back(w, pt > i ? pt + 1 : pt);
      assign(child.assignment, v, new_pt);
      if (eval_rec(body, child) != is_forall) {
        result = !is_forall;
        break;
      }
    }
  }
  memo_.emplace(std::move(key), result);
  return result;
}

EvalState Evaluator::state_of_ordinal(const Ordinal& a, unsigned level) {
  EvalState st;
  st.level = level;
  st.segments.push_back(tt_.type_of_ordinal(a, level));
  return st;
}

bool Evaluator::holds(const Ordinal& a, const FormulaPtr& f) {
  if (!is_sentence(f)) throw PreconditionError("holds requires a sentence");
  return eval(f, state_of_ordinal(a, quantifier_rank(f)));
}

bool holds(TypeTable& tt, const Ordinal& a, const FormulaPtr& f) {
  Evaluator ev(tt);
  return ev.holds(a, f);
}

bool equiv(TypeTable& tt, const Ordinal& a, const Ordinal& b, unsigned k) {
  return tt.type_of_ordinal(a, k) == tt.type_of_ordinal(b, k);
}

namespace {

bool bf_rec(const Formula* f, std::map<std::string, uint64_t>& env, uint64_t n) {
  switch (f->kind) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Lt:
      return env.at(f->v1) < env.at(f->v2);
    case Kind::Eq:
      return env.at(f->v1) == env.at(f->v2);
    case Kind::Not:
      return !bf_rec(f->l.get(), env, n);
    case Kind::And:
      return bf_rec(f->l.get(), env, n) && bf_rec(f->r.get(), env, n);
    case Kind::Or:
      return bf_rec(f->l.get(), env, n) || bf_rec(f->r.get(), env, n);
    case Kind::Implies:
      return !bf_rec(f->l.get(), env, n) || bf_rec(f->r.get(), env, n);
    case Kind::Iff:
      return bf_rec(f->l.get(), env, n) == bf_rec(f->r.get(), env, n);
    case Kind::Forall:
    case Kind::Exists: {
      const bool is_forall = f->kind == Kind::Forall;
      auto old = env.find(f->v1);
      std::optional<uint64_t> saved;
      if (old != env.end()) saved = old->second;
      bool result = is_forall;
      for (uint64_t x = 0; x < n; ++x) {
        env[f->v1] = x;
        if (bf_rec(f->l.get(), env, n) != is_forall) {
          result = !is_forall;
          break;
        }
      }
      if (saved)
        env[f->v1] = *saved;
      else
        env.erase(f->v1);
      return result;
    }
  }
  throw Error("internal: unknown formula kind");
}

}  // namespace

bool holds_finite_bruteforce(uint64_t n, const FormulaPtr& f) {
  if (!is_sentence(f)) throw PreconditionError("holds requires a sentence");
  if (n > 8 || quantifier_rank(f) > 4)
    throw PreconditionError("brute-force truth is guarded to n <= 8, rank <= 4");
  std::map<std::string, uint64_t> env;
  return bf_rec(f.get(), env, n);
}

}  // namespace wo
