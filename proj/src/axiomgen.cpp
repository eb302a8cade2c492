#include "wo/axiomgen.hpp"

#include <charconv>

namespace wo {
namespace {

// Standalone form: under the nonempty-model convention, "all pairs equal"
// already pins the one-element order.
FormulaPtr t1_top() {
  return f_forall("x", f_forall("y", f_eq("x", "y")));
}

// Summand form: a segment carved out by the sum rule can be empty, which the
// universal form cannot rule out, so as a summand the sentence asserts the
// element's existence. Same rank; true exactly in one-element orders.
FormulaPtr t1_segment() {
  return f_exists("x", f_forall("y", f_eq("x", "y")));
}

// Least element exists; every element has an immediate successor; every
// non-minimal element has an immediate predecessor.
FormulaPtr tw_sentence() {
  auto least =
      f_exists("x", f_forall("y", f_or(f_eq("x", "y"), f_lt("x", "y"))));
  auto succ = f_forall(
      "x", f_exists("y", f_and(f_lt("x", "y"),
                               f_not(f_exists("z", f_and(f_lt("x", "z"),
                                                         f_lt("z", "y")))))));
  auto pred = f_forall(
      "x",
      f_implies(f_exists("y", f_lt("y", "x")),
                f_exists("y", f_and(f_lt("y", "x"),
                                    f_not(f_exists(
                                        "z", f_and(f_lt("y", "z"),
                                                   f_lt("z", "x"))))))));
  return f_and(f_and(least, succ), pred);
}

// A sums with B by splitting at the first point of B.
FormulaPtr sum_rule(const FormulaPtr& a, const FormulaPtr& b) {
  return f_exists("x", f_and(relativize(a, Guard::below("x")).formula,
                             relativize(b, Guard::at_least("x")).formula));
}

FormulaPtr le_of(const std::string& a, const std::string& b) {
  return f_or(f_eq(a, b), f_lt(a, b));
}

// Conjunction characterizing w*(limit d): the non-successor points form an
// order satisfying d's sentence, every point has a greatest non-successor
// at or below it, and a least non-successor strictly above it.
FormulaPtr limit_rule(const FormulaPtr& d, bool literal) {
  auto rel = relativize(d, Guard::where(lambda_formula("u", literal), "u")).formula;
  auto lam_y = lambda_formula("y", literal);
  auto lam_z = lambda_formula("z", literal);
  auto m1 = f_forall(
      "x", f_exists("y", f_and(f_and(le_of("y", "x"), lam_y),
                               f_forall("z", f_implies(f_and(le_of("z", "x"), lam_z),
                                                       le_of("z", "y"))))));
  auto m2 = f_forall(
      "x", f_exists("y", f_and(f_and(f_lt("x", "y"), lam_y),
                               f_forall("z", f_implies(f_and(f_lt("x", "z"), lam_z),
                                                       le_of("y", "z"))))));
  return f_and(f_and(rel, m1), m2);
}

// "At least n elements", n >= 1, by halving at a split point: rank ~ 1 + log2 n.
FormulaPtr at_least_n(uint64_t n) {
  if (n <= 1) return f_exists("x", f_true());
  uint64_t below = n / 2;
  FormulaPtr hi = relativize(at_least_n(n - below), Guard::at_least("x")).formula;
  if (below == 0) return f_exists("x", hi);
  FormulaPtr lo = relativize(at_least_n(below), Guard::below("x")).formula;
  return f_exists("x", f_and(lo, hi));
}

FormulaPtr exactly_n(uint64_t n) {
  return f_and(at_least_n(n), f_not(at_least_n(n + 1)));
}

void emit_fold(const char* base, uint64_t c, std::vector<std::string>& out) {
  out.push_back(base);
  for (uint64_t i = 1; i < c; ++i) {
    out.push_back(base);
    out.push_back("sum");
  }
}

// Postfix build program for a >= 1, following the normal-form assembly:
// a = w*beta + n, beta = delta + m with delta limit-or-zero and m finite,
// so a = w*delta + w*m + n with the three parts folded by the sum rule.
void emit_ordinal(const Ordinal& a, std::vector<std::string>& out,
                  const AxiomOptions& opts) {
  auto [beta, n] = split_limit_finite(a);
  bool have = false;
  if (!beta.is_zero()) {
    std::vector<Ordinal::Term> dterms;
    uint64_t m = 0;
    for (auto t : beta.terms()) {
      if (t.first == 0)
        m = t.second;
      else
        dterms.push_back(t);
    }
    Ordinal delta = Ordinal::from_terms(std::move(dterms));
    if (!delta.is_zero()) {
      emit_ordinal(delta, out, opts);
      out.push_back("w-limit");
      have = true;
    }
    if (m > 0) {
      emit_fold("Tw", m, out);
      if (have) out.push_back("sum");
      have = true;
    }
  }
  if (n > 0) {
    if (opts.direct_finite)
      out.push_back("finite:" + std::to_string(n));
    else
      emit_fold("T1", n, out);
    if (have) out.push_back("sum");
  }
}

}  // namespace

FormulaPtr lambda_formula(const std::string& x, bool literal) {
  std::string yb = fresh_name("y", {x});
  std::string zb = fresh_name("z", {x, yb});
  FormulaPtr inner = literal ? f_lt(yb, x) : f_lt(yb, zb);
  return f_forall(yb, f_implies(f_lt(yb, x),
                                f_exists(zb, f_and(f_lt(zb, x), inner))));
}

FormulaPtr replay_trace(const std::vector<std::string>& trace,
                        const AxiomOptions& opts) {
  // A whole program consisting of the single base rule describes a top-level
  // sentence, which the nonempty convention lets us keep in the simple
  // universal form.
  if (trace.size() == 1 && trace[0] == "T1") return t1_top();
  std::vector<FormulaPtr> stack;
  for (const std::string& op : trace) {
    if (op == "T1") {
      stack.push_back(t1_segment());
    } else if (op == "Tw") {
      stack.push_back(tw_sentence());
    } else if (op == "sum") {
      if (stack.size() < 2) throw Error("malformed trace: sum needs two operands");
      FormulaPtr b = stack.back();
      stack.pop_back();
      FormulaPtr a = stack.back();
      stack.pop_back();
      stack.push_back(sum_rule(a, b));
    } else if (op == "w-limit") {
      if (stack.empty()) throw Error("malformed trace: w-limit needs an operand");
      FormulaPtr d = stack.back();
      stack.pop_back();
      stack.push_back(limit_rule(d, opts.literal_lambda));
    } else if (op.starts_with("finite:")) {
      uint64_t n = 0;
      auto [p, ec] = std::from_chars(op.data() + 7, op.data() + op.size(), n);
      if (ec != std::errc{} || p != op.data() + op.size() || n == 0)
        throw Error("malformed trace: bad finite op '" + op + "'");
      stack.push_back(exactly_n(n));
    } else {
      throw Error("malformed trace: unknown op '" + op + "'");
    }
  }
  if (stack.size() != 1) throw Error("malformed trace: leftover operands");
  return stack.back();
}

AxiomResult t_alpha(const Ordinal& a, const AxiomOptions& opts) {
  if (a.is_zero())
    throw PreconditionError(
        "characteristic sentences exist only for positive ordinals");
  AxiomResult r;
  emit_ordinal(a, r.trace, opts);
  r.sentence = replay_trace(r.trace, opts);
  r.rank = quantifier_rank(r.sentence);
  return r;
}

FormulaPtr ti_instance(const FormulaPtr& phi, const std::string& hole,
                       const std::string& x, const std::string& y) {
  if (!phi) throw PreconditionError("ti_instance requires a formula");
  for (const std::string& v : free_variables(phi))
    if (v != hole)
      throw PreconditionError("induction formula has a free variable besides '" +
                              hole + "': " + v);
  std::set<std::string> taken = all_variables(phi);
  taken.insert(hole);
  std::string xx = fresh_name(x, taken);
  taken.insert(xx);
  std::string yy = fresh_name(y, taken);
  FormulaPtr phi_x = substitute_var(phi, hole, xx);
  FormulaPtr phi_y = substitute_var(phi, hole, yy);
  FormulaPtr step = f_forall(
      xx, f_implies(f_forall(yy, f_implies(f_lt(yy, xx), phi_y)), phi_x));
  return f_implies(step, f_forall(xx, phi_x));
}

}  // namespace wo
