#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "wo/decider.hpp"
#include "wo/error.hpp"
#include "wo/evaluator.hpp"
#include "wo/formula.hpp"
#include "wo/ordinal.hpp"
#include "wo/typealg.hpp"

using namespace wo;

namespace {

Ordinal ord(const std::string& s) { return parse_ordinal(s); }

}  // namespace

TEST_CASE("derivation terms evaluate and print") {
  TermPtr three = term_sum(term_sum(term_one(), term_one()), term_one());
  CHECK(term_to_string(three) == "((1+1)+1)");
  CHECK(compare(eval_term(three), ord("3")) == Cmp::EQ);

  TermPtr w2 = term_sum(term_omega(term_one()), term_omega(term_one()));
  CHECK(term_to_string(w2) == "((1*w)+(1*w))");
  CHECK(compare(eval_term(w2), ord("w*2")) == Cmp::EQ);

  CHECK(compare(eval_term(term_omega(term_zero())), ord("0")) == Cmp::EQ);
  CHECK(term_to_string(term_zero()) == "0");
}

TEST_CASE("level-1 closure collapses to nonempty") {
  TypeTable tt;
  Decider dec(tt);
  const Closure& c = dec.closure(1, false);
  CHECK(c.level == 1);
  CHECK(!c.with_empty);
  REQUIRE(c.entries.size() == 1);
  CHECK(c.entries[0].type == tt.type_singleton(1));
  CHECK(c.entries[0].depth == 0);

  const Closure& ce = dec.closure(1, true);
  CHECK(ce.with_empty);
  REQUIRE(ce.entries.size() == 2);
  CHECK(ce.entries[0].type == tt.type_empty(1));
  CHECK(term_to_string(ce.entries[0].witness) == "0");
  CHECK(ce.entries[1].type == tt.type_singleton(1));
}

TEST_CASE("level-2 closure is exactly 1, 2, w, 3 in discovery order") {
  TypeTable tt;
  Decider dec(tt);
  const Closure& c = dec.closure(2, false);
  REQUIRE(c.entries.size() == 4);
  const char* ords[] = {"1", "2", "w", "3"};
  const char* wits[] = {"1", "(1+1)", "(1*w)", "((1+1)+1)"};
  unsigned depths[] = {0, 1, 1, 2};
  for (size_t i = 0; i < 4; ++i) {
    CHECK(c.entries[i].type == tt.type_of_ordinal(ord(ords[i]), 2));
    CHECK(compare(eval_term(c.entries[i].witness), ord(ords[i])) == Cmp::EQ);
    CHECK(term_to_string(c.entries[i].witness) == wits[i]);
    CHECK(c.entries[i].depth == depths[i]);
  }
}

TEST_CASE("closure sizes at levels 3 and 4") {
  TypeTable tt;
  Decider dec(tt);
  CHECK(dec.closure(3, false).entries.size() == 16);
  CHECK(dec.closure(4, false).entries.size() == 62);
  // every witness really has the type it is filed under
  for (const ClosureEntry& e : dec.closure(3, false).entries)
    CHECK(tt.type_of_ordinal(eval_term(e.witness), 3) == e.type);
}

TEST_CASE("closure results are cached per level and convention") {
  TypeTable tt;
  Decider dec(tt);
  const Closure* a = &dec.closure(2, false);
  const Closure* b = &dec.closure(2, false);
  CHECK(a == b);
  CHECK(&dec.closure(2, true) != a);
}

TEST_CASE("canned theorems come back valid") {
  TypeTable tt;
  Decider dec(tt);
  const char* theorems[] = {
      "exists x true",
      "forall x (x = x)",
      "forall x (~(x < x))",
      "exists x forall y (x = y | x < y)",
      "forall x forall y (x < y | x = y | y < x)",
      "forall x forall y (x < y -> ~(y < x))",
      "forall x forall y forall z ((x < y & y < z) -> x < z)",
      "forall x ((exists y (x < y)) -> (exists y (x < y & ~(exists z (x < z & z < y)))))",
      "forall x ((exists y (y < x)) -> (exists y (y < x & (forall z (z < x -> (y = z | y < z))))))",
  };
  for (const char* s : theorems) {
    FormulaPtr f = parse_formula(s, true);
    Verdict v = dec.decide(f);
    CHECK(v.valid());
    CHECK(!v.counterexample.has_value());
    CHECK(v.rank == quantifier_rank(f));
  }
}

TEST_CASE("non-theorems come back with least counterexamples") {
  TypeTable tt;
  Decider dec(tt);
  struct Case {
    const char* text;
    const char* cx;
  };
  const Case cases[] = {
      {"forall x exists y (x < y)", "1"},
      {"exists x exists y (x < y)", "1"},
      {"forall x forall y (x = y)", "2"},
      {"forall x forall y (x < y -> (exists z (x < z & z < y)))", "2"},
      {"exists x forall y (y = x | y < x)", "w"},
      {"forall x exists y (x < y & ~(exists z (x < z & z < y)))", "1"},
      {"forall x ((exists y (y < x)) -> (exists y (y < x & ~(exists z (y < z & z < x)))))",
       "w + 1"},
      {"exists x (forall y (y < x -> (exists z (z < x & y < z))) & (exists y (y < x)))",
       "1"},
  };
  for (const Case& c : cases) {
    FormulaPtr f = parse_formula(c.text, true);
    Verdict v = dec.decide(f);
    REQUIRE(!v.valid());
    REQUIRE(v.counterexample.has_value());
    CHECK(v.counterexample->to_string() == c.cx);
    // witness term derives the same ordinal
    CHECK(compare(eval_term(v.witness), *v.counterexample) == Cmp::EQ);
    // and the counterexample genuinely refutes the sentence
    FormulaPtr neg = f_not(f);
    CHECK(holds(tt, *v.counterexample, neg));
  }
}

TEST_CASE("verdict metadata is consistent") {
  TypeTable tt;
  Decider dec(tt);
  FormulaPtr f = parse_formula("forall x exists y (x < y)", true);
  Verdict v = dec.decide(f);
  CHECK(v.rank == 2);
  CHECK(v.closure_size == dec.closure(2, false).entries.size());
}

TEST_CASE("the empty order is opt-in") {
  TypeTable tt;
  Decider dec(tt);
  FormulaPtr nonempty = parse_formula("exists x true", true);
  CHECK(dec.decide(nonempty).valid());

  Verdict v = dec.decide(nonempty, /*allow_empty=*/true);
  REQUIRE(!v.valid());
  CHECK(v.counterexample->to_string() == "0");
  CHECK(term_to_string(v.witness) == "0");

  // 0 satisfies "forall x false", so the least counterexample moves to 1
  Verdict v2 = dec.decide(parse_formula("forall x false", true), true);
  REQUIRE(!v2.valid());
  CHECK(v2.counterexample->to_string() == "1");
}

TEST_CASE("well-order type recognition") {
  TypeTable tt;
  Decider dec(tt);
  CHECK(dec.is_wo_type(tt.type_of_ordinal(ord("w^2+3"), 2)));
  CHECK(dec.is_wo_type(tt.type_of_ordinal(ord("1"), 3)));
  CHECK(dec.is_wo_type(tt.type_of_ordinal(ord("w*4+7"), 3)));
  CHECK(dec.is_wo_type(tt.atom()));  // level-0 type of every ordinal
  CHECK(!dec.is_wo_type(tt.type_empty(1)));
  CHECK(!dec.is_wo_type(tt.type_empty(3)));
}

TEST_CASE("resource limits trip cleanly") {
  {
    TypeTable tt;
    Limits lim;
    lim.max_closure = 5;
    CHECK_THROWS_AS(reachable_closure(tt, 3, false, lim), ResourceLimitError);
  }
  {
    TypeTable tt;
    Limits lim;
    lim.max_seconds = 1e-9;
    FormulaPtr f = parse_formula(
        "forall x forall y ((exists z (x < z & z < y)) -> "
        "(exists z (exists u (x < z & z < u & u < y))))",
        true);
    CHECK_THROWS_AS(decide(tt, f, false, lim), ResourceLimitError);
  }
  {
    // generous limits pass
    TypeTable tt;
    Limits lim;
    lim.max_seconds = 60.0;
    CHECK(decide(tt, parse_formula("forall x (x = x)", true), false, lim).valid());
  }
}

TEST_CASE("decide rejects open formulas") {
  TypeTable tt;
  CHECK_THROWS_AS(decide(tt, parse_formula("x < x")), PreconditionError);
}
