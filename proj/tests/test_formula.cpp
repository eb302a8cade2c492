#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "wo/error.hpp"
#include "wo/formula.hpp"

using namespace wo;

namespace {

FormulaPtr parse(const std::string& s) { return parse_formula(s); }

// Random AST of bounded depth over a small variable pool.
FormulaPtr random_formula(std::mt19937& rng, int depth) {
  static const char* vars[] = {"x", "y", "z", "u", "v"};
  std::uniform_int_distribution<int> var(0, 4);
  auto v = [&]() { return std::string(vars[var(rng)]); };
  std::uniform_int_distribution<int> leaf(0, 3);
  if (depth <= 0) {
    switch (leaf(rng)) {
      case 0: return f_true();
      case 1: return f_false();
      case 2: return f_lt(v(), v());
      default: return f_eq(v(), v());
    }
  }
  std::uniform_int_distribution<int> node(0, 10);
  switch (node(rng)) {
    case 0: return f_true();
    case 1: return f_lt(v(), v());
    case 2: return f_eq(v(), v());
    case 3: return f_not(random_formula(rng, depth - 1));
    case 4: return f_and(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 5: return f_or(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 6: return f_implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 7: return f_iff(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 8: return f_forall(v(), random_formula(rng, depth - 1));
    default: return f_exists(v(), random_formula(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("parser examples") {
  FormulaPtr f = parse("forall x exists y (x < y)");
  REQUIRE(f->kind == Kind::Forall);
  CHECK(f->v1 == "x");
  REQUIRE(f->l->kind == Kind::Exists);
  CHECK(f->l->v1 == "y");
  CHECK(f->l->l->kind == Kind::Lt);

  FormulaPtr g = parse("~(a = b) & a < b");
  REQUIRE(g->kind == Kind::And);
  CHECK(g->l->kind == Kind::Not);
  CHECK(g->l->l->kind == Kind::Eq);
  CHECK(g->r->kind == Kind::Lt);

  CHECK_THROWS_AS(parse("forall x ("), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("x <"), ParseError);
  CHECK_THROWS_AS(parse("(x < y"), ParseError);
  CHECK_THROWS_AS(parse("x < y extra"), ParseError);
}

TEST_CASE("precedence and associativity") {
  // & binds tighter than |, | tighter than ->, -> right-assoc, <-> loosest
  FormulaPtr f = parse("a<b | c<d & e<f");
  REQUIRE(f->kind == Kind::Or);
  CHECK(f->r->kind == Kind::And);

  FormulaPtr g = parse("a<b -> c<d -> e<f");
  REQUIRE(g->kind == Kind::Implies);
  CHECK(g->r->kind == Kind::Implies);  // right-assoc

  FormulaPtr h = parse("a<b <-> c<d <-> e<f");
  REQUIRE(h->kind == Kind::Iff);
  CHECK(h->l->kind == Kind::Iff);  // left fold

  // quantifier body extends maximally right
  FormulaPtr q = parse("forall x x < y -> true");
  REQUIRE(q->kind == Kind::Forall);
  CHECK(q->l->kind == Kind::Implies);

  // <= desugars
  FormulaPtr le = parse("a <= b");
  REQUIRE(le->kind == Kind::Or);
  CHECK(le->l->kind == Kind::Lt);
  CHECK(le->r->kind == Kind::Eq);
}

TEST_CASE("unicode aliases accepted on input") {
  CHECK(equal(parse("∀x ∃y (x < y)"), parse("forall x exists y (x < y)")));
  CHECK(equal(parse("¬(a = b) ∧ a < b"), parse("~(a = b) & a < b")));
  CHECK(equal(parse("a<b → c<d"), parse("a<b -> c<d")));
  CHECK(equal(parse("a<b ↔ c<d"), parse("a<b <-> c<d")));
  CHECK(equal(parse("a ≤ b"), parse("a <= b")));
  CHECK(equal(parse("a<b ∨ c<d"), parse("a<b | c<d")));
}

TEST_CASE("printer examples") {
  CHECK(print_formula(f_forall("x", f_exists("y", f_lt("x", "y")))) ==
        "forall x exists y (x < y)");
  CHECK(print_formula(f_eq("a", "a")) == "a = a");
  CHECK(print_formula(f_implies(f_true(), f_false())) == "true -> false");
}

TEST_CASE("round trip on random ASTs") {
  std::mt19937 rng(20240816);
  for (int i = 0; i < 10000; ++i) {
    FormulaPtr f = random_formula(rng, 8);
    FormulaPtr minimal = parse(print_formula(f));
    CHECK(equal(f, minimal));
    FormulaPtr full = parse(print_formula(f, /*full_parens=*/true));
    CHECK(equal(f, full));
  }
}

TEST_CASE("quantifier rank") {
  CHECK(quantifier_rank(f_lt("x", "y")) == 0);
  CHECK(quantifier_rank(parse("forall x exists y (x < y)")) == 2);
  CHECK(quantifier_rank(f_and(f_exists("x", f_lt("x", "x")),
                              f_forall("y", f_exists("z", f_lt("y", "z"))))) == 2);
  CHECK(quantifier_rank(parse("true")) == 0);
}

TEST_CASE("free variables and sentence test") {
  CHECK(free_variables(f_lt("x", "y")) == std::set<std::string>{"x", "y"});
  CHECK(free_variables(f_exists("y", f_lt("x", "y"))) == std::set<std::string>{"x"});
  CHECK(free_variables(parse("forall x exists y (x < y)")).empty());
  CHECK(is_sentence(parse("forall x exists y (x < y)")));
  CHECK(!is_sentence(parse("x < y")));
  // shadowing: outer occurrence stays free
  FormulaPtr f = f_and(f_lt("x", "x"), f_exists("x", f_lt("x", "x")));
  CHECK(free_variables(f) == std::set<std::string>{"x"});

  CHECK_THROWS_AS(parse_formula("x < y", /*require_sentence=*/true), ParseError);
}

TEST_CASE("substitution avoids capture") {
  // [v := y] under exists y must rename the binder
  FormulaPtr f = f_exists("y", f_lt("v", "y"));
  FormulaPtr g = substitute_var(f, "v", "y");
  REQUIRE(g->kind == Kind::Exists);
  CHECK(g->v1 != "y");
  CHECK(free_variables(g) == std::set<std::string>{"y"});
  // no-op when the variable is absent
  CHECK(equal(substitute_var(f, "q", "r"), f));
}

TEST_CASE("fresh names are deterministic") {
  CHECK(fresh_name("x", {}) == "x");
  CHECK(fresh_name("x", {"x"}) == "x1");
  CHECK(fresh_name("x", {"x", "x1"}) == "x2");
}

TEST_CASE("relativize below guard") {
  // relativize(exists y (y<y), below x) = exists y (y<x & y<y)
  FormulaPtr f = f_exists("y", f_lt("y", "y"));
  RelativizeResult r = relativize(f, Guard::below("x"));
  CHECK(print_formula(r.formula) == "exists y (y < x & y < y)");
  CHECK(r.rank == quantifier_rank(f));
  CHECK(r.rank == r.rank_bound);

  // relativize(forall y true, at_least x) = forall y (x=y | x<y -> true)
  FormulaPtr g = f_forall("y", f_true());
  RelativizeResult s = relativize(g, Guard::at_least("x"));
  REQUIRE(s.formula->kind == Kind::Forall);
  REQUIRE(s.formula->l->kind == Kind::Implies);
  FormulaPtr guard = s.formula->l->l;
  REQUIRE(guard->kind == Kind::Or);
  CHECK(equal(guard->l, f_eq("x", "y")));
  CHECK(equal(guard->r, f_lt("x", "y")));
}

TEST_CASE("relativize rank and free-variable invariants") {
  std::mt19937 rng(777);
  int with_quantifier = 0;
  for (int i = 0; i < 2000; ++i) {
    FormulaPtr f = random_formula(rng, 6);
    RelativizeResult r = relativize(f, Guard::below("w0"));
    CHECK(quantifier_rank(r.formula) == quantifier_rank(f));
    if (quantifier_rank(f) > 0) {
      ++with_quantifier;
      std::set<std::string> want = free_variables(f);
      want.insert("w0");
      CHECK(free_variables(r.formula) == want);
    }
  }
  CHECK(with_quantifier > 500);  // corpus actually exercises the claim
}

TEST_CASE("relativize renames colliding binders") {
  // the guard variable x is bound inside f: binders must be renamed
  FormulaPtr f = f_exists("x", f_lt("x", "x"));
  RelativizeResult r = relativize(f, Guard::below("x"));
  REQUIRE(r.formula->kind == Kind::Exists);
  CHECK(r.formula->v1 != "x");
  std::set<std::string> fv = free_variables(r.formula);
  CHECK(fv == std::set<std::string>{"x"});
}

TEST_CASE("relativize with predicate guard tracks rank bound") {
  // guard: u is minimal
  FormulaPtr lam = f_forall("t", f_not(f_lt("t", "u")));
  FormulaPtr f = f_exists("a", f_forall("b", f_lt("a", "b")));
  RelativizeResult r = relativize(f, Guard::where(lam, "u"));
  CHECK(r.rank_bound == quantifier_rank(f) + quantifier_rank(lam));
  CHECK(r.rank <= r.rank_bound);
  CHECK(r.rank == quantifier_rank(r.formula));
  CHECK(free_variables(r.formula).empty());
}

TEST_CASE("interval guard restricts to [x, y)") {
  FormulaPtr f = f_exists("a", f_true());
  RelativizeResult r = relativize(f, Guard::interval("p", "q"));
  REQUIRE(r.formula->kind == Kind::Exists);
  REQUIRE(r.formula->l->kind == Kind::And);
  FormulaPtr g = r.formula->l->l;
  REQUIRE(g->kind == Kind::And);  // (p=a | p<a) & a<q
  CHECK(equal(g->r, f_lt("a", "q")));
}

TEST_CASE("structural equality is literal") {
  CHECK(equal(parse("forall x (x=x)"), parse("forall x (x = x)")));
  CHECK(!equal(parse("forall x (x=x)"), parse("forall y (y=y)")));  // no alpha
  CHECK(!equal(parse("a<b & c<d"), parse("c<d & a<b")));
}
