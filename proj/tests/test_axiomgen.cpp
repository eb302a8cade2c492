#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "wo/axiomgen.hpp"
#include "wo/error.hpp"
#include "wo/evaluator.hpp"
#include "wo/formula.hpp"
#include "wo/ordinal.hpp"
#include "wo/typealg.hpp"

using namespace wo;

namespace {

Ordinal ord(const std::string& s) { return parse_ordinal(s); }

using Trace = std::vector<std::string>;

}  // namespace

TEST_CASE("one-element sentence keeps its classic form at top level") {
  AxiomResult r = t_alpha(ord("1"));
  CHECK(print_formula(r.sentence) == "forall x forall y (x = y)");
  CHECK(r.rank == 2);
  CHECK(r.trace == Trace{"T1"});
}

TEST_CASE("omega sentence is the three-axiom conjunction") {
  AxiomResult r = t_alpha(ord("w"));
  CHECK(r.trace == Trace{"Tw"});
  CHECK(r.rank == 3);
  // ((least & successors) & predecessors)
  REQUIRE(r.sentence->kind == Kind::And);
  REQUIRE(r.sentence->l->kind == Kind::And);
  CHECK(r.sentence->l->l->kind == Kind::Exists);   // least element
  CHECK(r.sentence->l->r->kind == Kind::Forall);   // immediate successors
  CHECK(r.sentence->r->kind == Kind::Forall);      // immediate predecessors
  TypeTable tt;
  CHECK(holds(tt, ord("w"), r.sentence));
  CHECK(!holds(tt, ord("w+1"), r.sentence));
  CHECK(!holds(tt, ord("w*2"), r.sentence));
  CHECK(!holds(tt, ord("5"), r.sentence));
}

TEST_CASE("sums split at one point, parts built separately") {
  // w+2 = exists x (Tw below x  &  T2 at-least x), T2 itself one sum rule
  AxiomResult r = t_alpha(ord("w+2"));
  CHECK(r.trace == Trace{"Tw", "T1", "T1", "sum", "sum"});
  REQUIRE(r.sentence->kind == Kind::Exists);
  REQUIRE(r.sentence->l->kind == Kind::And);
  CHECK(r.rank == 4);

  AxiomResult two = t_alpha(ord("2"));
  CHECK(two.trace == Trace{"T1", "T1", "sum"});
  CHECK(two.rank == 3);
  REQUIRE(two.sentence->kind == Kind::Exists);

  CHECK(t_alpha(ord("3")).trace == Trace{"T1", "T1", "sum", "T1", "sum"});
  CHECK(t_alpha(ord("w*2")).trace == Trace{"Tw", "Tw", "sum"});
  CHECK(t_alpha(ord("w^2")).trace == Trace{"Tw", "w-limit"});
  CHECK(t_alpha(ord("w^2+w*3+2")).trace ==
        Trace{"Tw", "w-limit", "Tw", "Tw", "sum", "Tw", "sum", "sum",
              "T1", "T1", "sum", "sum"});
}

TEST_CASE("rank bookkeeping matches the emitted sentences") {
  std::map<std::string, unsigned> expected = {
      {"1", 2},  {"2", 3},   {"3", 4},   {"w", 3},
      {"w+1", 4}, {"w*2", 4}, {"w^2", 5}, {"w^2+w*3+2", 7},
  };
  for (const auto& [s, want] : expected) {
    AxiomResult r = t_alpha(ord(s));
    CHECK(r.rank == want);
    CHECK(r.rank == quantifier_rank(r.sentence));
  }
}

TEST_CASE("trace replay rebuilds the identical sentence") {
  for (const char* s : {"1", "2", "3", "w", "w+1", "w*2", "w^2", "w^2+w*3+2"}) {
    AxiomResult r = t_alpha(ord(s));
    CHECK(equal(replay_trace(r.trace), r.sentence));
  }
}

TEST_CASE("soundness and separation spot checks") {
  TypeTable tt;
  const char* sample[] = {"1", "2", "3", "w", "w+1", "w*2"};
  std::vector<FormulaPtr> ax;
  for (const char* s : sample) ax.push_back(t_alpha(ord(s)).sentence);
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = 0; j < 6; ++j)
      CHECK(holds(tt, ord(sample[j]), ax[i]) == (i == j));
}

TEST_CASE("zero is rejected") {
  CHECK_THROWS_AS(t_alpha(ord("0")), PreconditionError);
}

TEST_CASE("non-successor points sit where they should") {
  TypeTable tt;
  FormulaPtr lam = lambda_formula("x");
  FormulaPtr only_min = f_forall("x", f_implies(lam, f_forall("p", f_not(f_lt("p", "x")))));
  CHECK(holds(tt, ord("w"), only_min));       // in w: lambda only at 0
  CHECK(!holds(tt, ord("w*2"), only_min));    // second block starts at a limit

  FormulaPtr lx = lambda_formula("x");
  FormulaPtr ly = lambda_formula("y");
  FormulaPtr lz = lambda_formula("z");
  FormulaPtr exactly_two = f_exists(
      "x", f_exists("y", f_and(f_and(f_and(f_lt("x", "y"), lx), ly),
                               f_forall("z", f_implies(lz, f_or(f_eq("z", "x"),
                                                                f_eq("z", "y")))))));
  CHECK(holds(tt, ord("w*2"), exactly_two));  // 0 and the first point of block two
  CHECK(!holds(tt, ord("w"), exactly_two));
  CHECK(!holds(tt, ord("w*3"), exactly_two));

  FormulaPtr everywhere = f_forall("x", lambda_formula("x"));
  CHECK(holds(tt, ord("1"), everywhere));     // vacuous at the unique point
  CHECK(!holds(tt, ord("2"), everywhere));
}

TEST_CASE("historic display of the limit test is trivially true") {
  TypeTable tt;
  FormulaPtr lit = lambda_formula("x", /*literal=*/true);
  // inner conjunct is y < x again, so any y < x witnesses itself
  CHECK(holds(tt, ord("w"), f_forall("x", lambda_formula("x", true))));
  CHECK(holds(tt, ord("w^3+4"), f_forall("x", lambda_formula("x", true))));
  CHECK(!equal(lit, lambda_formula("x", false)));

  // under the literal reading the limit rule breaks: relativizing to "all
  // points" forces the whole order to satisfy the inner sentence
  AxiomOptions lit_opts;
  lit_opts.literal_lambda = true;
  AxiomResult r = t_alpha(ord("w^2"), lit_opts);
  CHECK(!holds(tt, ord("w^2"), r.sentence));
  // the corrected default is sound there
  CHECK(holds(tt, ord("w^2"), t_alpha(ord("w^2")).sentence));
}

TEST_CASE("direct finite form lowers rank and keeps meaning") {
  AxiomOptions direct;
  direct.direct_finite = true;
  AxiomResult r = t_alpha(ord("5"), direct);
  CHECK(r.trace == Trace{"finite:5"});
  CHECK(r.rank == 4);  // ~log2: beats the 6 of the five-fold sum chain
  CHECK(t_alpha(ord("5")).rank == 6);
  TypeTable tt;
  CHECK(holds(tt, ord("5"), r.sentence));
  CHECK(!holds(tt, ord("4"), r.sentence));
  CHECK(!holds(tt, ord("6"), r.sentence));
  CHECK(!holds(tt, ord("w"), r.sentence));

  AxiomResult rw = t_alpha(ord("w+5"), direct);
  CHECK(rw.trace == Trace{"Tw", "finite:5", "sum"});
  CHECK(holds(tt, ord("w+5"), rw.sentence));
  CHECK(!holds(tt, ord("w+4"), rw.sentence));
  // replay honors the option
  CHECK(equal(replay_trace(rw.trace, direct), rw.sentence));
}

TEST_CASE("malformed traces are rejected") {
  CHECK_THROWS_AS(replay_trace({"sum"}), Error);
  CHECK_THROWS_AS(replay_trace({"T1", "sum"}), Error);
  CHECK_THROWS_AS(replay_trace({"w-limit"}), Error);
  CHECK_THROWS_AS(replay_trace({"T1", "T1"}), Error);
  CHECK_THROWS_AS(replay_trace({"frobnicate"}), Error);
  CHECK_THROWS_AS(replay_trace({"finite:0"}), Error);
  CHECK_THROWS_AS(replay_trace({"finite:x"}), Error);
  CHECK_THROWS_AS(replay_trace({}), Error);
}

TEST_CASE("induction instances") {
  // phi(v) = false
  FormulaPtr inst = ti_instance(parse_formula("false"), "v");
  CHECK(print_formula(inst) ==
        "(forall x ((forall y (y < x -> false)) -> false)) -> (forall x (false))");
  CHECK(equal(inst, parse_formula(print_formula(inst))));
  CHECK(quantifier_rank(inst) == 2);

  // phi(v) = exists z (v < z)
  FormulaPtr phi = parse_formula("exists z (v < z)");
  FormulaPtr inst2 = ti_instance(phi, "v");
  CHECK(is_sentence(inst2));
  CHECK(quantifier_rank(inst2) == 3);
  REQUIRE(inst2->kind == Kind::Implies);
  CHECK(inst2->r->kind == Kind::Forall);

  // binder collision: phi uses x bound, so the schema variables are renamed
  FormulaPtr phi_x = parse_formula("exists x (v < x)");
  FormulaPtr inst3 = ti_instance(phi_x, "v");
  CHECK(is_sentence(inst3));
  REQUIRE(inst3->kind == Kind::Implies);
  CHECK(inst3->r->v1 != "x");

  // extra free variables are parameters, deliberately unsupported
  CHECK_THROWS_AS(ti_instance(parse_formula("v < p"), "v"), PreconditionError);
  // a sentence without the hole is fine (vacuous induction)
  CHECK(is_sentence(ti_instance(parse_formula("true"), "v")));
}

TEST_CASE("printed axioms match the committed golden file") {
  std::ifstream in(std::string(WO_GOLDEN_DIR) + "/axioms.txt");
  REQUIRE(in.good());
  std::map<std::string, std::string> golden;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    size_t at = line.find(" := ");
    REQUIRE(at != std::string::npos);
    golden[line.substr(0, at)] = line.substr(at + 4);
  }
  CHECK(golden.size() == 8);
  for (const auto& [a, text] : golden)
    CHECK(print_formula(t_alpha(ord(a)).sentence) == text);
}
