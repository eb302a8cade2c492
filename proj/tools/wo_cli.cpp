// wo: decide, model-check and inspect the first-order theory of well orders.
//
// Exit codes: 0 valid/true, 1 invalid/false, 2 parse error, 3 resource limit.
#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wo/axiomgen.hpp"
#include "wo/decider.hpp"
#include "wo/error.hpp"
#include "wo/evaluator.hpp"
#include "wo/formula.hpp"
#include "wo/ordinal.hpp"
#include "wo/typealg.hpp"

using nlohmann::json;

namespace {

struct Options {
  bool allow_empty = false;
  bool as_json = false;
  bool trace = false;
  double max_seconds = 120.0;
  size_t max_closure = 1'000'000;
  int threads = 1;
};

wo::Limits limits_of(const Options& o) {
  wo::Limits l;
  l.max_seconds = o.max_seconds;
  l.max_closure = o.max_closure;
  l.threads = o.threads;
  return l;
}

void emit(const json& j) { std::printf("%s\n", j.dump().c_str()); }

int cmd_decide(const Options& o, const std::string& ftext) {
  wo::FormulaPtr f = wo::parse_formula(ftext, /*require_sentence=*/true);
  wo::TypeTable tt;
  wo::Decider d(tt);
  wo::Verdict v = d.decide(f, o.allow_empty, limits_of(o));
  if (o.trace) {
    const wo::Closure& cl = d.closure(v.rank, o.allow_empty, limits_of(o));
    std::fprintf(stderr, "# rank %u, closure %zu entries, %.3fs, %zu interned types\n",
                 v.rank, cl.entries.size(), cl.seconds, tt.size());
  }
  if (o.as_json) {
    json j;
    j["status"] = v.valid() ? "valid" : "invalid";
    j["rank"] = v.rank;
    j["closure_size"] = v.closure_size;
    j["counterexample"] = v.valid() ? json(nullptr) : json(v.counterexample->to_string());
    emit(j);
  } else if (v.valid()) {
    std::printf("VALID (WO |= phi, TI |- phi)  [rank %u, %zu candidate types]\n",
                v.rank, v.closure_size);
  } else {
    std::printf("INVALID: fails in %s  [witness %s, rank %u, %zu candidate types]\n",
                v.counterexample->to_string().c_str(),
                wo::term_to_string(v.witness).c_str(), v.rank, v.closure_size);
  }
  return v.valid() ? 0 : 1;
}

int cmd_holds(const Options& o, const std::string& atext, const std::string& ftext) {
  wo::Ordinal a = wo::parse_ordinal(atext);
  wo::FormulaPtr f = wo::parse_formula(ftext, /*require_sentence=*/true);
  wo::TypeTable tt;
  wo::Evaluator ev(tt);
  ev.set_deadline(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(o.max_seconds)));
  bool r = ev.holds(a, f);
  if (o.as_json)
    emit(json{{"result", r}});
  else
    std::printf("%s\n", r ? "true" : "false");
  return r ? 0 : 1;
}

int cmd_equiv(const Options& o, const std::string& atext, const std::string& btext,
              unsigned k) {
  wo::Ordinal a = wo::parse_ordinal(atext);
  wo::Ordinal b = wo::parse_ordinal(btext);
  wo::TypeTable tt;
  bool r = wo::equiv(tt, a, b, k);
  if (o.as_json)
    emit(json{{"result", r}});
  else
    std::printf("%s\n", r ? "true" : "false");
  return r ? 0 : 1;
}

int cmd_axiom(const Options& o, const std::string& atext, bool literal_lambda,
              bool direct_finite) {
  wo::Ordinal a = wo::parse_ordinal(atext);
  wo::AxiomOptions opts;
  opts.literal_lambda = literal_lambda;
  opts.direct_finite = direct_finite;
  wo::AxiomResult r = wo::t_alpha(a, opts);
  if (o.as_json) {
    json j;
    j["sentence"] = wo::print_formula(r.sentence);
    j["rank"] = r.rank;
    j["trace"] = r.trace;
    emit(j);
  } else {
    std::printf("%s\n", wo::print_formula(r.sentence).c_str());
    if (o.trace) {
      std::printf("rank: %u\n", r.rank);
      std::string t;
      for (const auto& op : r.trace) {
        if (!t.empty()) t += " ";
        t += op;
      }
      std::printf("trace: %s\n", t.c_str());
    }
  }
  return 0;
}

int cmd_ti(const Options& o, const std::string& ftext, const std::string& hole) {
  wo::FormulaPtr phi = wo::parse_formula(ftext);
  wo::FormulaPtr inst = wo::ti_instance(phi, hole);
  if (o.as_json)
    emit(json{{"sentence", wo::print_formula(inst)},
              {"rank", wo::quantifier_rank(inst)}});
  else
    std::printf("%s\n", wo::print_formula(inst).c_str());
  return 0;
}

int cmd_type(const Options& o, const std::string& atext, unsigned k) {
  wo::Ordinal a = wo::parse_ordinal(atext);
  wo::TypeTable tt;
  wo::TypeId t = tt.type_of_ordinal(a, k);
  // Count distinct nodes per level in the sub-DAG reached from t.
  std::map<unsigned, size_t> per_level;
  std::vector<wo::TypeId> stack{t};
  std::vector<bool> seen;
  auto mark = [&](wo::TypeId id) {
    if (seen.size() <= id) seen.resize(id + 1, false);
    if (seen[id]) return false;
    seen[id] = true;
    return true;
  };
  mark(t);
  while (!stack.empty()) {
    wo::TypeId cur = stack.back();
    stack.pop_back();
    per_level[tt.level(cur)]++;
    for (auto [l, r] : tt.pairs(cur)) {
      if (mark(l)) stack.push_back(l);
      if (mark(r)) stack.push_back(r);
    }
  }
  if (o.as_json) {
    json j;
    j["id"] = tt.digest(t);
    j["level"] = k;
    j["pairs"] = tt.pairs(t).size();
    json counts = json::array();
    for (unsigned lv = 0; lv <= k; ++lv)
      counts.push_back(per_level.count(lv) ? per_level[lv] : 0);
    j["nodes_per_level"] = counts;
    j["interned_total"] = tt.size();
    emit(j);
  } else {
    std::printf("id: %s\n", tt.digest(t).c_str());
    std::printf("level: %u, content pairs: %zu\n", k, tt.pairs(t).size());
    for (unsigned lv = 0; lv <= k; ++lv)
      std::printf("level %u nodes: %zu\n", lv,
                  per_level.count(lv) ? per_level[lv] : size_t{0});
    std::printf("interned total: %zu\n", tt.size());
  }
  return 0;
}

int cmd_closure(const Options& o, unsigned k, bool dump_table) {
  wo::TypeTable tt;
  wo::Closure c = wo::reachable_closure(tt, k, o.allow_empty, limits_of(o));
  if (o.as_json) {
    json j;
    j["level"] = k;
    j["size"] = c.entries.size();
    json entries = json::array();
    for (const auto& e : c.entries)
      entries.push_back(json{{"id", tt.digest(e.type)},
                             {"ordinal", wo::eval_term(e.witness).to_string()},
                             {"term", wo::term_to_string(e.witness)},
                             {"depth", e.depth}});
    j["entries"] = entries;
    emit(j);
  } else {
    std::printf("level %u closure: %zu entries (%.3fs, %zu interned types)\n", k,
                c.entries.size(), c.seconds, tt.size());
    for (size_t i = 0; i < c.entries.size(); ++i) {
      const auto& e = c.entries[i];
      std::printf("%4zu  depth %u  %s  %s  %s\n", i, e.depth,
                  tt.digest(e.type).c_str(),
                  wo::eval_term(e.witness).to_string().c_str(),
                  wo::term_to_string(e.witness).c_str());
    }
    if (dump_table) {
      std::printf("-- interned table --\n");
      std::printf("%s", tt.dump().c_str());
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision procedure and model checker for the first-order theory of well orders"};
  app.require_subcommand(1);

  Options o;
  app.add_flag("--allow-empty", o.allow_empty, "include the empty order as a model");
  app.add_flag("--json", o.as_json, "machine-readable output");
  app.add_flag("--trace", o.trace, "extra derivation detail");
  app.add_option("--max-seconds", o.max_seconds, "wall-clock budget per phase")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-closure", o.max_closure, "cap on interned types")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", o.threads,
                 "worker threads (1 = serial reference lane, 0 = all cores)");

  std::string ftext, atext, btext, hole = "v";
  unsigned k = 0;
  bool literal_lambda = false, direct_finite = false, dump_table = false;

  auto* c_decide = app.add_subcommand("decide", "validity over all well orders");
  c_decide->add_option("sentence", ftext)->required();

  auto* c_holds = app.add_subcommand("holds", "truth in one ordinal");
  c_holds->add_option("ordinal", atext)->required();
  c_holds->add_option("sentence", ftext)->required();

  auto* c_equiv = app.add_subcommand("equiv", "rank-k elementary equivalence");
  c_equiv->add_option("ordinal_a", atext)->required();
  c_equiv->add_option("ordinal_b", btext)->required();
  c_equiv->add_option("k", k)->required();

  auto* c_axiom = app.add_subcommand("axiom", "characteristic sentence of an ordinal");
  c_axiom->add_option("ordinal", atext)->required();
  c_axiom->add_flag("--literal-lambda", literal_lambda,
                    "use the uncorrected limit-point test");
  c_axiom->add_flag("--direct-finite", direct_finite,
                    "compact exactly-n form for the finite part");

  auto* c_ti = app.add_subcommand("ti", "transfinite-induction schema instance");
  c_ti->add_option("formula", ftext)->required();
  c_ti->add_option("--var", hole, "designated free variable (default v)");

  auto* c_type = app.add_subcommand("type", "level-k type of an ordinal");
  c_type->add_option("ordinal", atext)->required();
  c_type->add_option("k", k)->required();

  auto* c_closure = app.add_subcommand("closure", "reachable level-k types");
  c_closure->add_option("k", k)->required();
  c_closure->add_flag("--dump", dump_table, "also dump the interned table");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_decide->parsed()) return cmd_decide(o, ftext);
    if (c_holds->parsed()) return cmd_holds(o, atext, ftext);
    if (c_equiv->parsed()) return cmd_equiv(o, atext, btext, k);
    if (c_axiom->parsed()) return cmd_axiom(o, atext, literal_lambda, direct_finite);
    if (c_ti->parsed()) return cmd_ti(o, ftext, hole);
    if (c_type->parsed()) return cmd_type(o, atext, k);
    if (c_closure->parsed()) return cmd_closure(o, k, dump_table);
  } catch (const wo::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const wo::ResourceLimitError& e) {
    std::fprintf(stderr, "resource limit: %s (phase %s, %zu entries, %zu types)\n",
                 e.what(), e.phase.c_str(), e.closure_size, e.interned_types);
    return 3;
  } catch (const wo::PreconditionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
