#include <doctest.h>

#include <fstream>
#include <sstream>

#include "lpsign/analysis.h"
#include "lpsign/error.h"
#include "lpsign/generate.h"
#include "lpsign/solvers.h"
#include "oracles.h"

using namespace lpsign;
using oracle::atoms;
using oracle::ground_text;

namespace {

Program fig1() {
  std::ifstream in(std::string(LPSIGN_FIXTURES) + "/fig1.dl");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

PredicateSymbol P(const std::string& n) { return {n, 0}; }

PredicateSet set_of(std::initializer_list<const char*> names) {
  PredicateSet s;
  for (const char* n : names) s.insert(P(n));
  return s;
}

PredicateSet with_need(const PartsRequirement& r, Need n) {
  PredicateSet out;
  for (const auto& [p, v] : r.need) {
    if (v == n) out.insert(p);
  }
  return out;
}

Signing fig1_signing() {
  return Signing({{P("defeasibly"), Sign::Positive}, {P("defeated"), Sign::Positive}, {P("overruled"), Sign::Negative}});
}

FloorSplit fig1_split(const SignedDependencyGraph& g) {
  PredicateSet all(g.vertices().begin(), g.vertices().end());
  PredicateSet floor = all;
  for (const char* q : {"defeasibly", "overruled", "defeated"}) floor.erase(P(q));
  return {all, floor};
}

}  // namespace

TEST_CASE("parts: fig1 query for the positive part of defeasibly") {
  auto g = build_graph(fig1());
  auto r = parts_requirements(g, parse_query(g, "+defeasibly"));
  CHECK(with_need(r, Need::Both) == set_of({"definitely", "fact", "s_or_d", "defeasible", "strict"}));
  CHECK(with_need(r, Need::Pos) == set_of({"defeasibly", "defeated", "sup"}));
  CHECK(with_need(r, Need::Neg) == set_of({"overruled", "lambda", "rule", "defeater"}));
  CHECK(with_need(r, Need::None).empty());
}

TEST_CASE("parts: empty query needs nothing") {
  auto g = build_graph(fig1());
  auto r = parts_requirements(g, {});
  CHECK(with_need(r, Need::None).size() == g.size());
}

TEST_CASE("parts: why-paths follow the propagation") {
  auto g = build_graph(fig1());
  auto r = parts_requirements(g, parse_query(g, "defeasibly"));
  auto chain = derivation(r, P("lambda"), Polarity::Negative);
  REQUIRE(chain.size() == 3);
  CHECK(chain.front() == std::make_pair(P("defeasibly"), Polarity::Positive));
  CHECK(chain[1] == std::make_pair(P("overruled"), Polarity::Negative));
  CHECK(chain.back() == std::make_pair(P("lambda"), Polarity::Negative));
  CHECK(derivation(r, P("lambda"), Polarity::Positive).empty());
  CHECK(derivation(r, P("defeasibly"), Polarity::Positive).size() == 1);
}

TEST_CASE("parts: query parsing") {
  auto g = build_graph(fig1());
  auto q = parse_query(g, "+defeasibly, -overruled,lambda");
  REQUIRE(q.demands.size() == 3);
  CHECK(q.demands[1] == std::make_pair(P("overruled"), Polarity::Negative));
  CHECK(q.demands[2] == std::make_pair(P("lambda"), Polarity::Positive));
  CHECK_THROWS_AS(parse_query(g, "+nope"), InputError);
}

TEST_CASE("parts: stratified cones are reported separately") {
  auto g = build_graph(fig1());
  auto cones = stratified_cone_predicates(g, closure(g));
  CHECK(cones.contains(P("definitely")));
  CHECK(cones.contains(P("lambda")));
  CHECK_FALSE(cones.contains(P("defeasibly")));
  CHECK_FALSE(cones.contains(P("overruled")));
}

TEST_CASE("parts: adding demands never removes needs") {
  Rng rng(31);
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto g = build_graph(generate_random_program(oracle::small_options(seed)));
    QuerySpec small, big;
    for (const auto& v : g.vertices()) {
      auto pol = rng.chance(0.5) ? Polarity::Positive : Polarity::Negative;
      if (rng.chance(0.2)) small.demands.emplace_back(v, pol);
      if (rng.chance(0.3)) big.demands.emplace_back(v, pol);
    }
    big.demands.insert(big.demands.end(), small.demands.begin(), small.demands.end());
    auto a = parts_requirements(g, small), b = parts_requirements(g, big);
    for (const auto& [p, n] : a.need) CHECK((static_cast<int>(n) & ~static_cast<int>(b.of(p))) == 0);
  }
}

TEST_CASE("parts: evaluating only the needed parts gives the same answers") {
  Rng rng(37);
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto prog = generate_random_program(oracle::small_options(seed));
    auto graph = build_graph(prog);
    auto g = ground(prog);
    const std::size_t n = g.atom_count();
    QuerySpec q;
    for (const auto& v : graph.vertices()) {
      if (rng.chance(0.25)) q.demands.emplace_back(v, rng.chance(0.5) ? Polarity::Positive : Polarity::Negative);
    }
    auto req = parts_requirements(graph, q);
    AtomSet pos(n), neg(n);
    AtomSigns signs(n, 1);
    for (AtomId a = 0; a < n; ++a) {
      auto need = req.of(g.predicate_of(a));
      pos.set(a, includes(need, Polarity::Positive));
      neg.set(a, includes(need, Polarity::Negative));
      if (neg.test(a)) signs[a] = -1;
    }
    // Never materialize a part nobody asked for.
    auto restricted = kleene_lfp(
        [&](const Interpretation& i) {
          return Interpretation(phi_plus(g, i) & pos,
                                (phi_minus(g, i) & neg) |
                                    greatest_circular_unfounded_set(g, i, {}, signs, Sign::Negative));
        },
        Interpretation(n));
    auto full = wfs(g, Interpretation(n), WfsMethod::U).model;
    CHECK(restricted.model.true_atoms == (full.true_atoms & pos));
    CHECK(restricted.model.false_atoms == (full.false_atoms & neg));
  }
}

TEST_CASE("theorem2: fig1") {
  auto prog = fig1();
  auto g = build_graph(prog);
  for (const char* p : {"defeasibly", "overruled", "defeated"}) {
    CAPTURE(p);
    auto r = check_theorem2(prog, fig1_split(g), fig1_signing(), P(p));
    CHECK(r.verdict);
    CHECK(r.checks.size() == 5);
    for (const auto& c : r.checks) CHECK(c.passed());
  }
}

TEST_CASE("theorem2: positive loop under a negative sign fails") {
  auto prog = parse_program("p :- not q.\nq :- q.");
  Signing s({{P("p"), Sign::Positive}, {P("q"), Sign::Negative}});
  auto r = check_theorem2(prog, {set_of({"p", "q"}), {}}, s, P("p"));
  CHECK_FALSE(r.verdict);
  // and the conclusion indeed fails: wfs makes p true, Fitting leaves it open
  auto g = ground(prog);
  auto p = oracle::id(g, "p");
  CHECK(wfs(g, Interpretation(2), WfsMethod::U).model.is_true(p));
  CHECK_FALSE(fitting_semantics(g, Interpretation(2)).model.is_true(p));
}

TEST_CASE("theorem2: floor atom fixed false") {
  auto prog = parse_program("p :- not q.\nq :- r.");
  Signing s({{P("p"), Sign::Positive}, {P("q"), Sign::Negative}});
  auto r = check_theorem2(prog, {set_of({"p", "q", "r"}), set_of({"r"})}, s, P("p"));
  CHECK(r.verdict);
  auto g = ground(prog);
  AtomSet frozen = atoms(g, {"r"});
  auto start = oracle::interp(g, {}, {"r"});
  auto w = wfs(g, start, WfsMethod::U, frozen).model;
  auto f = fitting_semantics(g, start, frozen).model;
  CHECK(w.is_true(oracle::id(g, "p")));
  CHECK(f.is_true(oracle::id(g, "p")));
}

TEST_CASE("theorem2: failing hypotheses are reported individually") {
  auto prog = fig1();
  auto g = build_graph(prog);
  auto split = fig1_split(g);
  {
    auto r = check_theorem2(prog, {split.p_set, set_of({"defeasibly"})}, fig1_signing(), P("overruled"));
    CHECK_FALSE(r.verdict);
    CHECK(r.checks[0].status == HypothesisCheck::Status::Fail);
  }
  {
    auto r = check_theorem2(prog, split, fig1_signing(), P("lambda"));
    CHECK_FALSE(r.verdict);
    CHECK(r.checks[2].status == HypothesisCheck::Status::Fail);
  }
  {
    Signing bad = fig1_signing();
    bad.assign(P("overruled"), Sign::Positive);
    auto r = check_theorem2(prog, split, bad, P("overruled"));
    CHECK_FALSE(r.verdict);
    CHECK(r.checks[1].status == HypothesisCheck::Status::Fail);
  }
  {
    auto r = check_theorem2(prog, split, fig1_signing(), P("overruled"), 3);
    CHECK(r.verdict);
    CHECK(r.checks[4].status == HypothesisCheck::Status::Skipped);
  }
}

TEST_CASE("minimalistic decomposition examples") {
  {
    auto g = ground_text("q :- p.\np :- p.");
    auto parts = minimalistic_decomposition(g, Interpretation(2), atoms(g, {"p", "q"}));
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].size() == 2);
  }
  {
    auto g = ground_text("p :- p.\nq :- q.");
    auto parts = minimalistic_decomposition(g, Interpretation(2), atoms(g, {"p", "q"}));
    CHECK(parts == std::vector<std::vector<AtomId>>{{oracle::id(g, "p")}, {oracle::id(g, "q")}});
  }
  {
    auto g = ground_text("p :- p.");
    CHECK(minimalistic_decomposition(g, Interpretation(1), AtomSet(1)).empty());
  }
}

TEST_CASE("minimalistic decomposition guard") {
  std::string text;
  for (int k = 0; k < 17; ++k) text += "a" + std::to_string(k) + " :- a" + std::to_string(k) + ".\n";
  auto g = ground_text(text);
  AtomSet all(g.atom_count());
  all.set();
  CHECK_THROWS_AS(minimalistic_decomposition(g, Interpretation(g.atom_count()), all), BudgetExceeded);
}

TEST_CASE("minimalistic blocks are circular and uniformly signed") {
  Rng rng(41);
  std::size_t blocks = 0;
  for (std::uint64_t seed = 1; seed <= 600; ++seed) {
    GenOptions o = oracle::small_options(seed, 3 + seed % 8, 6 + seed % 12);
    o.signed_only = true;
    auto prog = generate_random_program(o);
    auto graph = build_graph(prog);
    PredicateSet all(graph.vertices().begin(), graph.vertices().end());
    auto signs = atom_signs(ground(prog), *find_signing(graph, all).signing);
    auto g = ground(prog);
    auto i = oracle::random_interp(rng, g.atom_count());
    auto z = greatest_circular_unfounded_set(g, i);
    AtomSet covered(g.atom_count());
    for (const auto& block : minimalistic_decomposition(g, i, z)) {
      ++blocks;
      CHECK(is_circular_unfounded(g, i, block));
      for (auto a : block) {
        CHECK(signs[a] == signs[block[0]]);
        CHECK_FALSE(covered.test(a));
        covered.set(a);
      }
    }
    CHECK(covered == z);
  }
  CHECK(blocks > 50);
}
