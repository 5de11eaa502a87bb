#include <doctest.h>

#include "lpsign/error.h"
#include "lpsign/generate.h"
#include "lpsign/solvers.h"
#include "oracles.h"

using namespace lpsign;
using oracle::atoms;
using oracle::ground_text;
using oracle::interp;

namespace {

const char* kMutual = "p :- not q.\nq :- not p.";
const char* kFootnote = "q :- p.\np :- p.";
const char* kStrat = "r.\nq :- not r.";
const char* kLoopNeg = "p :- not q.\nq :- q.";

const WfsMethod kMethods[] = {WfsMethod::U, WfsMethod::WPrime, WfsMethod::Alternating};

Interpretation empty(const GroundProgram& g) { return Interpretation(g.atom_count()); }

TwoValuedInterpretation S(const GroundProgram& g, std::initializer_list<const char*> t) { return {atoms(g, t)}; }

}  // namespace

TEST_CASE("fitting semantics examples") {
  auto f = ground_text(kFootnote);
  CHECK(fitting_semantics(f, empty(f)).model == empty(f));
  auto g = ground_text("p :- not q.\nq :- r.");
  auto r = fitting_semantics(g, empty(g));
  CHECK(r.model == interp(g, {"p"}, {"q", "r"}));
  CHECK(r.stages == 3);
  auto s = ground_text(kStrat);
  auto rs = fitting_semantics(s, empty(s));
  CHECK(rs.model == interp(s, {"r"}, {"q"}));
  CHECK(rs.stages == 2);
}

TEST_CASE("wfs examples by every method") {
  for (auto m : kMethods) {
    CAPTURE(to_string(m));
    auto f = ground_text(kFootnote);
    CHECK(wfs(f, empty(f), m).model == interp(f, {}, {"p", "q"}));
    auto mu = ground_text(kMutual);
    CHECK(wfs(mu, empty(mu), m).model == empty(mu));
    auto l = ground_text(kLoopNeg);
    CHECK(wfs(l, empty(l), m).model == interp(l, {"p"}, {"q"}));
  }
}

TEST_CASE("wfs method names") {
  CHECK(parse_wfs_method("u") == WfsMethod::U);
  CHECK(parse_wfs_method("wprime") == WfsMethod::WPrime);
  CHECK(parse_wfs_method("alternating") == WfsMethod::Alternating);
  CHECK_THROWS_AS(parse_wfs_method("magic"), InputError);
}

TEST_CASE("stratified semantics examples") {
  {
    auto p = parse_program(kStrat);
    auto g = ground(p);
    CHECK(stratified_semantics(p, g).model == interp(g, {"r"}, {"q"}));
  }
  {
    auto p = parse_program("e(a).\nt(X) :- e(X).\nu(X) :- not t(X).");
    auto g = ground(p);
    auto m = stratified_semantics(p, g).model;
    CHECK(m.is_true(oracle::id(g, "t(a)")));
    CHECK(m.is_false(oracle::id(g, "u(a)")));
  }
  {
    auto p = parse_program(kMutual);
    CHECK_THROWS_AS(stratified_semantics(p, ground(p)), SemanticError);
  }
}

TEST_CASE("completion model checks") {
  auto m = ground_text(kMutual);
  CHECK(is_model_of_completion(m, interp(m, {"p"}, {"q"}), CompletionMode::TwoValued).ok);
  CHECK(is_model_of_completion(m, empty(m), CompletionMode::ThreeValued).ok);
  auto f = ground_text("p.");
  auto c = is_model_of_completion(f, interp(f, {}, {"p"}), CompletionMode::TwoValued);
  CHECK_FALSE(c.ok);
  CHECK(c.counterexample == oracle::id(f, "p"));
  CHECK_FALSE(c.def.empty());
  CHECK_THROWS_AS(is_model_of_completion(m, empty(m), CompletionMode::TwoValued), InputError);
}

TEST_CASE("gl reduct examples") {
  auto m = ground_text(kMutual);
  auto r1 = gl_reduct(m, S(m, {"p"}));
  REQUIRE(r1.clauses().size() == 1);
  CHECK(to_string(r1.to_clause(r1.clauses()[0])) == "p.");
  auto r2 = gl_reduct(m, S(m, {}));
  CHECK(r2.clauses().size() == 2);
  CHECK(r2.is_definite());
  auto f = ground_text(kFootnote);
  CHECK(gl_reduct(f, S(f, {"p", "q"})).clauses() == f.clauses());
}

TEST_CASE("least model examples") {
  auto a = ground_text("p.");
  CHECK(least_model(a) == atoms(a, {"p"}));
  auto f = ground_text(kFootnote);
  CHECK(least_model(f).none());
  auto b = ground_text("p.\nq :- p.");
  CHECK(least_model(b) == atoms(b, {"p", "q"}));
  CHECK_THROWS_AS(least_model(ground_text(kMutual)), InputError);
}

TEST_CASE("stable model examples") {
  auto m = ground_text(kMutual);
  auto sm = stable_models(m);
  REQUIRE(sm.size() == 2);
  // bitmask order: p is atom 0, so {p} comes first
  CHECK(sm[0].true_atoms == atoms(m, {"p"}));
  CHECK(sm[1].true_atoms == atoms(m, {"q"}));
  CHECK(stable_models(ground_text("p :- not p.")).empty());
  auto f = ground_text(kFootnote);
  auto fs = stable_models(f);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].true_atoms.none());
}

TEST_CASE("stable enumeration budget") {
  auto g = ground_text("a :- not b.\nb :- not a.\nc :- not d.\nd :- not c.");
  CHECK_THROWS_AS(stable_models(g, std::nullopt, {}, 8), BudgetExceeded);
  CHECK(stable_models(g, std::nullopt, {}, 16).size() == 4);
}

TEST_CASE("stable models agree with the definition") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto g = ground(generate_random_program(oracle::small_options(seed, 3 + seed % 8, 4 + seed % 14)));
    auto got = stable_models(g);
    auto want = oracle::brute_stable(g);
    REQUIRE(got.size() == want.size());
    for (std::size_t k = 0; k < got.size(); ++k) CHECK(got[k].true_atoms == want[k]);
  }
}

TEST_CASE("extend by signing examples") {
  auto m = ground_text(kMutual);
  Signing s({{{"p", 0}, Sign::Positive}, {{"q", 0}, Sign::Negative}});
  CHECK(extend_by_signing(m, empty(m), s).true_atoms == atoms(m, {"p"}));
  CHECK(extend_by_signing(m, empty(m), invert(s)).true_atoms == atoms(m, {"q"}));
  auto decided = interp(m, {"q"}, {"p"});
  CHECK(extend_by_signing(m, decided, s).true_atoms == atoms(m, {"q"}));
  CHECK_THROWS_AS(extend_by_signing(m, empty(m), Signing({{{"p", 0}, Sign::Positive}})), SemanticError);
}

TEST_CASE("stability by unfoundedness examples") {
  auto m = ground_text(kMutual);
  CHECK(is_stable_by_unfoundedness(m, S(m, {"p"})));
  auto f = ground_text(kFootnote);
  CHECK_FALSE(is_stable_by_unfoundedness(f, S(f, {"p", "q"})));
  auto a = ground_text("p.");
  CHECK(is_stable_by_unfoundedness(a, S(a, {"p"})));
}

TEST_CASE("sceptical stable examples") {
  auto m = ground_text(kMutual);
  CHECK(sceptical_stable(m) == empty(m));
  auto s = ground_text(kStrat);
  CHECK(sceptical_stable(s) == interp(s, {"r"}, {"q"}));
  CHECK_THROWS_AS(sceptical_stable(ground_text("p :- not p.")), SemanticError);
}

TEST_CASE("wfs engines agree from consistent starts") {
  Rng rng(3);
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto g = ground(generate_random_program(oracle::small_options(seed, 3 + seed % 10, 4 + seed % 25)));
    auto base = wfs(g, empty(g), WfsMethod::U).model;
    for (const auto& start : {empty(g), oracle::random_subset(rng, base)}) {
      auto u = wfs(g, start, WfsMethod::U).model;
      CHECK(wfs(g, start, WfsMethod::WPrime).model == u);
      CHECK(wfs(g, start, WfsMethod::Alternating).model == u);
      CHECK(u == base);
    }
  }
}

TEST_CASE("frozen floor atoms keep their values") {
  // r is a floor atom fixed false; q depends on it
  auto g = ground_text("p :- not q.\nq :- r.\nr :- not s.\ns.");
  AtomSet frozen = atoms(g, {"r", "s"});
  auto start = interp(g, {}, {"r"});
  for (auto m : kMethods) {
    auto w = wfs(g, start, m, frozen).model;
    CHECK(w == interp(g, {"p"}, {"q", "r"}));
  }
  CHECK(fitting_semantics(g, start, frozen).model == interp(g, {"p"}, {"q", "r"}));
  // the floor value is taken as given even where the program disagrees
  auto odd = interp(g, {"r"}, {"s"});
  for (auto m : kMethods) CHECK(wfs(g, odd, m, frozen).model == interp(g, {"q", "r"}, {"p", "s"}));
}

TEST_CASE("stable models over a two-valued floor") {
  auto g = ground_text("f :- not e.\ne :- not f.\np :- f, not q.\nq :- not p.");
  AtomSet frozen = atoms(g, {"e", "f"});
  TwoValuedInterpretation floor{atoms(g, {"f"})};
  auto models = stable_models(g, floor, frozen);
  REQUIRE(models.size() == 2);
  CHECK(models[0].true_atoms == atoms(g, {"f", "p"}));
  CHECK(models[1].true_atoms == atoms(g, {"f", "q"}));
  CHECK_THROWS_AS(stable_models(g, std::nullopt, frozen), InputError);
}

TEST_CASE("wfs is a three-valued model of the completion") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto g = ground(generate_random_program(oracle::small_options(seed)));
    auto w = wfs(g, empty(g), WfsMethod::U).model;
    CHECK(is_model_of_completion(g, w, CompletionMode::ThreeValued).ok);
    auto f = fitting_semantics(g, empty(g)).model;
    CHECK(is_model_of_completion(g, f, CompletionMode::ThreeValued).ok);
  }
}

TEST_CASE("every stable model extends the wfs") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto g = ground(generate_random_program(oracle::small_options(seed)));
    auto w = wfs(g, empty(g), WfsMethod::U).model;
    for (const auto& s : stable_models(g)) CHECK(w.subset_of(s.to_interpretation()));
  }
}

TEST_CASE("reduct and unfoundedness stability agree on all candidates") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    auto g = ground(generate_random_program(oracle::small_options(seed, 3 + seed % 8)));
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.atom_count()); ++m) {
      TwoValuedInterpretation s{oracle::from_mask(g.atom_count(), m)};
      CHECK(is_stable(g, s) == is_stable_by_unfoundedness(g, s));
    }
  }
}

TEST_CASE("trace records each stage") {
  auto g = ground_text(kStrat);
  auto r = wfs(g, empty(g), WfsMethod::U, {}, true);
  CHECK(r.trace.size() == r.stages);
  CHECK_FALSE(r.timings.empty());
}
