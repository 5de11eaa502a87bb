#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lpsign/error.h"
#include "lpsign/generate.h"
#include "lpsign/ground.h"
#include "lpsign/syntax.h"
#include "oracles.h"

using namespace lpsign;

namespace {

std::set<PredicateSymbol> preds(std::initializer_list<PredicateSymbol> l) { return l; }

std::vector<std::string> clause_strings(const GroundProgram& g) {
  std::vector<std::string> out;
  for (const auto& c : g.clauses()) out.push_back(to_string(g.to_clause(c)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("parse: two mutually negative rules") {
  auto p = parse_program("p :- not q.\nq :- not p.");
  CHECK(p.clauses.size() == 2);
  CHECK(p.predicates == preds({{"p", 0}, {"q", 0}}));
  CHECK(to_string(p.clauses[0]) == "p :- not q.");
}

TEST_CASE("parse: positive self-support program") {
  auto p = parse_program("q :- p.\np :- p.");
  CHECK(p.clauses.size() == 2);
  CHECK(p.predicates == preds({{"p", 0}, {"q", 0}}));
}

TEST_CASE("parse: variables and arities") {
  auto p = parse_program("e(X,Y) :- f(X), not g(Y).");
  REQUIRE(p.clauses.size() == 1);
  CHECK(p.predicates == preds({{"e", 2}, {"f", 1}, {"g", 1}}));
  CHECK(p.clauses[0].variables() == std::vector<std::string>{"X", "Y"});
  CHECK(p.synthetic_constant);
  CHECK(p.constants == std::set<std::string>{"c0"});
}

TEST_CASE("parse: comments, whitespace and facts") {
  auto p = parse_program("% header\n  p(a).   % trailing\n\nq :-\n  p(a),\n  not r.\n");
  CHECK(p.clauses.size() == 2);
  CHECK(p.clauses[0].is_fact());
  CHECK(p.constants == std::set<std::string>{"a"});
  CHECK_FALSE(p.synthetic_constant);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_program("p.\nq :- .\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() >= 1);
  }
  CHECK_THROWS_AS(parse_program("p"), ParseError);
  CHECK_THROWS_AS(parse_program("p :- q"), ParseError);
  CHECK_THROWS_AS(parse_program("P."), ParseError);
}

TEST_CASE("compound terms are rejected") {
  try {
    parse_program("p(f(a)).");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("function symbols unsupported") != std::string::npos);
  }
}

TEST_CASE("arity conflict is an input error") {
  CHECK_THROWS_AS(parse_program("p(a).\np(a,b)."), InputError);
  auto lenient = parse_program_lenient("p(a).\np(a,b).");
  auto d = validate(lenient);
  REQUIRE(has_errors(d));
  CHECK(std::any_of(d.begin(), d.end(), [](const Diagnostic& x) { return x.message == "p used at arities 1 and 2"; }));
}

TEST_CASE("validate: undefined predicate warning") {
  auto d = validate(parse_program("p :- not q."));
  REQUIRE(d.size() == 1);
  CHECK_FALSE(d[0].is_error());
  CHECK(d[0].message == "q undefined");
}

TEST_CASE("validate: closed propositional program is clean") {
  CHECK(validate(parse_program("p :- not q.\nq :- not p.")).empty());
}

TEST_CASE("validate: unsafe variables are warned about") {
  auto d = validate(parse_program("h(X) :- b(a).\nb(a).\nn(Y) :- b(a), not b(Y).\nn(a)."));
  REQUIRE(d.size() == 2);
  CHECK(d[0].message.find("variable X occurs only in the head") != std::string::npos);
  CHECK(d[1].message.find("variable Y occurs only in the head and under negation") != std::string::npos);
}

TEST_CASE("ground: propositional programs are unchanged") {
  auto p = parse_program("p :- not q.\nq :- not p.");
  auto g = ground(p);
  CHECK(g.clauses().size() == 2);
  CHECK(clause_strings(g) == std::vector<std::string>{"p :- not q.", "q :- not p."});
}

TEST_CASE("ground: substitution over every constant") {
  auto g = ground(parse_program("e(X) :- f(X).\nf(a).\nf(b)."));
  CHECK(clause_strings(g) == std::vector<std::string>{"e(a) :- f(a).", "e(b) :- f(b).", "f(a).", "f(b)."});
  auto single = ground(parse_program("e(X) :- f(X).\nf(a)."));
  CHECK(clause_strings(single) == std::vector<std::string>{"e(a) :- f(a).", "f(a)."});
}

TEST_CASE("ground: atom ids follow lexicographic order") {
  auto g = ground(parse_program("z :- a.\nm(b) :- m(a).\na."));
  std::vector<std::string> names;
  for (AtomId a = 0; a < g.atom_count(); ++a) names.push_back(g.atom_name(a));
  CHECK(names == std::vector<std::string>{"a", "m(a)", "m(b)", "z"});
}

TEST_CASE("ground: budget") {
  auto p = parse_program("r(X,Y,Z) :- s(X), s(Y), s(Z).\ns(a). s(b). s(c). s(d).");
  CHECK(grounding_size(p) == 64 + 4);
  CHECK_THROWS_AS(ground(p, 10), BudgetExceeded);
}

TEST_CASE("properties over generated programs") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto p = generate_random_program(oracle::small_options(seed));
    // print then parse gives the same clauses back
    auto again = parse_program(to_string(p));
    CHECK(again.clauses == p.clauses);
    auto g = ground(p);
    CHECK(g.clauses().size() == p.clauses.size());
    // every atom occurs in some clause, and every clause atom is in the table
    std::vector<bool> used(g.atom_count());
    for (const auto& c : g.clauses()) {
      used[c.head] = true;
      for (const auto& l : c.body) used[l.atom] = true;
    }
    CHECK(std::all_of(used.begin(), used.end(), [](bool b) { return b; }));
  }
}

TEST_CASE("grounding size formula on first-order programs") {
  auto p = parse_program("t(X) :- e(X), not u(X, Y).\nu(a, b).\ne(c).\nq.");
  // 3 constants: clause 1 has 2 variables (9), the rest are ground (3)
  CHECK(grounding_size(p) == 12);
  CHECK(ground(p).clauses().size() == 12);
}

TEST_CASE("generator is deterministic") {
  auto a = generate_random_program(7, 5, 9, 3, 0.4, false);
  auto b = generate_random_program(7, 5, 9, 3, 0.4, false);
  CHECK(a.clauses == b.clauses);
  auto c = generate_random_program(8, 5, 9, 3, 0.4, false);
  CHECK(a.clauses != c.clauses);
}

TEST_CASE("generator: seed 1 golden program") {
  std::ifstream in(std::string(LPSIGN_FIXTURES) + "/gen_seed1.dl");
  REQUIRE(in);
  std::stringstream golden;
  golden << in.rdbuf();
  CHECK(to_string(generate_random_program(1, 3, 5, 3, 0.4, false)) == golden.str());
}

TEST_CASE("generator: signed_only output always has a signing") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto p = generate_random_program(seed, 6, 10, 3, 0.4, true);
    auto graph = build_graph(p);
    PredicateSet all(graph.vertices().begin(), graph.vertices().end());
    CHECK(find_signing(graph, all).ok());
  }
}
