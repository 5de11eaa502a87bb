#include "lpsign/generate.h"

#include <string>
#include <vector>

#include "lpsign/depgraph.h"
#include "lpsign/error.h"

namespace lpsign {

namespace {

Atom prop(std::size_t i) { return Atom{"p" + std::to_string(i), {}}; }

Clause draw_clause(Rng& rng, const GenOptions& o, const std::vector<std::size_t>& level) {
  std::size_t head = rng.below(o.n_preds);
  Clause c{prop(head), {}};
  std::size_t body = rng.below(o.max_body + 1);
  for (std::size_t b = 0; b < body; ++b) {
    std::size_t atom = rng.below(o.n_preds);
    bool positive = !rng.chance(o.neg_prob);
    if (o.shape == GenShape::Tight && positive && atom <= head) {
      // Only atoms after the head may occur positively; drop the literal otherwise.
      if (head + 1 == o.n_preds) continue;
      atom = head + 1 + rng.below(o.n_preds - head - 1);
    }
    if (o.shape == GenShape::Stratified) {
      if (positive ? level[atom] > level[head] : level[atom] >= level[head]) continue;
    }
    c.body.push_back({positive, prop(atom)});
  }
  return c;
}

bool fully_signable(const Program& p) {
  auto graph = build_graph(p);
  PredicateSet all(graph.vertices().begin(), graph.vertices().end());
  return find_signing(graph, all).ok();
}

}  // namespace

Program generate_random_program(const GenOptions& o) {
  if (o.n_preds == 0) throw InputError("generator needs at least one predicate");
  Rng rng(o.seed);
  std::vector<std::size_t> level(o.n_preds, 0);
  if (o.shape == GenShape::Stratified) {
    for (auto& l : level) l = rng.below(o.n_preds);
  }
  std::vector<Clause> clauses;
  clauses.reserve(o.n_rules);
  std::size_t attempts = 0;
  while (clauses.size() < o.n_rules) {
    clauses.push_back(draw_clause(rng, o, level));
    if (!o.signed_only || fully_signable(make_program(clauses))) continue;
    clauses.pop_back();
    if (++attempts >= o.max_attempts) {
      throw BudgetExceeded("no signable clause after " + std::to_string(o.max_attempts) + " attempts");
    }
  }
  return make_program(std::move(clauses));
}

Program generate_random_program(std::uint64_t seed, std::size_t n_preds, std::size_t n_rules, std::size_t max_body,
                                double neg_prob, bool signed_only) {
  GenOptions o;
  o.seed = seed;
  o.n_preds = n_preds;
  o.n_rules = n_rules;
  o.max_body = max_body;
  o.neg_prob = neg_prob;
  o.signed_only = signed_only;
  return generate_random_program(o);
}

Program generate_planted_signed_program(std::uint64_t seed, std::size_t n_preds, std::size_t n_rules,
                                        std::size_t max_body) {
  if (n_preds == 0) throw InputError("generator needs at least one predicate");
  Rng rng(seed);
  std::vector<bool> plus(n_preds);
  for (std::size_t i = 0; i < n_preds; ++i) plus[i] = rng.chance(0.5);
  std::vector<Clause> clauses;
  clauses.reserve(n_rules);
  for (std::size_t r = 0; r < n_rules; ++r) {
    std::size_t head = rng.below(n_preds);
    Clause c{prop(head), {}};
    std::size_t body = rng.below(max_body + 1);
    for (std::size_t b = 0; b < body; ++b) {
      std::size_t atom = rng.below(n_preds);
      c.body.push_back({plus[atom] == plus[head], prop(atom)});
    }
    clauses.push_back(std::move(c));
  }
  return make_program(std::move(clauses));
}

}  // namespace lpsign
