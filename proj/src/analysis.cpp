#include "lpsign/analysis.h"

#include <algorithm>
#include <deque>
#include <sstream>

#include "lpsign/error.h"

namespace lpsign {

std::string to_string(Need n) {
  switch (n) {
    case Need::None:
      return "none";
    case Need::Pos:
      return "pos";
    case Need::Neg:
      return "neg";
    case Need::Both:
      break;
  }
  return "both";
}

QuerySpec parse_query(const SignedDependencyGraph& graph, const std::string& text) {
  QuerySpec q;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    Polarity pol = Polarity::Positive;
    if (item.front() == '+' || item.front() == '-') {
      pol = item.front() == '+' ? Polarity::Positive : Polarity::Negative;
      item.erase(0, 1);
    }
    auto idx = graph.index_of_name(item);
    if (!idx) throw InputError("unknown predicate in query: " + item);
    q.demands.emplace_back(graph.vertex(*idx), pol);
  }
  return q;
}

Need PartsRequirement::of(const PredicateSymbol& p) const {
  auto it = need.find(p);
  return it == need.end() ? Need::None : it->second;
}

PartsRequirement parts_requirements(const SignedDependencyGraph& graph, const QuerySpec& query) {
  PartsRequirement r;
  for (const auto& v : graph.vertices()) r.need.emplace(v, Need::None);

  auto flag = [](Polarity p) { return p == Polarity::Positive ? Need::Pos : Need::Neg; };
  std::deque<std::pair<std::size_t, Polarity>> work;
  for (const auto& [p, pol] : query.demands) {
    auto i = graph.require(p);
    Need& n = r.need[p];
    if (!includes(n, pol)) {
      n = n | flag(pol);
      work.emplace_back(i, pol);
    }
  }
  while (!work.empty()) {
    auto [v, pol] = work.front();
    work.pop_front();
    for (auto e : graph.out_edges(v)) {
      const auto& edge = graph.edges()[e];
      Polarity next = edge.sign == Sign::Positive ? pol
                      : pol == Polarity::Positive ? Polarity::Negative
                                                  : Polarity::Positive;
      Need& n = r.need[graph.vertex(edge.to)];
      if (includes(n, next)) continue;
      n = n | flag(next);
      r.via.emplace(std::make_pair(graph.vertex(edge.to), next), std::make_pair(graph.vertex(v), pol));
      work.emplace_back(edge.to, next);
    }
  }
  return r;
}

std::vector<std::pair<PredicateSymbol, Polarity>> derivation(const PartsRequirement& req, const PredicateSymbol& p,
                                                             Polarity polarity) {
  if (!includes(req.of(p), polarity)) return {};
  std::vector<std::pair<PredicateSymbol, Polarity>> chain{{p, polarity}};
  auto it = req.via.find(chain.back());
  while (it != req.via.end()) {
    chain.push_back(it->second);
    it = req.via.find(chain.back());
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

PredicateSet stratified_cone_predicates(const SignedDependencyGraph& graph, const DependencyClosure& closure) {
  PredicateSet out;
  for (const auto& p : graph.vertices()) {
    auto cone = downward_closure(graph, closure, {p});
    if (is_stratified(graph, closure, cone).stratified) out.insert(p);
  }
  return out;
}

std::optional<AtomId> ground_negative_unfoundedness_witness(const GroundProgram& g,
                                                            const SignedDependencyGraph& graph,
                                                            const DependencyClosure& closure, const Signing& signing,
                                                            const PredicateSet& q_set, const PredicateSymbol& p) {
  const std::size_t n = g.atom_count();
  std::vector<bool> in_q(n);
  for (AtomId a = 0; a < n; ++a) in_q[a] = q_set.contains(g.predicate_of(a));

  // Peel atoms with no remaining positive successor inside Q; the survivors
  // are exactly the atoms with an infinite positive chain through Q-atoms.
  std::vector<std::size_t> out_degree(n, 0);
  std::vector<std::vector<AtomId>> preds(n);
  for (const auto& c : g.clauses()) {
    if (!in_q[c.head]) continue;
    for (const auto& lit : c.body) {
      if (lit.positive && in_q[lit.atom]) {
        ++out_degree[c.head];
        preds[lit.atom].push_back(c.head);
      }
    }
  }
  std::vector<bool> survives(n, false);
  std::vector<AtomId> work;
  for (AtomId a = 0; a < n; ++a) {
    if (!in_q[a]) continue;
    survives[a] = true;
    if (out_degree[a] == 0) work.push_back(a);
  }
  while (!work.empty()) {
    AtomId a = work.back();
    work.pop_back();
    survives[a] = false;
    for (AtomId h : preds[a]) {
      if (--out_degree[h] == 0) work.push_back(h);
    }
  }

  auto pi = graph.require(p);
  for (AtomId a = 0; a < n; ++a) {
    if (!survives[a]) continue;
    const auto& q = g.predicate_of(a);
    auto qi = graph.index_of(q);
    if (!qi || !closure.geq(pi, *qi)) continue;
    if (signing.sign_of(q) == Sign::Negative) return a;
  }
  return std::nullopt;
}

Theorem2Report check_theorem2(const Program& program, const FloorSplit& split, const Signing& signing,
                              const PredicateSymbol& p, std::size_t atom_budget) {
  using Status = HypothesisCheck::Status;
  auto graph = build_graph(program);
  auto cl = closure(graph);
  auto q_set = split.q_set();
  Theorem2Report r;

  bool split_ok = check_floor_split(graph, cl, split);
  r.checks.push_back({"floor_split", split_ok ? Status::Pass : Status::Fail,
                      split_ok ? "P is downward-closed with floor F" : "P or F is not downward-closed, or F is not a subset of P"});

  Signing on_q;
  std::string missing;
  for (const auto& q : q_set) {
    if (auto s = signing.sign_of(q)) {
      on_q.assign(q, *s);
    } else {
      missing += (missing.empty() ? "" : ", ") + q.name;
    }
  }
  auto violation = signing_violation(graph, on_q);
  bool signing_ok = missing.empty() && !violation;
  std::string signing_detail = "signing is valid on Q";
  if (!missing.empty()) {
    signing_detail = "signing misses " + missing;
  } else if (violation) {
    signing_detail = "edge " + graph.vertex(violation->from).name + " -> " + graph.vertex(violation->to).name + " (" +
                     (violation->sign == Sign::Positive ? "+" : "-") + ") violates the signing";
  }
  r.checks.push_back({"signing_on_q", signing_ok ? Status::Pass : Status::Fail, signing_detail});

  bool p_ok = q_set.contains(p);
  r.checks.push_back({"p_in_q", p_ok ? Status::Pass : Status::Fail,
                      p_ok ? p.name + " is in Q" : p.name + " is not in Q = P \\ F"});

  if (signing_ok && p_ok) {
    bool avoids = avoids_negative_predicate_unfoundedness(graph, cl, on_q, q_set, p);
    r.checks.push_back({"avoids_negative_predicate_unfoundedness", avoids ? Status::Pass : Status::Fail,
                        avoids ? "no negatively signed predicate below " + p.name + " lies on a positive cycle in Q"
                               : "a negatively signed predicate below " + p.name + " lies on a positive cycle in Q"});

    std::size_t size = grounding_size(program);
    GroundProgram g;
    bool grounded = false;
    if (size <= atom_budget) {
      g = ground(program);
      grounded = g.atom_count() <= atom_budget;
    }
    if (!grounded) {
      r.checks.push_back({"ground_unfounded_sequences", Status::Skipped,
                          "ground program exceeds the atom budget of " + std::to_string(atom_budget)});
    } else {
      auto witness = ground_negative_unfoundedness_witness(g, graph, cl, on_q, q_set, p);
      r.checks.push_back(
          {"ground_unfounded_sequences", witness ? Status::Fail : Status::Pass,
           witness ? "negatively signed atom " + g.atom_name(*witness) + " starts an unfounded sequence"
                   : "no negatively signed atom below " + p.name + " starts an unfounded sequence"});
    }
  } else {
    r.checks.push_back({"avoids_negative_predicate_unfoundedness", Status::Skipped, "needs a valid signing and p in Q"});
    r.checks.push_back({"ground_unfounded_sequences", Status::Skipped, "needs a valid signing and p in Q"});
  }

  r.verdict = std::all_of(r.checks.begin(), r.checks.end(),
                          [](const HypothesisCheck& c) { return c.status != Status::Fail; }) &&
              signing_ok && p_ok;
  return r;
}

bool is_circular_unfounded(const GroundProgram& g, const Interpretation& i, const std::vector<AtomId>& set) {
  AtomSet in(g.atom_count());
  for (auto a : set) in.set(a);
  for (auto a : set) {
    bool witness = false;
    for (auto ci : g.clauses_for(a)) {
      const auto& c = g.clauses()[ci];
      bool has_false = false;
      bool inside = false;
      for (const auto& lit : c.body) {
        if (lit.positive ? i.is_false(lit.atom) : i.is_true(lit.atom)) has_false = true;
        if (lit.positive && in.test(lit.atom)) inside = true;
      }
      if (!has_false && !inside) return false;
      if (!has_false) witness = true;
    }
    if (!witness) return false;
  }
  return true;
}

namespace {

void split_recursively(const GroundProgram& g, const Interpretation& i, const std::vector<AtomId>& set,
                       std::vector<std::vector<AtomId>>& out) {
  const std::size_t k = set.size();
  // The first element always goes to the left block, so each split is seen once.
  for (std::uint64_t mask = 0; k > 1 && mask + 1 < (std::uint64_t{1} << (k - 1)); ++mask) {
    std::vector<AtomId> left{set[0]}, right;
    for (std::size_t b = 1; b < k; ++b) {
      ((mask >> (b - 1)) & 1U ? left : right).push_back(set[b]);
    }
    if (right.empty()) continue;
    if (is_circular_unfounded(g, i, left) && is_circular_unfounded(g, i, right)) {
      split_recursively(g, i, left, out);
      split_recursively(g, i, right, out);
      return;
    }
  }
  out.push_back(set);
}

}  // namespace

std::vector<std::vector<AtomId>> minimalistic_decomposition(const GroundProgram& g, const Interpretation& i,
                                                            const AtomSet& z, std::size_t guard) {
  std::vector<AtomId> set;
  for (auto a = z.find_first(); a != AtomSet::npos; a = z.find_next(a)) set.push_back(a);
  if (set.size() > guard) {
    throw BudgetExceeded("minimalistic decomposition guard: " + std::to_string(set.size()) + " atoms > " +
                         std::to_string(guard));
  }
  std::vector<std::vector<AtomId>> out;
  if (set.empty()) return out;
  if (!is_circular_unfounded(g, i, set)) throw InputError("set is not a circular unfounded set");
  split_recursively(g, i, set, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lpsign
