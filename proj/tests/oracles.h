#pragma once

// Brute-force reference implementations, deliberately naive and independent
// of the library algorithms they check.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "lpsign/depgraph.h"
#include "lpsign/generate.h"
#include "lpsign/ground.h"
#include "lpsign/interp.h"
#include "lpsign/syntax.h"

namespace oracle {

using namespace lpsign;

inline GroundProgram ground_text(const std::string& text) { return ground(parse_program(text)); }

inline AtomId id(const GroundProgram& g, const std::string& name) {
  auto a = g.find(parse_atom(name));
  if (!a) throw std::runtime_error("no atom " + name);
  return *a;
}

inline AtomSet atoms(const GroundProgram& g, std::initializer_list<const char*> names) {
  AtomSet s(g.atom_count());
  for (const char* n : names) s.set(id(g, n));
  return s;
}

inline Interpretation interp(const GroundProgram& g, std::initializer_list<const char*> t,
                             std::initializer_list<const char*> f) {
  return {atoms(g, t), atoms(g, f)};
}

inline AtomSet from_mask(std::size_t n, std::uint64_t mask) {
  AtomSet s(n);
  for (std::size_t i = 0; i < n; ++i) s.set(i, (mask >> i) & 1U);
  return s;
}

inline bool literal_false(const GroundLiteral& lit, const Interpretation& i) {
  return lit.positive ? i.is_false(lit.atom) : i.is_true(lit.atom);
}

inline bool is_unfounded(const GroundProgram& g, const Interpretation& i, const AtomSet& a) {
  for (const auto& c : g.clauses()) {
    if (!a.test(c.head)) continue;
    bool ok = false;
    for (const auto& lit : c.body) {
      if (literal_false(lit, i) || (lit.positive && a.test(lit.atom))) ok = true;
    }
    if (!ok) return false;
  }
  return true;
}

inline bool is_circular(const GroundProgram& g, const Interpretation& i, const AtomSet& a) {
  if (!is_unfounded(g, i, a)) return false;
  for (auto x = a.find_first(); x != AtomSet::npos; x = a.find_next(x)) {
    bool witness = false;
    for (const auto& c : g.clauses()) {
      if (c.head != x) continue;
      bool has_false = false;
      for (const auto& lit : c.body) has_false = has_false || literal_false(lit, i);
      witness = witness || !has_false;
    }
    if (!witness) return false;
  }
  return true;
}

// Union of every unfounded (optionally circular) subset of `universe`.
inline AtomSet brute_union(const GroundProgram& g, const Interpretation& i, bool circular, const AtomSet* universe = nullptr) {
  const std::size_t n = g.atom_count();
  AtomSet out(n);
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
    AtomSet a = from_mask(n, m);
    if (universe && !a.is_subset_of(*universe)) continue;
    if (circular ? is_circular(g, i, a) : is_unfounded(g, i, a)) out |= a;
  }
  return out;
}

// Some sign assignment on Q satisfies every edge inside Q.
inline bool brute_signing_exists(const SignedDependencyGraph& graph, const PredicateSet& q) {
  std::vector<std::size_t> idx = graph.indices(q);
  std::vector<int> pos(graph.size(), -1);
  for (std::size_t k = 0; k < idx.size(); ++k) pos[idx[k]] = static_cast<int>(k);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << idx.size()); ++m) {
    bool ok = true;
    for (const auto& e : graph.edges()) {
      if (pos[e.from] < 0 || pos[e.to] < 0) continue;
      int sf = (m >> pos[e.from]) & 1U ? -1 : 1;
      int st = (m >> pos[e.to]) & 1U ? -1 : 1;
      if (sf != st * to_int(e.sign)) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

// Reachability over (vertex, parity) states.
struct ParityReach {
  std::vector<std::vector<bool>> even, odd;  // [from][to], at least one edge
};

inline ParityReach parity_reach(const SignedDependencyGraph& graph) {
  const std::size_t n = graph.size();
  ParityReach r{std::vector<std::vector<bool>>(n, std::vector<bool>(n)),
                std::vector<std::vector<bool>>(n, std::vector<bool>(n))};
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::pair<std::size_t, int>> stack;
    std::vector<std::vector<bool>> seen(n, std::vector<bool>(2));
    for (const auto& e : graph.edges()) {
      if (e.from != s) continue;
      int par = e.sign == Sign::Negative;
      if (!seen[e.to][par]) {
        seen[e.to][par] = true;
        stack.push_back({e.to, par});
      }
    }
    while (!stack.empty()) {
      auto [v, par] = stack.back();
      stack.pop_back();
      for (const auto& e : graph.edges()) {
        if (e.from != v) continue;
        int np = par ^ (e.sign == Sign::Negative);
        if (!seen[e.to][np]) {
          seen[e.to][np] = true;
          stack.push_back({e.to, np});
        }
      }
    }
    for (std::size_t t = 0; t < n; ++t) {
      r.even[s][t] = seen[t][0];
      r.odd[s][t] = seen[t][1];
    }
  }
  return r;
}

// Least model of the reduct, by naive iteration over the original clauses.
inline AtomSet naive_reduct_lfp(const GroundProgram& g, const AtomSet& s) {
  AtomSet m(g.atom_count());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& c : g.clauses()) {
      bool fire = true;
      for (const auto& lit : c.body) {
        if (lit.positive ? !m.test(lit.atom) : s.test(lit.atom)) fire = false;
      }
      if (fire && !m.test(c.head)) {
        m.set(c.head);
        changed = true;
      }
    }
  }
  return m;
}

inline std::vector<AtomSet> brute_stable(const GroundProgram& g) {
  std::vector<AtomSet> out;
  const std::size_t n = g.atom_count();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    AtomSet s = from_mask(n, m);
    if (naive_reduct_lfp(g, s) == s) out.push_back(s);
  }
  return out;
}

// Random consistent interpretation: each atom true, false or unknown.
inline Interpretation random_interp(Rng& rng, std::size_t n) {
  Interpretation i(n);
  for (std::size_t a = 0; a < n; ++a) {
    auto r = rng.below(3);
    if (r == 0) i.true_atoms.set(a);
    if (r == 1) i.false_atoms.set(a);
  }
  return i;
}

// Random literal set, possibly inconsistent.
inline Interpretation random_literals(Rng& rng, std::size_t n) {
  Interpretation i(n);
  for (std::size_t a = 0; a < n; ++a) {
    i.true_atoms.set(a, rng.chance(0.3));
    i.false_atoms.set(a, rng.chance(0.3));
  }
  return i;
}

inline Interpretation random_subset(Rng& rng, const Interpretation& i) {
  Interpretation out(i.size());
  for (std::size_t a = 0; a < i.size(); ++a) {
    if (i.is_true(a) && rng.chance(0.5)) out.true_atoms.set(a);
    if (i.is_false(a) && rng.chance(0.5)) out.false_atoms.set(a);
  }
  return out;
}

inline GenOptions small_options(std::uint64_t seed, std::size_t preds = 8, std::size_t rules = 14) {
  GenOptions o;
  o.seed = seed;
  o.n_preds = preds;
  o.n_rules = rules;
  o.max_body = 3;
  o.neg_prob = 0.4;
  return o;
}

}  // namespace oracle
