#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpsign/depgraph.h"
#include "lpsign/interp.h"

namespace lpsign {

// Which parts of each predicate a query may need.
enum class Need { None = 0, Pos = 1, Neg = 2, Both = 3 };

std::string to_string(Need n);
inline Need operator|(Need a, Need b) { return static_cast<Need>(static_cast<int>(a) | static_cast<int>(b)); }
inline bool includes(Need n, Polarity p) {
  return (static_cast<int>(n) & (p == Polarity::Positive ? 1 : 2)) != 0;
}

struct QuerySpec {
  std::vector<std::pair<PredicateSymbol, Polarity>> demands;
};

// Parses "+p,-q,r" (a bare name means +). Names resolve against the graph.
QuerySpec parse_query(const SignedDependencyGraph& graph, const std::string& text);

struct PartsRequirement {
  std::map<PredicateSymbol, Need> need;
  // For every reached (predicate, polarity): the demand it was propagated
  // from; query seeds have no entry.
  std::map<std::pair<PredicateSymbol, Polarity>, std::pair<PredicateSymbol, Polarity>> via;

  Need of(const PredicateSymbol& p) const;
};

// Least fixpoint of the four propagation rules over the signed edges:
// a needed part of p requires the same part of q through a positive edge and
// the opposite part through a negative edge.
PartsRequirement parts_requirements(const SignedDependencyGraph& graph, const QuerySpec& query);

// Chain of (predicate, polarity) from a query seed to the given part.
std::vector<std::pair<PredicateSymbol, Polarity>> derivation(const PartsRequirement& req, const PredicateSymbol& p,
                                                             Polarity polarity);

// Predicates whose downward closure (including themselves) is stratified.
// Reported next to the parts table; not folded into it.
PredicateSet stratified_cone_predicates(const SignedDependencyGraph& graph, const DependencyClosure& closure);

struct HypothesisCheck {
  std::string name;
  enum class Status { Pass, Fail, Skipped } status = Status::Pass;
  std::string detail;

  bool passed() const { return status == Status::Pass; }
};

struct Theorem2Report {
  std::vector<HypothesisCheck> checks;
  bool verdict = false;  // every non-skipped check passed
};

inline constexpr std::size_t kDefaultGroundCheckBudget = 10'000;

// Applicability of the Fitting/WFS agreement result for predicate p:
// floor split, signing on Q = P \ F, p in Q, the predicate-level sufficient
// condition, and (when the ground program has at most `atom_budget` atoms)
// the exact ground-level unfounded-sequence condition.
Theorem2Report check_theorem2(const Program& program, const FloorSplit& split, const Signing& signing,
                              const PredicateSymbol& p, std::size_t atom_budget = kDefaultGroundCheckBudget);

// Ground-level condition: no atom of a negatively signed q <= p starts an
// infinite chain of positive dependencies through Q-atoms. Returns the
// offending atom, if any.
std::optional<AtomId> ground_negative_unfoundedness_witness(const GroundProgram& g,
                                                            const SignedDependencyGraph& graph,
                                                            const DependencyClosure& closure, const Signing& signing,
                                                            const PredicateSet& q_set, const PredicateSymbol& p);

bool is_circular_unfounded(const GroundProgram& g, const Interpretation& i, const std::vector<AtomId>& set);

inline constexpr std::size_t kMinimalisticGuard = 16;

// Splits Z into minimalistic circular unfounded sets by exhaustive search over
// two-way splits, recursively. Exponential: a test oracle.
std::vector<std::vector<AtomId>> minimalistic_decomposition(const GroundProgram& g, const Interpretation& i,
                                                            const AtomSet& z, std::size_t guard = kMinimalisticGuard);

}  // namespace lpsign
