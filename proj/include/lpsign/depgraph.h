#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lpsign/ground.h"
#include "lpsign/syntax.h"

namespace lpsign {

using PredicateSet = std::set<PredicateSymbol>;

enum class Sign : int { Negative = -1, Positive = 1 };

inline Sign operator*(Sign a, Sign b) { return static_cast<int>(a) == static_cast<int>(b) ? Sign::Positive : Sign::Negative; }
inline Sign operator-(Sign a) { return a == Sign::Positive ? Sign::Negative : Sign::Positive; }
inline int to_int(Sign s) { return static_cast<int>(s); }
std::string to_string(Sign s);  // "+1" / "-1"

struct SignedEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Sign sign = Sign::Positive;

  auto operator<=>(const SignedEdge&) const = default;
};

// Vertices are the program's predicates in lexicographic order; edges are
// deduplicated and sorted. (p,q,+) and (p,q,-) may both be present.
class SignedDependencyGraph {
 public:
  SignedDependencyGraph() = default;
  SignedDependencyGraph(std::vector<PredicateSymbol> vertices, std::vector<SignedEdge> edges);

  std::size_t size() const { return vertices_.size(); }
  const std::vector<PredicateSymbol>& vertices() const { return vertices_; }
  const PredicateSymbol& vertex(std::size_t i) const { return vertices_[i]; }
  const std::vector<SignedEdge>& edges() const { return edges_; }
  std::optional<std::size_t> index_of(const PredicateSymbol& p) const;
  std::optional<std::size_t> index_of_name(const std::string& name) const;
  // Throws InputError for an unknown predicate.
  std::size_t require(const PredicateSymbol& p) const;

  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_[v]; }
  const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_[v]; }
  bool has_edge(std::size_t from, std::size_t to, Sign sign) const;

  std::vector<std::size_t> indices(const PredicateSet& set) const;
  PredicateSet symbols(const std::vector<bool>& mask) const;

 private:
  std::vector<PredicateSymbol> vertices_;
  std::vector<SignedEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::map<PredicateSymbol, std::size_t> index_;
};

SignedDependencyGraph build_graph(const Program& program);

// Square boolean relation over graph vertices.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : n_(n), bits_(n * n, false) {}

  std::size_t size() const { return n_; }
  bool operator()(std::size_t a, std::size_t b) const { return bits_[a * n_ + b]; }
  bool set(std::size_t a, std::size_t b) {
    auto ref = bits_[a * n_ + b];
    if (ref) return false;
    ref = true;
    return true;
  }
  bool operator==(const Relation&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<bool> bits_;
};

struct DependencyClosure {
  Relation geq;       // p >= q: transitive closure of direct dependency
  Relation geq_pos;   // p >=+1 q: even number of negations (reflexive)
  Relation geq_neg;   // p >=-1 q: odd number of negations
  Relation geq_zero;  // p >=0 q: transitive closure of positive edges
  Relation mutual;    // p ~ q: p >= q and q >= p
};

DependencyClosure closure(const SignedDependencyGraph& graph);

struct StratificationResult {
  bool stratified = false;
  // Stratum per vertex when stratified (restricted vertices only).
  std::map<PredicateSymbol, std::size_t> strata;
  // When not stratified: a pair p ~ q with p >=-1 q.
  std::optional<std::pair<PredicateSymbol, PredicateSymbol>> witness;
};

// `over` restricts the check to a predicate subset (all predicates by default).
StratificationResult is_stratified(const SignedDependencyGraph& graph, const DependencyClosure& closure,
                                   const std::optional<PredicateSet>& over = std::nullopt);

struct StrictnessResult {
  bool strict = true;
  std::optional<std::pair<PredicateSymbol, PredicateSymbol>> witness;
};

StrictnessResult is_strict(const SignedDependencyGraph& graph, const DependencyClosure& closure,
                           const PredicateSet& over);

class Signing {
 public:
  Signing() = default;
  explicit Signing(std::map<PredicateSymbol, Sign> signs) : signs_(std::move(signs)) {}

  const std::map<PredicateSymbol, Sign>& signs() const { return signs_; }
  PredicateSet domain() const;
  bool covers(const PredicateSymbol& p) const { return signs_.contains(p); }
  std::optional<Sign> sign_of(const PredicateSymbol& p) const;
  Sign at(const PredicateSymbol& p) const { return signs_.at(p); }
  void assign(const PredicateSymbol& p, Sign s) { signs_[p] = s; }
  bool empty() const { return signs_.empty(); }

  bool operator==(const Signing&) const = default;

 private:
  std::map<PredicateSymbol, Sign> signs_;
};

Signing invert(const Signing& signing);

// Edge-wise check of sign(p) = sign(q) * i for every edge inside the domain.
// Returns the first violating edge, if any.
std::optional<SignedEdge> signing_violation(const SignedDependencyGraph& graph, const Signing& signing);
inline bool is_valid_signing(const SignedDependencyGraph& graph, const Signing& signing) {
  return !signing_violation(graph, signing).has_value();
}

struct SigningFailure {
  // Edges (as stored in the graph) forming a path or cycle whose sign product
  // contradicts the assignment.
  std::vector<SignedEdge> witness;
  std::string reason;
};

struct SigningResult {
  std::optional<Signing> signing;
  std::optional<SigningFailure> failure;

  bool ok() const { return signing.has_value(); }
};

// Sign propagation over the undirected graph restricted to `q_set`, one DFS
// per connected component. Unpinned components start at their
// lexicographically first vertex with +1.
SigningResult find_signing(const SignedDependencyGraph& graph, const PredicateSet& q_set,
                           const std::map<PredicateSymbol, Sign>& pins = {});

PredicateSet downward_closure(const SignedDependencyGraph& graph, const DependencyClosure& closure,
                              const PredicateSet& seed);
bool is_downward_closed(const SignedDependencyGraph& graph, const DependencyClosure& closure, const PredicateSet& set);

struct FloorSplit {
  PredicateSet p_set;
  PredicateSet f_set;
  PredicateSet q_set() const;
};

bool check_floor_split(const SignedDependencyGraph& graph, const DependencyClosure& closure, const FloorSplit& split);

struct TightnessResult {
  bool tight = true;
  std::vector<AtomId> cycle;  // positive cycle of ground atoms when not tight
};

// Acyclicity of the positive atom dependency graph, optionally restricted to
// atoms in `over`.
TightnessResult is_tight(const GroundProgram& program, const std::optional<std::vector<bool>>& over = std::nullopt);

// Vertices of `q_set` that avoid negative predicate unfoundedness wrt the
// signing: none of their dependencies (or themselves, when self-dependent)
// sits on a positive cycle inside Q with sign -1. Linear in the graph.
std::vector<bool> negative_predicate_unfoundedness_free(const SignedDependencyGraph& graph, const Signing& signing,
                                                        const PredicateSet& q_set);

bool avoids_negative_predicate_unfoundedness(const SignedDependencyGraph& graph, const DependencyClosure& closure,
                                             const Signing& signing, const PredicateSet& q_set,
                                             const PredicateSymbol& p);

struct SccResult {
  std::vector<std::size_t> component;         // vertex -> component id
  std::vector<std::vector<std::size_t>> members;  // in reverse topological order (sinks first)
};

// Tarjan over vertices with the mask set; only positive edges when `positive_only`.
SccResult strongly_connected_components(const SignedDependencyGraph& graph, const std::vector<bool>& vertex_mask,
                                        bool positive_only);

std::string to_dot(const SignedDependencyGraph& graph);
std::string scc_condensation_dot(const SignedDependencyGraph& graph);

}  // namespace lpsign
