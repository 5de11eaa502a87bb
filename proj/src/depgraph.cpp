#include "lpsign/depgraph.h"

#include <algorithm>
#include <deque>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "lpsign/error.h"

namespace lpsign {

std::string to_string(Sign s) { return s == Sign::Positive ? "+1" : "-1"; }

SignedDependencyGraph::SignedDependencyGraph(std::vector<PredicateSymbol> vertices, std::vector<SignedEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  // Two stable counting-sort passes (by (to, sign), then by from) keep
  // construction linear while giving the same order as std::sort.
  const std::size_t n = vertices_.size();
  auto counting_pass = [&](std::size_t buckets, auto key) {
    std::vector<std::size_t> start(buckets + 1, 0);
    for (const auto& e : edges_) ++start[key(e) + 1];
    for (std::size_t b = 0; b < buckets; ++b) start[b + 1] += start[b];
    std::vector<SignedEdge> sorted(edges_.size());
    for (const auto& e : edges_) sorted[start[key(e)]++] = e;
    edges_ = std::move(sorted);
  };
  counting_pass(2 * n, [](const SignedEdge& e) { return 2 * e.to + (e.sign == Sign::Positive ? 1 : 0); });
  counting_pass(n, [](const SignedEdge& e) { return e.from; });
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  out_.assign(n, {});
  in_.assign(n, {});
  // Vertices usually arrive sorted, which makes the hinted insert constant time.
  for (std::size_t i = 0; i < n; ++i) index_.emplace_hint(index_.end(), vertices_[i], i);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    out_[edges_[e].from].push_back(e);
    in_[edges_[e].to].push_back(e);
  }
}

std::optional<std::size_t> SignedDependencyGraph::index_of(const PredicateSymbol& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> SignedDependencyGraph::index_of_name(const std::string& name) const {
  auto it = index_.lower_bound(PredicateSymbol{name, 0});
  if (it == index_.end() || it->first.name != name) return std::nullopt;
  return it->second;
}

std::size_t SignedDependencyGraph::require(const PredicateSymbol& p) const {
  auto i = index_of(p);
  if (!i) throw InputError("unknown predicate: " + p.name + "/" + std::to_string(p.arity));
  return *i;
}

bool SignedDependencyGraph::has_edge(std::size_t from, std::size_t to, Sign sign) const {
  return std::binary_search(edges_.begin(), edges_.end(), SignedEdge{from, to, sign});
}

std::vector<std::size_t> SignedDependencyGraph::indices(const PredicateSet& set) const {
  std::vector<std::size_t> out;
  out.reserve(set.size());
  for (const auto& p : set) out.push_back(require(p));
  return out;
}

PredicateSet SignedDependencyGraph::symbols(const std::vector<bool>& mask) const {
  PredicateSet out;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (mask[i]) out.insert(vertices_[i]);
  }
  return out;
}

SignedDependencyGraph build_graph(const Program& program) {
  std::vector<PredicateSymbol> vertices(program.predicates.begin(), program.predicates.end());
  auto hash = [](const PredicateSymbol& p) { return std::hash<std::string>{}(p.name) ^ (p.arity * 0x9e3779b97f4a7c15ULL); };
  std::unordered_map<PredicateSymbol, std::size_t, decltype(hash)> index(vertices.size(), hash);
  for (std::size_t i = 0; i < vertices.size(); ++i) index.emplace(vertices[i], i);

  std::vector<SignedEdge> edges;
  for (const auto& c : program.clauses) {
    std::size_t head = index.at(c.head.symbol());
    for (const auto& lit : c.body) {
      edges.push_back({head, index.at(lit.atom.symbol()), lit.positive ? Sign::Positive : Sign::Negative});
    }
  }
  return {std::move(vertices), std::move(edges)};
}

DependencyClosure closure(const SignedDependencyGraph& graph) {
  const std::size_t n = graph.size();
  DependencyClosure c{Relation(n), Relation(n), Relation(n), Relation(n), Relation(n)};

  // Least relations closed under  p >=+1 p  and  p ]=_i q, q >=_j r  =>  p >=_{i*j} r.
  // Worklist of newly derived facts (q, r, j); each is pushed back through the
  // edges entering q.
  std::deque<std::tuple<std::size_t, std::size_t, Sign>> work;
  auto derive = [&](std::size_t p, std::size_t r, Sign s) {
    Relation& rel = s == Sign::Positive ? c.geq_pos : c.geq_neg;
    if (rel.set(p, r)) work.emplace_back(p, r, s);
  };
  for (std::size_t p = 0; p < n; ++p) derive(p, p, Sign::Positive);
  while (!work.empty()) {
    auto [q, r, j] = work.front();
    work.pop_front();
    for (auto e : graph.in_edges(q)) {
      const auto& edge = graph.edges()[e];
      derive(edge.from, r, edge.sign * j);
    }
  }

  // p >= r iff some edge p -> q with q >=+1 r or q >=-1 r (the reflexive base
  // counts only after one edge).
  for (const auto& edge : graph.edges()) {
    for (std::size_t r = 0; r < n; ++r) {
      if (c.geq_pos(edge.to, r) || c.geq_neg(edge.to, r)) c.geq.set(edge.from, r);
    }
  }

  std::deque<std::pair<std::size_t, std::size_t>> pos_work;
  for (const auto& edge : graph.edges()) {
    if (edge.sign == Sign::Positive && c.geq_zero.set(edge.from, edge.to)) pos_work.emplace_back(edge.from, edge.to);
  }
  while (!pos_work.empty()) {
    auto [q, r] = pos_work.front();
    pos_work.pop_front();
    for (auto e : graph.in_edges(q)) {
      const auto& edge = graph.edges()[e];
      if (edge.sign == Sign::Positive && c.geq_zero.set(edge.from, r)) pos_work.emplace_back(edge.from, r);
    }
  }

  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (c.geq(p, q) && c.geq(q, p)) c.mutual.set(p, q);
    }
  }
  return c;
}

namespace {

std::vector<bool> mask_of(const SignedDependencyGraph& graph, const PredicateSet& set) {
  std::vector<bool> mask(graph.size(), false);
  for (auto i : graph.indices(set)) mask[i] = true;
  return mask;
}

}  // namespace

SccResult strongly_connected_components(const SignedDependencyGraph& graph, const std::vector<bool>& vertex_mask,
                                        bool positive_only) {
  const std::size_t n = graph.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  SccResult result;
  result.component.assign(n, kUnvisited);

  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;

  auto usable = [&](const SignedEdge& e) {
    return vertex_mask[e.to] && (!positive_only || e.sign == Sign::Positive);
  };

  struct Frame {
    std::size_t v;
    std::size_t next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (!vertex_mask[root] || index[root] != kUnvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& outs = graph.out_edges(f.v);
      if (f.next < outs.size()) {
        const auto& e = graph.edges()[outs[f.next++]];
        if (!usable(e)) continue;
        if (index[e.to] == kUnvisited) {
          index[e.to] = low[e.to] = counter++;
          stack.push_back(e.to);
          on_stack[e.to] = true;
          frames.push_back({e.to, 0});
        } else if (on_stack[e.to]) {
          low[f.v] = std::min(low[f.v], index[e.to]);
        }
        continue;
      }
      std::size_t v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> members;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          result.component[w] = result.members.size();
          members.push_back(w);
        } while (w != v);
        std::sort(members.begin(), members.end());
        result.members.push_back(std::move(members));
      }
    }
  }
  return result;
}

StratificationResult is_stratified(const SignedDependencyGraph& graph, const DependencyClosure& closure,
                                   const std::optional<PredicateSet>& over) {
  std::vector<bool> mask = over ? mask_of(graph, *over) : std::vector<bool>(graph.size(), true);
  StratificationResult r;
  for (std::size_t p = 0; p < graph.size(); ++p) {
    if (!mask[p]) continue;
    for (std::size_t q = 0; q < graph.size(); ++q) {
      if (mask[q] && closure.mutual(p, q) && closure.geq_neg(p, q)) {
        r.witness = std::make_pair(graph.vertex(p), graph.vertex(q));
        return r;
      }
    }
  }
  r.stratified = true;

  // Sinks first, so every SCC's successors already have a stratum.
  auto sccs = strongly_connected_components(graph, mask, false);
  std::vector<std::size_t> scc_stratum(sccs.members.size(), 0);
  for (std::size_t k = 0; k < sccs.members.size(); ++k) {
    std::size_t s = 0;
    for (auto v : sccs.members[k]) {
      for (auto e : graph.out_edges(v)) {
        const auto& edge = graph.edges()[e];
        if (!mask[edge.to] || sccs.component[edge.to] == k) continue;
        s = std::max(s, scc_stratum[sccs.component[edge.to]] + (edge.sign == Sign::Negative ? 1 : 0));
      }
    }
    scc_stratum[k] = s;
    for (auto v : sccs.members[k]) r.strata.emplace(graph.vertex(v), s);
  }
  return r;
}

StrictnessResult is_strict(const SignedDependencyGraph& graph, const DependencyClosure& closure,
                           const PredicateSet& over) {
  auto idx = graph.indices(over);
  for (auto p : idx) {
    for (auto q : idx) {
      if (closure.geq_pos(p, q) && closure.geq_neg(p, q)) {
        return {false, std::make_pair(graph.vertex(p), graph.vertex(q))};
      }
    }
  }
  return {};
}

PredicateSet Signing::domain() const {
  PredicateSet d;
  for (const auto& [p, s] : signs_) d.insert(p);
  return d;
}

std::optional<Sign> Signing::sign_of(const PredicateSymbol& p) const {
  auto it = signs_.find(p);
  if (it == signs_.end()) return std::nullopt;
  return it->second;
}

Signing invert(const Signing& signing) {
  std::map<PredicateSymbol, Sign> out;
  for (const auto& [p, s] : signing.signs()) out.emplace(p, -s);
  return Signing(std::move(out));
}

std::optional<SignedEdge> signing_violation(const SignedDependencyGraph& graph, const Signing& signing) {
  for (const auto& e : graph.edges()) {
    auto a = signing.sign_of(graph.vertex(e.from));
    auto b = signing.sign_of(graph.vertex(e.to));
    if (a && b && *a != *b * e.sign) return e;
  }
  return std::nullopt;
}

SigningResult find_signing(const SignedDependencyGraph& graph, const PredicateSet& q_set,
                           const std::map<PredicateSymbol, Sign>& pins) {
  const std::size_t n = graph.size();
  std::vector<bool> in_q = mask_of(graph, q_set);
  std::vector<std::optional<Sign>> pin(n);
  for (const auto& [p, s] : pins) {
    auto i = graph.require(p);
    if (!in_q[i]) throw InputError("pinned predicate " + p.name + " is not in the signing domain");
    pin[i] = s;
  }

  // Undirected adjacency over edges with both ends in Q.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    const auto& edge = graph.edges()[e];
    if (!in_q[edge.from] || !in_q[edge.to]) continue;
    adj[edge.from].emplace_back(edge.to, e);
    if (edge.to != edge.from) adj[edge.to].emplace_back(edge.from, e);
  }

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::optional<Sign>> sign(n);
  std::vector<std::size_t> parent_edge(n, kNone);

  auto path_to_root = [&](std::size_t v) {
    std::vector<std::size_t> path;
    while (parent_edge[v] != kNone) {
      const auto& e = graph.edges()[parent_edge[v]];
      path.push_back(parent_edge[v]);
      v = e.from == v ? e.to : e.from;
    }
    return path;
  };
  auto edges_of = [&](const std::vector<std::size_t>& ids) {
    std::vector<SignedEdge> out;
    for (auto id : ids) out.push_back(graph.edges()[id]);
    return out;
  };
  auto name = [&](std::size_t v) { return graph.vertex(v).name; };

  SigningResult result;
  auto run = [&](std::size_t root) -> bool {
    if (sign[root]) return true;
    sign[root] = pin[root].value_or(Sign::Positive);
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (auto [v, e] : adj[u]) {
        Sign want = *sign[u] * graph.edges()[e].sign;
        if (v == u) {
          if (want != *sign[u]) {
            result.failure = SigningFailure{{graph.edges()[e]}, "negative self-dependency of " + name(u) +
                                                                    " forces s(" + name(u) + ") = -s(" + name(u) + ")"};
            return false;
          }
          continue;
        }
        if (!sign[v]) {
          if (pin[v] && *pin[v] != want) {
            auto path = path_to_root(u);
            std::reverse(path.begin(), path.end());
            path.push_back(e);
            result.failure = SigningFailure{edges_of(path), "pins on " + name(root) + " and " + name(v) +
                                                                " contradict the sign product of the connecting path"};
            return false;
          }
          sign[v] = want;
          parent_edge[v] = e;
          stack.push_back(v);
        } else if (*sign[v] != want) {
          // Cycle: tree path u..lca, edge e, tree path v..lca.
          auto pu = path_to_root(u);
          auto pv = path_to_root(v);
          while (!pu.empty() && !pv.empty() && pu.back() == pv.back()) {
            pu.pop_back();
            pv.pop_back();
          }
          std::vector<std::size_t> cycle(pu.rbegin(), pu.rend());
          cycle.push_back(e);
          cycle.insert(cycle.end(), pv.begin(), pv.end());
          result.failure = SigningFailure{edges_of(cycle), "cycle through " + name(u) + " and " + name(v) +
                                                               " has an odd number of negative edges"};
          return false;
        }
      }
    }
    return true;
  };

  for (std::size_t v = 0; v < n; ++v) {
    if (in_q[v] && pin[v] && !run(v)) return result;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (in_q[v] && !run(v)) return result;
  }

  std::map<PredicateSymbol, Sign> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (in_q[v]) out.emplace(graph.vertex(v), *sign[v]);
  }
  result.signing = Signing(std::move(out));
  return result;
}

PredicateSet downward_closure(const SignedDependencyGraph& graph, const DependencyClosure& closure,
                              const PredicateSet& seed) {
  PredicateSet out = seed;
  for (auto p : graph.indices(seed)) {
    for (std::size_t q = 0; q < graph.size(); ++q) {
      if (closure.geq(p, q)) out.insert(graph.vertex(q));
    }
  }
  return out;
}

bool is_downward_closed(const SignedDependencyGraph& graph, const DependencyClosure& closure, const PredicateSet& set) {
  for (auto p : graph.indices(set)) {
    for (std::size_t q = 0; q < graph.size(); ++q) {
      if (closure.geq(p, q) && !set.contains(graph.vertex(q))) return false;
    }
  }
  return true;
}

PredicateSet FloorSplit::q_set() const {
  PredicateSet q;
  std::set_difference(p_set.begin(), p_set.end(), f_set.begin(), f_set.end(), std::inserter(q, q.end()));
  return q;
}

bool check_floor_split(const SignedDependencyGraph& graph, const DependencyClosure& closure, const FloorSplit& split) {
  return std::includes(split.p_set.begin(), split.p_set.end(), split.f_set.begin(), split.f_set.end()) &&
         is_downward_closed(graph, closure, split.p_set) && is_downward_closed(graph, closure, split.f_set);
}

TightnessResult is_tight(const GroundProgram& program, const std::optional<std::vector<bool>>& over) {
  const std::size_t n = program.atom_count();
  auto inside = [&](AtomId a) { return !over || (*over)[a]; };

  std::vector<std::vector<AtomId>> succ(n);
  for (const auto& c : program.clauses()) {
    if (!inside(c.head)) continue;
    for (const auto& lit : c.body) {
      if (lit.positive && inside(lit.atom)) succ[c.head].push_back(lit.atom);
    }
  }

  enum class Color { White, Grey, Black };
  std::vector<Color> color(n, Color::White);
  std::vector<std::pair<AtomId, std::size_t>> stack;
  for (AtomId root = 0; root < n; ++root) {
    if (!inside(root) || color[root] != Color::White) continue;
    stack.emplace_back(root, 0);
    color[root] = Color::Grey;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < succ[v].size()) {
        AtomId w = succ[v][next++];
        if (color[w] == Color::Grey) {
          TightnessResult r{false, {}};
          auto it = std::find_if(stack.begin(), stack.end(), [&](const auto& f) { return f.first == w; });
          for (; it != stack.end(); ++it) r.cycle.push_back(it->first);
          return r;
        }
        if (color[w] == Color::White) {
          color[w] = Color::Grey;
          stack.emplace_back(w, 0);
        }
        continue;
      }
      color[v] = Color::Black;
      stack.pop_back();
    }
  }
  return {};
}

std::vector<bool> negative_predicate_unfoundedness_free(const SignedDependencyGraph& graph, const Signing& signing,
                                                        const PredicateSet& q_set) {
  const std::size_t n = graph.size();
  std::vector<bool> in_q = mask_of(graph, q_set);
  auto sccs = strongly_connected_components(graph, in_q, true);

  std::vector<bool> marked(n, false);
  std::vector<std::size_t> work;
  for (const auto& members : sccs.members) {
    std::size_t v = members.front();
    bool cyclic = members.size() > 1 || graph.has_edge(v, v, Sign::Positive);
    if (!cyclic) continue;
    auto s = signing.sign_of(graph.vertex(v));
    if (!s) throw InputError("signing does not cover predicate " + graph.vertex(v).name);
    if (*s == Sign::Negative && !marked[v]) {
      marked[v] = true;
      work.push_back(v);
    }
  }
  // Everything that depends on a chosen vertex is marked.
  while (!work.empty()) {
    std::size_t v = work.back();
    work.pop_back();
    for (auto e : graph.in_edges(v)) {
      std::size_t u = graph.edges()[e].from;
      if (!marked[u]) {
        marked[u] = true;
        work.push_back(u);
      }
    }
  }
  std::vector<bool> free(n);
  for (std::size_t v = 0; v < n; ++v) free[v] = in_q[v] && !marked[v];
  return free;
}

bool avoids_negative_predicate_unfoundedness(const SignedDependencyGraph& graph, const DependencyClosure& closure,
                                             const Signing& signing, const PredicateSet& q_set,
                                             const PredicateSymbol& p) {
  (void)closure;
  auto i = graph.require(p);
  if (!q_set.contains(p)) throw InputError("predicate " + p.name + " is not in Q");
  return negative_predicate_unfoundedness_free(graph, signing, q_set)[i];
}

namespace {

std::string quoted(const PredicateSymbol& p) { return "\"" + p.name + "\""; }

}  // namespace

std::string to_dot(const SignedDependencyGraph& graph) {
  std::ostringstream os;
  os << "digraph dependencies {\n";
  for (const auto& v : graph.vertices()) os << "  " << quoted(v) << ";\n";
  for (const auto& e : graph.edges()) {
    os << "  " << quoted(graph.vertex(e.from)) << " -> " << quoted(graph.vertex(e.to)) << " [label=\""
       << (e.sign == Sign::Positive ? "+" : "-") << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string scc_condensation_dot(const SignedDependencyGraph& graph) {
  auto sccs = strongly_connected_components(graph, std::vector<bool>(graph.size(), true), false);
  std::ostringstream os;
  os << "digraph condensation {\n";
  for (std::size_t k = 0; k < sccs.members.size(); ++k) {
    os << "  c" << k << " [label=\"";
    for (std::size_t i = 0; i < sccs.members[k].size(); ++i) {
      os << (i ? ", " : "") << graph.vertex(sccs.members[k][i]).name;
    }
    os << "\"];\n";
  }
  std::set<std::tuple<std::size_t, std::size_t, Sign>> seen;
  for (const auto& e : graph.edges()) {
    auto a = sccs.component[e.from];
    auto b = sccs.component[e.to];
    if (a == b || !seen.emplace(a, b, e.sign).second) continue;
    os << "  c" << a << " -> c" << b << " [label=\"" << (e.sign == Sign::Positive ? "+" : "-") << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace lpsign
