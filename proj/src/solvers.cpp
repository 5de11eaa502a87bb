#include "lpsign/solvers.h"

#include <chrono>

#include "lpsign/error.h"

namespace lpsign {

namespace {

class Stopwatch {
 public:
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

bool frozen_at(const AtomSet& frozen, AtomId a) { return a < frozen.size() && frozen.test(a); }

AtomSet sized(const AtomSet& s, std::size_t n) { return s.size() == n ? s : AtomSet(n); }

// Least model of the positive parts of the clauses selected by `active`,
// seeded with `seed`. Linear: one counter per clause.
AtomSet least_model_of(const GroundProgram& g, const std::vector<bool>& active, AtomSet derived) {
  const auto& clauses = g.clauses();
  std::vector<std::size_t> missing(clauses.size(), 0);
  std::vector<AtomId> queue;
  auto fire = [&](AtomId head) {
    if (!derived.test(head)) {
      derived.set(head);
      queue.push_back(head);
    }
  };
  // Seed atoms are counted as present up front; only atoms derived later are queued.
  for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
    if (!active[ci]) continue;
    for (const auto& lit : clauses[ci].body) {
      if (lit.positive && !derived.test(lit.atom)) ++missing[ci];
    }
  }
  for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
    if (active[ci] && missing[ci] == 0) fire(clauses[ci].head);
  }
  while (!queue.empty()) {
    AtomId a = queue.back();
    queue.pop_back();
    for (auto ci : g.positive_occurrences(a)) {
      if (active[ci] && --missing[ci] == 0) fire(clauses[ci].head);
    }
  }
  return derived;
}

// Least model of the reduct wrt `assumed`: clauses whose negative literals
// all hold when exactly `assumed` is true, heads outside `fixed`.
AtomSet gamma(const GroundProgram& g, const AtomSet& assumed, const AtomSet& fixed, const AtomSet& base) {
  std::vector<bool> active(g.clauses().size(), false);
  for (std::size_t ci = 0; ci < g.clauses().size(); ++ci) {
    const auto& c = g.clauses()[ci];
    if (fixed.test(c.head)) continue;
    bool ok = true;
    for (const auto& lit : c.body) {
      if (!lit.positive && assumed.test(lit.atom)) {
        ok = false;
        break;
      }
    }
    active[ci] = ok;
  }
  return least_model_of(g, active, base);
}

SemanticsResult alternating_fixpoint(const GroundProgram& g, const Interpretation& start, const AtomSet& frozen) {
  const std::size_t n = g.atom_count();
  AtomSet frz = sized(frozen, n);
  AtomSet fixed = frz | start.decided();
  AtomSet frozen_unknown = frz - start.decided();

  SemanticsResult r;
  r.method = to_string(WfsMethod::Alternating);
  AtomSet under = start.true_atoms;
  AtomSet over;
  while (true) {
    over = gamma(g, under, fixed, start.true_atoms | frozen_unknown);
    AtomSet next = gamma(g, over, fixed, start.true_atoms);
    if (next == under) break;
    under = std::move(next);
    ++r.stages;
  }
  r.model = Interpretation(under, ~over);
  return r;
}

}  // namespace

std::string to_string(WfsMethod m) {
  switch (m) {
    case WfsMethod::U:
      return "u";
    case WfsMethod::WPrime:
      return "wprime";
    case WfsMethod::Alternating:
      break;
  }
  return "alternating";
}

WfsMethod parse_wfs_method(const std::string& s) {
  if (s == "u") return WfsMethod::U;
  if (s == "wprime") return WfsMethod::WPrime;
  if (s == "alternating") return WfsMethod::Alternating;
  throw InputError("unknown method '" + s + "' (expected u, wprime or alternating)");
}

SemanticsResult fitting_semantics(const GroundProgram& g, const Interpretation& start, const AtomSet& frozen,
                                  bool record_trace) {
  Stopwatch clock;
  auto fp = kleene_lfp([&](const Interpretation& i) { return fitting_step(g, i, frozen); }, start, record_trace);
  return {std::move(fp.model), "fitting", fp.stages, {{"solve", clock.millis()}}, std::move(fp.trace)};
}

SemanticsResult wfs(const GroundProgram& g, const Interpretation& start, WfsMethod method, const AtomSet& frozen,
                    bool record_trace) {
  Stopwatch clock;
  if (auto a = start.conflict()) throw InconsistencyError("start interpretation is inconsistent", *a);
  SemanticsResult r;
  switch (method) {
    case WfsMethod::U: {
      auto fp = kleene_lfp([&](const Interpretation& i) { return w_step(g, i, frozen); }, start, record_trace);
      r = {std::move(fp.model), to_string(method), fp.stages, {}, std::move(fp.trace)};
      break;
    }
    case WfsMethod::WPrime: {
      auto fp = kleene_lfp([&](const Interpretation& i) { return w_prime_step(g, i, frozen); }, start, record_trace);
      r = {std::move(fp.model), to_string(method), fp.stages, {}, std::move(fp.trace)};
      break;
    }
    case WfsMethod::Alternating:
      r = alternating_fixpoint(g, start, frozen);
      break;
  }
  r.timings.emplace_back("solve", clock.millis());
  return r;
}

SemanticsResult stratified_semantics(const Program& program, const GroundProgram& g) {
  Stopwatch clock;
  auto graph = build_graph(program);
  auto cl = closure(graph);
  auto strat = is_stratified(graph, cl);
  if (!strat.stratified) {
    const auto& [p, q] = *strat.witness;
    throw SemanticError("program is not stratified: " + p.name + " and " + q.name +
                        " are mutually recursive through negation");
  }

  const std::size_t n = g.atom_count();
  std::size_t top = 0;
  std::vector<std::size_t> atom_stratum(n, 0);
  for (AtomId a = 0; a < n; ++a) {
    auto it = strat.strata.find(g.predicate_of(a));
    atom_stratum[a] = it == strat.strata.end() ? 0 : it->second;
    top = std::max(top, atom_stratum[a]);
  }

  AtomSet derived(n);
  for (std::size_t s = 0; s <= top; ++s) {
    // Negative literals refer to strictly lower strata, which are complete.
    std::vector<bool> active(g.clauses().size(), false);
    for (std::size_t ci = 0; ci < g.clauses().size(); ++ci) {
      const auto& c = g.clauses()[ci];
      if (atom_stratum[c.head] != s) continue;
      bool ok = true;
      for (const auto& lit : c.body) {
        if (!lit.positive && derived.test(lit.atom)) ok = false;
      }
      active[ci] = ok;
    }
    derived = least_model_of(g, active, derived);
  }

  SemanticsResult r;
  r.method = "stratified";
  r.stages = top + 1;
  r.model = Interpretation(derived, ~derived);
  r.timings.emplace_back("solve", clock.millis());
  return r;
}

TwoValuedInterpretation as_two_valued(const Interpretation& i) {
  if ((i.true_atoms | i.false_atoms).count() != i.size() || !i.consistent()) {
    throw InputError("interpretation is not two-valued");
  }
  return {i.true_atoms};
}

CompletionCheck is_model_of_completion(const GroundProgram& g, const Interpretation& i, CompletionMode mode,
                                       const AtomSet& frozen) {
  if (mode == CompletionMode::TwoValued) {
    for (AtomId a = 0; a < g.atom_count(); ++a) {
      if (i.value(a) == TruthValue::Unknown) {
        throw InputError("two-valued completion check: atom " + g.atom_name(a) + " is unknown");
      }
    }
  }
  for (AtomId a = 0; a < g.atom_count(); ++a) {
    if (frozen_at(frozen, a)) continue;
    TruthValue rhs = TruthValue::False;
    for (auto ci : g.clauses_for(a)) rhs = kleene_or(rhs, eval_body(g.clauses()[ci].body, i));
    if (rhs == i.value(a)) continue;

    CompletionCheck r{false, a, g.atom_name(a) + " <-> "};
    if (g.clauses_for(a).empty()) r.def += "false";
    for (std::size_t k = 0; k < g.clauses_for(a).size(); ++k) {
      Clause c = g.to_clause(g.clauses()[g.clauses_for(a)[k]]);
      std::string body;
      for (std::size_t j = 0; j < c.body.size(); ++j) body += (j ? ", " : "") + to_string(c.body[j]);
      r.def += (k ? " v (" : "(") + (body.empty() ? std::string("true") : body) + ")";
    }
    r.def += "  [lhs " + to_string(i.value(a)) + ", rhs " + to_string(rhs) + "]";
    return r;
  }
  return {};
}

GroundProgram gl_reduct(const GroundProgram& g, const TwoValuedInterpretation& s) {
  std::vector<GroundClause> out;
  for (const auto& c : g.clauses()) {
    bool blocked = false;
    GroundClause r{c.head, {}};
    for (const auto& lit : c.body) {
      if (lit.positive) {
        r.body.push_back(lit);
      } else if (s.true_atoms.test(lit.atom)) {
        blocked = true;
        break;
      }
    }
    if (!blocked) out.push_back(std::move(r));
  }
  return with_clauses(g, std::move(out));
}

AtomSet least_model(const GroundProgram& definite, const AtomSet& seed) {
  if (!definite.is_definite()) throw InputError("least_model requires a program without negative literals");
  return least_model_of(definite, std::vector<bool>(definite.clauses().size(), true),
                        sized(seed, definite.atom_count()));
}

bool is_stable(const GroundProgram& g, const TwoValuedInterpretation& s, const AtomSet& frozen) {
  AtomSet frz = sized(frozen, g.atom_count());
  AtomSet lm = gamma(g, s.true_atoms, frz, s.true_atoms & frz);
  return lm == s.true_atoms;
}

bool is_stable_by_unfoundedness(const GroundProgram& g, const TwoValuedInterpretation& s, const AtomSet& frozen) {
  Interpretation i = s.to_interpretation();
  for (const auto& c : g.clauses()) {
    if (frozen_at(frozen, c.head)) continue;
    if (eval_body(c.body, i) == TruthValue::True && !s.true_atoms.test(c.head)) return false;
  }
  return !greatest_unfounded_set(g, i, frozen).intersects(s.true_atoms);
}

std::vector<TwoValuedInterpretation> stable_models(const GroundProgram& g,
                                                   const std::optional<TwoValuedInterpretation>& floor,
                                                   const AtomSet& frozen, std::size_t budget) {
  const std::size_t n = g.atom_count();
  AtomSet frz = sized(frozen, n);
  if (frz.any() && !floor) throw InputError("stable models over a floor need a two-valued floor interpretation");

  std::vector<AtomId> free;
  for (AtomId a = 0; a < n; ++a) {
    if (!frz.test(a)) free.push_back(a);
  }
  if (free.size() >= 63 || (std::size_t{1} << free.size()) > budget) {
    throw BudgetExceeded("stable model enumeration needs 2^" + std::to_string(free.size()) +
                         " candidates (budget " + std::to_string(budget) + ")");
  }

  AtomSet base = floor ? (floor->true_atoms & frz) : AtomSet(n);
  std::vector<TwoValuedInterpretation> out;
  const std::uint64_t count = std::uint64_t{1} << free.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    TwoValuedInterpretation s{base};
    for (std::size_t k = 0; k < free.size(); ++k) {
      if (mask >> k & 1U) s.true_atoms.set(free[k]);
    }
    if (is_stable(g, s, frz)) out.push_back(std::move(s));
  }
  return out;
}

Interpretation sceptical_stable(const GroundProgram& g, const std::optional<TwoValuedInterpretation>& floor,
                                const AtomSet& frozen, std::size_t budget) {
  auto models = stable_models(g, floor, frozen, budget);
  if (models.empty()) throw SemanticError("no stable models: sceptical semantics undefined");
  Interpretation out = models.front().to_interpretation();
  for (const auto& m : models) {
    out.true_atoms &= m.true_atoms;
    out.false_atoms &= ~m.true_atoms;
  }
  return out;
}

TwoValuedInterpretation extend_by_signing(const GroundProgram& g, const Interpretation& a, const Signing& signing,
                                          const AtomSet& frozen) {
  if (auto c = a.conflict()) throw InconsistencyError("interpretation is inconsistent", *c);
  TwoValuedInterpretation out{AtomSet(g.atom_count())};
  for (AtomId x = 0; x < g.atom_count(); ++x) {
    TruthValue v = a.value(x);
    if (v != TruthValue::Unknown) {
      out.true_atoms.set(x, v == TruthValue::True);
      continue;
    }
    if (frozen_at(frozen, x)) throw SemanticError("floor atom " + g.atom_name(x) + " is not two-valued");
    auto s = signing.sign_of(g.predicate_of(x));
    if (!s) throw SemanticError("signing does not cover predicate " + g.predicate_of(x).name);
    out.true_atoms.set(x, *s == Sign::Positive);
  }
  return out;
}

}  // namespace lpsign
