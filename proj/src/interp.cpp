#include "lpsign/interp.h"

#include <sstream>

#include "lpsign/error.h"

namespace lpsign {

std::string to_string(TruthValue v) {
  switch (v) {
    case TruthValue::True:
      return "true";
    case TruthValue::False:
      return "false";
    case TruthValue::Unknown:
      break;
  }
  return "unknown";
}

TruthValue Interpretation::value(AtomId a) const {
  if (true_atoms.test(a)) return TruthValue::True;
  if (false_atoms.test(a)) return TruthValue::False;
  return TruthValue::Unknown;
}

void Interpretation::set(AtomId a, TruthValue v) {
  true_atoms.set(a, v == TruthValue::True);
  false_atoms.set(a, v == TruthValue::False);
}

std::optional<AtomId> Interpretation::conflict() const {
  auto both = true_atoms & false_atoms;
  auto pos = both.find_first();
  if (pos == AtomSet::npos) return std::nullopt;
  return pos;
}

bool Interpretation::subset_of(const Interpretation& other) const {
  return true_atoms.is_subset_of(other.true_atoms) && false_atoms.is_subset_of(other.false_atoms);
}

Interpretation& Interpretation::operator|=(const Interpretation& other) {
  true_atoms |= other.true_atoms;
  false_atoms |= other.false_atoms;
  return *this;
}

Interpretation restrict(const Interpretation& i, const AtomSet& mask) {
  return {i.true_atoms & mask, i.false_atoms & mask};
}

AtomSigns atom_signs(const GroundProgram& g, const Signing& signing) {
  AtomSigns out(g.atom_count(), 0);
  for (AtomId a = 0; a < g.atom_count(); ++a) {
    if (auto s = signing.sign_of(g.predicate_of(a))) out[a] = to_int(*s);
  }
  return out;
}

AtomSet atoms_of(const GroundProgram& g, const PredicateSet& predicates) {
  AtomSet out(g.atom_count());
  for (AtomId a = 0; a < g.atom_count(); ++a) {
    if (predicates.contains(g.predicate_of(a))) out.set(a);
  }
  return out;
}

TruthValue eval_body(std::span<const GroundLiteral> body, const Interpretation& i) {
  TruthValue v = TruthValue::True;
  for (const auto& lit : body) {
    TruthValue l = i.value(lit.atom);
    v = kleene_and(v, lit.positive ? l : kleene_not(l));
    if (v == TruthValue::False) break;
  }
  return v;
}

namespace {

bool frozen_at(const AtomSet& frozen, AtomId a) { return a < frozen.size() && frozen.test(a); }

bool has_false_literal(const GroundClause& c, const Interpretation& i) {
  for (const auto& lit : c.body) {
    if (lit.positive ? i.is_false(lit.atom) : i.is_true(lit.atom)) return true;
  }
  return false;
}

}  // namespace

AtomSet phi_plus(const GroundProgram& g, const Interpretation& i, const AtomSet& frozen) {
  AtomSet out(g.atom_count());
  for (const auto& c : g.clauses()) {
    if (out.test(c.head) || frozen_at(frozen, c.head)) continue;
    if (eval_body(c.body, i) == TruthValue::True) out.set(c.head);
  }
  return out;
}

AtomSet phi_minus(const GroundProgram& g, const Interpretation& i, const AtomSet& frozen) {
  AtomSet out(g.atom_count());
  for (AtomId a = 0; a < g.atom_count(); ++a) {
    if (frozen_at(frozen, a)) continue;
    bool all_false = true;
    for (auto ci : g.clauses_for(a)) {
      if (!has_false_literal(g.clauses()[ci], i)) {
        all_false = false;
        break;
      }
    }
    if (all_false) out.set(a);
  }
  return out;
}

Interpretation fitting_step(const GroundProgram& g, const Interpretation& i, const AtomSet& frozen) {
  Interpretation out(phi_plus(g, i, frozen), phi_minus(g, i, frozen));
  if (auto a = out.conflict()) {
    throw InconsistencyError("fitting step derives both " + g.atom_name(*a) + " and not " + g.atom_name(*a), *a);
  }
  return out;
}

AtomSet greatest_unfounded_subset(const GroundProgram& g, const Interpretation& i, AtomSet candidates) {
  const auto& clauses = g.clauses();
  // For each clause that can still support its head (no false literal), the
  // number of positive body occurrences inside the current set.
  std::vector<std::size_t> inside(clauses.size(), 0);
  std::vector<bool> live(clauses.size(), false);
  std::vector<AtomId> removed;

  for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
    const auto& c = clauses[ci];
    if (!candidates.test(c.head) || has_false_literal(c, i)) continue;
    live[ci] = true;
    for (const auto& lit : c.body) {
      if (lit.positive && candidates.test(lit.atom)) ++inside[ci];
    }
  }
  for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
    if (live[ci] && inside[ci] == 0 && candidates.test(clauses[ci].head)) {
      candidates.reset(clauses[ci].head);
      removed.push_back(clauses[ci].head);
    }
  }
  while (!removed.empty()) {
    AtomId a = removed.back();
    removed.pop_back();
    for (auto ci : g.positive_occurrences(a)) {
      if (!live[ci]) continue;
      if (--inside[ci] == 0 && candidates.test(clauses[ci].head)) {
        candidates.reset(clauses[ci].head);
        removed.push_back(clauses[ci].head);
      }
    }
  }
  return candidates;
}

AtomSet greatest_unfounded_set(const GroundProgram& g, const Interpretation& i, const AtomSet& frozen) {
  AtomSet candidates(g.atom_count());
  candidates.set();
  if (frozen.size() == candidates.size()) candidates -= frozen;
  return greatest_unfounded_subset(g, i, std::move(candidates));
}

Interpretation w_step(const GroundProgram& g, const Interpretation& i, const AtomSet& frozen) {
  return {phi_plus(g, i, frozen), greatest_unfounded_set(g, i, frozen)};
}

namespace {

// Atoms with at least one clause free of false literals: the only atoms that
// can belong to a circular unfounded set.
AtomSet circular_candidates(const GroundProgram& g, const Interpretation& i, const AtomSet& frozen) {
  AtomSet out(g.atom_count());
  for (const auto& c : g.clauses()) {
    if (out.test(c.head) || frozen_at(frozen, c.head)) continue;
    if (!has_false_literal(c, i)) out.set(c.head);
  }
  return out;
}

}  // namespace

AtomSet greatest_circular_unfounded_set(const GroundProgram& g, const Interpretation& i, const AtomSet& frozen) {
  return greatest_unfounded_subset(g, i, circular_candidates(g, i, frozen));
}

AtomSet greatest_circular_unfounded_set(const GroundProgram& g, const Interpretation& i, const AtomSet& frozen,
                                        const AtomSigns& signs, Sign sign) {
  AtomSet candidates = circular_candidates(g, i, frozen);
  for (AtomId a = 0; a < g.atom_count(); ++a) {
    if (signs[a] != to_int(sign)) candidates.reset(a);
  }
  return greatest_unfounded_subset(g, i, std::move(candidates));
}

Interpretation w_prime_step(const GroundProgram& g, const Interpretation& i, const AtomSet& frozen) {
  return {phi_plus(g, i, frozen), phi_minus(g, i, frozen) | greatest_circular_unfounded_set(g, i, frozen)};
}

Interpretation uu_step(const GroundProgram& g, const Interpretation& i, const AtomSigns& signs, const AtomSet& frozen) {
  AtomSet positive(g.atom_count()), negative(g.atom_count());
  for (AtomId a = 0; a < g.atom_count(); ++a) {
    if (frozen_at(frozen, a)) continue;
    if (signs[a] == 0) {
      throw SemanticError("signing does not cover predicate " + g.predicate_of(a).name + " of atom " + g.atom_name(a));
    }
    (signs[a] > 0 ? positive : negative).set(a);
  }
  AtomSet t = phi_plus(g, i, frozen) & positive;
  AtomSet f = (phi_minus(g, i, frozen) & negative) |
              greatest_circular_unfounded_set(g, i, frozen, signs, Sign::Negative);
  return {std::move(t), std::move(f)};
}

Interpretation uu_step(const GroundProgram& g, const Interpretation& i, const Signing& signing, const AtomSet& frozen) {
  return uu_step(g, i, atom_signs(g, signing), frozen);
}

FixpointResult kleene_lfp(const Step& step, Interpretation start, bool record_trace) {
  FixpointResult r;
  r.model = std::move(start);
  if (auto a = r.model.conflict()) throw InconsistencyError("start interpretation is inconsistent", *a);
  while (true) {
    Interpretation next = step(r.model) | r.model;
    if (auto a = next.conflict()) {
      throw InconsistencyError("stage " + std::to_string(r.stages + 1) + " makes an atom both true and false", *a);
    }
    if (next == r.model) break;
    ++r.stages;
    if (record_trace) {
      StageDelta d;
      d.stage = r.stages;
      AtomSet nt = next.true_atoms - r.model.true_atoms;
      AtomSet nf = next.false_atoms - r.model.false_atoms;
      for (auto a = nt.find_first(); a != AtomSet::npos; a = nt.find_next(a)) d.added_true.push_back(a);
      for (auto a = nf.find_first(); a != AtomSet::npos; a = nf.find_next(a)) d.added_false.push_back(a);
      r.trace.push_back(std::move(d));
    }
    r.model = std::move(next);
  }
  return r;
}

PartView part_view(const GroundProgram& g, const Interpretation& i, const PredicateSymbol& predicate,
                   Polarity polarity) {
  PartView v{predicate, polarity, {}};
  const AtomSet& source = polarity == Polarity::Positive ? i.true_atoms : i.false_atoms;
  for (AtomId a = 0; a < g.atom_count(); ++a) {
    if (source.test(a) && g.predicate_of(a) == predicate) v.atoms.push_back(a);
  }
  return v;
}

Interpretation read_interpretation(std::string_view text, const GroundProgram& g) {
  Interpretation out(g.atom_count());
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    if (auto pct = line.find('%'); pct != std::string_view::npos) line = line.substr(0, pct);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (line.back() != '.') throw ParseError("expected '.' at end of literal", line_no, line.size());
    line.remove_suffix(1);

    bool positive = true;
    if (line.starts_with("not ") || line.starts_with("not\t")) {
      positive = false;
      line.remove_prefix(4);
    }
    Atom atom;
    try {
      atom = parse_atom(line);
    } catch (const ParseError& e) {
      throw ParseError(e.message(), line_no, e.column());
    }
    if (!atom.is_ground()) throw ParseError("interpretation literals must be ground", line_no, 1);
    auto id = g.find(atom);
    if (!id) throw InputError("line " + std::to_string(line_no) + ": atom " + to_string(atom) + " is not in the program");
    if (positive ? out.is_false(*id) : out.is_true(*id)) {
      throw InputError("line " + std::to_string(line_no) + ": " + to_string(atom) + " is both true and false");
    }
    (positive ? out.true_atoms : out.false_atoms).set(*id);
    if (end == text.size()) break;
  }
  return out;
}

std::string write_interpretation(const GroundProgram& g, const Interpretation& i) {
  std::ostringstream os;
  for (AtomId a = 0; a < g.atom_count(); ++a) {
    if (i.is_true(a)) os << g.atom_name(a) << ".\n";
    if (i.is_false(a)) os << "not " << g.atom_name(a) << ".\n";
  }
  return os.str();
}

std::vector<std::string> atom_names(const GroundProgram& g, const AtomSet& set) {
  std::vector<std::string> out;
  for (auto a = set.find_first(); a != AtomSet::npos; a = set.find_next(a)) out.push_back(g.atom_name(a));
  return out;
}

}  // namespace lpsign
