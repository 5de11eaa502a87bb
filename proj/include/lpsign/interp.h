#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpsign/depgraph.h"
#include "lpsign/ground.h"

namespace lpsign {

using AtomSet = boost::dynamic_bitset<>;

enum class TruthValue { False = 0, Unknown = 1, True = 2 };

inline TruthValue kleene_and(TruthValue a, TruthValue b) { return a < b ? a : b; }
inline TruthValue kleene_or(TruthValue a, TruthValue b) { return a < b ? b : a; }
inline TruthValue kleene_not(TruthValue a) { return static_cast<TruthValue>(2 - static_cast<int>(a)); }
std::string to_string(TruthValue v);

// A set of ground literals over the atoms of one ground program:
// {a | a in true_atoms} u {not a | a in false_atoms}. A consistent literal
// set is a three-valued interpretation; operator outputs on arbitrary inputs
// need not be consistent, so consistency is a query rather than an invariant.
struct Interpretation {
  AtomSet true_atoms;
  AtomSet false_atoms;

  Interpretation() = default;
  explicit Interpretation(std::size_t atoms) : true_atoms(atoms), false_atoms(atoms) {}
  Interpretation(AtomSet t, AtomSet f) : true_atoms(std::move(t)), false_atoms(std::move(f)) {}

  std::size_t size() const { return true_atoms.size(); }
  TruthValue value(AtomId a) const;
  bool is_true(AtomId a) const { return true_atoms.test(a); }
  bool is_false(AtomId a) const { return false_atoms.test(a); }
  void set(AtomId a, TruthValue v);

  bool consistent() const { return !true_atoms.intersects(false_atoms); }
  std::optional<AtomId> conflict() const;
  // Subset ordering on the literal-set representation.
  bool subset_of(const Interpretation& other) const;
  std::size_t literal_count() const { return true_atoms.count() + false_atoms.count(); }
  AtomSet decided() const { return true_atoms | false_atoms; }

  Interpretation& operator|=(const Interpretation& other);
  friend Interpretation operator|(Interpretation a, const Interpretation& b) { return a |= b; }
  bool operator==(const Interpretation&) const = default;
};

// Restriction of a literal set to atoms in `mask`.
Interpretation restrict(const Interpretation& i, const AtomSet& mask);

// Per-atom sign under a signing; 0 for atoms whose predicate is not covered.
using AtomSigns = std::vector<int>;
AtomSigns atom_signs(const GroundProgram& g, const Signing& signing);

// Atoms whose predicate lies in `predicates`.
AtomSet atoms_of(const GroundProgram& g, const PredicateSet& predicates);

TruthValue eval_body(std::span<const GroundLiteral> body, const Interpretation& i);

// All operators leave atoms in `frozen` (floor atoms) alone: they are never
// inferred, and their literals are read from the input interpretation.

AtomSet phi_plus(const GroundProgram& g, const Interpretation& i, const AtomSet& frozen = {});
AtomSet phi_minus(const GroundProgram& g, const Interpretation& i, const AtomSet& frozen = {});

// Fitting's operator. Throws InconsistencyError when a head is both derived
// and refuted, which cannot happen for a consistent input.
Interpretation fitting_step(const GroundProgram& g, const Interpretation& i, const AtomSet& frozen = {});

// Greatest unfounded set, as a greatest fixpoint: start from every
// non-frozen atom and delete heads that keep a clause with no false literal
// and no positive body atom left in the set.
AtomSet greatest_unfounded_set(const GroundProgram& g, const Interpretation& i, const AtomSet& frozen = {});

// Greatest unfounded set contained in `candidates`.
AtomSet greatest_unfounded_subset(const GroundProgram& g, const Interpretation& i, AtomSet candidates);

Interpretation w_step(const GroundProgram& g, const Interpretation& i, const AtomSet& frozen = {});

// Greatest circular unfounded set; with `signs`/`sign`, restricted to atoms
// of that sign (atoms with sign 0 are excluded).
AtomSet greatest_circular_unfounded_set(const GroundProgram& g, const Interpretation& i, const AtomSet& frozen = {});
AtomSet greatest_circular_unfounded_set(const GroundProgram& g, const Interpretation& i, const AtomSet& frozen,
                                        const AtomSigns& signs, Sign sign);

Interpretation w_prime_step(const GroundProgram& g, const Interpretation& i, const AtomSet& frozen = {});

// Infers only the positive part of positively signed atoms and the negative
// part of negatively signed ones. Every non-frozen atom must be signed.
Interpretation uu_step(const GroundProgram& g, const Interpretation& i, const AtomSigns& signs,
                       const AtomSet& frozen = {});
Interpretation uu_step(const GroundProgram& g, const Interpretation& i, const Signing& signing,
                       const AtomSet& frozen = {});

using Step = std::function<Interpretation(const Interpretation&)>;

struct StageDelta {
  std::size_t stage = 0;
  std::vector<AtomId> added_true;
  std::vector<AtomId> added_false;
};

struct FixpointResult {
  Interpretation model;
  std::size_t stages = 0;  // iterations that changed the interpretation
  std::vector<StageDelta> trace;
};

// Accumulating Kleene iteration  X_{k+1} = step(X_k) u X_k  from `start`.
// Throws InconsistencyError naming the first atom that becomes both true and
// false.
FixpointResult kleene_lfp(const Step& step, Interpretation start, bool record_trace = false);

enum class Polarity { Positive, Negative };

struct PartView {
  PredicateSymbol predicate;
  Polarity polarity = Polarity::Positive;
  std::vector<AtomId> atoms;
};

PartView part_view(const GroundProgram& g, const Interpretation& i, const PredicateSymbol& predicate,
                   Polarity polarity);

// `.int` format: one literal per line, `p(a).` or `not p(a).`; `%` comments.
Interpretation read_interpretation(std::string_view text, const GroundProgram& g);
std::string write_interpretation(const GroundProgram& g, const Interpretation& i);

std::vector<std::string> atom_names(const GroundProgram& g, const AtomSet& set);

}  // namespace lpsign
