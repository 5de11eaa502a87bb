#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpsign/syntax.h"

namespace lpsign {

using AtomId = std::size_t;

struct GroundLiteral {
  AtomId atom = 0;
  bool positive = true;

  auto operator<=>(const GroundLiteral&) const = default;
};

struct GroundClause {
  AtomId head = 0;
  std::vector<GroundLiteral> body;

  auto operator<=>(const GroundClause&) const = default;
};

// ground(P) with every atom interned. Atom ids follow the lexicographic
// order of the atoms, so iterating ids yields sorted output.
class GroundProgram {
 public:
  GroundProgram() = default;

  // Builds the atom table from variable-free clauses. Extra atoms (e.g. floor
  // atoms that occur in no clause) may be supplied to widen the universe.
  static GroundProgram from_clauses(const std::vector<Clause>& clauses, const std::vector<Atom>& extra_atoms = {});

  std::size_t atom_count() const { return atoms_.size(); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const Atom& atom(AtomId id) const { return atoms_[id]; }
  std::string atom_name(AtomId id) const { return to_string(atoms_[id]); }
  const PredicateSymbol& predicate_of(AtomId id) const { return atom_predicates_[id]; }
  std::optional<AtomId> find(const Atom& a) const;

  const std::vector<GroundClause>& clauses() const { return clauses_; }
  std::span<const std::size_t> clauses_for(AtomId head) const { return by_head_[head]; }
  // Clauses in which `a` occurs as a positive body literal (one entry per occurrence).
  std::span<const std::size_t> positive_occurrences(AtomId a) const { return positive_occ_[a]; }

  bool is_definite() const;
  std::vector<PredicateSymbol> predicates() const;

  Clause to_clause(const GroundClause& c) const;
  Program to_program() const;

 private:
  void build_indexes();

  std::vector<Atom> atoms_;
  std::vector<PredicateSymbol> atom_predicates_;
  std::map<Atom, AtomId> lookup_;
  std::vector<GroundClause> clauses_;
  std::vector<std::vector<std::size_t>> by_head_;
  std::vector<std::vector<std::size_t>> positive_occ_;

  friend GroundProgram with_clauses(const GroundProgram& universe, std::vector<GroundClause> clauses);
};

// Same atom universe as `universe`, different clause set. Used by reducts.
GroundProgram with_clauses(const GroundProgram& universe, std::vector<GroundClause> clauses);

inline constexpr std::size_t kDefaultGroundingBudget = 5'000'000;

// Substitutes every constant of the program for every variable. Throws
// BudgetExceeded when the instance count would exceed `max_clauses`.
GroundProgram ground(const Program& program, std::size_t max_clauses = kDefaultGroundingBudget);

// Number of instances ground() will produce, saturating at SIZE_MAX.
std::size_t grounding_size(const Program& program);

}  // namespace lpsign
