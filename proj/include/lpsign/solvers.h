#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpsign/depgraph.h"
#include "lpsign/ground.h"
#include "lpsign/interp.h"

namespace lpsign {

struct SemanticsResult {
  Interpretation model;
  std::string method;
  std::size_t stages = 0;
  std::vector<std::pair<std::string, double>> timings;  // phase -> milliseconds
  std::vector<StageDelta> trace;
};

// Fitting semantics extending `start`: lfp of the Fitting operator.
SemanticsResult fitting_semantics(const GroundProgram& g, const Interpretation& start, const AtomSet& frozen = {},
                                  bool record_trace = false);

enum class WfsMethod { U, WPrime, Alternating };

std::string to_string(WfsMethod m);
WfsMethod parse_wfs_method(const std::string& s);

// Well-founded model extending `start`. All three methods agree; the
// alternating engine is the classic under/over-estimate iteration and treats
// atoms decided in `start` (and frozen atoms) as fixed.
SemanticsResult wfs(const GroundProgram& g, const Interpretation& start, WfsMethod method, const AtomSet& frozen = {},
                    bool record_trace = false);

// Iterated fixpoint, stratum by stratum. Throws SemanticError naming the
// offending pair when the program is not stratified.
SemanticsResult stratified_semantics(const Program& program, const GroundProgram& g);

struct TwoValuedInterpretation {
  AtomSet true_atoms;

  Interpretation to_interpretation() const { return {true_atoms, ~true_atoms}; }
  bool operator==(const TwoValuedInterpretation&) const = default;
};

// Throws InputError if some atom is unknown.
TwoValuedInterpretation as_two_valued(const Interpretation& i);

enum class CompletionMode { ThreeValued, TwoValued };

struct CompletionCheck {
  bool ok = true;
  std::optional<AtomId> counterexample;
  std::string def;  // "a <-> body1 v body2" with both sides' values, for the counterexample
};

// Checks every def  a <-> OR(bodies)  of the Clark completion under Kleene
// evaluation; frozen atoms are skipped (their semantics is fixed elsewhere).
CompletionCheck is_model_of_completion(const GroundProgram& g, const Interpretation& i, CompletionMode mode,
                                       const AtomSet& frozen = {});

// Gelfond-Lifschitz reduct: drop clauses with a negative literal whose atom is
// true in S, then strip the remaining negative literals.
GroundProgram gl_reduct(const GroundProgram& g, const TwoValuedInterpretation& s);

// Least model of a definite program, optionally seeded with atoms taken as
// given. Throws InputError on a negative literal.
AtomSet least_model(const GroundProgram& definite, const AtomSet& seed = {});

// Reduct-based stability of S. Clauses with frozen heads are ignored and the
// frozen atoms true in S act as facts.
bool is_stable(const GroundProgram& g, const TwoValuedInterpretation& s, const AtomSet& frozen = {});

// Dung's characterization: S is a model of the (non-frozen) clauses and no
// unfounded set wrt S meets S.
bool is_stable_by_unfoundedness(const GroundProgram& g, const TwoValuedInterpretation& s, const AtomSet& frozen = {});

inline constexpr std::size_t kDefaultStableBudget = std::size_t{1} << 20;

// All stable models extending the floor (the frozen atoms' values in
// `floor`), by enumeration over the non-frozen atoms in bitmask order.
// Throws BudgetExceeded when 2^n exceeds `budget`.
std::vector<TwoValuedInterpretation> stable_models(const GroundProgram& g,
                                                   const std::optional<TwoValuedInterpretation>& floor = std::nullopt,
                                                   const AtomSet& frozen = {},
                                                   std::size_t budget = kDefaultStableBudget);

// Literals true in every stable model. Throws SemanticError when there are none.
Interpretation sceptical_stable(const GroundProgram& g,
                                const std::optional<TwoValuedInterpretation>& floor = std::nullopt,
                                const AtomSet& frozen = {}, std::size_t budget = kDefaultStableBudget);

// Two-valued extension of A along a signing: positively signed atoms are true
// unless false in A, negatively signed atoms are false unless true in A.
// Frozen atoms and atoms already decided in A are copied. Throws
// SemanticError for an undecided atom whose predicate the signing misses.
TwoValuedInterpretation extend_by_signing(const GroundProgram& g, const Interpretation& a, const Signing& signing,
                                          const AtomSet& frozen = {});

}  // namespace lpsign
