#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "lpsign/syntax.h"

namespace lpsign {

// Deterministic across platforms: only raw mt19937_64 outputs are used, never
// the implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n); n must be positive.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  // Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

enum class GenShape {
  Any,
  // Positive body atoms come later in the predicate order than the head, so
  // the positive dependency graph is acyclic.
  Tight,
  // Every predicate gets a level; positive literals stay at or below the
  // head's level and negative literals go strictly below it.
  Stratified,
};

struct GenOptions {
  std::uint64_t seed = 1;
  std::size_t n_preds = 3;
  std::size_t n_rules = 5;
  std::size_t max_body = 3;
  double neg_prob = 0.4;
  bool signed_only = false;
  GenShape shape = GenShape::Any;
  std::size_t max_attempts = 100'000;  // rejected clauses allowed under signed_only
};

// Propositional program over p0..p{n-1}. Each rule picks a head, a body size
// in [0, max_body] and body atoms uniformly; a literal is negated with
// probability neg_prob. With signed_only, each clause is redrawn until the
// program so far still has a signing on every predicate; BudgetExceeded
// after max_attempts rejected clauses.
Program generate_random_program(const GenOptions& options);

Program generate_random_program(std::uint64_t seed, std::size_t n_preds, std::size_t n_rules, std::size_t max_body,
                                double neg_prob, bool signed_only);

// Signable by construction: predicates get random signs and each literal's
// polarity is forced by the signs of head and body atom. Used where rejection
// sampling would be hopeless (large programs).
Program generate_planted_signed_program(std::uint64_t seed, std::size_t n_preds, std::size_t n_rules,
                                        std::size_t max_body);

}  // namespace lpsign
