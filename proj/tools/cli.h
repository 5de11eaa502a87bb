#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lpsign/depgraph.h"
#include "lpsign/interp.h"
#include "lpsign/solvers.h"
#include "lpsign/syntax.h"

namespace lpsign::cli {

struct CliOutput {
  int exit_code = 0;
  std::string out;
  std::string err;
};

// Runs one subcommand. `args` excludes the program name. Never throws:
// errors map to exit codes 1 (input), 2 (semantic), 3 (budget).
CliOutput cmd_dispatch(const std::vector<std::string>& args);

struct CompareOptions {
  PredicateSet floor;                           // F
  std::optional<Interpretation> floor_interp;   // defaults to the floor's WFS
  std::optional<PredicateSet> scope;            // P; all predicates by default
  std::map<PredicateSymbol, Sign> pins;
  std::size_t stable_budget = kDefaultStableBudget;
};

struct CompareCheck {
  enum class Status { Ok, Violation, NotApplicable } status = Status::Ok;
  std::string name;
  std::string detail;
};

struct CompareReport {
  std::vector<std::string> engines;
  std::vector<Interpretation> models;  // parallel to engines
  std::vector<std::vector<bool>> agree;
  std::vector<CompareCheck> checks;
  std::vector<std::string> atoms;

  bool violation() const;
};

// Runs every engine on the program and cross-checks the results against the
// equivalence and agreement results they are supposed to satisfy.
CompareReport cmd_compare(const Program& program, const CompareOptions& options = {});

}  // namespace lpsign::cli
