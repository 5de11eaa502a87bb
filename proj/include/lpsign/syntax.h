#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lpsign {

struct PredicateSymbol {
  std::string name;
  std::size_t arity = 0;

  auto operator<=>(const PredicateSymbol&) const = default;
};

struct Term {
  enum class Kind { Constant, Variable };

  Kind kind = Kind::Constant;
  std::string name;

  static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }
  static Term variable(std::string n) { return {Kind::Variable, std::move(n)}; }

  bool is_variable() const { return kind == Kind::Variable; }
  auto operator<=>(const Term&) const = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  PredicateSymbol symbol() const { return {predicate, args.size()}; }
  bool is_ground() const;
  auto operator<=>(const Atom&) const = default;
};

struct Literal {
  bool positive = true;
  Atom atom;

  auto operator<=>(const Literal&) const = default;
};

struct Clause {
  Atom head;
  std::vector<Literal> body;

  bool is_fact() const { return body.empty(); }
  // Distinct variables in order of first occurrence (head first).
  std::vector<std::string> variables() const;
  auto operator<=>(const Clause&) const = default;
};

// A function-free normal logic program. `predicates` and `constants` are
// derived from the clauses by make_program(); the synthetic constant `c0`
// is included when the clauses mention variables but no constant.
struct Program {
  std::vector<Clause> clauses;
  std::set<PredicateSymbol> predicates;
  std::set<std::string> constants;
  bool synthetic_constant = false;
};

inline constexpr std::string_view kSyntheticConstant = "c0";

Program make_program(std::vector<Clause> clauses);

struct Diagnostic {
  enum class Severity { Warning, Error };

  Severity severity = Severity::Warning;
  std::string message;

  bool is_error() const { return severity == Severity::Error; }
};

// Parses the `.dl` format. Syntax and compound-term errors throw ParseError;
// a predicate used at two arities throws InputError.
Program parse_program(std::string_view text);

// Same grammar, but arity conflicts are left for validate() to report.
Program parse_program_lenient(std::string_view text);

// Parses one atom, e.g. `p(a,b)`. Used by the interpretation reader.
Atom parse_atom(std::string_view text);

std::vector<Diagnostic> validate(const Program& program);
bool has_errors(const std::vector<Diagnostic>& diagnostics);

std::string to_string(const Term& term);
std::string to_string(const Atom& atom);
std::string to_string(const Literal& literal);
std::string to_string(const Clause& clause);
std::string to_string(const Program& program);

bool is_constant_name(std::string_view s);
bool is_variable_name(std::string_view s);

}  // namespace lpsign
