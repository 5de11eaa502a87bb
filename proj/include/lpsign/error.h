#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpsign {

// Base for every error raised by the library. The CLI maps the subclasses
// onto exit codes (input 1, semantic 2, budget 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: syntax, arity conflicts, unknown names, bad flags.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        message_(msg),
        line_(line),
        column_(column) {}

  // The message without the position prefix.
  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

// The input is well-formed but the requested semantics does not exist
// (no stable models, no signing, unstratified program, ...).
class SemanticError : public Error {
 public:
  using Error::Error;
};

// A fixpoint accumulation produced an atom that is both true and false.
class InconsistencyError : public SemanticError {
 public:
  InconsistencyError(const std::string& msg, std::size_t atom) : SemanticError(msg), atom_(atom) {}
  std::size_t atom() const { return atom_; }

 private:
  std::size_t atom_;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace lpsign
