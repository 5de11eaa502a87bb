#include "lpsign/syntax.h"

#include <algorithm>
#include <cctype>
#include <map>

#include "lpsign/error.h"

namespace lpsign {

bool Atom::is_ground() const {
  return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

std::vector<std::string> Clause::variables() const {
  std::vector<std::string> vars;
  auto note = [&](const Atom& a) {
    for (const auto& t : a.args) {
      if (t.is_variable() && std::find(vars.begin(), vars.end(), t.name) == vars.end()) {
        vars.push_back(t.name);
      }
    }
  };
  note(head);
  for (const auto& lit : body) note(lit.atom);
  return vars;
}

Program make_program(std::vector<Clause> clauses) {
  Program p;
  p.clauses = std::move(clauses);
  bool has_variables = false;
  auto note = [&](const Atom& a) {
    p.predicates.insert(a.symbol());
    for (const auto& t : a.args) {
      if (t.is_variable()) {
        has_variables = true;
      } else {
        p.constants.insert(t.name);
      }
    }
  };
  for (const auto& c : p.clauses) {
    note(c.head);
    for (const auto& lit : c.body) note(lit.atom);
  }
  if (has_variables && p.constants.empty()) {
    p.constants.insert(std::string(kSyntheticConstant));
    p.synthetic_constant = true;
  }
  return p;
}

namespace {

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<Clause> clauses() {
    std::vector<Clause> out;
    skip_space();
    while (!at_end()) {
      out.push_back(clause());
      skip_space();
    }
    return out;
  }

  Atom single_atom() {
    skip_space();
    Atom a = atom();
    skip_space();
    if (!at_end()) fail("unexpected trailing input");
    return a;
  }

 private:
  Clause clause() {
    Clause c;
    c.head = atom();
    skip_space();
    if (peek() == ':') {
      advance();
      if (peek() != '-') fail("expected ':-'");
      advance();
      do {
        skip_space();
        c.body.push_back(literal());
        skip_space();
      } while (accept(','));
    }
    skip_space();
    if (!accept('.')) fail("expected '.' at end of clause");
    return c;
  }

  Literal literal() {
    auto save_pos = pos_;
    auto save_line = line_;
    auto save_col = col_;
    std::string word = identifier_or_fail("expected literal");
    if (word == "not") {
      skip_space();
      if (!at_end() && std::islower(static_cast<unsigned char>(peek()))) {
        return {false, atom()};
      }
      fail("expected atom after 'not'");
    }
    pos_ = save_pos;
    line_ = save_line;
    col_ = save_col;
    return {true, atom()};
  }

  Atom atom() {
    skip_space();
    if (at_end() || !std::islower(static_cast<unsigned char>(peek()))) {
      fail("expected atom (lowercase identifier)");
    }
    Atom a;
    a.predicate = identifier_or_fail("expected predicate name");
    skip_space();
    if (accept('(')) {
      do {
        skip_space();
        a.args.push_back(term());
        skip_space();
      } while (accept(','));
      if (!accept(')')) fail("expected ')' or ','");
    }
    return a;
  }

  Term term() {
    if (at_end() || !std::isalpha(static_cast<unsigned char>(peek()))) {
      fail("expected constant or variable");
    }
    std::size_t line = line_;
    std::size_t col = col_;
    std::string name = identifier_or_fail("expected term");
    skip_space();
    if (peek() == '(') {
      throw ParseError("function symbols unsupported: '" + name + "(...)'", line, col);
    }
    if (std::isupper(static_cast<unsigned char>(name.front()))) return Term::variable(std::move(name));
    return Term::constant(std::move(name));
  }

  std::string identifier_or_fail(const char* what) {
    if (at_end() || !std::isalpha(static_cast<unsigned char>(peek()))) fail(what);
    std::string s;
    while (!at_end() && is_ident_char(peek())) {
      s.push_back(peek());
      advance();
    }
    return s;
  }

  void skip_space() {
    while (!at_end()) {
      char c = peek();
      if (c == '%') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool accept(char c) {
    if (!at_end() && peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::string found = at_end() ? "end of input" : std::string("'") + peek() + "'";
    throw ParseError(msg + ", found " + found, line_, col_);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

Program parse_program_lenient(std::string_view text) { return make_program(Parser(text).clauses()); }

Program parse_program(std::string_view text) {
  Program p = parse_program_lenient(text);
  for (const auto& d : validate(p)) {
    if (d.is_error()) throw InputError(d.message);
  }
  return p;
}

Atom parse_atom(std::string_view text) { return Parser(text).single_atom(); }

std::vector<Diagnostic> validate(const Program& program) {
  std::vector<Diagnostic> out;

  std::map<std::string, std::set<std::size_t>> arities;
  for (const auto& sym : program.predicates) arities[sym.name].insert(sym.arity);
  for (const auto& [name, set] : arities) {
    if (set.size() < 2) continue;
    std::string msg = name + " used at arities";
    std::size_t i = 0;
    for (auto a : set) {
      msg += (i == 0 ? " " : (i + 1 == set.size() ? " and " : ", ")) + std::to_string(a);
      ++i;
    }
    out.push_back({Diagnostic::Severity::Error, msg});
  }

  std::set<PredicateSymbol> defined;
  for (const auto& c : program.clauses) defined.insert(c.head.symbol());
  for (const auto& sym : program.predicates) {
    if (!defined.contains(sym)) {
      out.push_back({Diagnostic::Severity::Warning, sym.name + " undefined"});
    }
  }

  for (std::size_t i = 0; i < program.clauses.size(); ++i) {
    const Clause& c = program.clauses[i];
    std::set<std::string> positive_body;
    for (const auto& lit : c.body) {
      if (!lit.positive) continue;
      for (const auto& t : lit.atom.args) {
        if (t.is_variable()) positive_body.insert(t.name);
      }
    }
    for (const auto& v : c.variables()) {
      if (positive_body.contains(v)) continue;
      auto mentions = [&](const Atom& a) {
        return std::any_of(a.args.begin(), a.args.end(),
                           [&](const Term& t) { return t.is_variable() && t.name == v; });
      };
      bool in_head = mentions(c.head);
      bool negated = std::any_of(c.body.begin(), c.body.end(),
                                 [&](const Literal& l) { return !l.positive && mentions(l.atom); });
      std::string where = "occurs only under negation";
      if (in_head) where = negated ? "occurs only in the head and under negation" : "occurs only in the head";
      out.push_back({Diagnostic::Severity::Warning,
                     "clause " + std::to_string(i + 1) + ": variable " + v + " " + where +
                         " (grounds over every constant)"});
    }
  }
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) { return d.is_error(); });
}

std::string to_string(const Term& term) { return term.name; }

std::string to_string(const Atom& atom) {
  std::string s = atom.predicate;
  if (!atom.args.empty()) {
    s += '(';
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
      if (i) s += ',';
      s += atom.args[i].name;
    }
    s += ')';
  }
  return s;
}

std::string to_string(const Literal& literal) {
  return literal.positive ? to_string(literal.atom) : "not " + to_string(literal.atom);
}

std::string to_string(const Clause& clause) {
  std::string s = to_string(clause.head);
  if (!clause.body.empty()) {
    s += " :- ";
    for (std::size_t i = 0; i < clause.body.size(); ++i) {
      if (i) s += ", ";
      s += to_string(clause.body[i]);
    }
  }
  s += '.';
  return s;
}

std::string to_string(const Program& program) {
  std::string s;
  for (const auto& c : program.clauses) {
    s += to_string(c);
    s += '\n';
  }
  return s;
}

bool is_constant_name(std::string_view s) {
  return !s.empty() && std::islower(static_cast<unsigned char>(s.front())) &&
         std::all_of(s.begin(), s.end(), is_ident_char);
}

bool is_variable_name(std::string_view s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s.front())) &&
         std::all_of(s.begin(), s.end(), is_ident_char);
}

}  // namespace lpsign
