#include "lpsign/ground.h"

#include <algorithm>
#include <set>

#include "lpsign/error.h"

namespace lpsign {

GroundProgram GroundProgram::from_clauses(const std::vector<Clause>& clauses, const std::vector<Atom>& extra_atoms) {
  std::set<Atom> universe(extra_atoms.begin(), extra_atoms.end());
  for (const auto& c : clauses) {
    if (!c.head.is_ground()) throw InputError("clause is not ground: " + to_string(c));
    universe.insert(c.head);
    for (const auto& lit : c.body) {
      if (!lit.atom.is_ground()) throw InputError("clause is not ground: " + to_string(c));
      universe.insert(lit.atom);
    }
  }

  GroundProgram g;
  g.atoms_.assign(universe.begin(), universe.end());
  for (AtomId i = 0; i < g.atoms_.size(); ++i) {
    g.lookup_.emplace(g.atoms_[i], i);
    g.atom_predicates_.push_back(g.atoms_[i].symbol());
  }
  g.clauses_.reserve(clauses.size());
  for (const auto& c : clauses) {
    GroundClause gc;
    gc.head = g.lookup_.at(c.head);
    for (const auto& lit : c.body) gc.body.push_back({g.lookup_.at(lit.atom), lit.positive});
    g.clauses_.push_back(std::move(gc));
  }
  g.build_indexes();
  return g;
}

GroundProgram with_clauses(const GroundProgram& universe, std::vector<GroundClause> clauses) {
  GroundProgram g;
  g.atoms_ = universe.atoms_;
  g.atom_predicates_ = universe.atom_predicates_;
  g.lookup_ = universe.lookup_;
  g.clauses_ = std::move(clauses);
  g.build_indexes();
  return g;
}

void GroundProgram::build_indexes() {
  by_head_.assign(atoms_.size(), {});
  positive_occ_.assign(atoms_.size(), {});
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    by_head_[clauses_[i].head].push_back(i);
    for (const auto& lit : clauses_[i].body) {
      if (lit.positive) positive_occ_[lit.atom].push_back(i);
    }
  }
}

std::optional<AtomId> GroundProgram::find(const Atom& a) const {
  auto it = lookup_.find(a);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

bool GroundProgram::is_definite() const {
  return std::all_of(clauses_.begin(), clauses_.end(), [](const GroundClause& c) {
    return std::all_of(c.body.begin(), c.body.end(), [](const GroundLiteral& l) { return l.positive; });
  });
}

std::vector<PredicateSymbol> GroundProgram::predicates() const {
  std::set<PredicateSymbol> s(atom_predicates_.begin(), atom_predicates_.end());
  return {s.begin(), s.end()};
}

Clause GroundProgram::to_clause(const GroundClause& c) const {
  Clause out;
  out.head = atoms_[c.head];
  for (const auto& lit : c.body) out.body.push_back({lit.positive, atoms_[lit.atom]});
  return out;
}

Program GroundProgram::to_program() const {
  std::vector<Clause> cs;
  cs.reserve(clauses_.size());
  for (const auto& c : clauses_) cs.push_back(to_clause(c));
  return make_program(std::move(cs));
}

namespace {

std::size_t saturating_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::size_t>::max() / base) return std::numeric_limits<std::size_t>::max();
    r *= base;
  }
  return r;
}

Atom substitute(const Atom& a, const std::vector<std::string>& vars, const std::vector<std::size_t>& choice,
                const std::vector<std::string>& constants) {
  Atom out = a;
  for (auto& t : out.args) {
    if (!t.is_variable()) continue;
    auto pos = std::find(vars.begin(), vars.end(), t.name) - vars.begin();
    t = Term::constant(constants[choice[static_cast<std::size_t>(pos)]]);
  }
  return out;
}

// Advances an odometer over constants; false once every combination is done.
bool next_choice(std::vector<std::size_t>& choice, std::size_t radix) {
  for (std::size_t k = choice.size(); k-- > 0;) {
    if (++choice[k] < radix) return true;
    choice[k] = 0;
  }
  return false;
}

}  // namespace

std::size_t grounding_size(const Program& program) {
  std::size_t total = 0;
  for (const auto& c : program.clauses) {
    std::size_t n = saturating_pow(program.constants.size(), c.variables().size());
    if (n > std::numeric_limits<std::size_t>::max() - total) return std::numeric_limits<std::size_t>::max();
    total += n;
  }
  return total;
}

GroundProgram ground(const Program& program, std::size_t max_clauses) {
  std::size_t expected = grounding_size(program);
  if (expected > max_clauses) {
    throw BudgetExceeded("grounding would produce " +
                         (expected == std::numeric_limits<std::size_t>::max() ? std::string("too many")
                                                                              : std::to_string(expected)) +
                         " clauses (budget " + std::to_string(max_clauses) + ")");
  }
  const std::vector<std::string> constants(program.constants.begin(), program.constants.end());

  std::vector<Clause> out;
  out.reserve(expected);
  for (const auto& c : program.clauses) {
    auto vars = c.variables();
    if (vars.empty()) {
      out.push_back(c);
      continue;
    }
    if (constants.empty()) continue;
    std::vector<std::size_t> choice(vars.size(), 0);
    while (true) {
      Clause g;
      g.head = substitute(c.head, vars, choice, constants);
      for (const auto& lit : c.body) g.body.push_back({lit.positive, substitute(lit.atom, vars, choice, constants)});
      out.push_back(std::move(g));

      if (!next_choice(choice, constants.size())) break;
    }
  }
  return GroundProgram::from_clauses(out);
}

}  // namespace lpsign
