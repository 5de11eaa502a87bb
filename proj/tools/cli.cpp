#include "cli.h"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "lpsign/analysis.h"
#include "lpsign/error.h"
#include "lpsign/generate.h"
#include "lpsign/ground.h"

namespace lpsign::cli {

using Json = nlohmann::ordered_json;

bool CompareReport::violation() const {
  for (const auto& c : checks) {
    if (c.status == CompareCheck::Status::Violation) return true;
  }
  return false;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string pred_name(const PredicateSymbol& p) {
  return p.arity == 0 ? p.name : p.name + "/" + std::to_string(p.arity);
}

std::string join(const std::vector<std::string>& items, const std::string& sep = ", ") {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : sep) + s;
  return out;
}

std::vector<std::string> names(const PredicateSet& set) {
  std::vector<std::string> out;
  for (const auto& p : set) out.push_back(pred_name(p));
  return out;
}

// "title: a, b" or "title:" when empty.
std::string listing(const std::string& title, const std::vector<std::string>& items) {
  return items.empty() ? title + ":" : title + ": " + join(items);
}

PredicateSymbol resolve(const SignedDependencyGraph& graph, std::string item) {
  if (auto slash = item.find('/'); slash != std::string::npos) {
    PredicateSymbol p{item.substr(0, slash), 0};
    try {
      p.arity = std::stoul(item.substr(slash + 1));
    } catch (const std::exception&) {
      throw InputError("bad predicate " + item);
    }
    if (!graph.index_of(p)) throw InputError("unknown predicate " + item);
    return p;
  }
  auto idx = graph.index_of_name(item);
  if (!idx) throw InputError("unknown predicate " + item);
  return graph.vertex(*idx);
}

// Comma, whitespace or newline separated predicate names; `%` starts a comment.
PredicateSet parse_predicate_list(const SignedDependencyGraph& graph, const std::string& text) {
  PredicateSet out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (auto pct = line.find('%'); pct != std::string::npos) line.erase(pct);
    for (char& ch : line) {
      if (ch == ',') ch = ' ';
    }
    std::istringstream words(line);
    std::string w;
    while (words >> w) out.insert(resolve(graph, w));
  }
  return out;
}

std::map<PredicateSymbol, Sign> parse_pins(const SignedDependencyGraph& graph, const std::vector<std::string>& pins) {
  std::map<PredicateSymbol, Sign> out;
  for (const auto& pin : pins) {
    auto eq = pin.find('=');
    if (eq == std::string::npos) throw InputError("pin must look like p=+1: " + pin);
    auto value = pin.substr(eq + 1);
    Sign s;
    if (value == "+1" || value == "+" || value == "1") {
      s = Sign::Positive;
    } else if (value == "-1" || value == "-") {
      s = Sign::Negative;
    } else {
      throw InputError("pin sign must be +1 or -1: " + pin);
    }
    out[resolve(graph, pin.substr(0, eq))] = s;
  }
  return out;
}

std::string witness_text(const SignedDependencyGraph& graph, const std::vector<SignedEdge>& edges) {
  std::vector<std::string> parts;
  for (const auto& e : edges) {
    parts.push_back(pred_name(graph.vertex(e.from)) + " -" + (e.sign == Sign::Positive ? "+" : "-") + "-> " +
                    pred_name(graph.vertex(e.to)));
  }
  return join(parts, "; ");
}

Json edges_json(const SignedDependencyGraph& graph, const std::vector<SignedEdge>& edges) {
  Json arr = Json::array();
  for (const auto& e : edges) {
    arr.push_back({{"from", pred_name(graph.vertex(e.from))},
                   {"to", pred_name(graph.vertex(e.to))},
                   {"sign", e.sign == Sign::Positive ? "+" : "-"}});
  }
  return arr;
}

struct Sections {
  std::vector<std::string> t, f, u;
};

Sections sections(const GroundProgram& g, const Interpretation& i) {
  Sections s;
  for (AtomId a = 0; a < g.atom_count(); ++a) {
    (i.is_true(a) ? s.t : i.is_false(a) ? s.f : s.u).push_back(g.atom_name(a));
  }
  return s;
}

std::vector<std::string> ids_to_names(const GroundProgram& g, const std::vector<AtomId>& ids) {
  std::vector<std::string> out;
  for (auto a : ids) out.push_back(g.atom_name(a));
  return out;
}

struct Settings {
  std::string command;
  std::string input;
  std::string floor_file;
  std::string floor_interp_file;
  std::string method = "u";
  std::string format = "text";
  std::string q;
  std::string scope;
  std::string query;
  std::string target;
  std::string why;
  std::string shape = "any";
  std::vector<std::string> pins;
  bool trace = false;
  bool dot = false;
  bool scc = false;
  bool timings = false;
  bool signed_only = false;
  std::size_t budget = kDefaultStableBudget;
  std::uint64_t seed = 1;
  std::size_t preds = 3;
  std::size_t rules = 5;
  std::size_t max_body = 3;
  double neg_prob = 0.4;

  bool json() const { return format == "json"; }
};

// Everything the program-consuming commands share.
struct Loaded {
  Program program;
  SignedDependencyGraph graph;
  DependencyClosure cl;
  PredicateSet all;
  PredicateSet f_set;
  PredicateSet p_set;
  bool has_floor = false;
};

Loaded load(const Settings& s) {
  if (s.input.empty()) throw InputError(s.command + " needs an input program");
  Loaded l;
  l.program = parse_program(read_file(s.input));
  l.graph = build_graph(l.program);
  l.cl = closure(l.graph);
  l.all = PredicateSet(l.graph.vertices().begin(), l.graph.vertices().end());
  l.p_set = s.scope.empty() ? l.all : parse_predicate_list(l.graph, s.scope);
  if (!s.floor_file.empty()) {
    l.has_floor = true;
    l.f_set = parse_predicate_list(l.graph, read_file(s.floor_file));
  }
  return l;
}

PredicateSet q_of(const Loaded& l) {
  PredicateSet q;
  for (const auto& p : l.p_set) {
    if (!l.f_set.contains(p)) q.insert(p);
  }
  return q;
}

void require_floor_split(const Loaded& l) {
  if (!check_floor_split(l.graph, l.cl, FloorSplit{l.p_set, l.f_set})) {
    throw InputError("floor and scope must be downward-closed with floor inside scope");
  }
}

// The fixed interpretation of the floor atoms: from --floor-interp, or the
// well-founded model of the floor otherwise.
Interpretation floor_interpretation(const Settings& s, const Loaded& l, const GroundProgram& g, const AtomSet& frozen) {
  if (!s.floor_interp_file.empty()) {
    if (!l.has_floor) throw InputError("--floor-interp needs --floor");
    auto i = read_interpretation(read_file(s.floor_interp_file), g);
    auto outside = i.decided() - frozen;
    if (auto a = outside.find_first(); a != AtomSet::npos) {
      throw InputError("floor interpretation mentions non-floor atom " + g.atom_name(a));
    }
    return i;
  }
  if (!l.has_floor) return Interpretation(g.atom_count());
  return restrict(wfs(g, Interpretation(g.atom_count()), WfsMethod::U).model, frozen);
}

std::optional<TwoValuedInterpretation> two_valued_floor(const Interpretation& floor, const AtomSet& frozen) {
  if (!frozen.is_subset_of(floor.decided())) return std::nullopt;
  return TwoValuedInterpretation{floor.true_atoms};
}

Signing require_signing(const Loaded& l, const PredicateSet& q, const std::map<PredicateSymbol, Sign>& pins) {
  auto r = find_signing(l.graph, q, pins);
  if (!r.ok()) {
    throw SemanticError("no signing on Q: " + r.failure->reason + " (" + witness_text(l.graph, r.failure->witness) +
                        ")");
  }
  return *r.signing;
}

std::string signing_text(const Signing& s) {
  std::vector<std::string> pos, neg;
  for (const auto& [p, sign] : s.signs()) (sign == Sign::Positive ? pos : neg).push_back(pred_name(p));
  return listing("+1", pos) + "; " + listing("-1", neg);
}

std::string render_model(const Settings& s, const GroundProgram& g, const std::string& method, const Interpretation& m,
                         std::size_t stages, const std::vector<StageDelta>& trace, double millis) {
  if (s.json()) {
    Json j;
    j["method"] = method;
    auto sec = sections(g, m);
    j["true"] = sec.t;
    j["false"] = sec.f;
    j["unknown"] = sec.u;
    j["stages"] = stages;
    if (s.timings) j["millis"] = millis;
    if (s.trace) {
      Json t = Json::array();
      for (const auto& d : trace) {
        t.push_back({{"stage", d.stage},
                     {"true", ids_to_names(g, d.added_true)},
                     {"false", ids_to_names(g, d.added_false)}});
      }
      j["trace"] = t;
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  if (s.trace) {
    for (const auto& d : trace) {
      std::vector<std::string> parts;
      for (auto a : d.added_true) parts.push_back("+" + g.atom_name(a));
      for (auto a : d.added_false) parts.push_back("-" + g.atom_name(a));
      os << "stage " << d.stage << ": " << join(parts) << "\n";
    }
  }
  auto sec = sections(g, m);
  os << listing("true", sec.t) << "\n" << listing("false", sec.f) << "\n" << listing("unknown", sec.u) << "\n";
  os << "stages: " << stages << "\n";
  if (s.timings) os << "millis: " << millis << "\n";
  return os.str();
}

double total_millis(const SemanticsResult& r) {
  double t = 0;
  for (const auto& [_, ms] : r.timings) t += ms;
  return t;
}

// ---- commands ----------------------------------------------------------

std::string run_check(const Settings& s, int& exit_code) {
  if (s.input.empty()) throw InputError("check needs an input program");
  auto program = parse_program_lenient(read_file(s.input));
  auto diags = validate(program);
  bool ok = !has_errors(diags);
  exit_code = ok ? 0 : 1;
  std::size_t atoms = 0, clauses = 0;
  if (ok) {
    auto g = ground(program);
    atoms = g.atom_count();
    clauses = g.clauses().size();
  }
  if (s.json()) {
    Json j;
    j["ok"] = ok;
    Json d = Json::array();
    for (const auto& x : diags) {
      d.push_back({{"severity", x.is_error() ? "error" : "warning"}, {"message", x.message}});
    }
    j["diagnostics"] = d;
    j["clauses"] = program.clauses.size();
    j["predicates"] = program.predicates.size();
    j["constants"] = program.constants.size();
    if (ok) {
      j["ground_atoms"] = atoms;
      j["ground_clauses"] = clauses;
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  for (const auto& x : diags) os << (x.is_error() ? "error: " : "warning: ") << x.message << "\n";
  os << (ok ? "ok" : "invalid") << ": " << program.clauses.size() << " clauses, " << program.predicates.size()
     << " predicates, " << program.constants.size() << " constants";
  if (ok) os << ", " << atoms << " ground atoms, " << clauses << " ground clauses";
  os << "\n";
  return os.str();
}

std::string run_graph(const Settings& s) {
  auto l = load(s);
  if (s.scc) return scc_condensation_dot(l.graph);
  if (s.dot) return to_dot(l.graph);
  if (s.json()) {
    Json j;
    j["vertices"] = names(l.all);
    j["edges"] = edges_json(l.graph, l.graph.edges());
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  for (const auto& e : l.graph.edges()) {
    os << pred_name(l.graph.vertex(e.from)) << " -> " << pred_name(l.graph.vertex(e.to)) << " "
       << (e.sign == Sign::Positive ? "+" : "-") << "\n";
  }
  return os.str();
}

std::string run_signing(const Settings& s, int& exit_code) {
  auto l = load(s);
  PredicateSet q = s.q.empty() ? q_of(l) : parse_predicate_list(l.graph, s.q);
  auto r = find_signing(l.graph, q, parse_pins(l.graph, s.pins));
  exit_code = r.ok() ? 0 : 2;
  if (s.json()) {
    Json j;
    j["ok"] = r.ok();
    if (r.ok()) {
      Json m = Json::object();
      for (const auto& [p, sign] : r.signing->signs()) m[pred_name(p)] = to_int(sign);
      j["signing"] = m;
    } else {
      j["reason"] = r.failure->reason;
      j["witness"] = edges_json(l.graph, r.failure->witness);
    }
    return j.dump(2) + "\n";
  }
  if (r.ok()) return signing_text(*r.signing) + "\n";
  return "no signing: " + r.failure->reason + "\nwitness: " + witness_text(l.graph, r.failure->witness) + "\n";
}

std::string run_stratify(const Settings& s) {
  auto l = load(s);
  PredicateSet over = s.q.empty() ? l.all : parse_predicate_list(l.graph, s.q);
  auto st = is_stratified(l.graph, l.cl, over);
  auto sc = is_strict(l.graph, l.cl, over);
  auto pair_text = [](const std::pair<PredicateSymbol, PredicateSymbol>& w) {
    return pred_name(w.first) + ", " + pred_name(w.second);
  };
  std::map<std::size_t, std::vector<std::string>> by_stratum;
  for (const auto& [p, k] : st.strata) by_stratum[k].push_back(pred_name(p));
  if (s.json()) {
    Json j;
    j["stratified"] = st.stratified;
    if (st.stratified) {
      Json strata = Json::array();
      for (const auto& [k, members] : by_stratum) strata.push_back(members);
      j["strata"] = strata;
    } else {
      j["witness"] = {pred_name(st.witness->first), pred_name(st.witness->second)};
    }
    j["strict"] = sc.strict;
    if (!sc.strict) j["strict_witness"] = {pred_name(sc.witness->first), pred_name(sc.witness->second)};
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  if (st.stratified) {
    os << "stratified: yes\n";
    for (const auto& [k, members] : by_stratum) os << "stratum " << k << ": " << join(members) << "\n";
  } else {
    os << "stratified: no (" << pair_text(*st.witness) << " are mutually dependent through negation)\n";
  }
  if (sc.strict) {
    os << "strict: yes\n";
  } else {
    os << "strict: no (" << pair_text(*sc.witness) << " depend both evenly and oddly)\n";
  }
  return os.str();
}

std::string run_tight(const Settings& s) {
  auto l = load(s);
  auto g = ground(l.program);
  auto t = is_tight(g);
  auto cycle = ids_to_names(g, t.cycle);
  if (!cycle.empty()) cycle.push_back(cycle.front());
  if (s.json()) {
    Json j;
    j["tight"] = t.tight;
    if (!t.tight) j["cycle"] = cycle;
    return j.dump(2) + "\n";
  }
  return t.tight ? "tight: yes\n" : "tight: no (cycle: " + join(cycle, " -> ") + ")\n";
}

struct Prepared {
  Loaded l;
  GroundProgram g;
  AtomSet frozen;
  Interpretation floor;
};

Prepared prepare(const Settings& s) {
  Prepared p{load(s), {}, {}, {}};
  require_floor_split(p.l);
  p.g = ground(p.l.program);
  p.frozen = atoms_of(p.g, p.l.f_set);
  p.floor = floor_interpretation(s, p.l, p.g, p.frozen);
  return p;
}

std::string run_fitting(const Settings& s) {
  auto p = prepare(s);
  auto r = fitting_semantics(p.g, p.floor, p.frozen, s.trace);
  return render_model(s, p.g, "fitting", r.model, r.stages, r.trace, total_millis(r));
}

std::string run_wfs(const Settings& s) {
  auto p = prepare(s);
  auto method = parse_wfs_method(s.method);
  auto r = wfs(p.g, p.floor, method, p.frozen, s.trace);
  return render_model(s, p.g, "wfs-" + to_string(method), r.model, r.stages, r.trace, total_millis(r));
}

std::string run_uu(const Settings& s) {
  auto p = prepare(s);
  auto q = q_of(p.l);
  auto signing = require_signing(p.l, q, parse_pins(p.l.graph, s.pins));
  // Atoms outside Q are not inferred: floor atoms keep their fixed values and
  // atoms outside the scope stay unknown.
  AtomSet fixed = ~atoms_of(p.g, q);
  auto signs = atom_signs(p.g, signing);
  auto start = std::chrono::steady_clock::now();
  auto r = kleene_lfp([&](const Interpretation& i) { return uu_step(p.g, i, signs, fixed); }, p.floor, s.trace);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return render_model(s, p.g, "uu", r.model, r.stages, r.trace, ms);
}

std::optional<TwoValuedInterpretation> require_two_valued_floor(const Prepared& p) {
  if (!p.l.has_floor) return std::nullopt;
  auto f = two_valued_floor(p.floor, p.frozen);
  if (!f) throw SemanticError("stable semantics over a floor needs a two-valued floor interpretation");
  return f;
}

std::string run_stable(const Settings& s, int& exit_code) {
  auto p = prepare(s);
  auto models = stable_models(p.g, require_two_valued_floor(p), p.frozen, s.budget);
  exit_code = models.empty() ? 2 : 0;
  if (s.json()) {
    Json j;
    Json arr = Json::array();
    for (const auto& m : models) arr.push_back(atom_names(p.g, m.true_atoms));
    j["models"] = arr;
    j["count"] = models.size();
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  for (std::size_t k = 0; k < models.size(); ++k) {
    os << listing("model " + std::to_string(k + 1), atom_names(p.g, models[k].true_atoms)) << "\n";
  }
  os << models.size() << " stable model" << (models.size() == 1 ? "" : "s") << "\n";
  return os.str();
}

std::string run_sceptical(const Settings& s) {
  auto p = prepare(s);
  auto m = sceptical_stable(p.g, require_two_valued_floor(p), p.frozen, s.budget);
  return render_model(s, p.g, "sceptical", m, 0, {}, 0.0);
}

std::string polarity_mark(Polarity pol) { return pol == Polarity::Positive ? "+" : "-"; }

std::string run_parts(const Settings& s) {
  auto l = load(s);
  if (s.query.empty()) throw InputError("parts needs --query");
  auto req = parts_requirements(l.graph, parse_query(l.graph, s.query));
  auto cones = stratified_cone_predicates(l.graph, l.cl);
  std::map<Need, std::vector<std::string>> groups;
  for (const auto& [p, n] : req.need) groups[n].push_back(pred_name(p));

  std::vector<std::string> why_lines;
  Json why_json = Json::object();
  if (!s.why.empty()) {
    auto target = resolve(l.graph, s.why);
    for (auto pol : {Polarity::Positive, Polarity::Negative}) {
      auto chain = derivation(req, target, pol);
      if (chain.empty()) continue;
      std::vector<std::string> steps;
      for (const auto& [pred, sp] : chain) steps.push_back(polarity_mark(sp) + pred_name(pred));
      why_lines.push_back(polarity_mark(pol) + pred_name(target) + ": " + join(steps, " -> "));
      why_json[pol == Polarity::Positive ? "pos" : "neg"] = steps;
    }
    if (why_lines.empty()) why_lines.push_back(pred_name(target) + " is not needed");
  }

  if (s.json()) {
    Json j;
    Json need = Json::object();
    for (const auto& [p, n] : req.need) need[pred_name(p)] = to_string(n);
    j["need"] = need;
    for (auto n : {Need::Both, Need::Pos, Need::Neg, Need::None}) j[to_string(n)] = groups[n];
    j["stratified_cones"] = names(cones);
    if (!s.why.empty()) j["why"] = why_json;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  std::size_t width = 9;
  for (const auto& [p, _] : req.need) width = std::max(width, pred_name(p).size());
  os << "predicate" << std::string(width - 9 + 2, ' ') << "need\n";
  for (const auto& [p, n] : req.need) {
    os << pred_name(p) << std::string(width - pred_name(p).size() + 2, ' ') << to_string(n) << "\n";
  }
  for (auto n : {Need::Both, Need::Pos, Need::Neg, Need::None}) os << listing(to_string(n), groups[n]) << "\n";
  os << listing("stratified cones", names(cones)) << "\n";
  for (const auto& w : why_lines) os << "why " << w << "\n";
  return os.str();
}

std::string status_text(HypothesisCheck::Status st) {
  switch (st) {
    case HypothesisCheck::Status::Pass:
      return "pass";
    case HypothesisCheck::Status::Fail:
      return "fail";
    case HypothesisCheck::Status::Skipped:
      break;
  }
  return "skipped";
}

std::string run_theorem2(const Settings& s, int& exit_code) {
  auto l = load(s);
  if (s.target.empty()) throw InputError("theorem2 needs --p PREDICATE");
  auto target = resolve(l.graph, s.target);
  auto q = q_of(l);
  auto found = find_signing(l.graph, q, parse_pins(l.graph, s.pins));
  Signing signing = found.ok() ? *found.signing : Signing{};
  auto report = check_theorem2(l.program, FloorSplit{l.p_set, l.f_set}, signing, target, s.budget);

  // When the hypotheses hold, also observe the conclusion directly.
  std::optional<bool> agrees;
  if (report.verdict) {
    auto g = ground(l.program);
    AtomSet frozen = atoms_of(g, l.f_set);
    auto floor = floor_interpretation(s, l, g, frozen);
    auto w = wfs(g, floor, WfsMethod::U, frozen).model;
    auto f = fitting_semantics(g, floor, frozen).model;
    bool positive = signing.at(target) == Sign::Positive;
    agrees = true;
    for (AtomId a = 0; a < g.atom_count(); ++a) {
      if (g.predicate_of(a) != target) continue;
      if (positive ? w.is_true(a) != f.is_true(a) : w.is_false(a) != f.is_false(a)) agrees = false;
    }
    if (!*agrees) exit_code = 2;
  }

  if (s.json()) {
    Json j;
    j["predicate"] = pred_name(target);
    if (found.ok()) {
      Json m = Json::object();
      for (const auto& [p, sign] : signing.signs()) m[pred_name(p)] = to_int(sign);
      j["signing"] = m;
    } else {
      j["signing_failure"] = found.failure->reason;
    }
    Json checks = Json::array();
    for (const auto& c : report.checks) {
      checks.push_back({{"name", c.name}, {"status", status_text(c.status)}, {"detail", c.detail}});
    }
    j["checks"] = checks;
    j["verdict"] = report.verdict;
    if (agrees) j["wfs_fitting_agree"] = *agrees;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  if (found.ok()) {
    os << "signing: " << signing_text(signing) << "\n";
  } else {
    os << "signing: none (" << found.failure->reason << ")\n";
  }
  for (const auto& c : report.checks) os << status_text(c.status) << " " << c.name << ": " << c.detail << "\n";
  os << "verdict: " << (report.verdict ? "applies" : "does not apply") << "\n";
  if (agrees) {
    os << "observed: wfs and fitting " << (*agrees ? "agree" : "DISAGREE") << " on the "
       << (signing.at(target) == Sign::Positive ? "positive" : "negative") << " part of " << pred_name(target) << "\n";
  }
  return os.str();
}

std::string compare_status(CompareCheck::Status st) {
  switch (st) {
    case CompareCheck::Status::Ok:
      return "ok";
    case CompareCheck::Status::Violation:
      return "VIOLATION";
    case CompareCheck::Status::NotApplicable:
      break;
  }
  return "n/a";
}

std::string run_compare(const Settings& s, int& exit_code) {
  auto l = load(s);
  require_floor_split(l);
  CompareOptions o;
  o.floor = l.f_set;
  if (!s.scope.empty()) o.scope = l.p_set;
  o.pins = parse_pins(l.graph, s.pins);
  o.stable_budget = s.budget;
  if (!s.floor_interp_file.empty()) {
    auto g = ground(l.program);
    o.floor_interp = floor_interpretation(s, l, g, atoms_of(g, l.f_set));
  }
  auto r = cmd_compare(l.program, o);
  exit_code = r.violation() ? 2 : 0;

  if (s.json()) {
    Json j;
    Json engines = Json::array();
    for (std::size_t k = 0; k < r.engines.size(); ++k) {
      Json e = {{"name", r.engines[k]}};
      Sections sec;
      for (std::size_t a = 0; a < r.atoms.size(); ++a) {
        (r.models[k].is_true(a) ? sec.t : r.models[k].is_false(a) ? sec.f : sec.u).push_back(r.atoms[a]);
      }
      e["true"] = sec.t;
      e["false"] = sec.f;
      e["unknown"] = sec.u;
      engines.push_back(e);
    }
    j["engines"] = engines;
    j["agree"] = r.agree;
    Json checks = Json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"name", c.name}, {"status", compare_status(c.status)}, {"detail", c.detail}});
    }
    j["checks"] = checks;
    j["violation"] = r.violation();
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "engines:\n";
  for (std::size_t k = 0; k < r.engines.size(); ++k) os << "  [" << k << "] " << r.engines[k] << "\n";
  os << "agreement (= same model, . differs):\n    ";
  for (std::size_t k = 0; k < r.engines.size(); ++k) os << " " << k;
  os << "\n";
  for (std::size_t a = 0; a < r.engines.size(); ++a) {
    os << "  " << a << " ";
    for (std::size_t b = 0; b < r.engines.size(); ++b) os << " " << (r.agree[a][b] ? "=" : ".");
    os << "\n";
  }
  for (const auto& c : r.checks) {
    os << compare_status(c.status) << " " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  }
  return os.str();
}

std::string run_gen(const Settings& s) {
  GenOptions o;
  o.seed = s.seed;
  o.n_preds = s.preds;
  o.n_rules = s.rules;
  o.max_body = s.max_body;
  o.neg_prob = s.neg_prob;
  o.signed_only = s.signed_only;
  if (s.shape == "tight") {
    o.shape = GenShape::Tight;
  } else if (s.shape == "stratified") {
    o.shape = GenShape::Stratified;
  } else if (s.shape != "any") {
    throw InputError("unknown shape " + s.shape);
  }
  auto program = generate_random_program(o);
  if (s.json()) {
    Json j;
    j["seed"] = s.seed;
    std::vector<std::string> clauses;
    for (const auto& c : program.clauses) clauses.push_back(to_string(c));
    j["clauses"] = clauses;
    return j.dump(2) + "\n";
  }
  return to_string(program);
}

}  // namespace

CompareReport cmd_compare(const Program& program, const CompareOptions& o) {
  using Status = CompareCheck::Status;
  CompareReport r;
  auto graph = build_graph(program);
  auto cl = closure(graph);
  auto g = ground(program);
  const std::size_t n = g.atom_count();
  for (AtomId a = 0; a < n; ++a) r.atoms.push_back(g.atom_name(a));

  PredicateSet all(graph.vertices().begin(), graph.vertices().end());
  PredicateSet p_set = o.scope.value_or(all);
  PredicateSet q_set;
  for (const auto& p : p_set) {
    if (!o.floor.contains(p)) q_set.insert(p);
  }
  const bool q_is_everything = q_set.size() + o.floor.size() == all.size();
  AtomSet frozen = atoms_of(g, o.floor);
  Interpretation floor = o.floor_interp ? *o.floor_interp
                                        : restrict(wfs(g, Interpretation(n), WfsMethod::U).model, frozen);

  auto add = [&](std::string name, Interpretation m) {
    r.engines.push_back(std::move(name));
    r.models.push_back(std::move(m));
  };
  auto check = [&](std::string name, Status st, std::string detail = {}) {
    r.checks.push_back({st, std::move(name), std::move(detail)});
  };
  auto first_diff = [&](const Interpretation& a, const Interpretation& b) {
    AtomSet d = (a.true_atoms ^ b.true_atoms) | (a.false_atoms ^ b.false_atoms);
    auto x = d.find_first();
    return x == AtomSet::npos ? std::string{} : "first difference at " + g.atom_name(x);
  };

  auto fit = fitting_semantics(g, floor, frozen).model;
  auto wu = wfs(g, floor, WfsMethod::U, frozen).model;
  auto wp = wfs(g, floor, WfsMethod::WPrime, frozen).model;
  auto wa = wfs(g, floor, WfsMethod::Alternating, frozen).model;
  add("fitting", fit);
  add("wfs-u", wu);
  add("wfs-wprime", wp);
  add("wfs-alternating", wa);

  bool wfs_ok = wu == wp && wp == wa;
  check("wfs methods agree", wfs_ok ? Status::Ok : Status::Violation,
        wfs_ok ? "" : first_diff(wu, wp) + first_diff(wp, wa));
  check("fitting within wfs", fit.subset_of(wu) ? Status::Ok : Status::Violation);

  std::vector<bool> unfrozen(n);
  for (AtomId a = 0; a < n; ++a) unfrozen[a] = !frozen.test(a);
  auto tight = is_tight(g, unfrozen);
  if (tight.tight) {
    check("tight: fitting equals wfs", fit == wu ? Status::Ok : Status::Violation, first_diff(fit, wu));
  } else {
    check("tight: fitting equals wfs", Status::NotApplicable, "positive cycle through " + g.atom_name(tight.cycle[0]));
  }

  auto found = find_signing(graph, q_set, o.pins);
  AtomSigns signs;
  if (found.ok()) {
    signs = atom_signs(g, *found.signing);
    AtomSet q_atoms = atoms_of(g, q_set);
    AtomSet fixed = ~q_atoms;
    auto uu = kleene_lfp([&](const Interpretation& i) { return uu_step(g, i, signs, fixed); }, floor).model;
    add("uu", uu);
    std::string bad;
    for (AtomId a = 0; a < n && bad.empty(); ++a) {
      if (!q_atoms.test(a)) continue;
      bool same = signs[a] > 0 ? uu.is_true(a) == wu.is_true(a) : uu.is_false(a) == wu.is_false(a);
      if (!same) bad = g.atom_name(a);
    }
    check("uu matches wfs on signed parts", bad.empty() ? Status::Ok : Status::Violation,
          bad.empty() ? "" : "differs at " + bad);

    std::string gap;
    for (const auto& p : q_set) {
      if (!avoids_negative_predicate_unfoundedness(graph, cl, *found.signing, q_set, p)) continue;
      bool positive = found.signing->at(p) == Sign::Positive;
      for (AtomId a = 0; a < n && gap.empty(); ++a) {
        if (g.predicate_of(a) != p) continue;
        if (positive ? fit.is_true(a) != wu.is_true(a) : fit.is_false(a) != wu.is_false(a)) gap = g.atom_name(a);
      }
    }
    check("fitting matches wfs where negative unfoundedness is avoided", gap.empty() ? Status::Ok : Status::Violation,
          gap.empty() ? "" : "differs at " + gap);
  } else {
    check("uu matches wfs on signed parts", Status::NotApplicable, "no signing on Q: " + found.failure->reason);
  }

  // Stable semantics needs the floor to be two-valued.
  auto floor2 = two_valued_floor(floor, frozen);
  std::optional<std::vector<TwoValuedInterpretation>> models;
  std::string stable_note;
  if (!floor2) {
    stable_note = "floor interpretation is not two-valued";
  } else {
    try {
      models = stable_models(g, o.floor.empty() ? std::nullopt : floor2, frozen, o.stable_budget);
    } catch (const BudgetExceeded& e) {
      stable_note = e.what();
    }
  }
  bool floor_stable = floor2 && is_stable(g, *floor2, ~frozen);
  if (models) {
    std::string missing;
    for (const auto& m : *models) {
      if (!wu.subset_of(m.to_interpretation())) missing = join(atom_names(g, m.true_atoms));
    }
    check("stable models extend wfs", missing.empty() ? Status::Ok : Status::Violation,
          std::to_string(models->size()) + (models->size() == 1 ? " stable model" : " stable models") + (missing.empty() ? "" : "; {" + missing + "} does not"));
    if (!models->empty()) {
      Interpretation sc(AtomSet(n).set(), AtomSet(n).set());
      for (const auto& m : *models) {
        sc.true_atoms &= m.true_atoms;
        sc.false_atoms &= ~m.true_atoms;
      }
      add("sceptical", sc);
      if (found.ok() && q_is_everything && floor_stable) {
        check("sceptical equals wfs", sc == wu ? Status::Ok : Status::Violation, first_diff(sc, wu));
      } else {
        check("sceptical equals wfs", Status::NotApplicable, "needs a signing on every non-floor predicate");
      }
    }
  } else {
    check("stable models extend wfs", Status::NotApplicable, stable_note);
  }

  if (found.ok() && q_is_everything && floor_stable) {
    for (bool flip : {false, true}) {
      Signing s = flip ? invert(*found.signing) : *found.signing;
      auto e = extend_by_signing(g, wu, s, frozen);
      std::string label = flip ? "inverted signing" : "signing";
      check("wfs extended by " + label + " is stable", is_stable(g, e, frozen) ? Status::Ok : Status::Violation,
            join(atom_names(g, e.true_atoms)));
      auto comp = is_model_of_completion(g, e.to_interpretation(), CompletionMode::TwoValued, frozen);
      check("wfs extended by " + label + " models the completion", comp.ok ? Status::Ok : Status::Violation, comp.def);
    }
  } else {
    check("signing extensions of wfs are stable", Status::NotApplicable,
          "needs a signing on every non-floor predicate and a stable floor");
  }

  r.agree.assign(r.engines.size(), std::vector<bool>(r.engines.size()));
  for (std::size_t a = 0; a < r.engines.size(); ++a) {
    for (std::size_t b = 0; b < r.engines.size(); ++b) r.agree[a][b] = r.models[a] == r.models[b];
  }
  return r;
}

CliOutput cmd_dispatch(const std::vector<std::string>& args) {
  CliOutput result;
  Settings s;
  CLI::App app{"Signed dependency analysis and semantics for normal logic programs", "lpsign"};
  app.add_option("command", s.command,
                 "check, graph, signing, stratify, tight, fitting, wfs, stable, sceptical, uu, parts, theorem2, "
                 "compare or gen")
      ->required();
  app.add_option("input", s.input, "program file (.dl)");
  app.add_option("--floor", s.floor_file, "floor predicates (.preds)");
  app.add_option("--floor-interp", s.floor_interp_file, "floor interpretation (.int)");
  app.add_option("--method", s.method, "wfs engine: u, wprime or alternating");
  app.add_option("--pin", s.pins, "fix a sign, e.g. p=+1");
  app.add_option("--format", s.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--trace", s.trace, "record fixpoint stages");
  app.add_option("--budget", s.budget, "stable-model candidate budget, or ground atom budget for theorem2");
  app.add_option("--seed", s.seed, "generator seed");
  app.add_flag("--dot", s.dot, "emit the dependency graph in DOT");
  app.add_flag("--scc", s.scc, "emit the SCC condensation in DOT");
  app.add_flag("--timings", s.timings, "include wall-clock milliseconds");
  app.add_option("--q", s.q, "predicate set Q (comma separated)");
  app.add_option("--scope", s.scope, "downward-closed predicate set P (comma separated)");
  app.add_option("--query", s.query, "query demands, e.g. +p,-q");
  app.add_option("--p", s.target, "predicate to check (theorem2)");
  app.add_option("--why", s.why, "explain why a predicate's parts are needed");
  app.add_option("--preds", s.preds, "generator: number of predicates");
  app.add_option("--rules", s.rules, "generator: number of rules");
  app.add_option("--max-body", s.max_body, "generator: maximum body length");
  app.add_option("--neg-prob", s.neg_prob, "generator: probability of a negative literal");
  app.add_flag("--signed", s.signed_only, "generator: only programs with a signing");
  app.add_option("--shape", s.shape, "generator: any, tight or stratified");

  std::vector<const char*> argv{"lpsign"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    result.out = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = 1;
    result.err = std::string("error: ") + e.what() + "\n";
    return result;
  }

  int code = 0;
  try {
    if (s.budget == 0) throw InputError("--budget must be positive");
    const auto& c = s.command;
    if (c == "check") {
      result.out = run_check(s, code);
    } else if (c == "graph") {
      result.out = run_graph(s);
    } else if (c == "signing") {
      result.out = run_signing(s, code);
    } else if (c == "stratify") {
      result.out = run_stratify(s);
    } else if (c == "tight") {
      result.out = run_tight(s);
    } else if (c == "fitting") {
      result.out = run_fitting(s);
    } else if (c == "wfs") {
      result.out = run_wfs(s);
    } else if (c == "stable") {
      result.out = run_stable(s, code);
    } else if (c == "sceptical") {
      result.out = run_sceptical(s);
    } else if (c == "uu") {
      result.out = run_uu(s);
    } else if (c == "parts") {
      result.out = run_parts(s);
    } else if (c == "theorem2") {
      if (s.budget == kDefaultStableBudget) s.budget = kDefaultGroundCheckBudget;
      result.out = run_theorem2(s, code);
    } else if (c == "compare") {
      result.out = run_compare(s, code);
    } else if (c == "gen") {
      result.out = run_gen(s);
    } else {
      throw InputError("unknown command " + c);
    }
    result.exit_code = code;
  } catch (const InputError& e) {
    result.exit_code = 1;
    result.err = std::string("error: ") + e.what() + "\n";
  } catch (const SemanticError& e) {
    result.exit_code = 2;
    result.err = std::string("error: ") + e.what() + "\n";
  } catch (const BudgetExceeded& e) {
    result.exit_code = 3;
    result.err = std::string("budget exceeded: ") + e.what() + "\n";
  } catch (const Error& e) {
    result.exit_code = 1;
    result.err = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace lpsign::cli
