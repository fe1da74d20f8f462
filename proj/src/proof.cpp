#include "altlab/proof.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#ifndef ALTLAB_DATA_DIR
#define ALTLAB_DATA_DIR "data"
#endif

namespace altlab {

std::string to_string(RuleKind r) {
  switch (r) {
    case RuleKind::Assume:
      return "assume";
    case RuleKind::Axiom:
      return "axiom";
    case RuleKind::Taut:
      return "taut";
    case RuleKind::MP:
      return "mp";
    case RuleKind::Nec:
      return "nec";
    case RuleKind::RM:
      return "rm";
  }
  return "?";
}

DerivationSyntaxError::DerivationSyntaxError(const std::string& what, std::size_t line)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

// --- parsing ----------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

bool is_id(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

Derivation parse_derivation(std::string_view text) {
  Derivation d;
  bool have_logic = false;
  bool have_agents = false;
  std::set<std::string> ids;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.rfind("logic:", 0) == 0) {
      d.logic = trim(line.substr(6));
      logic_spec(d.logic);  // validates the name
      have_logic = true;
      continue;
    }
    if (line.rfind("agents:", 0) == 0) {
      d.agents = words(line.substr(7));
      for (const auto& a : d.agents) {
        if (!is_valid_agent_name(a)) throw DerivationSyntaxError("invalid agent name '" + a + "'", lineno);
      }
      if (d.agents.size() < 2) throw DerivationSyntaxError("at least two agents are required", lineno);
      have_agents = true;
      continue;
    }
    if (!have_logic || !have_agents) throw DerivationSyntaxError("header 'logic:' and 'agents:' must come first", lineno);

    auto dot = line.find('.');
    auto semi = line.rfind(';');
    if (dot == std::string::npos || semi == std::string::npos || semi < dot) {
      throw DerivationSyntaxError("expected 'ID. FORMULA ; RULE'", lineno);
    }
    DerivationLine dl;
    dl.source_line = lineno;
    dl.id = trim(line.substr(0, dot));
    if (!is_id(dl.id)) throw DerivationSyntaxError("bad line id '" + dl.id + "'", lineno);
    if (!ids.insert(dl.id).second) throw DerivationSyntaxError("duplicate line id '" + dl.id + "'", lineno);
    try {
      dl.formula = parse_formula(line.substr(dot + 1, semi - dot - 1), d.agents);
    } catch (const Error& e) {
      throw DerivationSyntaxError(e.what(), lineno);
    }
    auto rule = words(line.substr(semi + 1));
    if (rule.empty()) throw DerivationSyntaxError("missing rule", lineno);
    const std::string& r = rule[0];
    auto want = [&](std::size_t n) {
      if (rule.size() != n) throw DerivationSyntaxError("rule '" + r + "' takes " + std::to_string(n - 1) + " arguments", lineno);
    };
    if (r == "assume") {
      want(1);
      dl.just.kind = RuleKind::Assume;
    } else if (r == "axiom") {
      want(2);
      dl.just.kind = RuleKind::Axiom;
      dl.just.name = rule[1];
    } else if (r == "taut") {
      want(1);
      dl.just.kind = RuleKind::Taut;
    } else if (r == "mp") {
      want(3);
      dl.just.kind = RuleKind::MP;
      dl.just.refs = {rule[1], rule[2]};
    } else if (r == "nec" || r == "rm") {
      want(3);
      dl.just.kind = r == "nec" ? RuleKind::Nec : RuleKind::RM;
      dl.just.name = rule[1];
      dl.just.refs = {rule[2]};
    } else {
      throw DerivationSyntaxError("unknown rule '" + r + "'", lineno);
    }
    d.lines.push_back(std::move(dl));
  }
  if (!have_logic || !have_agents) throw DerivationSyntaxError("missing header", lineno);
  return d;
}

std::string render_derivation(const Derivation& d) {
  std::ostringstream out;
  out << "logic: " << d.logic << "\nagents:";
  for (const auto& a : d.agents) out << ' ' << a;
  out << '\n';
  for (const auto& l : d.lines) {
    out << l.id << ". " << render(l.formula) << " ; " << to_string(l.just.kind);
    if (!l.just.name.empty()) out << ' ' << l.just.name;
    for (const auto& r : l.just.refs) out << ' ' << r;
    out << '\n';
  }
  return out.str();
}

// --- logics and schemas -----------------------------------------------------

namespace {

struct LogicRow {
  const char* name;
  const char* letters;  // extra schemas beyond K
  const char* frames;
  bool common;
};

const std::vector<LogicRow>& logic_rows() {
  static const std::vector<LogicRow> rows = {
      {"K", "", "K", false},        {"KD", "D", "KD", false},     {"T", "T", "T", false},
      {"KT", "T", "KT", false},     {"KB", "B", "KB", false},     {"K4", "4", "K4", false},
      {"K5", "5", "K5", false},     {"K45", "45", "K45", false},  {"KD4", "D4", "KD4", false},
      {"KD5", "D5", "KD5", false},  {"KD45", "D45", "KD45", false}, {"KDB", "DB", "KDB", false},
      {"B", "TB", "B", false},      {"KTB", "TB", "KTB", false},  {"S4", "T4", "S4", false},
      {"S5", "T5", "S5", false},    {"KB5", "B5", "KB5", false},  {"CK", "", "K", true},
      {"CKD", "D", "KD", true},     {"CK4", "4", "K4", true},     {"CKD4", "D4", "KD4", true},
      {"CK5", "5", "K5", true},
  };
  return rows;
}

const std::vector<std::string> kCommonSchemas = {"C-K", "E-K", "C-Ind", "E-Box", "C-Fix", "E-Intro"};

}  // namespace

LogicSpec logic_spec(const std::string& name) {
  for (const auto& row : logic_rows()) {
    if (name != row.name) continue;
    LogicSpec s;
    s.name = name;
    s.schemas.push_back("K");
    for (const char* c = row.letters; *c; ++c) s.schemas.emplace_back(1, *c);
    s.common = row.common;
    if (s.common) s.schemas.insert(s.schemas.end(), kCommonSchemas.begin(), kCommonSchemas.end());
    s.frames = FrameClass::from_name(row.frames);
    return s;
  }
  throw Error("unknown logic '" + name + "'");
}

const std::vector<std::string>& logic_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& row : logic_rows()) v.emplace_back(row.name);
    return v;
  }();
  return names;
}

const std::map<std::string, std::vector<std::string>>& schema_patterns() {
  static const std::map<std::string, std::vector<std::string>> p = {
      {"K", {"[x](P -> Q) -> [x]P -> [x]Q"}},
      {"D", {"[x]P -> <x>P"}},
      {"T", {"[x]P -> P", "P -> <x>P"}},
      {"B", {"P -> [x]<x>P", "<x>[x]P -> P"}},
      {"4", {"[x]P -> [x][x]P", "<x><x>P -> <x>P"}},
      {"5", {"<x>P -> [x]<x>P", "<x>[x]P -> [x]P"}},
      {"C-K", {"C P & C(P -> Q) -> C Q"}},
      {"E-K", {"E P & E(P -> Q) -> E Q"}},
      {"C-Ind", {"C(P -> E P) & E P -> C P"}},
      {"E-Box", {"E P -> [x]P"}},
      {"C-Fix", {"C P -> E(P & C P)"}},
      {"E-Intro", {}},
  };
  return p;
}

namespace {

struct Matcher {
  const std::vector<std::string>& agents;
  std::map<std::string, Formula> formulas;
  std::optional<std::string> agent;

  bool is_var(const Formula& p) const { return p.op() == Op::Atom && (p.name() == "P" || p.name() == "Q"); }

  bool match(const Formula& pat, const Formula& f) {
    if (is_var(pat)) {
      auto [it, fresh] = formulas.try_emplace(pat.name(), f);
      return fresh || it->second == f;
    }
    if (pat.op() != f.op() || pat.arity() != f.arity()) return false;
    if (pat.op() == Op::Box) {
      if (pat.name() == "x") {
        if (std::find(agents.begin(), agents.end(), f.name()) == agents.end()) return false;
        if (agent && *agent != f.name()) return false;
        agent = f.name();
      } else if (pat.name() != f.name()) {
        return false;
      }
    } else if (pat.name() != f.name()) {
      return false;
    }
    for (std::size_t i = 0; i < pat.arity(); ++i) {
      if (!match(pat.operand(i), f.operand(i))) return false;
    }
    return true;
  }
};

Formula e_intro_pattern(const std::vector<std::string>& agents) {
  Formula p = Formula::atom("P");
  Formula conj = Formula::box(agents.front(), p);
  for (std::size_t i = 1; i < agents.size(); ++i) conj = Formula::conj(conj, Formula::box(agents[i], p));
  return Formula::implies(conj, Formula::everyone(p));
}

}  // namespace

std::optional<SchemaInstance> match_schema(const std::string& schema, const Formula& f,
                                           const std::vector<std::string>& agents) {
  auto it = schema_patterns().find(schema);
  if (it == schema_patterns().end()) throw Error("unknown axiom schema '" + schema + "'");
  std::vector<Formula> pats;
  if (schema == "E-Intro") {
    if (agents.empty()) return std::nullopt;
    pats.push_back(e_intro_pattern(agents));
  } else {
    for (const auto& s : it->second) pats.push_back(parse_formula(s));
  }
  Formula target = f.core();
  for (const auto& pat : pats) {
    Matcher m{agents, {}, std::nullopt};
    if (m.match(pat.core(), target)) return SchemaInstance{schema, std::move(m.formulas), m.agent};
  }
  return std::nullopt;
}

// --- checking ---------------------------------------------------------------

namespace {

std::optional<std::pair<Formula, Formula>> split_implication(const Formula& f) {
  Formula c = f.core();
  if (c.op() != Op::Not || c.operand().op() != Op::And) return std::nullopt;
  const Formula& inner = c.operand();
  if (inner.rhs().op() != Op::Not) return std::nullopt;
  return std::make_pair(inner.lhs(), inner.rhs().operand());
}

Formula apply_modality(const std::string& m, const Formula& f, bool dual) {
  if (m == "C") return dual ? Formula::common_dual(f) : Formula::common(f);
  if (m == "E") return dual ? Formula::everyone_dual(f) : Formula::everyone(f);
  return dual ? Formula::diamond(m, f) : Formula::box(m, f);
}

}  // namespace

ProofVerdict check_derivation(const Derivation& d) {
  const LogicSpec spec = logic_spec(d.logic);
  ProofVerdict v;
  std::map<std::string, std::size_t> index;

  auto reject = [&](std::size_t i, const std::string& why) {
    v.accepted = false;
    v.bad_line = i;
    v.reason = "line " + d.lines[i].id + ": " + why;
    return v;
  };

  for (std::size_t i = 0; i < d.lines.size(); ++i) {
    const DerivationLine& line = d.lines[i];
    const Justification& j = line.just;
    std::vector<std::size_t> refs;
    for (const auto& r : j.refs) {
      auto it = index.find(r);
      if (it == index.end()) {
        throw DerivationSyntaxError("reference '" + r + "' does not name an earlier line", line.source_line);
      }
      refs.push_back(it->second);
    }
    if (!spec.common && has_common_or_everyone(line.formula)) {
      return reject(i, "C and E are not part of " + spec.name);
    }
    bool theorem = true;
    for (std::size_t r : refs) theorem = theorem && v.theorem[r];

    switch (j.kind) {
      case RuleKind::Assume:
        theorem = false;
        break;
      case RuleKind::Axiom: {
        if (std::find(spec.schemas.begin(), spec.schemas.end(), j.name) == spec.schemas.end()) {
          return reject(i, "schema " + j.name + " is not an axiom of " + spec.name);
        }
        if (!match_schema(j.name, line.formula, d.agents)) return reject(i, "not an instance of schema " + j.name);
        break;
      }
      case RuleKind::Taut:
        if (!tautology(line.formula)) return reject(i, "not a propositional tautology");
        break;
      case RuleKind::MP: {
        Formula premises = Formula::conj(d.lines[refs[0]].formula, d.lines[refs[1]].formula);
        if (!tautology(Formula::implies(premises, line.formula))) {
          return reject(i, "does not follow from lines " + j.refs[0] + " and " + j.refs[1] + " by modus ponens");
        }
        break;
      }
      case RuleKind::Nec:
      case RuleKind::RM: {
        const bool modal_ce = j.name == "C" || j.name == "E";
        if (modal_ce && !spec.common) return reject(i, "C and E are not part of " + spec.name);
        if (!modal_ce && std::find(d.agents.begin(), d.agents.end(), j.name) == d.agents.end()) {
          return reject(i, "unknown agent '" + j.name + "'");
        }
        if (!v.theorem[refs[0]]) {
          return reject(i, to_string(j.kind) + " applied to line " + j.refs[0] + ", which depends on assumptions");
        }
        const Formula& prem = d.lines[refs[0]].formula;
        const Formula target = line.formula.core();
        if (j.kind == RuleKind::Nec) {
          if (apply_modality(j.name, prem, false).core() != target) {
            return reject(i, "not the necessitation of line " + j.refs[0]);
          }
        } else {
          auto imp = split_implication(prem);
          if (!imp) return reject(i, "rm needs an implication at line " + j.refs[0]);
          bool ok = false;
          for (bool dual : {false, true}) {
            Formula want = Formula::implies(apply_modality(j.name, imp->first, dual), apply_modality(j.name, imp->second, dual));
            ok = ok || want.core() == target;
          }
          if (!ok) return reject(i, "not obtained from line " + j.refs[0] + " by monotonicity");
        }
        break;
      }
    }
    v.theorem.push_back(theorem);
    index.emplace(line.id, i);
  }
  if (!d.lines.empty()) {
    v.final_formula = d.lines.back().formula;
    v.final_is_theorem = v.theorem.back();
  }
  return v;
}

// --- packaged scripts -------------------------------------------------------

std::string script_directory() {
  if (const char* env = std::getenv("ALTLAB_DATA")) return std::string(env) + "/scripts";
  return std::string(ALTLAB_DATA_DIR) + "/scripts";
}

std::vector<std::string> script_names() {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(script_directory(), ec)) {
    if (e.path().extension() == ".drv") out.push_back(e.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error("cannot open '" + p.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

std::string script_text(const std::string& name) {
  return read_file(std::filesystem::path(script_directory()) / (name + ".drv"));
}

Derivation load_derivation(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  if (fs::exists(name_or_path) && fs::is_regular_file(name_or_path)) return parse_derivation(read_file(name_or_path));
  fs::path p(name_or_path);
  std::string stem = p.stem().string();
  if (fs::exists(fs::path(script_directory()) / (stem + ".drv"))) return parse_derivation(script_text(stem));
  throw Error("no derivation file or packaged script named '" + name_or_path + "'");
}

}  // namespace altlab
