#include "altlab/fragments.hpp"

#include <algorithm>

namespace altlab {

std::string to_string(CFragment c) {
  switch (c) {
    case CFragment::Pure:
      return "C^p";
    case CFragment::AltPure:
      return "L_alt C^p";
    case CFragment::Alt:
      return "C_alt";
    case CFragment::None:
      break;
  }
  return "none";
}

bool FragmentReport::in_Lx(const std::set<std::string>& x) const {
  if (!required_agents) return false;
  return std::includes(x.begin(), x.end(), required_agents->begin(), required_agents->end());
}

// --- occurrence based -------------------------------------------------------

namespace {

bool is_box(const Formula& f) { return f.op() == Op::Box; }

// For every pair of same-agent box occurrences i below j, look for a box of
// another agent on the path between them.
bool alternating_on_tree(const OccurrenceTree& t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Formula& lower = t.node(i).formula;
    if (!is_box(lower)) continue;
    for (std::size_t j = t.node(i).parent; j != OccurrenceTree::npos; j = t.node(j).parent) {
      const Formula& upper = t.node(j).formula;
      if (!is_box(upper) || upper.name() != lower.name()) continue;
      bool separated = false;
      for (std::size_t k = 0; k < t.size() && !separated; ++k) {
        const Formula& mid = t.node(k).formula;
        separated = is_box(mid) && mid.name() != lower.name() && t.leq(i, k) && t.leq(k, j);
      }
      if (!separated) return false;
    }
  }
  return true;
}

bool nonrepeating_on_tree(const OccurrenceTree& t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Formula& lower = t.node(i).formula;
    if (!is_box(lower)) continue;
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (j == i) continue;
      const Formula& other = t.node(j).formula;
      if (is_box(other) && other.name() == lower.name() && t.leq(i, j)) return false;
    }
  }
  return true;
}

}  // namespace

bool is_alternating_occ(const Formula& f) { return alternating_on_tree(occurrence_tree(f)); }

bool is_nonrepeating_occ(const Formula& f) { return nonrepeating_on_tree(occurrence_tree(f)); }

// --- inductive --------------------------------------------------------------

namespace {

// Bottom-up summary of one core subformula. C and E are transparent for the
// box skeleton; `c_alt` tracks the grammar extended by the clause C phi.
struct Summary {
  std::set<std::string> minus;        // {a : f in L_{-a}}
  bool alt = true;                    // f in L_alt
  std::optional<std::set<std::string>> required;  // minimal X with f in L_X
  std::set<std::string> c_minus;      // {a : f in C_{-a}}
  bool c_alt = true;                  // f in C_alt
  bool has_box = false;
  bool has_common = false;
  bool has_everyone = false;
};

Summary summarize(const Formula& f, const std::vector<std::string>& universe) {
  Summary s;
  switch (f.op()) {
    case Op::Atom:
    case Op::False:
      s.minus = {universe.begin(), universe.end()};
      s.c_minus = s.minus;
      s.required = std::set<std::string>{};
      return s;
    case Op::Not:
      return summarize(f.operand(), universe);
    case Op::And: {
      Summary l = summarize(f.lhs(), universe);
      Summary r = summarize(f.rhs(), universe);
      std::set_intersection(l.minus.begin(), l.minus.end(), r.minus.begin(), r.minus.end(),
                            std::inserter(s.minus, s.minus.end()));
      std::set_intersection(l.c_minus.begin(), l.c_minus.end(), r.c_minus.begin(), r.c_minus.end(),
                            std::inserter(s.c_minus, s.c_minus.end()));
      s.alt = l.alt && r.alt;
      s.c_alt = l.c_alt && r.c_alt;
      if (l.required && r.required) {
        std::set<std::string> both = *l.required;
        both.insert(r.required->begin(), r.required->end());
        s.required = both;
      }
      s.has_box = l.has_box || r.has_box;
      s.has_common = l.has_common || r.has_common;
      s.has_everyone = l.has_everyone || r.has_everyone;
      return s;
    }
    case Op::Box: {
      Summary k = summarize(f.operand(), universe);
      const std::string& x = f.name();
      if (k.minus.count(x)) {
        for (const auto& a : universe) {
          if (a != x) s.minus.insert(a);
        }
      }
      if (k.c_minus.count(x)) {
        for (const auto& a : universe) {
          if (a != x) s.c_minus.insert(a);
        }
      }
      s.alt = !s.minus.empty();
      s.c_alt = !s.c_minus.empty();
      if (k.required && !k.required->count(x)) {
        s.required = *k.required;
        s.required->insert(x);
      }
      s.has_box = true;
      s.has_common = k.has_common;
      s.has_everyone = k.has_everyone;
      return s;
    }
    case Op::Common:
    case Op::Everyone: {
      s = summarize(f.operand(), universe);
      if (f.op() == Op::Common) {
        s.has_common = true;
      } else {
        s.has_everyone = true;
        s.c_minus.clear();
        s.c_alt = false;
      }
      return s;
    }
    default:
      break;
  }
  return summarize(f.core(), universe);
}

// Boolean combinations of L_alt members and C^p members (E-free).
bool in_alt_pure(const Formula& f, const std::vector<std::string>& universe) {
  Summary s = summarize(f, universe);
  if (!s.has_everyone && !s.has_common && s.alt) return true;
  if (!s.has_everyone && !s.has_box) return true;
  if (f.op() == Op::Not) return in_alt_pure(f.operand(), universe);
  if (f.op() == Op::And) return in_alt_pure(f.lhs(), universe) && in_alt_pure(f.rhs(), universe);
  return false;
}

CFragment c_fragment_of(const Formula& core, const std::vector<std::string>& universe) {
  Summary s = summarize(core, universe);
  if (!s.has_box && !s.has_everyone) return CFragment::Pure;
  if (in_alt_pure(core, universe)) return CFragment::AltPure;
  if (s.c_alt) return CFragment::Alt;
  return CFragment::None;
}

}  // namespace

bool in_L_alt(const Formula& f, const std::vector<std::string>& universe) {
  return summarize(f.core(), universe).alt;
}

bool in_L_minus(const Formula& f, const std::string& agent, const std::vector<std::string>& universe) {
  return summarize(f.core(), universe).minus.count(agent) > 0;
}

bool in_L_X(const Formula& f, const std::set<std::string>& x) {
  std::vector<std::string> universe(x.begin(), x.end());
  for (const auto& a : agents_of(f)) universe.push_back(a);
  auto s = summarize(f.core(), universe);
  return s.required && std::includes(x.begin(), x.end(), s.required->begin(), s.required->end());
}

FragmentReport classify(const Formula& f) { return classify(f, default_universe(f)); }

FragmentReport classify(const Formula& f, const std::vector<std::string>& universe) {
  FragmentReport r;
  r.universe = universe;
  std::sort(r.universe.begin(), r.universe.end());
  r.universe.erase(std::unique(r.universe.begin(), r.universe.end()), r.universe.end());
  for (const auto& a : agents_of(f)) {
    if (!std::binary_search(r.universe.begin(), r.universe.end(), a)) throw UnknownAgentError(a);
  }
  Formula core = f.core();

  OccurrenceTree tree(core);
  r.alternating_occ = alternating_on_tree(tree);
  r.nonrepeating_occ = nonrepeating_on_tree(tree);

  Summary s = summarize(core, r.universe);
  r.alternating_ind = s.alt;
  for (const auto& a : r.universe) r.in_minus[a] = s.minus.count(a) > 0;
  r.required_agents = s.required;
  r.nonrepeating_ind = s.required.has_value();
  r.extended = s.has_common || s.has_everyone;
  r.c_fragment = c_fragment_of(core, r.universe);
  return r;
}

CFragment classify_c(const Formula& f) {
  Formula core = f.core();
  return c_fragment_of(core, default_universe(core));
}

}  // namespace altlab
