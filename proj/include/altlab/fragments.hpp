// Membership in the agent-alternating, agent-nonrepeating and common-belief
// fragments.
//
// The alternating and nonrepeating properties are decided twice: once on the
// occurrence tree (pairs of same-agent box occurrences) and once by the
// bottom-up grammar of the L_{-a} / L_X families. The two paths share no
// code beyond the Formula type.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "altlab/formula.hpp"

namespace altlab {

enum class CFragment { Pure, AltPure, Alt, None };  // C^p, L_alt C^p, C_alt, none

std::string to_string(CFragment c);

struct FragmentReport {
  std::vector<std::string> universe;
  bool alternating_occ = false;
  bool alternating_ind = false;
  bool nonrepeating_occ = false;
  bool nonrepeating_ind = false;
  // a -> membership in L_{-a}
  std::map<std::string, bool> in_minus;
  // Smallest X with f in L_X, when f is nonrepeating; f is in L_Y iff this is a subset of Y.
  std::optional<std::set<std::string>> required_agents;
  CFragment c_fragment = CFragment::None;
  // C or E occurs; boolean flags then describe the box skeleton only.
  bool extended = false;

  bool alternating() const { return alternating_occ; }
  bool nonrepeating() const { return nonrepeating_occ; }
  bool in_Lx(const std::set<std::string>& x) const;
};

// Universe defaults to default_universe(f).
FragmentReport classify(const Formula& f);
FragmentReport classify(const Formula& f, const std::vector<std::string>& universe);

CFragment classify_c(const Formula& f);

// Occurrence-tree checks.
bool is_alternating_occ(const Formula& f);
bool is_nonrepeating_occ(const Formula& f);

// Grammar checks.
bool in_L_alt(const Formula& f, const std::vector<std::string>& universe);
bool in_L_minus(const Formula& f, const std::string& agent, const std::vector<std::string>& universe);
bool in_L_X(const Formula& f, const std::set<std::string>& x);

}  // namespace altlab
