// Independent reference implementations used as test oracles.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "altlab/formula.hpp"
#include "altlab/kripke.hpp"

namespace oracle {

using altlab::Formula;
using altlab::KripkeModel;
using altlab::Op;

// Adjacency matrices, one per agent.
inline std::vector<std::vector<std::vector<bool>>> matrices(const KripkeModel& m) {
  const std::size_t n = m.num_worlds();
  std::vector<std::vector<std::vector<bool>>> out(m.num_agents(), std::vector<std::vector<bool>>(n, std::vector<bool>(n)));
  for (std::size_t a = 0; a < m.num_agents(); ++a) {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) out[a][u][v] = m.relation(a).contains(u, v);
    }
  }
  return out;
}

// Direct recursive semantics; C via Warshall closure of the union.
class Eval {
 public:
  explicit Eval(const KripkeModel& m) : m_(m), r_(matrices(m)) {
    const std::size_t n = m.num_worlds();
    uni_.assign(n, std::vector<bool>(n));
    for (const auto& ra : r_) {
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) uni_[u][v] = uni_[u][v] || ra[u][v];
      }
    }
    tc_ = uni_;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) tc_[i][j] = tc_[i][j] || (tc_[i][k] && tc_[k][j]);
      }
    }
  }

  bool holds(const Formula& f, std::size_t w) const {
    const std::size_t n = m_.num_worlds();
    switch (f.op()) {
      case Op::Atom:
        return m_.holds_atom(f.name(), w);
      case Op::False:
        return false;
      case Op::True:
        return true;
      case Op::Not:
        return !holds(f.operand(), w);
      case Op::And:
        return holds(f.lhs(), w) && holds(f.rhs(), w);
      case Op::Or:
        return holds(f.lhs(), w) || holds(f.rhs(), w);
      case Op::Implies:
        return !holds(f.lhs(), w) || holds(f.rhs(), w);
      case Op::Iff:
        return holds(f.lhs(), w) == holds(f.rhs(), w);
      case Op::Box:
      case Op::Diamond: {
        const auto& ra = r_[m_.require_agent(f.name())];
        bool box = f.op() == Op::Box;
        for (std::size_t v = 0; v < n; ++v) {
          if (!ra[w][v]) continue;
          bool h = holds(f.operand(), v);
          if (box && !h) return false;
          if (!box && h) return true;
        }
        return box;
      }
      case Op::Everyone:
      case Op::EveryoneDual:
      case Op::Common:
      case Op::CommonDual: {
        const auto& rel = (f.op() == Op::Everyone || f.op() == Op::EveryoneDual) ? uni_ : tc_;
        bool box = f.op() == Op::Everyone || f.op() == Op::Common;
        for (std::size_t v = 0; v < n; ++v) {
          if (!rel[w][v]) continue;
          bool h = holds(f.operand(), v);
          if (box && !h) return false;
          if (!box && h) return true;
        }
        return box;
      }
    }
    return false;
  }

 private:
  const KripkeModel& m_;
  std::vector<std::vector<std::vector<bool>>> r_;
  std::vector<std::vector<bool>> uni_;
  std::vector<std::vector<bool>> tc_;
};

// Box agents along every root-to-leaf path of the core formula.
inline void box_paths(const Formula& f, std::vector<std::string>& path, std::vector<std::vector<std::string>>& out) {
  if (f.op() == Op::Box) path.push_back(f.name());
  if (f.arity() == 0) {
    out.push_back(path);
  } else {
    for (std::size_t i = 0; i < f.arity(); ++i) box_paths(f.operand(i), path, out);
  }
  if (f.op() == Op::Box) path.pop_back();
}

inline std::vector<std::vector<std::string>> box_paths(const Formula& f) {
  std::vector<std::string> path;
  std::vector<std::vector<std::string>> out;
  box_paths(f.core(), path, out);
  return out;
}

// No two adjacent boxes on a path share an agent.
inline bool alternating(const Formula& f) {
  for (const auto& p : box_paths(f)) {
    for (std::size_t i = 1; i < p.size(); ++i) {
      if (p[i] == p[i - 1]) return false;
    }
  }
  return true;
}

inline bool nonrepeating(const Formula& f) {
  for (const auto& p : box_paths(f)) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = i + 1; j < p.size(); ++j) {
        if (p[i] == p[j]) return false;
      }
    }
  }
  return true;
}

// In L_-a: alternating and no path starts with a.
inline bool in_minus(const Formula& f, const std::string& a) {
  if (!alternating(f)) return false;
  for (const auto& p : box_paths(f)) {
    if (!p.empty() && p.front() == a) return false;
  }
  return true;
}

// In L_X: nonrepeating and every box agent lies in X.
inline bool in_lx(const Formula& f, const std::vector<std::string>& x) {
  if (!nonrepeating(f)) return false;
  for (const auto& p : box_paths(f)) {
    for (const auto& a : p) {
      if (std::find(x.begin(), x.end(), a) == x.end()) return false;
    }
  }
  return true;
}

}  // namespace oracle
