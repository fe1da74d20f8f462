#include "altlab/bisimulation.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace altlab {

std::string to_string(BisimKind k) {
  switch (k) {
    case BisimKind::Plain:
      return "plain";
    case BisimKind::Alternating:
      return "alternating";
    case BisimKind::Nonrepeating:
      return "nonrepeating";
  }
  return "?";
}

BisimKind bisim_kind_from_string(const std::string& s) {
  if (s == "plain") return BisimKind::Plain;
  if (s == "alternating" || s == "alt") return BisimKind::Alternating;
  if (s == "nonrepeating" || s == "nr") return BisimKind::Nonrepeating;
  throw Error("unknown bisimulation kind '" + s + "'");
}

std::string to_string(Clause c) {
  switch (c) {
    case Clause::Atom:
      return "Atom";
    case Clause::Zig:
      return "Zig";
    case Clause::Zag:
      return "Zag";
  }
  return "?";
}

std::size_t PairRelation::count() const {
  std::size_t c = 0;
  for (const auto& r : rows) c += r.count();
  return c;
}

bool PairRelation::subset_of(const PairRelation& other) const {
  for (std::size_t u = 0; u < rows.size(); ++u) {
    if (!rows[u].is_subset_of(other.rows[u])) return false;
  }
  return true;
}

// --- index schemes ----------------------------------------------------------

IndexScheme::IndexScheme(BisimKind kind, std::vector<std::string> agents)
    : kind_(kind), agents_(std::move(agents)) {
  const std::size_t k = agents_.size();
  switch (kind_) {
    case BisimKind::Plain: {
      std::vector<Move> all;
      for (std::size_t a = 0; a < k; ++a) all.push_back({a, 0});
      moves_.push_back(all);
      break;
    }
    case BisimKind::Alternating: {
      for (std::size_t a = 0; a <= k; ++a) {
        std::vector<Move> mv;
        for (std::size_t b = 0; b < k; ++b) {
          if (b != a) mv.push_back({b, b});
        }
        moves_.push_back(mv);
      }
      break;
    }
    case BisimKind::Nonrepeating: {
      if (k >= 16) throw Error("too many agents for nonrepeating indices");
      for (std::size_t x = 0; x < (std::size_t{1} << k); ++x) {
        std::vector<Move> mv;
        for (std::size_t a = 0; a < k; ++a) {
          if (x & (std::size_t{1} << a)) mv.push_back({a, x & ~(std::size_t{1} << a)});
        }
        moves_.push_back(mv);
      }
      break;
    }
  }
}

std::string IndexScheme::index_name(std::size_t index) const {
  switch (kind_) {
    case BisimKind::Plain:
      return "plain";
    case BisimKind::Alternating:
      return index == agents_.size() ? "alt" : agents_[index];
    case BisimKind::Nonrepeating: {
      std::string s = "{";
      bool first = true;
      for (std::size_t a = 0; a < agents_.size(); ++a) {
        if (!(index & (std::size_t{1} << a))) continue;
        if (!first) s += ",";
        s += agents_[a];
        first = false;
      }
      return s + "}";
    }
  }
  return "?";
}

std::optional<std::size_t> IndexScheme::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (index_name(i) == name) return i;
  }
  return std::nullopt;
}

std::size_t IndexScheme::alt_index() const { return agents_.size(); }

std::size_t IndexScheme::full_index() const { return (std::size_t{1} << agents_.size()) - 1; }

bool BisimFamily::related(const std::string& index, std::size_t u, std::size_t v) const {
  auto i = scheme().index_of(index);
  if (!i) throw Error("no index '" + index + "' in a " + to_string(kind) + " family");
  return related(*i, u, v);
}

// --- pair checks ------------------------------------------------------------

namespace {

std::vector<std::size_t> agent_map(const KripkeModel& m, const KripkeModel& n) {
  std::set<std::string> sm(m.agents().begin(), m.agents().end());
  std::set<std::string> sn(n.agents().begin(), n.agents().end());
  if (sm != sn) throw ModelError("bisimulation needs models over the same agents");
  std::vector<std::size_t> out;
  for (const auto& a : m.agents()) out.push_back(n.require_agent(a));
  return out;
}

}  // namespace

PairChecker::PairChecker(const KripkeModel& m, const KripkeModel& n, const IndexScheme& scheme)
    : m_(m), n_(n), scheme_(scheme), n_agent_(agent_map(m, n)), atoms_(m.num_worlds(), n.num_worlds()) {
  for (std::size_t a = 0; a < m.num_agents(); ++a) {
    std::vector<WorldSet> rows(n.num_worlds(), WorldSet(n.num_worlds()));
    const Relation& r = n.relation(n_agent_[a]);
    for (std::size_t v = 0; v < n.num_worlds(); ++v) {
      for (std::size_t w : r.successors(v)) rows[v].set(w);
    }
    n_succ_.push_back(std::move(rows));
  }
  std::set<std::string> atoms;
  for (const auto& [p, s] : m.valuations()) atoms.insert(p);
  for (const auto& [p, s] : n.valuations()) atoms.insert(p);
  for (std::size_t u = 0; u < m.num_worlds(); ++u) {
    for (std::size_t v = 0; v < n.num_worlds(); ++v) {
      bool same = true;
      for (const auto& p : atoms) {
        if (m.holds_atom(p, u) != n.holds_atom(p, v)) {
          same = false;
          break;
        }
      }
      atoms_.set(u, v, same);
    }
  }
}

bool PairChecker::atoms_agree(std::size_t u, std::size_t v) const { return atoms_.test(u, v); }

PairRelation PairChecker::atom_relation() const { return atoms_; }

std::optional<std::pair<Clause, std::size_t>> PairChecker::first_violation(
    const std::vector<PairRelation>& target, std::size_t index, std::size_t u, std::size_t v) const {
  if (!atoms_agree(u, v)) return std::make_pair(Clause::Atom, std::size_t{0});
  for (const auto& mv : scheme_.moves(index)) {
    const PairRelation& t = target[mv.target];
    const WorldSet& succ_v = n_succ_[mv.agent][v];
    const auto& succ_u = m_.relation(mv.agent).successors(u);
    for (std::size_t u2 : succ_u) {
      if (!t.rows[u2].intersects(succ_v)) return std::make_pair(Clause::Zig, mv.agent);
    }
    for (std::size_t v2 = succ_v.find_first(); v2 != WorldSet::npos; v2 = succ_v.find_next(v2)) {
      bool matched = false;
      for (std::size_t u2 : succ_u) {
        if (t.test(u2, v2)) {
          matched = true;
          break;
        }
      }
      if (!matched) return std::make_pair(Clause::Zag, mv.agent);
    }
  }
  return std::nullopt;
}

// --- families ---------------------------------------------------------------

namespace {

void check_bound(const KripkeModel& m, BisimKind kind, std::size_t bound) {
  if (kind == BisimKind::Nonrepeating && m.num_agents() > bound) {
    throw Error("nonrepeating families are limited to " + std::to_string(bound) + " agents");
  }
}

std::vector<PairRelation> refine_once(const PairChecker& pc, const IndexScheme& s,
                                      const std::vector<PairRelation>& from) {
  std::vector<PairRelation> out = from;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t u = 0; u < from[i].rows.size(); ++u) {
      const WorldSet& row = from[i].rows[u];
      for (std::size_t v = row.find_first(); v != WorldSet::npos; v = row.find_next(v)) {
        if (pc.first_violation(from, i, u, v)) out[i].set(u, v, false);
      }
    }
  }
  return out;
}

}  // namespace

BisimFamily greatest_family(const KripkeModel& m, const KripkeModel& n, BisimKind kind,
                            std::size_t nonrepeating_bound) {
  check_bound(m, kind, nonrepeating_bound);
  IndexScheme s(kind, m.agents());
  PairChecker pc(m, n, s);
  std::vector<PairRelation> cur(s.size(), pc.atom_relation());
  while (true) {
    auto next = refine_once(pc, s, cur);
    if (next == cur) break;
    cur = std::move(next);
  }
  BisimFamily fam;
  fam.kind = kind;
  fam.agents = m.agents();
  fam.relations = std::move(cur);
  return fam;
}

BisimFamily bounded_family(const KripkeModel& m, const KripkeModel& n, BisimKind kind, std::size_t depth,
                           std::size_t nonrepeating_bound) {
  check_bound(m, kind, nonrepeating_bound);
  IndexScheme s(kind, m.agents());
  PairChecker pc(m, n, s);
  BisimFamily fam;
  fam.kind = kind;
  fam.agents = m.agents();
  fam.depth = depth;
  fam.layers.emplace_back(s.size(), pc.atom_relation());
  for (std::size_t k = 0; k < depth; ++k) fam.layers.push_back(refine_once(pc, s, fam.layers.back()));
  fam.relations = fam.layers.back();
  return fam;
}

std::string BisimVerdict::describe(const KripkeModel& m, const KripkeModel& n, const IndexScheme& s) const {
  if (ok) return "ok";
  std::string d = to_string(clause) + " violated at index " + s.index_name(index) + " for (" + m.world_name(left) +
                  ", " + n.world_name(right) + ")";
  if (clause != Clause::Atom) d += " along " + agent;
  return d;
}

namespace {

BisimVerdict scan(const PairChecker& pc, const IndexScheme& s, const std::vector<PairRelation>& rel,
                  const std::vector<PairRelation>* target, std::size_t layer) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t u = 0; u < rel[i].rows.size(); ++u) {
      const WorldSet& row = rel[i].rows[u];
      for (std::size_t v = row.find_first(); v != WorldSet::npos; v = row.find_next(v)) {
        std::optional<std::pair<Clause, std::size_t>> bad;
        if (target == nullptr) {
          if (!pc.atoms_agree(u, v)) bad = std::make_pair(Clause::Atom, std::size_t{0});
        } else {
          bad = pc.first_violation(*target, i, u, v);
        }
        if (bad) {
          BisimVerdict vd;
          vd.ok = false;
          vd.index = i;
          vd.left = u;
          vd.right = v;
          vd.clause = bad->first;
          if (bad->first != Clause::Atom) vd.agent = s.agents()[bad->second];
          vd.layer = layer;
          return vd;
        }
      }
    }
  }
  return {};
}

void check_shape(const KripkeModel& m, const KripkeModel& n, const IndexScheme& s,
                 const std::vector<PairRelation>& rel) {
  if (rel.size() != s.size()) throw Error("family has the wrong number of indices");
  for (const auto& r : rel) {
    if (r.rows.size() != m.num_worlds()) throw Error("family relation has the wrong number of rows");
    for (const auto& row : r.rows) {
      if (row.size() != n.num_worlds()) throw Error("family relation has the wrong row width");
    }
  }
}

}  // namespace

BisimVerdict verify_layers(const KripkeModel& m, const KripkeModel& n, BisimKind kind,
                           const std::vector<std::vector<PairRelation>>& layers) {
  IndexScheme s(kind, m.agents());
  PairChecker pc(m, n, s);
  for (std::size_t k = 0; k < layers.size(); ++k) {
    check_shape(m, n, s, layers[k]);
    auto vd = scan(pc, s, layers[k], k == 0 ? nullptr : &layers[k - 1], k);
    if (!vd.ok) return vd;
  }
  return {};
}

BisimVerdict verify_family(const KripkeModel& m, const KripkeModel& n, const BisimFamily& fam) {
  if (fam.depth) {
    if (fam.layers.empty()) throw Error("bounded family without layers");
    return verify_layers(m, n, fam.kind, fam.layers);
  }
  IndexScheme s(fam.kind, fam.agents);
  PairChecker pc(m, n, s);
  check_shape(m, n, s, fam.relations);
  return scan(pc, s, fam.relations, &fam.relations, 0);
}

// --- signature refinement ---------------------------------------------------

std::vector<std::vector<std::size_t>> refine_classes(const KripkeModel& m, BisimKind kind,
                                                     std::optional<std::size_t> depth) {
  IndexScheme s(kind, m.agents());
  const std::size_t nw = m.num_worlds();

  std::vector<std::size_t> atom_class(nw);
  {
    std::map<std::vector<bool>, std::size_t> ids;
    for (std::size_t w = 0; w < nw; ++w) {
      std::vector<bool> sig;
      for (const auto& [p, set] : m.valuations()) sig.push_back(set.test(w));
      atom_class[w] = ids.try_emplace(sig, ids.size()).first->second;
    }
  }
  std::vector<std::vector<std::size_t>> cls(s.size(), atom_class);
  std::vector<std::size_t> counts(s.size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i) counts[i] = *std::max_element(atom_class.begin(), atom_class.end()) + 1;

  for (std::size_t round = 0; !depth || round < *depth; ++round) {
    std::vector<std::vector<std::size_t>> next(s.size(), std::vector<std::size_t>(nw));
    std::vector<std::size_t> next_counts(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::map<std::vector<std::size_t>, std::size_t> ids;
      for (std::size_t w = 0; w < nw; ++w) {
        // signature: own class, then per move the sorted successor classes
        std::vector<std::size_t> sig{cls[i][w]};
        for (const auto& mv : s.moves(i)) {
          std::vector<std::size_t> succ;
          for (std::size_t w2 : m.relation(mv.agent).successors(w)) succ.push_back(cls[mv.target][w2]);
          std::sort(succ.begin(), succ.end());
          succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
          sig.push_back(static_cast<std::size_t>(-1));
          sig.insert(sig.end(), succ.begin(), succ.end());
        }
        next[i][w] = ids.try_emplace(sig, ids.size()).first->second;
      }
      next_counts[i] = ids.size();
    }
    bool stable = next_counts == counts;
    cls = std::move(next);
    counts = std::move(next_counts);
    if (!depth && stable) break;
  }
  return cls;
}

KripkeModel disjoint_union(const std::vector<const KripkeModel*>& models, std::vector<std::size_t>* offsets) {
  if (models.empty()) throw Error("disjoint union of no models");
  std::vector<std::string> worlds;
  std::vector<std::size_t> off;
  for (std::size_t i = 0; i < models.size(); ++i) {
    off.push_back(worlds.size());
    for (const auto& w : models[i]->worlds()) worlds.push_back(std::to_string(i) + ":" + w);
  }
  KripkeModel u(models.front()->agents(), worlds);
  for (std::size_t i = 0; i < models.size(); ++i) {
    const KripkeModel& m = *models[i];
    std::vector<std::size_t> amap = agent_map(u, m);
    for (std::size_t a = 0; a < u.num_agents(); ++a) {
      for (std::size_t w = 0; w < m.num_worlds(); ++w) {
        for (std::size_t w2 : m.relation(amap[a]).successors(w)) u.add_edge(a, off[i] + w, off[i] + w2);
      }
    }
    for (const auto& [p, set] : m.valuations()) {
      u.declare_atom(p);
      for (std::size_t w = 0; w < m.num_worlds(); ++w) {
        if (set.test(w)) u.set_true(p, off[i] + w);
      }
    }
  }
  if (offsets) *offsets = std::move(off);
  return u;
}

}  // namespace altlab
