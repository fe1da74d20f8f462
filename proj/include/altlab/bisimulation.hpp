// Plain, agent-alternating and agent-nonrepeating bisimulation families
// between two finite models, as greatest fixed points or depth-bounded layers.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "altlab/kripke.hpp"

namespace altlab {

enum class BisimKind { Plain, Alternating, Nonrepeating };

std::string to_string(BisimKind k);
BisimKind bisim_kind_from_string(const std::string& s);

// rows[u] is the set of worlds of the right model related to world u of the left.
struct PairRelation {
  std::vector<WorldSet> rows;

  PairRelation() = default;
  PairRelation(std::size_t left, std::size_t right) : rows(left, WorldSet(right)) {}

  bool test(std::size_t u, std::size_t v) const { return rows[u].test(v); }
  void set(std::size_t u, std::size_t v, bool on = true) { rows[u][v] = on; }
  std::size_t count() const;
  bool subset_of(const PairRelation& other) const;
  friend bool operator==(const PairRelation&, const PairRelation&) = default;
};

// Index layout, with agents in the order of the left model:
//   Plain         one index, "plain"
//   Alternating   index i < |A| is agent i (the relation written with -a),
//                 index |A| is "alt"
//   Nonrepeating  index X is the bitmask of an agent set
class IndexScheme {
 public:
  struct Move {
    std::size_t agent;
    std::size_t target;
  };

  IndexScheme(BisimKind kind, std::vector<std::string> agents);

  BisimKind kind() const { return kind_; }
  const std::vector<std::string>& agents() const { return agents_; }
  std::size_t size() const { return moves_.size(); }
  // The Zig/Zag obligations at an index: move along R_agent into `target`.
  const std::vector<Move>& moves(std::size_t index) const { return moves_[index]; }
  std::string index_name(std::size_t index) const;
  std::optional<std::size_t> index_of(const std::string& name) const;
  std::size_t alt_index() const;   // Alternating only
  std::size_t full_index() const;  // Nonrepeating: the whole agent set

 private:
  BisimKind kind_;
  std::vector<std::string> agents_;
  std::vector<std::vector<Move>> moves_;
};

inline constexpr std::size_t kDefaultNonrepeatingBound = 4;

struct BisimFamily {
  BisimKind kind = BisimKind::Plain;
  std::vector<std::string> agents;
  std::vector<PairRelation> relations;  // one per index
  std::optional<std::size_t> depth;     // nullopt stands for omega
  // For bounded families: layers[k][i] is the depth-k relation at index i;
  // layers.back() == relations.
  std::vector<std::vector<PairRelation>> layers;

  IndexScheme scheme() const { return IndexScheme(kind, agents); }
  bool related(std::size_t index, std::size_t u, std::size_t v) const { return relations[index].test(u, v); }
  bool related(const std::string& index, std::size_t u, std::size_t v) const;
};

// The two models must have the same agent set (in any order).
BisimFamily greatest_family(const KripkeModel& m, const KripkeModel& n, BisimKind kind,
                            std::size_t nonrepeating_bound = kDefaultNonrepeatingBound);
BisimFamily bounded_family(const KripkeModel& m, const KripkeModel& n, BisimKind kind, std::size_t depth,
                           std::size_t nonrepeating_bound = kDefaultNonrepeatingBound);

enum class Clause { Atom, Zig, Zag };
std::string to_string(Clause c);

struct BisimVerdict {
  bool ok = true;
  std::size_t index = 0;
  std::size_t left = 0;
  std::size_t right = 0;
  Clause clause = Clause::Atom;
  std::string agent;  // the agent of the failing Zig/Zag move
  std::size_t layer = 0;
  std::string describe(const KripkeModel& m, const KripkeModel& n, const IndexScheme& s) const;
};

// Checks every recorded pair: omega families against themselves, bounded
// families layer by layer.
BisimVerdict verify_family(const KripkeModel& m, const KripkeModel& n, const BisimFamily& fam);
// layers[0] needs only atom agreement; layers[k] must satisfy Zig/Zag into layers[k-1].
BisimVerdict verify_layers(const KripkeModel& m, const KripkeModel& n, BisimKind kind,
                           const std::vector<std::vector<PairRelation>>& layers);

// The single-pair check used by the fixpoint: atoms agree and every move of
// `index` can be matched inside `target`.
class PairChecker {
 public:
  PairChecker(const KripkeModel& m, const KripkeModel& n, const IndexScheme& scheme);

  bool atoms_agree(std::size_t u, std::size_t v) const;
  // Returns the failing clause and agent, or nullopt.
  std::optional<std::pair<Clause, std::size_t>> first_violation(const std::vector<PairRelation>& target,
                                                                std::size_t index, std::size_t u,
                                                                std::size_t v) const;
  PairRelation atom_relation() const;

 private:
  const KripkeModel& m_;
  const KripkeModel& n_;
  const IndexScheme& scheme_;
  std::vector<std::size_t> n_agent_;  // left agent index -> right agent index
  std::vector<std::vector<WorldSet>> n_succ_;  // [agent][v] as bitsets
  PairRelation atoms_;
};

// Class ids per index and world for a single model against itself, by
// signature refinement. depth nullopt refines to the fixed point. These are
// the equivalence classes of the corresponding family on m.
std::vector<std::vector<std::size_t>> refine_classes(const KripkeModel& m, BisimKind kind,
                                                     std::optional<std::size_t> depth);

// Disjoint union; worlds are renamed "i:w" for the i-th model. Atoms are merged.
KripkeModel disjoint_union(const std::vector<const KripkeModel*>& models, std::vector<std::size_t>* offsets);

}  // namespace altlab
