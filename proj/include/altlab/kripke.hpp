// Finite multi-agent Kripke models, frame properties and model checking.
#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "altlab/formula.hpp"

namespace altlab {

using WorldSet = boost::dynamic_bitset<>;

class ModelError : public Error {
 public:
  using Error::Error;
};

// One agent's accessibility relation as sorted successor lists.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t worlds) : succ_(worlds) {}

  std::size_t size() const { return succ_.size(); }
  void add(std::size_t from, std::size_t to);
  bool contains(std::size_t from, std::size_t to) const;
  const std::vector<std::size_t>& successors(std::size_t from) const { return succ_[from]; }
  std::size_t edge_count() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::vector<std::vector<std::size_t>> succ_;
};

class KripkeModel {
 public:
  KripkeModel() = default;
  KripkeModel(std::vector<std::string> agents, std::vector<std::string> worlds);

  std::size_t num_worlds() const { return worlds_.size(); }
  std::size_t num_agents() const { return agents_.size(); }
  const std::vector<std::string>& agents() const { return agents_; }
  const std::vector<std::string>& worlds() const { return worlds_; }
  const std::string& world_name(std::size_t w) const { return worlds_.at(w); }
  std::optional<std::size_t> world_index(const std::string& name) const;
  std::optional<std::size_t> agent_index(const std::string& name) const;
  std::size_t require_world(const std::string& name) const;
  std::size_t require_agent(const std::string& name) const;

  const Relation& relation(std::size_t agent) const { return rel_.at(agent); }
  const Relation& relation(const std::string& agent) const { return rel_.at(require_agent(agent)); }
  void add_edge(std::size_t agent, std::size_t from, std::size_t to);
  void add_edge(const std::string& agent, const std::string& from, const std::string& to);
  // Declares a valuation entry; the atom becomes known even if never set true.
  void declare_atom(const std::string& atom);
  void set_true(const std::string& atom, std::size_t world);
  void set_true(const std::string& atom, const std::string& world);
  bool holds_atom(const std::string& atom, std::size_t world) const;
  // nullptr for undeclared atoms
  const WorldSet* valuation(const std::string& atom) const;
  const std::map<std::string, WorldSet>& valuations() const { return val_; }

  friend bool operator==(const KripkeModel&, const KripkeModel&) = default;

 private:
  std::vector<std::string> agents_;
  std::vector<std::string> worlds_;
  std::vector<Relation> rel_;
  std::map<std::string, WorldSet> val_;
  std::unordered_map<std::string, std::size_t> world_ix_;
};

struct PointedModel {
  KripkeModel model;
  std::size_t point = 0;

  const std::string& point_name() const { return model.world_name(point); }
};

PointedModel make_pointed(KripkeModel m, const std::string& point);

// --- frame properties -------------------------------------------------------

enum class FrameProperty : unsigned { Serial = 1, Reflexive = 2, Transitive = 4, Euclidean = 8, Symmetric = 16 };

std::string to_string(FrameProperty p);

struct AgentFrameReport {
  bool serial = false;
  bool reflexive = false;
  bool transitive = false;
  bool euclidean = false;
  bool symmetric = false;

  bool has(FrameProperty p) const;
  bool equivalence() const { return reflexive && transitive && symmetric; }
};

AgentFrameReport relation_properties(const Relation& r);
// Indexed like model.agents().
std::vector<AgentFrameReport> frame_properties(const KripkeModel& m);

// A frame class: the same property set required of every agent.
class FrameClass {
 public:
  FrameClass() = default;
  explicit FrameClass(unsigned mask, std::string name = {}) : mask_(mask), name_(std::move(name)) {}

  // Cube aliases (K, KD, T, KT, KB, K4, K5, K45, KD4, KD5, KD45, KDB, B, S4,
  // S5, KB5) or '+'-joined property names such as "serial+transitive".
  static FrameClass from_name(const std::string& name);
  static const std::vector<std::string>& alias_names();

  unsigned mask() const { return mask_; }
  bool needs(FrameProperty p) const { return (mask_ & static_cast<unsigned>(p)) != 0; }
  bool admits(const AgentFrameReport& r) const;
  bool admits(const Relation& r) const { return admits(relation_properties(r)); }
  bool admits(const KripkeModel& m) const;
  const std::string& name() const { return name_; }

 private:
  unsigned mask_ = 0;
  std::string name_;
};

// --- model checking ---------------------------------------------------------

// Labels each subformula with its truth set. Undeclared atoms are false and
// recorded in unknown_atoms().
class Evaluator {
 public:
  explicit Evaluator(const KripkeModel& m);

  const WorldSet& extension(const Formula& f);
  bool holds(const Formula& f, std::size_t world) { return extension(f).test(world); }
  const std::set<std::string>& unknown_atoms() const { return unknown_; }

 private:
  WorldSet compute(const Formula& f);
  WorldSet box(const Relation& r, const WorldSet& inner) const;
  WorldSet union_box(const WorldSet& inner) const;
  WorldSet common(const WorldSet& inner) const;

  const KripkeModel& m_;
  std::unordered_map<const void*, WorldSet> memo_;
  std::vector<Formula> keep_alive_;
  std::set<std::string> unknown_;
  std::vector<std::vector<std::size_t>> union_pred_;
};

bool model_check(const PointedModel& pm, const Formula& f);
bool model_check(const KripkeModel& m, std::size_t world, const Formula& f);

}  // namespace altlab
