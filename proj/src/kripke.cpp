#include "altlab/kripke.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace altlab {

void Relation::add(std::size_t from, std::size_t to) {
  auto& s = succ_.at(from);
  auto it = std::lower_bound(s.begin(), s.end(), to);
  if (it == s.end() || *it != to) s.insert(it, to);
}

bool Relation::contains(std::size_t from, std::size_t to) const {
  const auto& s = succ_[from];
  return std::binary_search(s.begin(), s.end(), to);
}

std::size_t Relation::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : succ_) n += s.size();
  return n;
}

KripkeModel::KripkeModel(std::vector<std::string> agents, std::vector<std::string> worlds)
    : agents_(std::move(agents)), worlds_(std::move(worlds)) {
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    if (!is_valid_agent_name(agents_[i])) throw ModelError("invalid agent name '" + agents_[i] + "'");
    for (std::size_t j = 0; j < i; ++j) {
      if (agents_[j] == agents_[i]) throw ModelError("duplicate agent '" + agents_[i] + "'");
    }
  }
  for (std::size_t i = 0; i < worlds_.size(); ++i) {
    if (!world_ix_.emplace(worlds_[i], i).second) throw ModelError("duplicate world '" + worlds_[i] + "'");
  }
  rel_.assign(agents_.size(), Relation(worlds_.size()));
}

std::optional<std::size_t> KripkeModel::world_index(const std::string& name) const {
  auto it = world_ix_.find(name);
  if (it == world_ix_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> KripkeModel::agent_index(const std::string& name) const {
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    if (agents_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t KripkeModel::require_world(const std::string& name) const {
  auto w = world_index(name);
  if (!w) throw ModelError("unknown world '" + name + "'");
  return *w;
}

std::size_t KripkeModel::require_agent(const std::string& name) const {
  auto a = agent_index(name);
  if (!a) throw ModelError("unknown agent '" + name + "'");
  return *a;
}

void KripkeModel::add_edge(std::size_t agent, std::size_t from, std::size_t to) {
  if (from >= worlds_.size() || to >= worlds_.size()) throw ModelError("edge endpoint out of range");
  rel_.at(agent).add(from, to);
}

void KripkeModel::add_edge(const std::string& agent, const std::string& from, const std::string& to) {
  add_edge(require_agent(agent), require_world(from), require_world(to));
}

void KripkeModel::declare_atom(const std::string& atom) { val_.try_emplace(atom, WorldSet(worlds_.size())); }

void KripkeModel::set_true(const std::string& atom, std::size_t world) {
  if (world >= worlds_.size()) throw ModelError("valuation world out of range");
  declare_atom(atom);
  val_[atom].set(world);
}

void KripkeModel::set_true(const std::string& atom, const std::string& world) {
  set_true(atom, require_world(world));
}

bool KripkeModel::holds_atom(const std::string& atom, std::size_t world) const {
  const WorldSet* v = valuation(atom);
  return v != nullptr && v->test(world);
}

const WorldSet* KripkeModel::valuation(const std::string& atom) const {
  auto it = val_.find(atom);
  return it == val_.end() ? nullptr : &it->second;
}

PointedModel make_pointed(KripkeModel m, const std::string& point) {
  std::size_t w = m.require_world(point);
  return PointedModel{std::move(m), w};
}

// --- frame properties -------------------------------------------------------

std::string to_string(FrameProperty p) {
  switch (p) {
    case FrameProperty::Serial:
      return "serial";
    case FrameProperty::Reflexive:
      return "reflexive";
    case FrameProperty::Transitive:
      return "transitive";
    case FrameProperty::Euclidean:
      return "euclidean";
    case FrameProperty::Symmetric:
      return "symmetric";
  }
  return "?";
}

bool AgentFrameReport::has(FrameProperty p) const {
  switch (p) {
    case FrameProperty::Serial:
      return serial;
    case FrameProperty::Reflexive:
      return reflexive;
    case FrameProperty::Transitive:
      return transitive;
    case FrameProperty::Euclidean:
      return euclidean;
    case FrameProperty::Symmetric:
      return symmetric;
  }
  return false;
}

AgentFrameReport relation_properties(const Relation& r) {
  AgentFrameReport rep{true, true, true, true, true};
  const std::size_t n = r.size();
  for (std::size_t u = 0; u < n; ++u) {
    const auto& su = r.successors(u);
    if (su.empty()) rep.serial = false;
    if (!r.contains(u, u)) rep.reflexive = false;
    for (std::size_t v : su) {
      if (rep.symmetric && !r.contains(v, u)) rep.symmetric = false;
      if (rep.transitive) {
        for (std::size_t w : r.successors(v)) {
          if (!r.contains(u, w)) {
            rep.transitive = false;
            break;
          }
        }
      }
      if (rep.euclidean) {
        for (std::size_t w : su) {
          if (!r.contains(v, w)) {
            rep.euclidean = false;
            break;
          }
        }
      }
    }
  }
  return rep;
}

std::vector<AgentFrameReport> frame_properties(const KripkeModel& m) {
  std::vector<AgentFrameReport> out;
  out.reserve(m.num_agents());
  for (std::size_t a = 0; a < m.num_agents(); ++a) out.push_back(relation_properties(m.relation(a)));
  return out;
}

namespace {

constexpr unsigned kSerial = static_cast<unsigned>(FrameProperty::Serial);
constexpr unsigned kRefl = static_cast<unsigned>(FrameProperty::Reflexive);
constexpr unsigned kTrans = static_cast<unsigned>(FrameProperty::Transitive);
constexpr unsigned kEucl = static_cast<unsigned>(FrameProperty::Euclidean);
constexpr unsigned kSym = static_cast<unsigned>(FrameProperty::Symmetric);

const std::vector<std::pair<std::string, unsigned>>& alias_table() {
  static const std::vector<std::pair<std::string, unsigned>> table = {
      {"K", 0},
      {"KD", kSerial},
      {"T", kRefl},
      {"KT", kRefl},
      {"KB", kSym},
      {"K4", kTrans},
      {"K5", kEucl},
      {"K45", kTrans | kEucl},
      {"KD4", kSerial | kTrans},
      {"KD5", kSerial | kEucl},
      {"KD45", kSerial | kTrans | kEucl},
      {"KDB", kSerial | kSym},
      {"B", kRefl | kSym},
      {"KTB", kRefl | kSym},
      {"S4", kRefl | kTrans},
      {"S5", kRefl | kTrans | kEucl},
      {"KB5", kSym | kEucl},
  };
  return table;
}

}  // namespace

FrameClass FrameClass::from_name(const std::string& name) {
  for (const auto& [alias, mask] : alias_table()) {
    if (alias == name) return FrameClass(mask, name);
  }
  unsigned mask = 0;
  std::stringstream ss(name);
  std::string part;
  bool any = false;
  while (std::getline(ss, part, '+')) {
    any = true;
    if (part == "serial") {
      mask |= kSerial;
    } else if (part == "reflexive") {
      mask |= kRefl;
    } else if (part == "transitive") {
      mask |= kTrans;
    } else if (part == "euclidean") {
      mask |= kEucl;
    } else if (part == "symmetric") {
      mask |= kSym;
    } else {
      throw Error("unknown frame class '" + name + "'");
    }
  }
  if (!any) throw Error("empty frame class name");
  return FrameClass(mask, name);
}

const std::vector<std::string>& FrameClass::alias_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [alias, mask] : alias_table()) v.push_back(alias);
    return v;
  }();
  return names;
}

bool FrameClass::admits(const AgentFrameReport& r) const {
  for (FrameProperty p : {FrameProperty::Serial, FrameProperty::Reflexive, FrameProperty::Transitive,
                          FrameProperty::Euclidean, FrameProperty::Symmetric}) {
    if (needs(p) && !r.has(p)) return false;
  }
  return true;
}

bool FrameClass::admits(const KripkeModel& m) const {
  for (const auto& r : frame_properties(m)) {
    if (!admits(r)) return false;
  }
  return true;
}

// --- model checking ---------------------------------------------------------

Evaluator::Evaluator(const KripkeModel& m) : m_(m), union_pred_(m.num_worlds()) {
  for (std::size_t a = 0; a < m.num_agents(); ++a) {
    const Relation& r = m.relation(a);
    for (std::size_t u = 0; u < m.num_worlds(); ++u) {
      for (std::size_t v : r.successors(u)) union_pred_[v].push_back(u);
    }
  }
  for (auto& preds : union_pred_) {
    std::sort(preds.begin(), preds.end());
    preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
  }
}

const WorldSet& Evaluator::extension(const Formula& f) {
  auto it = memo_.find(f.id());
  if (it != memo_.end()) return it->second;
  WorldSet s = compute(f);
  keep_alive_.push_back(f);
  return memo_.emplace(f.id(), std::move(s)).first->second;
}

WorldSet Evaluator::box(const Relation& r, const WorldSet& inner) const {
  WorldSet out(m_.num_worlds());
  for (std::size_t u = 0; u < m_.num_worlds(); ++u) {
    bool all = true;
    for (std::size_t v : r.successors(u)) {
      if (!inner.test(v)) {
        all = false;
        break;
      }
    }
    out[u] = all;
  }
  return out;
}

WorldSet Evaluator::union_box(const WorldSet& inner) const {
  WorldSet out(m_.num_worlds());
  out.set();
  for (std::size_t v = 0; v < m_.num_worlds(); ++v) {
    if (inner.test(v)) continue;
    for (std::size_t u : union_pred_[v]) out.reset(u);
  }
  return out;
}

// u satisfies C phi iff no world outside phi is reachable from u in one or
// more steps of the union relation: search backwards from the violations.
WorldSet Evaluator::common(const WorldSet& inner) const {
  WorldSet can_reach_bad(m_.num_worlds());
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < m_.num_worlds(); ++v) {
    if (inner.test(v)) continue;
    for (std::size_t u : union_pred_[v]) {
      if (!can_reach_bad.test(u)) {
        can_reach_bad.set(u);
        queue.push_back(u);
      }
    }
  }
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t u : union_pred_[v]) {
      if (!can_reach_bad.test(u)) {
        can_reach_bad.set(u);
        queue.push_back(u);
      }
    }
  }
  return ~can_reach_bad;
}

WorldSet Evaluator::compute(const Formula& f) {
  const std::size_t n = m_.num_worlds();
  switch (f.op()) {
    case Op::Atom: {
      const WorldSet* v = m_.valuation(f.name());
      if (v == nullptr) {
        unknown_.insert(f.name());
        return WorldSet(n);
      }
      return *v;
    }
    case Op::False:
      return WorldSet(n);
    case Op::True:
      return ~WorldSet(n);
    case Op::Not:
      return ~extension(f.operand());
    case Op::And:
      return extension(f.lhs()) & extension(f.rhs());
    case Op::Or:
      return extension(f.lhs()) | extension(f.rhs());
    case Op::Implies:
      return ~extension(f.lhs()) | extension(f.rhs());
    case Op::Iff:
      return ~(extension(f.lhs()) ^ extension(f.rhs()));
    case Op::Box:
    case Op::Diamond: {
      auto a = m_.agent_index(f.name());
      if (!a) throw ModelError("formula mentions agent '" + f.name() + "' unknown to the model");
      const Relation& r = m_.relation(*a);
      if (f.op() == Op::Box) return box(r, extension(f.operand()));
      return ~box(r, ~extension(f.operand()));
    }
    case Op::Everyone:
      return union_box(extension(f.operand()));
    case Op::EveryoneDual:
      return ~union_box(~extension(f.operand()));
    case Op::Common:
      return common(extension(f.operand()));
    case Op::CommonDual:
      return ~common(~extension(f.operand()));
  }
  return WorldSet(n);
}

bool model_check(const KripkeModel& m, std::size_t world, const Formula& f) {
  Evaluator ev(m);
  return ev.holds(f, world);
}

bool model_check(const PointedModel& pm, const Formula& f) { return model_check(pm.model, pm.point, f); }

}  // namespace altlab
