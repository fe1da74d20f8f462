#include "altlab/formula.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace altlab {

struct Formula::Node {
  Op op;
  std::string name;
  std::vector<Formula> kids;
  std::size_t hash;
  bool core;
};

bool is_core_op(Op op) {
  switch (op) {
    case Op::Atom:
    case Op::False:
    case Op::Not:
    case Op::And:
    case Op::Box:
    case Op::Common:
    case Op::Everyone:
      return true;
    default:
      return false;
  }
}

bool is_modal_op(Op op) {
  switch (op) {
    case Op::Box:
    case Op::Diamond:
    case Op::Common:
    case Op::Everyone:
    case Op::CommonDual:
    case Op::EveryoneDual:
      return true;
    default:
      return false;
  }
}

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(Op op, std::string name, std::vector<Formula> kids) {
  std::size_t h = std::hash<std::string>{}(name);
  h = mix(h, static_cast<std::size_t>(op));
  bool core = is_core_op(op);
  for (const auto& k : kids) {
    h = mix(h, k.hash());
    core = core && k.is_core();
  }
  auto n = std::make_shared<const Node>(Node{op, std::move(name), std::move(kids), h, core});
  return Formula(std::move(n));
}

Formula::Formula() : Formula(atom("p")) {}

Formula Formula::atom(std::string name) { return make(Op::Atom, std::move(name), {}); }
Formula Formula::falsum() { return make(Op::False, {}, {}); }
Formula Formula::verum() { return make(Op::True, {}, {}); }
Formula Formula::negation(Formula f) { return make(Op::Not, {}, {std::move(f)}); }
Formula Formula::conj(Formula l, Formula r) { return make(Op::And, {}, {std::move(l), std::move(r)}); }
Formula Formula::disj(Formula l, Formula r) { return make(Op::Or, {}, {std::move(l), std::move(r)}); }
Formula Formula::implies(Formula l, Formula r) {
  return make(Op::Implies, {}, {std::move(l), std::move(r)});
}
Formula Formula::iff(Formula l, Formula r) { return make(Op::Iff, {}, {std::move(l), std::move(r)}); }
Formula Formula::box(std::string agent, Formula f) { return make(Op::Box, std::move(agent), {std::move(f)}); }
Formula Formula::diamond(std::string agent, Formula f) {
  return make(Op::Diamond, std::move(agent), {std::move(f)});
}
Formula Formula::common(Formula f) { return make(Op::Common, {}, {std::move(f)}); }
Formula Formula::everyone(Formula f) { return make(Op::Everyone, {}, {std::move(f)}); }
Formula Formula::common_dual(Formula f) { return make(Op::CommonDual, {}, {std::move(f)}); }
Formula Formula::everyone_dual(Formula f) { return make(Op::EveryoneDual, {}, {std::move(f)}); }

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
std::size_t Formula::arity() const { return node_->kids.size(); }
const Formula& Formula::operand(std::size_t i) const { return node_->kids.at(i); }
bool Formula::is_core() const { return node_->core; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->op != b.node_->op || a.node_->name != b.node_->name ||
      a.node_->kids.size() != b.node_->kids.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.node_->kids.size(); ++i) {
    if (a.node_->kids[i] != b.node_->kids[i]) return false;
  }
  return true;
}

bool structurally_less(const Formula& a, const Formula& b) {
  if (a.id() == b.id()) return false;
  if (a.op() != b.op()) return a.op() < b.op();
  if (a.name() != b.name()) return a.name() < b.name();
  if (a.arity() != b.arity()) return a.arity() < b.arity();
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (structurally_less(a.operand(i), b.operand(i))) return true;
    if (structurally_less(b.operand(i), a.operand(i))) return false;
  }
  return false;
}

Formula Formula::core() const {
  if (is_core()) return *this;
  auto kid = [this](std::size_t i) { return operand(i).core(); };
  switch (op()) {
    case Op::True:
      return negation(falsum());
    case Op::Not:
      return negation(kid(0));
    case Op::And:
      return conj(kid(0), kid(1));
    case Op::Or:
      return negation(conj(negation(kid(0)), negation(kid(1))));
    case Op::Implies:
      return negation(conj(kid(0), negation(kid(1))));
    case Op::Iff: {
      Formula l = kid(0);
      Formula r = kid(1);
      return conj(negation(conj(l, negation(r))), negation(conj(r, negation(l))));
    }
    case Op::Box:
      return box(name(), kid(0));
    case Op::Diamond:
      return negation(box(name(), negation(kid(0))));
    case Op::Common:
      return common(kid(0));
    case Op::Everyone:
      return everyone(kid(0));
    case Op::CommonDual:
      return negation(common(negation(kid(0))));
    case Op::EveryoneDual:
      return negation(everyone(negation(kid(0))));
    case Op::Atom:
    case Op::False:
      break;
  }
  return *this;
}

std::size_t modal_depth(const Formula& f) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < f.arity(); ++i) d = std::max(d, modal_depth(f.operand(i)));
  return is_modal_op(f.op()) ? d + 1 : d;
}

std::size_t formula_size(const Formula& f) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < f.arity(); ++i) n += formula_size(f.operand(i));
  return n;
}

namespace {

void collect(const Formula& f, std::set<std::string>& agents, std::set<std::string>& atoms, bool& ce) {
  switch (f.op()) {
    case Op::Atom:
      atoms.insert(f.name());
      break;
    case Op::Box:
    case Op::Diamond:
      agents.insert(f.name());
      break;
    case Op::Common:
    case Op::Everyone:
    case Op::CommonDual:
    case Op::EveryoneDual:
      ce = true;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < f.arity(); ++i) collect(f.operand(i), agents, atoms, ce);
}

}  // namespace

std::set<std::string> agents_of(const Formula& f) {
  std::set<std::string> agents, atoms;
  bool ce = false;
  collect(f, agents, atoms, ce);
  return agents;
}

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> agents, atoms;
  bool ce = false;
  collect(f, agents, atoms, ce);
  return atoms;
}

bool has_common_or_everyone(const Formula& f) {
  std::set<std::string> agents, atoms;
  bool ce = false;
  collect(f, agents, atoms, ce);
  return ce;
}

std::vector<std::string> default_universe(const Formula& f) {
  auto agents = agents_of(f);
  for (const char* fresh : {"a", "b", "x1", "x2"}) {
    if (agents.size() >= 2) break;
    agents.insert(fresh);
  }
  return {agents.begin(), agents.end()};
}

// --- occurrence trees -------------------------------------------------------

OccurrenceTree::OccurrenceTree(const Formula& f) {
  nodes_.push_back(Node{f, npos, {}, 1});
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    Formula here = nodes_[i].formula;
    for (std::size_t k = 0; k < here.arity(); ++k) {
      nodes_.push_back(Node{here.operand(k), i, {}, nodes_[i].length + 1});
      nodes_[i].children.push_back(nodes_.size() - 1);
    }
  }
}

bool OccurrenceTree::leq(std::size_t i, std::size_t j) const {
  for (std::size_t k = i; k != npos; k = nodes_[k].parent) {
    if (k == j) return true;
  }
  return false;
}

std::vector<Formula> OccurrenceTree::sequence(std::size_t i) const {
  std::vector<Formula> seq;
  for (std::size_t k = i; k != npos; k = nodes_[k].parent) seq.push_back(nodes_[k].formula);
  return seq;
}

OccurrenceTree occurrence_tree(const Formula& f) { return OccurrenceTree(f.core()); }

}  // namespace altlab
