// Formulas of the multi-agent modal language with common/everyone belief.
//
// A Formula is an immutable, reference-counted tree. Sugar connectives
// (or, implies, iff, diamonds, true, the duals of C and E) are kept in the
// tree so that rendering round-trips, and core() expands them into the
// core connectives {atom, false, not, and, box, C, E}.
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace altlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Op : std::uint8_t {
  Atom,
  False,
  Not,
  And,
  Box,
  Common,
  Everyone,
  // sugar
  True,
  Or,
  Implies,
  Iff,
  Diamond,
  CommonDual,
  EveryoneDual,
};

bool is_core_op(Op op);
bool is_modal_op(Op op);

class Formula {
 public:
  Formula();  // the atom "p"; mostly useful for containers

  static Formula atom(std::string name);
  static Formula falsum();
  static Formula verum();
  static Formula negation(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula implies(Formula l, Formula r);
  static Formula iff(Formula l, Formula r);
  static Formula box(std::string agent, Formula f);
  static Formula diamond(std::string agent, Formula f);
  static Formula common(Formula f);
  static Formula everyone(Formula f);
  static Formula common_dual(Formula f);
  static Formula everyone_dual(Formula f);

  Op op() const;
  // Atom name for atoms, agent name for boxes and diamonds, empty otherwise.
  const std::string& name() const;
  std::size_t arity() const;
  const Formula& operand(std::size_t i = 0) const;
  const Formula& lhs() const { return operand(0); }
  const Formula& rhs() const { return operand(1); }

  bool is_core() const;  // no sugar anywhere in the tree
  Formula core() const;

  std::size_t hash() const;
  // Identity of the shared node; stable for the lifetime of the formula.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Op op, std::string name, std::vector<Formula> kids);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Structural total order, used for deterministic containers.
bool structurally_less(const Formula& a, const Formula& b);

struct FormulaLess {
  bool operator()(const Formula& a, const Formula& b) const { return structurally_less(a, b); }
};

// --- parsing and printing ---------------------------------------------------

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownAgentError : public Error {
 public:
  explicit UnknownAgentError(const std::string& agent);
  const std::string& agent() const { return agent_; }

 private:
  std::string agent_;
};

bool is_valid_agent_name(std::string_view name);

Formula parse_formula(std::string_view text);
// Also rejects agents outside the given universe.
Formula parse_formula(std::string_view text, const std::vector<std::string>& universe);

std::string render(const Formula& f);

// --- structural queries -----------------------------------------------------

// Boxes, diamonds, C, E and their duals each add one level.
std::size_t modal_depth(const Formula& f);
std::size_t formula_size(const Formula& f);  // number of nodes
std::set<std::string> agents_of(const Formula& f);
std::set<std::string> atoms_of(const Formula& f);
bool has_common_or_everyone(const Formula& f);

// Agents of f, padded with fresh names so that the universe has at least two.
std::vector<std::string> default_universe(const Formula& f);

// Occurrence types of a core formula, as a tree rooted at the whole formula.
// Node i stands for the occurrence type <f_i, parent(f_i), ..., root>; the
// occurrence order O <= O' holds when O' is an ancestor-or-self of O.
class OccurrenceTree {
 public:
  struct Node {
    Formula formula;
    std::size_t parent;  // npos for the root
    std::vector<std::size_t> children;
    std::size_t length;  // length of the occurrence type
  };
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit OccurrenceTree(const Formula& f);

  std::size_t size() const { return nodes_.size(); }
  const Node& node(std::size_t i) const { return nodes_[i]; }
  const Formula& root() const { return nodes_.front().formula; }
  // O_i <= O_j
  bool leq(std::size_t i, std::size_t j) const;
  // The occurrence type itself, first element the occurrence's formula.
  std::vector<Formula> sequence(std::size_t i) const;

 private:
  std::vector<Node> nodes_;
};

// Builds on the core normalization of f.
OccurrenceTree occurrence_tree(const Formula& f);

}  // namespace altlab
