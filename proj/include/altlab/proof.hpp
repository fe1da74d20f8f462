// Hilbert-style derivation checking for the modal-cube logics and their
// common-belief extensions.
//
// File format:
//   logic: NAME
//   agents: a b ...
//   ID. FORMULA ; RULE
// with RULE one of `assume`, `axiom NAME`, `taut`, `mp I J`, `nec AG I`,
// `rm AG I` (AG an agent, or E or C). `#` starts a comment.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "altlab/formula.hpp"
#include "altlab/kripke.hpp"

namespace altlab {

class TautologyGuardError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t kTautologyAtomLimit = 20;

// Truth tables over the maximal non-Boolean subformulas of the core form.
bool tautology(const Formula& f, std::size_t atom_limit = kTautologyAtomLimit);
// Number of distinct propositional atoms of the Boolean abstraction.
std::size_t boolean_atom_count(const Formula& f);

enum class RuleKind { Assume, Axiom, Taut, MP, Nec, RM };
std::string to_string(RuleKind r);

struct Justification {
  RuleKind kind = RuleKind::Assume;
  std::string name;  // axiom name, or the modality of nec/rm
  std::vector<std::string> refs;
};

struct DerivationLine {
  std::string id;
  Formula formula;
  Justification just;
  std::size_t source_line = 0;  // 1-based line in the file
};

struct Derivation {
  std::string logic;
  std::vector<std::string> agents;
  std::vector<DerivationLine> lines;
};

class DerivationSyntaxError : public Error {
 public:
  DerivationSyntaxError(const std::string& what, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

Derivation parse_derivation(std::string_view text);
std::string render_derivation(const Derivation& d);

// A logic: its axiom schemas and the frame class it is sound for.
struct LogicSpec {
  std::string name;
  std::vector<std::string> schemas;
  bool common = false;  // C and E available
  FrameClass frames;
};

// K, KD, T, KT, KB, K4, K5, K45, KD4, KD5, KD45, KDB, B, KTB, S4, S5, KB5 and
// CK, CKD, CK4, CKD4, CK5.
LogicSpec logic_spec(const std::string& name);
const std::vector<std::string>& logic_names();

// Schema patterns use P and Q as formula variables and x as an agent variable.
const std::map<std::string, std::vector<std::string>>& schema_patterns();

struct SchemaInstance {
  std::string schema;
  std::map<std::string, Formula> formulas;
  std::optional<std::string> agent;
};

// Tries every accepted form of the named schema. E-Intro is the left-nested
// conjunction of [x]P over `agents` implying EP.
std::optional<SchemaInstance> match_schema(const std::string& schema, const Formula& f,
                                           const std::vector<std::string>& agents);

struct ProofVerdict {
  bool accepted = true;
  std::optional<std::size_t> bad_line;  // index into Derivation::lines
  std::string reason;
  std::vector<bool> theorem;  // per checked line: no assumption among its ancestors
  std::optional<Formula> final_formula;
  bool final_is_theorem = false;
};

ProofVerdict check_derivation(const Derivation& d);

// Packaged scripts, by name (file stem under data/scripts).
std::vector<std::string> script_names();
std::string script_text(const std::string& name);
// `name`, `scripts/name.drv`, or a path to a file.
Derivation load_derivation(const std::string& name_or_path);
std::string script_directory();

}  // namespace altlab
