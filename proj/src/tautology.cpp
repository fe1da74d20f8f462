#include <cstdint>
#include <unordered_map>

#include "altlab/proof.hpp"

namespace altlab {

namespace {

using Atoms = std::unordered_map<Formula, std::size_t, FormulaHash>;

void collect(const Formula& f, Atoms& atoms) {
  switch (f.op()) {
    case Op::False:
      return;
    case Op::Not:
      collect(f.operand(), atoms);
      return;
    case Op::And:
      collect(f.lhs(), atoms);
      collect(f.rhs(), atoms);
      return;
    default:
      atoms.try_emplace(f, atoms.size());
  }
}

// Column of the truth table for atom i, restricted to block `block` of 64 rows.
std::uint64_t atom_word(std::size_t i, std::size_t block) {
  static constexpr std::uint64_t kLow[6] = {0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
                                            0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
  if (i < 6) return kLow[i];
  return ((block >> (i - 6)) & 1) ? ~std::uint64_t{0} : 0;
}

std::uint64_t eval(const Formula& f, const Atoms& atoms, std::size_t block) {
  switch (f.op()) {
    case Op::False:
      return 0;
    case Op::Not:
      return ~eval(f.operand(), atoms, block);
    case Op::And:
      return eval(f.lhs(), atoms, block) & eval(f.rhs(), atoms, block);
    default:
      return atom_word(atoms.at(f), block);
  }
}

}  // namespace

std::size_t boolean_atom_count(const Formula& f) {
  Atoms atoms;
  collect(f.core(), atoms);
  return atoms.size();
}

bool tautology(const Formula& f, std::size_t atom_limit) {
  Formula core = f.core();
  Atoms atoms;
  collect(core, atoms);
  const std::size_t n = atoms.size();
  if (n > atom_limit) {
    throw TautologyGuardError("tautology check needs " + std::to_string(n) + " Boolean atoms; the limit is " +
                              std::to_string(atom_limit));
  }
  const std::uint64_t mask = n >= 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (std::size_t{1} << n)) - 1);
  const std::size_t blocks = n > 6 ? (std::size_t{1} << (n - 6)) : 1;
  for (std::size_t b = 0; b < blocks; ++b) {
    if ((eval(core, atoms, b) & mask) != mask) return false;
  }
  return true;
}

}  // namespace altlab
