#include "altlab/countermodel.hpp"

#include <algorithm>
#include <random>

namespace altlab {

std::vector<std::string> search_agents(const Formula& f) {
  auto used = agents_of(f);
  std::vector<std::string> out(used.begin(), used.end());
  for (char c = 'a'; out.size() < 2; ++c) {
    std::string name(1, c);
    if (!used.count(name)) out.push_back(name);
  }
  return out;
}

namespace {

Relation relation_from_mask(std::size_t n, std::uint32_t mask) {
  Relation r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (mask >> (i * n + j) & 1u) r.add(i, j);
    }
  }
  return r;
}

std::vector<std::string> world_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("w" + std::to_string(i));
  return out;
}

PointedModel verified(PointedModel pm, const Formula& f, const FrameClass& fc) {
  if (!fc.admits(pm.model) || model_check(pm, f)) {
    throw Error("countermodel search produced a model that fails re-verification");
  }
  return pm;
}

// The core of f as a post-order program over world bitmasks, for the small
// exhaustive enumeration.
class MaskProgram {
 public:
  MaskProgram(const Formula& f, const std::vector<std::string>& agents, const std::vector<std::string>& atoms)
      : agents_(agents), atoms_(atoms) {
    emit(f.core());
  }

  // succ[a][w], closure[w] and uni[w] are successor masks; atoms[k] the extension of atom k.
  std::uint32_t eval(std::size_t n, const std::uint32_t (*succ)[8], const std::uint32_t* uni,
                     const std::uint32_t* closure, const std::uint32_t* atoms) {
    const std::uint32_t full = (1u << n) - 1;
    for (std::size_t i = 0; i < code_.size(); ++i) {
      const Instr& in = code_[i];
      std::uint32_t x = in.lhs >= 0 ? vals_[in.lhs] : 0;
      std::uint32_t out = 0;
      switch (in.op) {
        case Op::Atom:
          out = in.arg >= 0 ? atoms[in.arg] : 0;
          break;
        case Op::False:
          out = 0;
          break;
        case Op::Not:
          out = full & ~x;
          break;
        case Op::And:
          out = x & vals_[in.rhs];
          break;
        default: {
          const std::uint32_t* to = in.op == Op::Box ? succ[in.arg] : in.op == Op::Common ? closure : uni;
          for (std::size_t w = 0; w < n; ++w) {
            if ((to[w] & ~x) == 0) out |= 1u << w;
          }
        }
      }
      vals_[i] = out;
    }
    return vals_.back();
  }

 private:
  struct Instr {
    Op op;
    int arg = -1;
    int lhs = -1;
    int rhs = -1;
  };

  int emit(const Formula& f) {
    Instr in{f.op()};
    if (f.op() == Op::Atom) {
      auto it = std::find(atoms_.begin(), atoms_.end(), f.name());
      in.arg = it == atoms_.end() ? -1 : static_cast<int>(it - atoms_.begin());
    } else if (f.op() == Op::Box) {
      in.arg = static_cast<int>(std::find(agents_.begin(), agents_.end(), f.name()) - agents_.begin());
    }
    if (f.arity() > 0) in.lhs = emit(f.operand(0));
    if (f.arity() > 1) in.rhs = emit(f.operand(1));
    code_.push_back(in);
    vals_.push_back(0);
    return static_cast<int>(code_.size() - 1);
  }

  const std::vector<std::string>& agents_;
  const std::vector<std::string>& atoms_;
  std::vector<Instr> code_;
  std::vector<std::uint32_t> vals_;
};

// First world falsifying f, if any.
std::optional<std::size_t> refuting_world(const KripkeModel& m, const Formula& f) {
  Evaluator ev(m);
  const WorldSet& ext = ev.extension(f);
  for (std::size_t w = 0; w < m.num_worlds(); ++w) {
    if (!ext.test(w)) return w;
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::uint32_t> admissible_relations(std::size_t n, const FrameClass& fc) {
  std::vector<std::uint32_t> out;
  const std::uint32_t total = 1u << (n * n);
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    if (fc.admits(relation_from_mask(n, mask))) out.push_back(mask);
  }
  return out;
}

void close_under(Relation& r, const FrameClass& fc) {
  const std::size_t n = r.size();
  bool changed = true;
  auto add = [&](std::size_t u, std::size_t v) {
    if (!r.contains(u, v)) {
      r.add(u, v);
      changed = true;
    }
  };
  while (changed) {
    changed = false;
    for (std::size_t u = 0; u < n; ++u) {
      if (fc.needs(FrameProperty::Reflexive)) add(u, u);
      if (fc.needs(FrameProperty::Serial) && r.successors(u).empty()) add(u, u);
      const auto succ = r.successors(u);
      for (std::size_t v : succ) {
        if (fc.needs(FrameProperty::Symmetric)) add(v, u);
        if (fc.needs(FrameProperty::Transitive)) {
          const auto next = r.successors(v);
          for (std::size_t w : next) add(u, w);
        }
        if (fc.needs(FrameProperty::Euclidean)) {
          for (std::size_t w : succ) add(v, w);
        }
      }
    }
  }
}

CountermodelResult search_countermodel(const Formula& f, const FrameClass& fc, std::size_t max_worlds,
                                       const SearchOptions& opts) {
  const auto agents = search_agents(f);
  const auto atoms_set = atoms_of(f);
  const std::vector<std::string> atoms(atoms_set.begin(), atoms_set.end());
  CountermodelResult result;

  if (opts.mode == SearchMode::Exhaustive) {
    if (max_worlds > kExhaustiveMaxWorlds || agents.size() > kExhaustiveMaxAgents ||
        atoms.size() > kExhaustiveMaxAtoms) {
      throw SearchGuardError("exhaustive search is limited to " + std::to_string(kExhaustiveMaxWorlds) + " worlds, " +
                             std::to_string(kExhaustiveMaxAgents) + " agents and " +
                             std::to_string(kExhaustiveMaxAtoms) + " atoms");
    }
    MaskProgram prog(f, agents, atoms);
    for (std::size_t n = 1; n <= max_worlds; ++n) {
      const auto rels = admissible_relations(n, fc);
      const std::size_t vals = std::size_t{1} << (n * atoms.size());
      const std::uint32_t world_mask = (1u << n) - 1;
      for (std::uint32_t ra : rels) {
        for (std::uint32_t rb : rels) {
          std::uint32_t succ[2][8] = {};
          std::uint32_t uni[8] = {};
          std::uint32_t closure[8] = {};
          for (std::size_t i = 0; i < n; ++i) {
            succ[0][i] = (ra >> (i * n)) & world_mask;
            succ[1][i] = (rb >> (i * n)) & world_mask;
            uni[i] = closure[i] = succ[0][i] | succ[1][i];
          }
          for (bool grew = true; grew;) {
            grew = false;
            for (std::size_t i = 0; i < n; ++i) {
              std::uint32_t next = closure[i];
              for (std::size_t j = 0; j < n; ++j) {
                if (closure[i] >> j & 1u) next |= closure[j];
              }
              grew = grew || next != closure[i];
              closure[i] = next;
            }
          }
          for (std::size_t val = 0; val < vals; ++val) {
            std::uint32_t ext[kExhaustiveMaxAtoms] = {};
            for (std::size_t k = 0; k < atoms.size(); ++k) ext[k] = (val >> (k * n)) & world_mask;
            ++result.examined;
            const std::uint32_t holds = prog.eval(n, succ, uni, closure, ext);
            if (holds == world_mask) continue;
            KripkeModel m(agents, world_names(n));
            for (std::size_t i = 0; i < n; ++i) {
              for (std::size_t j = 0; j < n; ++j) {
                if (ra >> (i * n + j) & 1u) m.add_edge(0, i, j);
                if (rb >> (i * n + j) & 1u) m.add_edge(1, i, j);
              }
            }
            for (std::size_t k = 0; k < atoms.size(); ++k) {
              m.declare_atom(atoms[k]);
              for (std::size_t w = 0; w < n; ++w) {
                if (val >> (k * n + w) & 1u) m.set_true(atoms[k], w);
              }
            }
            auto w = refuting_world(m, f);
            if (!w) throw Error("countermodel search: bitmask and model evaluation disagree");
            result.model = verified(PointedModel{std::move(m), *w}, f, fc);
            return result;
          }
        }
      }
    }
    return result;
  }

  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::size_t> size_dist(1, std::max<std::size_t>(1, max_worlds));
  std::bernoulli_distribution coin(0.5);
  for (std::size_t t = 0; t < opts.trials; ++t) {
    const std::size_t n = size_dist(rng);
    KripkeModel m(agents, world_names(n));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double density = unit(rng);
    for (std::size_t a = 0; a < agents.size(); ++a) {
      Relation r(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (unit(rng) < density) r.add(i, j);
        }
      }
      close_under(r, fc);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j : r.successors(i)) m.add_edge(a, i, j);
      }
    }
    for (const auto& atom : atoms) {
      m.declare_atom(atom);
      for (std::size_t w = 0; w < n; ++w) {
        if (coin(rng)) m.set_true(atom, w);
      }
    }
    ++result.examined;
    if (auto w = refuting_world(m, f)) {
      result.model = verified(PointedModel{std::move(m), *w}, f, fc);
      return result;
    }
  }
  return result;
}

}  // namespace altlab
