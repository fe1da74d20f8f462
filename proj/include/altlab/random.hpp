// Seeded generators for models, fragment-restricted formulas and games.
#pragma once

#include <cstdint>
#include <random>

#include "altlab/games.hpp"
#include "altlab/kripke.hpp"

namespace altlab {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240607;
// ALTLAB_SEED when set, otherwise kDefaultSeed.
std::uint64_t default_seed();

enum class FormulaFragment { Any, Alternating, Nonrepeating };

struct FormulaGen {
  std::vector<std::string> agents = {"a", "b"};
  std::vector<std::string> atoms = {"p", "q"};
  std::size_t max_depth = 3;   // modal depth
  std::size_t max_size = 24;   // rough node budget
  FormulaFragment fragment = FormulaFragment::Any;
  bool sugar = true;           // also emit |, ->, <->, <a>
  bool constants = false;      // true / false
  bool common = false;         // C, E and duals (only with fragment Any)
  // Agents unavailable at the top: the preceding agent for Alternating
  // (giving L_-a), the already used agents for Nonrepeating (giving L_X).
  std::vector<std::string> blocked;
};

Formula random_formula(Rng& rng, const FormulaGen& gen);

struct ModelGen {
  std::vector<std::string> agents = {"a", "b"};
  std::vector<std::string> atoms = {"p", "q"};
  std::size_t min_worlds = 1;
  std::size_t max_worlds = 4;
  FrameClass frames;  // closure applied to each relation
};

PointedModel random_model(Rng& rng, const ModelGen& gen);

struct GameGen {
  std::size_t max_strategies = 3;
  int min_payoff = 0;
  int max_payoff = 6;
  unsigned max_den = 1;  // payoffs k/d with d <= max_den
};

StrategicGame random_game(Rng& rng, const GameGen& gen, std::size_t players = 2);

// A valid epistemic model with at most max_worlds worlds whose valuation is
// assigned exactly. When aim_rational is set, strategies are moved towards
// best responses so that rationality holds widely.
EpistemicGameModel random_game_model(Rng& rng, const GameGen& gen, std::size_t max_worlds, bool aim_rational);

}  // namespace altlab
