// Strategic-form games, epistemic game models and iterated strict dominance.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "altlab/kripke.hpp"
#include "altlab/lp.hpp"

namespace altlab {

class GameError : public Error {
 public:
  using Error::Error;
};

class StrategicGame {
 public:
  StrategicGame() = default;
  StrategicGame(std::vector<std::string> players, std::vector<std::vector<std::string>> strategies);

  std::size_t num_players() const { return players_.size(); }
  const std::vector<std::string>& players() const { return players_; }
  const std::vector<std::string>& strategies(std::size_t player) const { return strategies_.at(player); }
  std::size_t player_index(const std::string& name) const;
  std::size_t strategy_index(std::size_t player, const std::string& name) const;

  std::size_t num_profiles() const { return payoff_.size(); }
  std::size_t profile_index(const std::vector<std::size_t>& profile) const;
  std::vector<std::size_t> profile_at(std::size_t index) const;

  const Rational& utility(std::size_t player, const std::vector<std::size_t>& profile) const;
  void set_payoffs(const std::vector<std::size_t>& profile, std::vector<Rational> payoffs);
  // true once every profile has been given payoffs
  bool complete() const;

 private:
  std::vector<std::string> players_;
  std::vector<std::vector<std::string>> strategies_;
  std::vector<std::vector<Rational>> payoff_;  // by profile index
  std::vector<bool> set_;
};

StrategicGame prisoners_dilemma();
StrategicGame matching_pennies();
// Row player: T = (3, 0), M = (1, 1), B = (0, 3) against L, R; column payoffs 0.
StrategicGame mixture_dominance_game();
// The two-stage game in strategic form: player 1 picks b or c, player 2 a
// plan xy with x at b and y at c.
StrategicGame backward_induction_game();

inline constexpr std::size_t kDominanceStrategyLimit = 16;

// Restrictions are per player; the entry of `player` itself is ignored.
using Restriction = std::vector<std::vector<std::size_t>>;

struct Domination {
  bool dominated = false;
  std::vector<Rational> weights;  // over the candidate support, in order
  Rational margin;                // min over opponent profiles of mixture - strategy
};

Domination dominance(const StrategicGame& g, std::size_t player, std::size_t strategy,
                     const std::vector<std::size_t>& support, const Restriction& opponents);
bool strictly_dominated(const StrategicGame& g, std::size_t player, std::size_t strategy,
                        const std::vector<std::size_t>& support, const Restriction& opponents);

struct Elimination {
  std::size_t player = 0;
  std::size_t strategy = 0;
  std::vector<Rational> weights;  // over the survivors of that round
  Rational margin;
};

struct IesdsResult {
  Restriction survivors;
  std::vector<std::vector<Elimination>> rounds;  // only rounds that removed something
};

IesdsResult iesds(const StrategicGame& g);
// Same elimination with domination only by pure strategies and by mixtures
// whose weights have denominators up to max_den. Used as an oracle.
IesdsResult iesds_grid(const StrategicGame& g, unsigned max_den = 6);
// Removes one dominated strategy per round, the first in (player, strategy) order.
IesdsResult iesds_sequential(const StrategicGame& g);

// --- epistemic models -------------------------------------------------------

struct EpistemicGameModel {
  StrategicGame game;
  std::vector<std::string> worlds;
  std::vector<Relation> rel;                               // per player
  std::vector<std::vector<std::map<std::size_t, Rational>>> beliefs;  // [player][world] -> world -> mass
  std::vector<std::vector<std::size_t>> sigma;             // [player][world] -> strategy
  std::map<std::string, WorldSet> val;

  std::size_t num_worlds() const { return worlds.size(); }
  std::size_t world_index(const std::string& name) const;
  // The underlying Kripke model over the players as agents.
  KripkeModel kripke() const;
};

std::string rationality_atom(const std::string& player);    // r_<player>
std::string independence_atom(const std::string& player);   // rp_<player>

enum class ModelClause { Serial, Distribution, Support, BestResponse, Independence };
std::string to_string(ModelClause c);

struct ModelVerdict {
  bool ok = true;
  ModelClause clause = ModelClause::Serial;
  std::size_t player = 0;
  std::size_t world = 0;
  std::string message;
};

// Expected utility of `strategy` for `player` under the belief at `world`.
Rational expected_utility(const EpistemicGameModel& egm, std::size_t player, std::size_t world, std::size_t strategy);
bool best_response(const EpistemicGameModel& egm, std::size_t player, std::size_t world);
bool independent_beliefs(const EpistemicGameModel& egm, std::size_t player, std::size_t world);

ModelVerdict validate_model(const EpistemicGameModel& egm);
// Sets every r_ atom (and rp_ atoms) to the value the model forces.
void assign_rationality(EpistemicGameModel& egm, bool with_independence = false);

// rho_l for alternating sequences l with 1 <= len(l) <= depth, shortest first.
std::vector<Formula> gamma(const std::vector<std::string>& players, std::size_t depth, bool primed);

enum class Rationalizability { Checked, NotChecked, Vacuous };
std::string to_string(Rationalizability r);

struct TheoremVerdict {
  bool gamma_holds = false;
  bool gamma_prime_holds = false;
  std::vector<bool> survives;  // per player, meaningful when gamma_holds
  Rationalizability rationalizable = Rationalizability::Vacuous;
  bool ok = true;  // false only when an asserted membership fails
  IesdsResult survivors;
};

TheoremVerdict verify_theorem_A(const EpistemicGameModel& egm, std::size_t world, std::size_t depth);

// A prisoner's dilemma model: two worlds, both players defect everywhere and
// believe so.
EpistemicGameModel prisoners_dilemma_model();

}  // namespace altlab
