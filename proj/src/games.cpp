#include "altlab/games.hpp"

#include <algorithm>
#include <functional>

namespace altlab {

StrategicGame::StrategicGame(std::vector<std::string> players, std::vector<std::vector<std::string>> strategies)
    : players_(std::move(players)), strategies_(std::move(strategies)) {
  if (players_.empty()) throw GameError("a game needs at least one player");
  if (strategies_.size() != players_.size()) throw GameError("one strategy list per player is required");
  std::size_t total = 1;
  for (std::size_t p = 0; p < players_.size(); ++p) {
    if (strategies_[p].empty()) throw GameError("player " + players_[p] + " has no strategies");
    for (std::size_t i = 0; i < strategies_[p].size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (strategies_[p][i] == strategies_[p][j]) {
          throw GameError("duplicate strategy '" + strategies_[p][i] + "' for player " + players_[p]);
        }
      }
    }
    total *= strategies_[p].size();
  }
  for (std::size_t i = 0; i < players_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (players_[i] == players_[j]) throw GameError("duplicate player '" + players_[i] + "'");
    }
  }
  payoff_.assign(total, std::vector<Rational>(players_.size()));
  set_.assign(total, false);
}

std::size_t StrategicGame::player_index(const std::string& name) const {
  auto it = std::find(players_.begin(), players_.end(), name);
  if (it == players_.end()) throw GameError("unknown player '" + name + "'");
  return static_cast<std::size_t>(it - players_.begin());
}

std::size_t StrategicGame::strategy_index(std::size_t player, const std::string& name) const {
  const auto& s = strategies_.at(player);
  auto it = std::find(s.begin(), s.end(), name);
  if (it == s.end()) throw GameError("unknown strategy '" + name + "' for player " + players_[player]);
  return static_cast<std::size_t>(it - s.begin());
}

std::size_t StrategicGame::profile_index(const std::vector<std::size_t>& profile) const {
  if (profile.size() != players_.size()) throw GameError("profile has the wrong length");
  std::size_t idx = 0;
  for (std::size_t p = 0; p < players_.size(); ++p) {
    if (profile[p] >= strategies_[p].size()) throw GameError("strategy index out of range");
    idx = idx * strategies_[p].size() + profile[p];
  }
  return idx;
}

std::vector<std::size_t> StrategicGame::profile_at(std::size_t index) const {
  std::vector<std::size_t> out(players_.size());
  for (std::size_t p = players_.size(); p-- > 0;) {
    out[p] = index % strategies_[p].size();
    index /= strategies_[p].size();
  }
  return out;
}

const Rational& StrategicGame::utility(std::size_t player, const std::vector<std::size_t>& profile) const {
  return payoff_[profile_index(profile)].at(player);
}

void StrategicGame::set_payoffs(const std::vector<std::size_t>& profile, std::vector<Rational> payoffs) {
  if (payoffs.size() != players_.size()) throw GameError("one payoff per player is required");
  std::size_t i = profile_index(profile);
  payoff_[i] = std::move(payoffs);
  set_[i] = true;
}

bool StrategicGame::complete() const { return std::all_of(set_.begin(), set_.end(), [](bool b) { return b; }); }

namespace {

StrategicGame two_player(std::vector<std::string> s1, std::vector<std::string> s2,
                         const std::vector<std::vector<std::pair<int, int>>>& table) {
  StrategicGame g({"1", "2"}, {std::move(s1), std::move(s2)});
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table[i].size(); ++j) {
      g.set_payoffs({i, j}, {Rational(table[i][j].first), Rational(table[i][j].second)});
    }
  }
  return g;
}

}  // namespace

StrategicGame prisoners_dilemma() {
  return two_player({"C", "D"}, {"C", "D"}, {{{3, 3}, {0, 5}}, {{5, 0}, {1, 1}}});
}

StrategicGame matching_pennies() {
  return two_player({"H", "T"}, {"H", "T"}, {{{1, -1}, {-1, 1}}, {{-1, 1}, {1, -1}}});
}

StrategicGame mixture_dominance_game() {
  return two_player({"T", "M", "B"}, {"L", "R"}, {{{3, 0}, {0, 0}}, {{1, 0}, {1, 0}}, {{0, 0}, {3, 0}}});
}

StrategicGame backward_induction_game() {
  // outcomes d (4,2), e (2,4), f (1,1), g (3,3)
  return two_player({"b", "c"}, {"df", "dg", "ef", "eg"},
                    {{{4, 2}, {4, 2}, {2, 4}, {2, 4}}, {{1, 1}, {3, 3}, {1, 1}, {3, 3}}});
}

// --- dominance --------------------------------------------------------------

namespace {

// All opponent profiles as full profiles with the player's slot left at 0.
std::vector<std::vector<std::size_t>> opponent_profiles(const StrategicGame& g, std::size_t player,
                                                        const Restriction& opp) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(g.num_players(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t p) {
    if (p == g.num_players()) {
      out.push_back(cur);
      return;
    }
    if (p == player) {
      rec(p + 1);
      return;
    }
    for (std::size_t s : opp.at(p)) {
      cur[p] = s;
      rec(p + 1);
    }
  };
  rec(0);
  return out;
}

Rational payoff_with(const StrategicGame& g, std::size_t player, std::size_t strategy, std::vector<std::size_t> prof) {
  prof[player] = strategy;
  return g.utility(player, prof);
}

void check_guard(const StrategicGame& g, std::size_t player, const std::vector<std::size_t>& support,
                 const Restriction& opp) {
  if (support.empty()) throw GameError("empty candidate support");
  if (support.size() > kDominanceStrategyLimit) throw GameError("dominance LP guard: too many strategies");
  for (std::size_t p = 0; p < g.num_players(); ++p) {
    if (p == player) continue;
    if (opp.at(p).empty()) throw GameError("empty opponent restriction");
    if (opp[p].size() > kDominanceStrategyLimit) throw GameError("dominance LP guard: too many strategies");
  }
}

}  // namespace

Domination dominance(const StrategicGame& g, std::size_t player, std::size_t strategy,
                     const std::vector<std::size_t>& support, const Restriction& opponents) {
  check_guard(g, player, support, opponents);
  const auto profiles = opponent_profiles(g, player, opponents);
  const std::size_t k = support.size();

  Rational lo = 0;
  Rational hi = 0;
  bool first = true;
  for (const auto& prof : profiles) {
    for (std::size_t t : support) {
      Rational u = payoff_with(g, player, t, prof);
      if (first || u < lo) lo = u;
      if (first || u > hi) hi = u;
      first = false;
    }
    Rational u = payoff_with(g, player, strategy, prof);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  // shifted margin e' = e + shift keeps every variable nonnegative
  const Rational shift = hi - lo + 1;

  LinearProgram lp;
  lp.num_vars = k + 1;
  lp.objective.assign(k + 1, Rational(0));
  lp.objective[k] = 1;
  for (const auto& prof : profiles) {
    LinearConstraint c;
    c.coeffs.resize(k + 1);
    for (std::size_t i = 0; i < k; ++i) c.coeffs[i] = payoff_with(g, player, support[i], prof);
    c.coeffs[k] = -1;
    c.sense = Sense::GreaterEq;
    c.rhs = payoff_with(g, player, strategy, prof) - shift;
    lp.constraints.push_back(std::move(c));
  }
  LinearConstraint sum;
  sum.coeffs.assign(k + 1, Rational(1));
  sum.coeffs[k] = 0;
  sum.sense = Sense::Equal;
  sum.rhs = 1;
  lp.constraints.push_back(sum);
  LinearConstraint cap;
  cap.coeffs.assign(k + 1, Rational(0));
  cap.coeffs[k] = 1;
  cap.rhs = 2 * shift;
  lp.constraints.push_back(cap);

  LpResult r = solve(lp);
  if (r.status != LpStatus::Optimal) throw GameError("dominance LP did not reach an optimum");
  Domination d;
  d.weights.assign(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(k));
  // recompute the margin from the weights rather than trusting e'
  bool first_row = true;
  for (const auto& prof : profiles) {
    Rational mix = 0;
    for (std::size_t i = 0; i < k; ++i) mix += d.weights[i] * payoff_with(g, player, support[i], prof);
    Rational gap = mix - payoff_with(g, player, strategy, prof);
    if (first_row || gap < d.margin) d.margin = gap;
    first_row = false;
  }
  d.dominated = d.margin > 0;
  return d;
}

bool strictly_dominated(const StrategicGame& g, std::size_t player, std::size_t strategy,
                        const std::vector<std::size_t>& support, const Restriction& opponents) {
  return dominance(g, player, strategy, support, opponents).dominated;
}

namespace {

Restriction full_restriction(const StrategicGame& g) {
  Restriction r(g.num_players());
  for (std::size_t p = 0; p < g.num_players(); ++p) {
    for (std::size_t s = 0; s < g.strategies(p).size(); ++s) r[p].push_back(s);
  }
  return r;
}

void remove_all(Restriction& surv, const std::vector<Elimination>& round) {
  for (const auto& e : round) {
    auto& v = surv[e.player];
    v.erase(std::remove(v.begin(), v.end(), e.strategy), v.end());
  }
}

// Weight vectors over k strategies with common denominator d.
void compositions(std::size_t k, unsigned d, std::vector<unsigned>& cur,
                  const std::function<void(const std::vector<unsigned>&)>& f) {
  if (cur.size() + 1 == k) {
    unsigned used = 0;
    for (unsigned c : cur) used += c;
    cur.push_back(d - used);
    f(cur);
    cur.pop_back();
    return;
  }
  unsigned used = 0;
  for (unsigned c : cur) used += c;
  for (unsigned c = 0; c + used <= d; ++c) {
    cur.push_back(c);
    compositions(k, d, cur, f);
    cur.pop_back();
  }
}

std::optional<Elimination> grid_dominance(const StrategicGame& g, std::size_t player, std::size_t strategy,
                                          const std::vector<std::size_t>& support, const Restriction& opp,
                                          unsigned max_den) {
  const auto profiles = opponent_profiles(g, player, opp);
  std::optional<Elimination> found;
  for (unsigned d = 1; d <= max_den && !found; ++d) {
    std::vector<unsigned> cur;
    compositions(support.size(), d, cur, [&](const std::vector<unsigned>& w) {
      if (found) return;
      Rational margin;
      bool first = true;
      for (const auto& prof : profiles) {
        Rational mix = 0;
        for (std::size_t i = 0; i < support.size(); ++i) {
          if (w[i]) mix += Rational(w[i], d) * payoff_with(g, player, support[i], prof);
        }
        Rational gap = mix - payoff_with(g, player, strategy, prof);
        if (first || gap < margin) margin = gap;
        first = false;
      }
      if (margin > 0) {
        Elimination e{player, strategy, {}, margin};
        for (unsigned c : w) e.weights.emplace_back(c, d);
        found = e;
      }
    });
  }
  return found;
}

}  // namespace

IesdsResult iesds(const StrategicGame& g) {
  IesdsResult res;
  res.survivors = full_restriction(g);
  while (true) {
    std::vector<Elimination> round;
    for (std::size_t p = 0; p < g.num_players(); ++p) {
      for (std::size_t s : res.survivors[p]) {
        Domination d = dominance(g, p, s, res.survivors[p], res.survivors);
        if (d.dominated) round.push_back({p, s, d.weights, d.margin});
      }
    }
    if (round.empty()) break;
    remove_all(res.survivors, round);
    res.rounds.push_back(std::move(round));
  }
  return res;
}

IesdsResult iesds_grid(const StrategicGame& g, unsigned max_den) {
  IesdsResult res;
  res.survivors = full_restriction(g);
  while (true) {
    std::vector<Elimination> round;
    for (std::size_t p = 0; p < g.num_players(); ++p) {
      for (std::size_t s : res.survivors[p]) {
        if (auto e = grid_dominance(g, p, s, res.survivors[p], res.survivors, max_den)) round.push_back(*e);
      }
    }
    if (round.empty()) break;
    remove_all(res.survivors, round);
    res.rounds.push_back(std::move(round));
  }
  return res;
}

IesdsResult iesds_sequential(const StrategicGame& g) {
  IesdsResult res;
  res.survivors = full_restriction(g);
  while (true) {
    std::optional<Elimination> hit;
    for (std::size_t p = 0; p < g.num_players() && !hit; ++p) {
      for (std::size_t s : res.survivors[p]) {
        Domination d = dominance(g, p, s, res.survivors[p], res.survivors);
        if (d.dominated) {
          hit = Elimination{p, s, d.weights, d.margin};
          break;
        }
      }
    }
    if (!hit) break;
    remove_all(res.survivors, {*hit});
    res.rounds.push_back({*hit});
  }
  return res;
}

// --- epistemic models -------------------------------------------------------

std::size_t EpistemicGameModel::world_index(const std::string& name) const {
  auto it = std::find(worlds.begin(), worlds.end(), name);
  if (it == worlds.end()) throw GameError("unknown world '" + name + "'");
  return static_cast<std::size_t>(it - worlds.begin());
}

KripkeModel EpistemicGameModel::kripke() const {
  KripkeModel m(game.players(), worlds);
  for (std::size_t a = 0; a < rel.size(); ++a) {
    for (std::size_t w = 0; w < rel[a].size(); ++w) {
      for (std::size_t v : rel[a].successors(w)) m.add_edge(a, w, v);
    }
  }
  for (const auto& [atom, set] : val) {
    m.declare_atom(atom);
    for (std::size_t w = 0; w < set.size(); ++w) {
      if (set.test(w)) m.set_true(atom, w);
    }
  }
  return m;
}

std::string rationality_atom(const std::string& player) { return "r_" + player; }
std::string independence_atom(const std::string& player) { return "rp_" + player; }

std::string to_string(ModelClause c) {
  switch (c) {
    case ModelClause::Serial:
      return "serial";
    case ModelClause::Distribution:
      return "distribution";
    case ModelClause::Support:
      return "support";
    case ModelClause::BestResponse:
      return "best-response-valuation";
    case ModelClause::Independence:
      return "independence-valuation";
  }
  return "?";
}

Rational expected_utility(const EpistemicGameModel& egm, std::size_t player, std::size_t world, std::size_t strategy) {
  Rational eu = 0;
  std::vector<std::size_t> prof(egm.game.num_players());
  for (const auto& [v, mass] : egm.beliefs[player][world]) {
    for (std::size_t p = 0; p < prof.size(); ++p) prof[p] = egm.sigma[p][v];
    prof[player] = strategy;
    eu += mass * egm.game.utility(player, prof);
  }
  return eu;
}

bool best_response(const EpistemicGameModel& egm, std::size_t player, std::size_t world) {
  Rational own = expected_utility(egm, player, world, egm.sigma[player][world]);
  for (std::size_t s = 0; s < egm.game.strategies(player).size(); ++s) {
    if (expected_utility(egm, player, world, s) > own) return false;
  }
  return true;
}

bool independent_beliefs(const EpistemicGameModel& egm, std::size_t player, std::size_t world) {
  const auto& g = egm.game;
  const auto& belief = egm.beliefs[player][world];
  // marginals per opponent
  std::vector<std::vector<Rational>> marginal(g.num_players());
  for (std::size_t b = 0; b < g.num_players(); ++b) {
    marginal[b].assign(g.strategies(b).size(), Rational(0));
    if (b == player) continue;
    for (const auto& [v, mass] : belief) marginal[b][egm.sigma[b][v]] += mass;
  }
  for (std::size_t idx = 0; idx < g.num_profiles(); ++idx) {
    auto prof = g.profile_at(idx);
    if (prof[player] != 0) continue;  // one representative per opponent profile
    Rational joint = 0;
    for (const auto& [v, mass] : belief) {
      bool match = true;
      for (std::size_t b = 0; b < g.num_players() && match; ++b) {
        if (b != player && egm.sigma[b][v] != prof[b]) match = false;
      }
      if (match) joint += mass;
    }
    Rational product = 1;
    for (std::size_t b = 0; b < g.num_players(); ++b) {
      if (b != player) product *= marginal[b][prof[b]];
    }
    if (joint != product) return false;
  }
  return true;
}

namespace {

bool atom_true(const EpistemicGameModel& egm, const std::string& atom, std::size_t w) {
  auto it = egm.val.find(atom);
  return it != egm.val.end() && it->second.test(w);
}

ModelVerdict fail(ModelClause c, std::size_t p, std::size_t w, std::string msg) {
  return ModelVerdict{false, c, p, w, std::move(msg)};
}

}  // namespace

ModelVerdict validate_model(const EpistemicGameModel& egm) {
  const auto& g = egm.game;
  const std::size_t n = egm.num_worlds();
  if (egm.rel.size() != g.num_players() || egm.beliefs.size() != g.num_players() ||
      egm.sigma.size() != g.num_players()) {
    throw GameError("epistemic model needs a relation, beliefs and strategy map per player");
  }
  for (std::size_t a = 0; a < g.num_players(); ++a) {
    const std::string& pa = g.players()[a];
    for (std::size_t w = 0; w < n; ++w) {
      const std::string at = "player " + pa + " at " + egm.worlds[w];
      if (egm.rel[a].successors(w).empty()) return fail(ModelClause::Serial, a, w, at + ": no accessible world");
      Rational total = 0;
      for (const auto& [v, mass] : egm.beliefs[a][w]) {
        if (mass < 0) return fail(ModelClause::Distribution, a, w, at + ": negative probability");
        total += mass;
      }
      if (total != 1) return fail(ModelClause::Distribution, a, w, at + ": probabilities sum to " + to_string(total));
      for (const auto& [v, mass] : egm.beliefs[a][w]) {
        if (mass != 0 && !egm.rel[a].contains(w, v)) {
          return fail(ModelClause::Support, a, w, at + ": mass on inaccessible world " + egm.worlds[v]);
        }
      }
    }
  }
  for (std::size_t a = 0; a < g.num_players(); ++a) {
    const std::string& pa = g.players()[a];
    for (std::size_t w = 0; w < n; ++w) {
      bool br = best_response(egm, a, w);
      if (atom_true(egm, rationality_atom(pa), w) != br) {
        return fail(ModelClause::BestResponse, a, w,
                    rationality_atom(pa) + " at " + egm.worlds[w] + " should be " + (br ? "true" : "false"));
      }
    }
    if (egm.val.count(independence_atom(pa))) {
      for (std::size_t w = 0; w < n; ++w) {
        bool ind = independent_beliefs(egm, a, w);
        if (atom_true(egm, independence_atom(pa), w) != ind) {
          return fail(ModelClause::Independence, a, w,
                      independence_atom(pa) + " at " + egm.worlds[w] + " should be " + (ind ? "true" : "false"));
        }
      }
    }
  }
  return {};
}

void assign_rationality(EpistemicGameModel& egm, bool with_independence) {
  const std::size_t n = egm.num_worlds();
  for (std::size_t a = 0; a < egm.game.num_players(); ++a) {
    const std::string& pa = egm.game.players()[a];
    WorldSet r(n);
    for (std::size_t w = 0; w < n; ++w) r[w] = best_response(egm, a, w);
    egm.val[rationality_atom(pa)] = r;
    if (with_independence) {
      WorldSet rp(n);
      for (std::size_t w = 0; w < n; ++w) rp[w] = independent_beliefs(egm, a, w);
      egm.val[independence_atom(pa)] = rp;
    }
  }
}

std::vector<Formula> gamma(const std::vector<std::string>& players, std::size_t depth, bool primed) {
  if (depth == 0) throw GameError("gamma needs depth at least 1");
  std::vector<Formula> out;
  std::vector<std::vector<std::size_t>> layer;
  for (std::size_t i = 0; i < players.size(); ++i) layer.push_back({i});
  for (std::size_t len = 1; len <= depth; ++len) {
    for (const auto& seq : layer) {
      const std::string& last = players[seq.back()];
      Formula f = Formula::atom(primed ? independence_atom(last) : rationality_atom(last));
      for (std::size_t i = seq.size() - 1; i-- > 0;) f = Formula::box(players[seq[i]], f);
      out.push_back(f);
    }
    std::vector<std::vector<std::size_t>> next;
    for (const auto& seq : layer) {
      for (std::size_t i = 0; i < players.size(); ++i) {
        if (i == seq.back()) continue;
        auto s = seq;
        s.push_back(i);
        next.push_back(std::move(s));
      }
    }
    layer = std::move(next);
  }
  return out;
}

std::string to_string(Rationalizability r) {
  switch (r) {
    case Rationalizability::Checked:
      return "checked";
    case Rationalizability::NotChecked:
      return "not checked";
    case Rationalizability::Vacuous:
      return "vacuous";
  }
  return "?";
}

TheoremVerdict verify_theorem_A(const EpistemicGameModel& egm, std::size_t world, std::size_t depth) {
  ModelVerdict mv = validate_model(egm);
  if (!mv.ok) throw ModelError("invalid epistemic model: " + to_string(mv.clause) + ": " + mv.message);
  if (world >= egm.num_worlds()) throw ModelError("world out of range");
  KripkeModel m = egm.kripke();
  Evaluator ev(m);
  auto all_hold = [&](const std::vector<Formula>& fs) {
    return std::all_of(fs.begin(), fs.end(), [&](const Formula& f) { return ev.holds(f, world); });
  };
  TheoremVerdict v;
  v.gamma_holds = all_hold(gamma(egm.game.players(), depth, false));
  bool has_primed = false;
  for (const auto& p : egm.game.players()) has_primed = has_primed || egm.val.count(independence_atom(p));
  v.gamma_prime_holds = has_primed && all_hold(gamma(egm.game.players(), depth, true));
  if (!v.gamma_holds) return v;
  v.survivors = iesds(egm.game);
  for (std::size_t a = 0; a < egm.game.num_players(); ++a) {
    const auto& s = v.survivors.survivors[a];
    bool in = std::find(s.begin(), s.end(), egm.sigma[a][world]) != s.end();
    v.survives.push_back(in);
    v.ok = v.ok && in;
  }
  if (v.gamma_prime_holds) {
    v.rationalizable = egm.game.num_players() == 2 ? Rationalizability::Checked : Rationalizability::NotChecked;
  }
  return v;
}

EpistemicGameModel prisoners_dilemma_model() {
  EpistemicGameModel egm;
  egm.game = prisoners_dilemma();
  egm.worlds = {"w1", "w2"};
  egm.rel.assign(2, Relation(2));
  egm.beliefs.assign(2, std::vector<std::map<std::size_t, Rational>>(2));
  egm.sigma.assign(2, std::vector<std::size_t>(2, 1));
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t w = 0; w < 2; ++w) {
      for (std::size_t v = 0; v < 2; ++v) {
        egm.rel[a].add(w, v);
        egm.beliefs[a][w][v] = Rational(1, 2);
      }
    }
  }
  assign_rationality(egm, true);
  return egm;
}

}  // namespace altlab
