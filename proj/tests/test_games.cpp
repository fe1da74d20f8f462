#include "doctest.h"

#include "altlab/fragments.hpp"
#include "altlab/game_io.hpp"
#include "altlab/games.hpp"
#include "altlab/random.hpp"

using namespace altlab;

namespace {

Restriction all_of(const StrategicGame& g) {
  Restriction r(g.num_players());
  for (std::size_t p = 0; p < g.num_players(); ++p) {
    for (std::size_t s = 0; s < g.strategies(p).size(); ++s) r[p].push_back(s);
  }
  return r;
}

// Player `p`'s strategy `s` is beaten by pure `t` on every allowed profile.
bool pure_dominated(const StrategicGame& g, std::size_t p, std::size_t s, const Restriction& r) {
  for (std::size_t t : r[p]) {
    if (t == s) continue;
    bool all = true;
    for (std::size_t i = 0; i < g.num_profiles() && all; ++i) {
      auto prof = g.profile_at(i);
      bool inside = true;
      for (std::size_t q = 0; q < g.num_players(); ++q) {
        if (q != p && std::find(r[q].begin(), r[q].end(), prof[q]) == r[q].end()) inside = false;
      }
      if (!inside || prof[p] != s) continue;
      auto alt = prof;
      alt[p] = t;
      all = g.utility(p, alt) > g.utility(p, prof);
    }
    if (all) return true;
  }
  return false;
}

std::vector<std::string> names(const StrategicGame& g, std::size_t p, const std::vector<std::size_t>& s) {
  std::vector<std::string> out;
  for (auto k : s) out.push_back(g.strategies(p)[k]);
  return out;
}

}  // namespace

TEST_SUITE("games") {

TEST_CASE("dominance examples") {
  StrategicGame pd = prisoners_dilemma();
  Restriction all = all_of(pd);
  CHECK(strictly_dominated(pd, 0, 0, all[0], all));
  CHECK(pure_dominated(pd, 0, 0, all));
  CHECK_FALSE(strictly_dominated(pd, 0, 1, all[0], all));

  StrategicGame mp = matching_pennies();
  Restriction mall = all_of(mp);
  for (std::size_t p = 0; p < 2; ++p) {
    for (std::size_t s = 0; s < 2; ++s) {
      CHECK_FALSE(strictly_dominated(mp, p, s, mall[p], mall));
      CHECK_FALSE(pure_dominated(mp, p, s, mall));
    }
  }
  CHECK(iesds(mp).survivors == mall);

  StrategicGame mix = mixture_dominance_game();
  Restriction xall = all_of(mix);
  CHECK_FALSE(pure_dominated(mix, 0, 1, xall));
  Domination d = dominance(mix, 0, 1, {0, 2}, xall);
  CHECK(d.dominated);
  CHECK(d.weights == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(d.margin == Rational(1, 2));
  CHECK_FALSE(strictly_dominated(mix, 0, 0, xall[0], xall));
}

TEST_CASE("iesds examples") {
  StrategicGame pd = prisoners_dilemma();
  IesdsResult r = iesds(pd);
  CHECK(r.survivors == Restriction{{1}, {1}});
  CHECK(r.rounds.size() == 1);

  StrategicGame bi = backward_induction_game();
  IesdsResult b = iesds(bi);
  CHECK(names(bi, 0, b.survivors[0]) == std::vector<std::string>{"b", "c"});
  CHECK(names(bi, 1, b.survivors[1]) == std::vector<std::string>{"dg", "ef", "eg"});
  // the outcome path a -> c -> g stays available
  CHECK(std::find(b.survivors[0].begin(), b.survivors[0].end(), bi.strategy_index(0, "c")) != b.survivors[0].end());
  CHECK(iesds_grid(bi).survivors == b.survivors);
}

TEST_CASE("guard on strategy counts") {
  std::vector<std::string> many;
  for (int i = 0; i < 17; ++i) many.push_back("s" + std::to_string(i));
  StrategicGame g({"1", "2"}, {many, {"x"}});
  for (std::size_t i = 0; i < g.num_profiles(); ++i) g.set_payoffs(g.profile_at(i), {Rational(0), Rational(0)});
  CHECK_THROWS_AS(iesds(g), GameError);
}

TEST_CASE("iesds is order independent and matches the grid oracle") {
  Rng rng(default_seed() + 70);
  GameGen gen;
  gen.max_den = 6;
  std::size_t eliminated = 0;
  for (int i = 0; i < 300; ++i) {
    StrategicGame g = random_game(rng, gen);
    IesdsResult sim = iesds(g);
    CHECK(iesds_sequential(g).survivors == sim.survivors);
    IesdsResult grid = iesds_grid(g, 6);
    for (std::size_t p = 0; p < 2; ++p) {
      for (auto s : sim.survivors[p]) {
        CHECK(std::find(grid.survivors[p].begin(), grid.survivors[p].end(), s) != grid.survivors[p].end());
      }
    }
    for (const auto& round : sim.rounds) {
      for (const auto& e : round) {
        CHECK(e.margin > 0);
        ++eliminated;
      }
    }
  }
  CHECK(eliminated > 0);
}

TEST_CASE("gamma") {
  auto g1 = gamma({"a", "b"}, 1, false);
  CHECK(g1.size() == 2);
  CHECK(g1[0] == parse_formula("r_a"));
  auto g3 = gamma({"a", "b"}, 3, false);
  CHECK(g3.size() == 6);
  CHECK(std::find(g3.begin(), g3.end(), parse_formula("[a][b]r_a")) != g3.end());
  for (const auto& f : gamma({"a", "b", "c"}, 4, true)) CHECK(in_L_alt(f, {"a", "b", "c"}));
  CHECK(gamma({"a", "b"}, 2, true).size() == 4);
}

TEST_CASE("prisoner's dilemma model") {
  EpistemicGameModel egm = prisoners_dilemma_model();
  CHECK(validate_model(egm).ok);
  TheoremVerdict v = verify_theorem_A(egm, 0, 4);
  CHECK(v.gamma_holds);
  CHECK(v.ok);
  CHECK(v.survives == std::vector<bool>{true, true});
  CHECK(v.rationalizable == Rationalizability::Checked);
  CHECK(expected_utility(egm, 0, 0, 1) == 1);
  CHECK(expected_utility(egm, 0, 0, 0) == 0);
}

TEST_CASE("model violations are reported by clause") {
  EpistemicGameModel base = prisoners_dilemma_model();
  {
    EpistemicGameModel m = base;
    m.val[rationality_atom("1")].flip(0);
    ModelVerdict v = validate_model(m);
    CHECK_FALSE(v.ok);
    CHECK(v.clause == ModelClause::BestResponse);
  }
  {
    EpistemicGameModel m = base;
    m.rel[0] = Relation(2);
    m.rel[0].add(0, 0);
    m.rel[0].add(1, 1);
    ModelVerdict v = validate_model(m);
    CHECK_FALSE(v.ok);
    CHECK(v.clause == ModelClause::Support);
  }
  {
    EpistemicGameModel m = base;
    m.beliefs[1][1][0] = Rational(1, 3);
    ModelVerdict v = validate_model(m);
    CHECK_FALSE(v.ok);
    CHECK(v.clause == ModelClause::Distribution);
  }
  {
    EpistemicGameModel m = base;
    m.rel[1] = Relation(2);
    m.rel[1].add(1, 1);
    ModelVerdict v = validate_model(m);
    CHECK_FALSE(v.ok);
    CHECK(v.clause == ModelClause::Serial);
  }
  CHECK_THROWS_AS(verify_theorem_A([&] {
                    EpistemicGameModel m = base;
                    m.val[rationality_atom("2")].flip(1);
                    return m;
                  }(),
                                   0, 3),
                  ModelError);
}

TEST_CASE("vacuous verdict when gamma fails") {
  EpistemicGameModel m = prisoners_dilemma_model();
  for (auto& s : m.sigma[0]) s = 0;  // player 1 cooperates, not a best response
  assign_rationality(m, true);
  REQUIRE(validate_model(m).ok);
  TheoremVerdict v = verify_theorem_A(m, 0, 3);
  CHECK_FALSE(v.gamma_holds);
  CHECK(v.rationalizable == Rationalizability::Vacuous);
  CHECK(v.ok);
}

TEST_CASE("changing a strategy to a non-best response is detected") {
  Rng rng(default_seed() + 71);
  GameGen gen;
  std::size_t flips = 0;
  for (int i = 0; i < 200 && flips < 50; ++i) {
    EpistemicGameModel m = random_game_model(rng, gen, 3, true);
    REQUIRE(validate_model(m).ok);
    for (std::size_t p = 0; p < 2; ++p) {
      for (std::size_t w = 0; w < m.num_worlds(); ++w) {
        if (!best_response(m, p, w)) continue;
        for (std::size_t s = 0; s < m.game.strategies(p).size(); ++s) {
          EpistemicGameModel x = m;
          x.sigma[p][w] = s;
          if (best_response(x, p, w)) continue;
          ModelVerdict v = validate_model(x);
          CHECK_FALSE(v.ok);
          CHECK(v.clause == ModelClause::BestResponse);
          ++flips;
          break;
        }
      }
    }
  }
  CHECK(flips > 0);
}

TEST_CASE("theorem A on random models") {
  Rng rng(default_seed() + 72);
  GameGen gen;
  std::size_t held = 0;
  for (int i = 0; i < 2000 && held < 50; ++i) {
    EpistemicGameModel m = random_game_model(rng, gen, 4, true);
    const std::size_t depth = m.num_worlds() * 2 + 1;
    for (std::size_t w = 0; w < m.num_worlds(); ++w) {
      TheoremVerdict v = verify_theorem_A(m, w, depth);
      CHECK(v.ok);
      if (!v.gamma_holds) continue;
      ++held;
      for (std::size_t p = 0; p < 2; ++p) {
        const auto& s = v.survivors.survivors[p];
        CHECK(std::find(s.begin(), s.end(), m.sigma[p][w]) != s.end());
      }
    }
  }
  CHECK(held >= 50);
}

TEST_CASE("game files") {
  for (const char* name : {"prisoners-dilemma", "matching-pennies", "mixture-dominance", "backward-induction"}) {
    LoadedGame g = load_game(std::string("games:") + name);
    CHECK(g.game.complete());
    LoadedGame back = game_from_json(game_to_json(g.game));
    CHECK(back.game.players() == g.game.players());
    for (std::size_t i = 0; i < g.game.num_profiles(); ++i) {
      for (std::size_t p = 0; p < g.game.num_players(); ++p) {
        CHECK(back.game.utility(p, g.game.profile_at(i)) == g.game.utility(p, g.game.profile_at(i)));
      }
    }
  }
  LoadedGame pd = load_game("games:pd-model");
  REQUIRE(pd.model.has_value());
  CHECK(validate_model(*pd.model).ok);
  CHECK(pd.point == 0u);
  nlohmann::json bad = game_to_json(prisoners_dilemma());
  bad["utilities"].erase(0);
  CHECK_THROWS(game_from_json(bad));
}

}
