#include "altlab/random.hpp"

#include <algorithm>
#include <cstdlib>

#include "altlab/countermodel.hpp"

namespace altlab {

std::uint64_t default_seed() {
  if (const char* s = std::getenv("ALTLAB_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && end != s) return v;
  }
  return kDefaultSeed;
}

namespace {

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

struct FormulaBuilder {
  Rng& rng;
  const FormulaGen& gen;

  // allowed agents for the next modality, given the path so far
  std::vector<std::string> allowed(const std::string& last, const std::vector<bool>& used) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < gen.agents.size(); ++i) {
      const auto& a = gen.agents[i];
      if (gen.fragment == FormulaFragment::Alternating && a == last) continue;
      if (gen.fragment == FormulaFragment::Nonrepeating && used[i]) continue;
      out.push_back(a);
    }
    return out;
  }

  Formula leaf() {
    if (gen.constants && std::uniform_int_distribution<int>(0, 9)(rng) == 0) {
      return std::bernoulli_distribution(0.5)(rng) ? Formula::verum() : Formula::falsum();
    }
    return Formula::atom(pick(rng, gen.atoms));
  }

  Formula build(std::size_t depth, std::size_t budget, const std::string& last, std::vector<bool>& used) {
    if (budget <= 1) return leaf();
    auto agents = depth > 0 ? allowed(last, used) : std::vector<std::string>{};
    std::vector<int> kinds = {0, 1};  // not, and
    if (gen.sugar) kinds.insert(kinds.end(), {2, 3, 4});
    if (!agents.empty()) {
      kinds.insert(kinds.end(), {5, 5, 5});
      if (gen.sugar) kinds.insert(kinds.end(), {6, 6});
    }
    if (gen.common && gen.fragment == FormulaFragment::Any && depth > 0) kinds.insert(kinds.end(), {7, 8, 9});
    kinds.push_back(-1);  // leaf
    int k = pick(rng, kinds);
    auto split = [&] {
      std::size_t left = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, budget - 2))(rng);
      return std::make_pair(left, std::max<std::size_t>(1, budget - 1 - left));
    };
    switch (k) {
      case 0:
        return Formula::negation(build(depth, budget - 1, last, used));
      case 1:
      case 2:
      case 3:
      case 4: {
        auto [l, r] = split();
        Formula a = build(depth, l, last, used);
        Formula b = build(depth, r, last, used);
        if (k == 1) return Formula::conj(a, b);
        if (k == 2) return Formula::disj(a, b);
        if (k == 3) return Formula::implies(a, b);
        return Formula::iff(a, b);
      }
      case 5:
      case 6: {
        const std::string a = pick(rng, agents);
        std::size_t i = static_cast<std::size_t>(std::find(gen.agents.begin(), gen.agents.end(), a) - gen.agents.begin());
        bool was = used[i];
        used[i] = true;
        Formula inner = build(depth - 1, budget - 1, a, used);
        used[i] = was;
        return k == 5 ? Formula::box(a, inner) : Formula::diamond(a, inner);
      }
      case 7:
      case 8:
      case 9: {
        Formula inner = build(depth - 1, budget - 1, "", used);
        if (k == 7) return std::bernoulli_distribution(0.5)(rng) ? Formula::common(inner) : Formula::common_dual(inner);
        if (k == 8) return Formula::everyone(inner);
        return Formula::everyone_dual(inner);
      }
      default:
        return leaf();
    }
  }
};

}  // namespace

Formula random_formula(Rng& rng, const FormulaGen& gen) {
  FormulaBuilder b{rng, gen};
  std::vector<bool> used(gen.agents.size(), false);
  std::string last;
  for (const auto& b : gen.blocked) {
    auto it = std::find(gen.agents.begin(), gen.agents.end(), b);
    if (it != gen.agents.end()) used[static_cast<std::size_t>(it - gen.agents.begin())] = true;
    last = b;
  }
  if (gen.fragment == FormulaFragment::Alternating && gen.blocked.size() > 1) {
    throw Error("alternating generation blocks at most one agent");
  }
  std::size_t budget = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, gen.max_size))(rng);
  return b.build(gen.max_depth, budget, last, used);
}

PointedModel random_model(Rng& rng, const ModelGen& gen) {
  std::size_t n = std::uniform_int_distribution<std::size_t>(gen.min_worlds, gen.max_worlds)(rng);
  std::vector<std::string> worlds;
  for (std::size_t i = 1; i <= n; ++i) worlds.push_back("w" + std::to_string(i));
  KripkeModel m(gen.agents, worlds);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t a = 0; a < gen.agents.size(); ++a) {
    const double density = unit(rng) * 0.6;
    Relation r(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (unit(rng) < density) r.add(i, j);
      }
    }
    close_under(r, gen.frames);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j : r.successors(i)) m.add_edge(a, i, j);
    }
  }
  for (const auto& atom : gen.atoms) {
    m.declare_atom(atom);
    for (std::size_t w = 0; w < n; ++w) {
      if (unit(rng) < 0.5) m.set_true(atom, w);
    }
  }
  std::size_t point = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  return PointedModel{std::move(m), point};
}

StrategicGame random_game(Rng& rng, const GameGen& gen, std::size_t players) {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> strategies;
  for (std::size_t p = 0; p < players; ++p) {
    names.push_back(std::to_string(p + 1));
    std::size_t k = std::uniform_int_distribution<std::size_t>(1, gen.max_strategies)(rng);
    std::vector<std::string> s;
    for (std::size_t i = 0; i < k; ++i) s.push_back(std::string(1, static_cast<char>('A' + i)) + std::to_string(p + 1));
    strategies.push_back(std::move(s));
  }
  StrategicGame g(names, strategies);
  std::uniform_int_distribution<int> pay(gen.min_payoff, gen.max_payoff);
  std::uniform_int_distribution<unsigned> den(1, std::max(1u, gen.max_den));
  for (std::size_t idx = 0; idx < g.num_profiles(); ++idx) {
    std::vector<Rational> u;
    for (std::size_t p = 0; p < players; ++p) {
      unsigned d = den(rng);
      u.emplace_back(pay(rng) * static_cast<int>(d) + std::uniform_int_distribution<int>(0, static_cast<int>(d) - 1)(rng), d);
    }
    g.set_payoffs(g.profile_at(idx), std::move(u));
  }
  return g;
}

EpistemicGameModel random_game_model(Rng& rng, const GameGen& gen, std::size_t max_worlds, bool aim_rational) {
  EpistemicGameModel egm;
  egm.game = random_game(rng, gen, 2);
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_worlds)(rng);
  for (std::size_t i = 1; i <= n; ++i) egm.worlds.push_back("w" + std::to_string(i));
  const std::size_t np = egm.game.num_players();
  egm.rel.assign(np, Relation(n));
  egm.beliefs.assign(np, std::vector<std::map<std::size_t, Rational>>(n));
  egm.sigma.assign(np, std::vector<std::size_t>(n));
  std::uniform_int_distribution<std::size_t> any_world(0, n - 1);
  for (std::size_t a = 0; a < np; ++a) {
    for (std::size_t w = 0; w < n; ++w) {
      std::vector<std::size_t> succ;
      for (std::size_t v = 0; v < n; ++v) {
        if (std::bernoulli_distribution(0.5)(rng)) succ.push_back(v);
      }
      if (succ.empty()) succ.push_back(any_world(rng));
      for (std::size_t v : succ) egm.rel[a].add(w, v);
      // weights 1..3 normalized; some accessible worlds may get no mass
      std::vector<int> weight(succ.size());
      int total = 0;
      for (auto& x : weight) {
        x = std::uniform_int_distribution<int>(0, 3)(rng);
        total += x;
      }
      if (total == 0) {
        weight[0] = 1;
        total = 1;
      }
      for (std::size_t i = 0; i < succ.size(); ++i) {
        if (weight[i]) egm.beliefs[a][w][succ[i]] = Rational(weight[i], total);
      }
      egm.sigma[a][w] = std::uniform_int_distribution<std::size_t>(0, egm.game.strategies(a).size() - 1)(rng);
    }
  }
  if (aim_rational) {
    for (int sweep = 0; sweep < 8; ++sweep) {
      bool changed = false;
      for (std::size_t a = 0; a < np; ++a) {
        for (std::size_t w = 0; w < n; ++w) {
          if (best_response(egm, a, w)) continue;
          std::size_t best = 0;
          for (std::size_t s = 1; s < egm.game.strategies(a).size(); ++s) {
            if (expected_utility(egm, a, w, s) > expected_utility(egm, a, w, best)) best = s;
          }
          egm.sigma[a][w] = best;
          changed = true;
        }
      }
      if (!changed) break;
    }
  }
  assign_rationality(egm, std::bernoulli_distribution(0.5)(rng));
  return egm;
}

}  // namespace altlab
