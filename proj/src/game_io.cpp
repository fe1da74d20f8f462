#include "altlab/game_io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#ifndef ALTLAB_DATA_DIR
#define ALTLAB_DATA_DIR "data"
#endif

namespace altlab {

using nlohmann::json;

namespace {

const json& field(const json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw GameError(path + key + ": missing");
  return *it;
}

std::string str(const json& j, const std::string& path) {
  if (!j.is_string()) throw GameError(path + ": expected a string");
  return j.get<std::string>();
}

Rational rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      throw GameError(path + ": " + e.what());
    }
  }
  throw GameError(path + ": expected an integer or a \"num/den\" string");
}

template <class F>
void each_object(const json& j, const std::string& path, F f) {
  if (!j.is_object()) throw GameError(path + ": expected an object");
  for (const auto& [k, v] : j.items()) f(k, v, path + "." + k);
}

EpistemicGameModel model_from(const StrategicGame& g, const json& e, std::optional<std::size_t>& point) {
  EpistemicGameModel egm;
  egm.game = g;
  const std::string base = "epistemic.";
  const json& worlds = field(e, "worlds", base);
  if (!worlds.is_array() || worlds.empty()) throw GameError("epistemic.worlds: expected a nonempty array");
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    egm.worlds.push_back(str(worlds[i], "epistemic.worlds[" + std::to_string(i) + "]"));
  }
  const std::size_t n = egm.worlds.size();
  const std::size_t np = g.num_players();
  auto world = [&](const std::string& name, const std::string& path) {
    try {
      return egm.world_index(name);
    } catch (const GameError&) {
      throw GameError(path + ": unknown world '" + name + "'");
    }
  };
  auto player = [&](const std::string& name, const std::string& path) {
    try {
      return g.player_index(name);
    } catch (const GameError&) {
      throw GameError(path + ": unknown player");
    }
  };
  egm.rel.assign(np, Relation(n));
  egm.beliefs.assign(np, std::vector<std::map<std::size_t, Rational>>(n));
  egm.sigma.assign(np, std::vector<std::size_t>(n, 0));

  each_object(field(e, "rel", base), "epistemic.rel", [&](const std::string& p, const json& pairs, const std::string& path) {
    std::size_t a = player(p, path);
    if (!pairs.is_array()) throw GameError(path + ": expected an array");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string pp = path + "[" + std::to_string(i) + "]";
      if (!pairs[i].is_array() || pairs[i].size() != 2) throw GameError(pp + ": expected [from, to]");
      egm.rel[a].add(world(str(pairs[i][0], pp + "[0]"), pp + "[0]"), world(str(pairs[i][1], pp + "[1]"), pp + "[1]"));
    }
  });
  each_object(field(e, "beliefs", base), "epistemic.beliefs", [&](const std::string& p, const json& per, const std::string& path) {
    std::size_t a = player(p, path);
    each_object(per, path, [&](const std::string& w, const json& dist, const std::string& wp) {
      std::size_t wi = world(w, wp);
      each_object(dist, wp, [&](const std::string& v, const json& mass, const std::string& vp) {
        egm.beliefs[a][wi][world(v, vp)] = rational(mass, vp);
      });
    });
  });
  std::vector<std::vector<bool>> seen(np, std::vector<bool>(n, false));
  each_object(field(e, "sigma", base), "epistemic.sigma", [&](const std::string& p, const json& per, const std::string& path) {
    std::size_t a = player(p, path);
    each_object(per, path, [&](const std::string& w, const json& s, const std::string& wp) {
      std::size_t wi = world(w, wp);
      try {
        egm.sigma[a][wi] = g.strategy_index(a, str(s, wp));
      } catch (const GameError&) {
        throw GameError(wp + ": unknown strategy");
      }
      seen[a][wi] = true;
    });
  });
  for (std::size_t a = 0; a < np; ++a) {
    for (std::size_t w = 0; w < n; ++w) {
      if (!seen[a][w]) throw GameError("epistemic.sigma." + g.players()[a] + "." + egm.worlds[w] + ": missing");
    }
  }
  if (auto it = e.find("val"); it != e.end()) {
    each_object(*it, "epistemic.val", [&](const std::string& atom, const json& ws, const std::string& path) {
      if (!ws.is_array()) throw GameError(path + ": expected an array");
      WorldSet set(n);
      for (std::size_t i = 0; i < ws.size(); ++i) {
        const std::string pp = path + "[" + std::to_string(i) + "]";
        set.set(world(str(ws[i], pp), pp));
      }
      egm.val[atom] = set;
    });
  }
  if (auto it = e.find("point"); it != e.end()) point = world(str(*it, "epistemic.point"), "epistemic.point");
  return egm;
}

}  // namespace

LoadedGame game_from_json(const json& j) {
  if (!j.is_object()) throw GameError("document: expected an object");
  const json& pj = field(j, "players", "");
  if (!pj.is_array()) throw GameError("players: expected an array");
  std::vector<std::string> players;
  for (std::size_t i = 0; i < pj.size(); ++i) {
    players.push_back(str(pj[i], "players[" + std::to_string(i) + "]"));
    if (!is_valid_agent_name(players.back())) throw GameError("players[" + std::to_string(i) + "]: invalid name");
  }
  const json& sj = field(j, "strategies", "");
  std::vector<std::vector<std::string>> strategies;
  for (const auto& p : players) {
    const json& list = field(sj, p, "strategies.");
    if (!list.is_array()) throw GameError("strategies." + p + ": expected an array");
    std::vector<std::string> s;
    for (std::size_t i = 0; i < list.size(); ++i) s.push_back(str(list[i], "strategies." + p + "[" + std::to_string(i) + "]"));
    strategies.push_back(std::move(s));
  }
  LoadedGame out;
  out.game = StrategicGame(players, strategies);
  const json& uj = field(j, "utilities", "");
  if (!uj.is_array()) throw GameError("utilities: expected an array");
  for (std::size_t i = 0; i < uj.size(); ++i) {
    const std::string path = "utilities[" + std::to_string(i) + "]";
    const json& prof = field(uj[i], "profile", path + ".");
    const json& pay = field(uj[i], "payoffs", path + ".");
    if (!prof.is_array() || prof.size() != players.size()) throw GameError(path + ".profile: one strategy per player expected");
    if (!pay.is_array() || pay.size() != players.size()) throw GameError(path + ".payoffs: one payoff per player expected");
    std::vector<std::size_t> profile;
    std::vector<Rational> payoffs;
    for (std::size_t p = 0; p < players.size(); ++p) {
      const std::string pp = path + ".profile[" + std::to_string(p) + "]";
      try {
        profile.push_back(out.game.strategy_index(p, str(prof[p], pp)));
      } catch (const GameError&) {
        throw GameError(pp + ": unknown strategy");
      }
      payoffs.push_back(rational(pay[p], path + ".payoffs[" + std::to_string(p) + "]"));
    }
    out.game.set_payoffs(profile, std::move(payoffs));
  }
  if (!out.game.complete()) throw GameError("utilities: some strategy profiles have no payoffs");
  if (auto it = j.find("epistemic"); it != j.end()) out.model = model_from(out.game, *it, out.point);
  return out;
}

json game_to_json(const StrategicGame& g) {
  json j;
  j["players"] = g.players();
  json s = json::object();
  for (std::size_t p = 0; p < g.num_players(); ++p) s[g.players()[p]] = g.strategies(p);
  j["strategies"] = s;
  json u = json::array();
  for (std::size_t idx = 0; idx < g.num_profiles(); ++idx) {
    auto prof = g.profile_at(idx);
    json names = json::array();
    json pays = json::array();
    for (std::size_t p = 0; p < g.num_players(); ++p) {
      names.push_back(g.strategies(p)[prof[p]]);
      pays.push_back(to_string(g.utility(p, prof)));
    }
    u.push_back({{"profile", names}, {"payoffs", pays}});
  }
  j["utilities"] = u;
  return j;
}

json game_model_to_json(const EpistemicGameModel& egm, std::optional<std::size_t> point) {
  json j = game_to_json(egm.game);
  json e;
  e["worlds"] = egm.worlds;
  json rel = json::object(), bel = json::object(), sig = json::object(), val = json::object();
  for (std::size_t a = 0; a < egm.game.num_players(); ++a) {
    const std::string& p = egm.game.players()[a];
    json pairs = json::array();
    json per = json::object();
    json sp = json::object();
    for (std::size_t w = 0; w < egm.num_worlds(); ++w) {
      for (std::size_t v : egm.rel[a].successors(w)) pairs.push_back({egm.worlds[w], egm.worlds[v]});
      json dist = json::object();
      for (const auto& [v, mass] : egm.beliefs[a][w]) dist[egm.worlds[v]] = to_string(mass);
      per[egm.worlds[w]] = dist;
      sp[egm.worlds[w]] = egm.game.strategies(a)[egm.sigma[a][w]];
    }
    rel[p] = pairs;
    bel[p] = per;
    sig[p] = sp;
  }
  for (const auto& [atom, set] : egm.val) {
    json ws = json::array();
    for (std::size_t w = 0; w < set.size(); ++w) {
      if (set.test(w)) ws.push_back(egm.worlds[w]);
    }
    val[atom] = ws;
  }
  e["rel"] = rel;
  e["beliefs"] = bel;
  e["sigma"] = sig;
  e["val"] = val;
  if (point) e["point"] = egm.worlds[*point];
  j["epistemic"] = e;
  return j;
}

std::string game_directory() {
  if (const char* env = std::getenv("ALTLAB_DATA")) return std::string(env) + "/games";
  return std::string(ALTLAB_DATA_DIR) + "/games";
}

LoadedGame load_game(const std::string& uri) {
  std::filesystem::path path = uri;
  if (uri.rfind("games:", 0) == 0) path = std::filesystem::path(game_directory()) / (uri.substr(6) + ".json");
  std::ifstream in(path);
  if (!in) throw GameError("cannot open '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw GameError(path.string() + ": " + e.what());
  }
  return game_from_json(j);
}

}  // namespace altlab
