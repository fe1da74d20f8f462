#include "altlab/model_io.hpp"

#include <fstream>

#include "altlab/zoo.hpp"

namespace altlab {

using nlohmann::json;

namespace {

const std::string& as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ModelError(path + ": expected a string");
  return j.get_ref<const std::string&>();
}

const json& field(const json& j, const char* key, json::value_t type) {
  auto it = j.find(key);
  if (it == j.end()) throw ModelError(std::string(key) + ": missing");
  if (it->type() != type) throw ModelError(std::string(key) + ": wrong type");
  return *it;
}

std::vector<std::string> string_array(const json& j, const std::string& path) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::size_t world_at(const KripkeModel& m, const json& j, const std::string& path) {
  auto w = m.world_index(as_string(j, path));
  if (!w) throw ModelError(path + ": unknown world '" + j.get<std::string>() + "'");
  return *w;
}

}  // namespace

LoadedModel model_from_json(const json& j) {
  if (!j.is_object()) throw ModelError("document: expected an object");
  auto agents = string_array(field(j, "agents", json::value_t::array), "agents");
  auto worlds = string_array(field(j, "worlds", json::value_t::array), "worlds");
  if (worlds.empty()) throw ModelError("worlds: a model needs at least one world");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (!is_valid_agent_name(agents[i])) throw ModelError("agents[" + std::to_string(i) + "]: invalid agent name");
  }
  LoadedModel out;
  try {
    out.model = KripkeModel(agents, worlds);
  } catch (const ModelError& e) {
    throw ModelError(std::string("worlds/agents: ") + e.what());
  }
  KripkeModel& m = out.model;

  if (auto it = j.find("rel"); it != j.end()) {
    if (!it->is_object()) throw ModelError("rel: expected an object");
    for (const auto& [agent, pairs] : it->items()) {
      const std::string base = "rel." + agent;
      auto a = m.agent_index(agent);
      if (!a) throw ModelError(base + ": unknown agent");
      if (!pairs.is_array()) throw ModelError(base + ": expected an array");
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::string p = base + "[" + std::to_string(i) + "]";
        if (!pairs[i].is_array() || pairs[i].size() != 2) throw ModelError(p + ": expected [from, to]");
        m.add_edge(*a, world_at(m, pairs[i][0], p + "[0]"), world_at(m, pairs[i][1], p + "[1]"));
      }
    }
  }
  if (auto it = j.find("val"); it != j.end()) {
    if (!it->is_object()) throw ModelError("val: expected an object");
    for (const auto& [atom, ws] : it->items()) {
      const std::string base = "val." + atom;
      if (!ws.is_array()) throw ModelError(base + ": expected an array");
      m.declare_atom(atom);
      for (std::size_t i = 0; i < ws.size(); ++i) {
        m.set_true(atom, world_at(m, ws[i], base + "[" + std::to_string(i) + "]"));
      }
    }
  }
  if (auto it = j.find("point"); it != j.end()) out.point = world_at(m, *it, "point");
  return out;
}

json model_to_json(const KripkeModel& m, std::optional<std::size_t> point) {
  json j;
  j["agents"] = m.agents();
  j["worlds"] = m.worlds();
  json rel = json::object();
  for (std::size_t a = 0; a < m.num_agents(); ++a) {
    json pairs = json::array();
    for (std::size_t u = 0; u < m.num_worlds(); ++u) {
      for (std::size_t v : m.relation(a).successors(u)) pairs.push_back({m.world_name(u), m.world_name(v)});
    }
    rel[m.agents()[a]] = std::move(pairs);
  }
  j["rel"] = std::move(rel);
  json val = json::object();
  for (const auto& [atom, set] : m.valuations()) {
    json ws = json::array();
    for (std::size_t w = 0; w < m.num_worlds(); ++w) {
      if (set.test(w)) ws.push_back(m.world_name(w));
    }
    val[atom] = std::move(ws);
  }
  j["val"] = std::move(val);
  if (point) j["point"] = m.world_name(*point);
  return j;
}

LoadedModel load_model(const std::string& uri) {
  if (uri.rfind("zoo:", 0) == 0) {
    PointedModel pm = zoo(uri.substr(4));
    return LoadedModel{std::move(pm.model), pm.point};
  }
  std::ifstream in(uri);
  if (!in) throw Error("cannot open model file '" + uri + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("malformed JSON: ") + e.what());
  }
  return model_from_json(j);
}

}  // namespace altlab
