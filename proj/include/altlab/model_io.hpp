// JSON model files:
//   {"agents": [...], "worlds": [...], "rel": {agent: [[from, to], ...]},
//    "val": {atom: [world, ...]}, "point": world}
#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "altlab/kripke.hpp"

namespace altlab {

struct LoadedModel {
  KripkeModel model;
  std::optional<std::size_t> point;
};

// Validation failures throw ModelError naming the offending path, e.g. "rel.a[2][1]".
LoadedModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const KripkeModel& m, std::optional<std::size_t> point = std::nullopt);

// "zoo:NAME" or a file path.
LoadedModel load_model(const std::string& uri);

}  // namespace altlab
