// JSON game files:
//   {"players": [...], "strategies": {player: [...]},
//    "utilities": [{"profile": [...], "payoffs": ["num/den", ...]}, ...],
//    "epistemic": {"worlds": [...], "rel": {player: [[from, to], ...]},
//                  "beliefs": {player: {world: {world: "num/den"}}},
//                  "sigma": {player: {world: strategy}}, "val": {atom: [world, ...]},
//                  "point": world}}
#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "altlab/games.hpp"

namespace altlab {

struct LoadedGame {
  StrategicGame game;
  std::optional<EpistemicGameModel> model;
  std::optional<std::size_t> point;
};

LoadedGame game_from_json(const nlohmann::json& j);
nlohmann::json game_to_json(const StrategicGame& g);
nlohmann::json game_model_to_json(const EpistemicGameModel& egm, std::optional<std::size_t> point = std::nullopt);

// A file path, or "games:NAME" for a packaged game file.
LoadedGame load_game(const std::string& uri);
std::string game_directory();

}  // namespace altlab
