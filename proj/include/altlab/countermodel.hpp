// Bounded countermodel search over a frame class.
#pragma once

#include <cstdint>
#include <optional>

#include "altlab/kripke.hpp"

namespace altlab {

class SearchGuardError : public Error {
 public:
  using Error::Error;
};

enum class SearchMode { Exhaustive, Random };

struct SearchOptions {
  SearchMode mode = SearchMode::Exhaustive;
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
};

struct CountermodelResult {
  std::optional<PointedModel> model;
  std::size_t examined = 0;  // models evaluated
};

inline constexpr std::size_t kExhaustiveMaxWorlds = 3;
inline constexpr std::size_t kExhaustiveMaxAgents = 2;
inline constexpr std::size_t kExhaustiveMaxAtoms = 2;

// Agents of f, padded with fresh names up to two.
std::vector<std::string> search_agents(const Formula& f);

// Exhaustive mode enumerates sizes 1..max_worlds in order, so the first hit is
// also of minimal size. Any returned model is re-verified before return.
CountermodelResult search_countermodel(const Formula& f, const FrameClass& fc, std::size_t max_worlds,
                                       const SearchOptions& opts = {});

// All relations on n worlds admitted by fc, as edge bitmasks (bit i*n+j).
std::vector<std::uint32_t> admissible_relations(std::size_t n, const FrameClass& fc);

// Adds edges until r has every property fc asks for.
void close_under(Relation& r, const FrameClass& fc);

}  // namespace altlab
