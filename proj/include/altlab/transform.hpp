// Depth-bounded agent-alternating unravelings with optional K45 / B
// completion, and the partition-model construction for the nonrepeating
// collapse.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "altlab/bisimulation.hpp"
#include "altlab/kripke.hpp"

namespace altlab {

enum class Completion { None, K45, B };

std::string to_string(Completion c);
Completion completion_from_string(const std::string& s);

struct TraceStep {
  std::size_t tag;    // agent index of the source model; num_agents() stands for alt
  std::size_t world;  // source world
};

struct Unraveling {
  PointedModel result;  // point is the length-1 trace of the source point
  std::size_t depth = 0;
  std::vector<std::vector<TraceStep>> traces;  // indexed like result.model.worlds()

  // Worlds whose successors are all present (trace length <= depth).
  bool interior(std::size_t s) const { return traces[s].size() <= depth; }
};

// Traces of length <= depth + 1 from every source world.
Unraveling alt_unravel(const PointedModel& pm, std::size_t depth, Completion completion);

// Layer n relates source world w to trace s ending in (x, w) at index x when
// len(s) <= depth + 1 - n, for n = 0..depth.
std::vector<std::vector<PairRelation>> projection_layers(const KripkeModel& source, const Unraveling& u);

struct PartitionStep {
  std::size_t agents;  // bitmask over the source agents
  std::size_t world;
};

struct PartitionModel {
  PointedModel result;
  std::vector<std::vector<PartitionStep>> traces;
};

// The source model must be reflexive for every agent.
PartitionModel nr_partition(const PointedModel& pm);

// u ~_X s iff s ends in (Y, u) with X a subset of Y; indexed like IndexScheme(Nonrepeating).
std::vector<PairRelation> partition_family(const KripkeModel& source, const PartitionModel& p);

}  // namespace altlab
