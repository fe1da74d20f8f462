#include "altlab/transform.hpp"

#include <map>

namespace altlab {

std::string to_string(Completion c) {
  switch (c) {
    case Completion::None:
      return "none";
    case Completion::K45:
      return "k45";
    case Completion::B:
      return "b";
  }
  return "?";
}

Completion completion_from_string(const std::string& s) {
  if (s == "none") return Completion::None;
  if (s == "k45") return Completion::K45;
  if (s == "b") return Completion::B;
  throw Error("unknown completion '" + s + "'");
}

namespace {

std::string tag_name(const KripkeModel& m, std::size_t tag) {
  return tag == m.num_agents() ? "alt" : m.agents()[tag];
}

std::string agent_set_name(const KripkeModel& m, std::size_t mask) {
  std::string s = "{";
  bool first = true;
  for (std::size_t a = 0; a < m.num_agents(); ++a) {
    if (!(mask & (std::size_t{1} << a))) continue;
    if (!first) s += ",";
    s += m.agents()[a];
    first = false;
  }
  return s + "}";
}

void copy_valuation(const KripkeModel& src, KripkeModel& dst, const std::vector<std::size_t>& last_world) {
  for (const auto& [p, set] : src.valuations()) {
    dst.declare_atom(p);
    for (std::size_t s = 0; s < last_world.size(); ++s) {
      if (set.test(last_world[s])) dst.set_true(p, s);
    }
  }
}

}  // namespace

Unraveling alt_unravel(const PointedModel& pm, std::size_t depth, Completion completion) {
  const KripkeModel& m = pm.model;
  if (depth == 0) throw Error("unraveling depth must be at least 1");
  if (m.num_worlds() == 0) throw Error("cannot unravel an empty model");
  const std::size_t k = m.num_agents();
  const std::size_t alt = k;

  std::vector<std::vector<TraceStep>> traces;
  std::vector<std::size_t> parent;
  std::vector<std::vector<std::vector<std::size_t>>> children;  // [trace][agent]
  for (std::size_t w = 0; w < m.num_worlds(); ++w) {
    traces.push_back({{alt, w}});
    parent.push_back(static_cast<std::size_t>(-1));
  }
  for (std::size_t s = 0; s < traces.size(); ++s) {
    children.emplace_back(k);
    if (traces[s].size() > depth) continue;
    const TraceStep last = traces[s].back();
    for (std::size_t b = 0; b < k; ++b) {
      if (b == last.tag) continue;
      for (std::size_t w2 : m.relation(b).successors(last.world)) {
        auto t = traces[s];
        t.push_back({b, w2});
        children[s][b].push_back(traces.size());
        traces.push_back(std::move(t));
        parent.push_back(s);
      }
    }
  }

  std::vector<std::string> names;
  std::vector<std::size_t> last_world;
  for (const auto& t : traces) {
    std::string n;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) n += "/";
      n += tag_name(m, t[i].tag) + ":" + m.world_name(t[i].world);
    }
    names.push_back(std::move(n));
    last_world.push_back(t.back().world);
  }
  KripkeModel out(m.agents(), names);
  for (std::size_t s = 0; s < traces.size(); ++s) {
    const std::size_t tag = traces[s].back().tag;
    for (std::size_t b = 0; b < k; ++b) {
      if (b != tag) {
        for (std::size_t t : children[s][b]) out.add_edge(b, s, t);
      } else if (completion == Completion::K45) {
        for (std::size_t t : children[parent[s]][b]) out.add_edge(b, s, t);
      } else if (completion == Completion::B) {
        out.add_edge(b, s, parent[s]);
      }
    }
  }
  copy_valuation(m, out, last_world);

  Unraveling u;
  u.result = PointedModel{std::move(out), pm.point};
  u.depth = depth;
  u.traces = std::move(traces);
  return u;
}

std::vector<std::vector<PairRelation>> projection_layers(const KripkeModel& source, const Unraveling& u) {
  IndexScheme scheme(BisimKind::Alternating, source.agents());
  const KripkeModel& n = u.result.model;
  std::vector<std::vector<PairRelation>> layers;
  for (std::size_t layer = 0; layer <= u.depth; ++layer) {
    std::vector<PairRelation> rel(scheme.size(), PairRelation(source.num_worlds(), n.num_worlds()));
    for (std::size_t s = 0; s < u.traces.size(); ++s) {
      if (u.traces[s].size() + layer > u.depth + 1) continue;
      const TraceStep last = u.traces[s].back();
      rel[last.tag].set(last.world, s);
    }
    layers.push_back(std::move(rel));
  }
  return layers;
}

PartitionModel nr_partition(const PointedModel& pm) {
  const KripkeModel& m = pm.model;
  for (std::size_t a = 0; a < m.num_agents(); ++a) {
    if (!relation_properties(m.relation(a)).reflexive) {
      throw ModelError("partition construction needs a reflexive model; agent '" + m.agents()[a] + "' is not");
    }
  }
  const std::size_t k = m.num_agents();
  if (k >= 16) throw Error("too many agents for the partition construction");
  const std::size_t full = (std::size_t{1} << k) - 1;
  const std::size_t none = static_cast<std::size_t>(-1);

  std::vector<std::vector<PartitionStep>> traces;
  std::vector<std::size_t> parent;
  std::vector<std::size_t> last_agent;  // LastA, `none` for length-1 traces
  for (std::size_t w = 0; w < m.num_worlds(); ++w) {
    traces.push_back({{full, w}});
    parent.push_back(none);
    last_agent.push_back(none);
  }
  for (std::size_t s = 0; s < traces.size(); ++s) {
    const PartitionStep last = traces[s].back();
    for (std::size_t a = 0; a < k; ++a) {
      if (!(last.agents & (std::size_t{1} << a))) continue;
      for (std::size_t w2 : m.relation(a).successors(last.world)) {
        auto t = traces[s];
        t.push_back({last.agents & ~(std::size_t{1} << a), w2});
        traces.push_back(std::move(t));
        parent.push_back(s);
        last_agent.push_back(a);
      }
    }
  }

  std::vector<std::string> names;
  std::vector<std::size_t> last_world;
  for (const auto& t : traces) {
    std::string n;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) n += "/";
      n += agent_set_name(m, t[i].agents) + ":" + m.world_name(t[i].world);
    }
    names.push_back(std::move(n));
    last_world.push_back(t.back().world);
  }
  KripkeModel out(m.agents(), names);
  for (std::size_t a = 0; a < k; ++a) {
    // s R_a t iff s_{<a} = t_{<a}
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t s = 0; s < traces.size(); ++s) groups[last_agent[s] == a ? parent[s] : s].push_back(s);
    for (const auto& [key, members] : groups) {
      for (std::size_t s : members) {
        for (std::size_t t : members) out.add_edge(a, s, t);
      }
    }
  }
  copy_valuation(m, out, last_world);

  PartitionModel p;
  p.result = PointedModel{std::move(out), pm.point};
  p.traces = std::move(traces);
  return p;
}

std::vector<PairRelation> partition_family(const KripkeModel& source, const PartitionModel& p) {
  IndexScheme scheme(BisimKind::Nonrepeating, source.agents());
  std::vector<PairRelation> rel(scheme.size(), PairRelation(source.num_worlds(), p.result.model.num_worlds()));
  for (std::size_t x = 0; x < scheme.size(); ++x) {
    for (std::size_t s = 0; s < p.traces.size(); ++s) {
      const PartitionStep last = p.traces[s].back();
      if ((x & last.agents) == x) rel[x].set(last.world, s);
    }
  }
  return rel;
}

}  // namespace altlab
