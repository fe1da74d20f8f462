#include "doctest.h"

#include "altlab/bisimulation.hpp"
#include "altlab/countermodel.hpp"
#include "altlab/fragments.hpp"
#include "altlab/random.hpp"
#include "altlab/transform.hpp"
#include "altlab/zoo.hpp"
#include "support.hpp"

using namespace altlab;

namespace {

bool all_agents(const KripkeModel& m, bool (*pred)(const AgentFrameReport&)) {
  for (const auto& r : frame_properties(m)) {
    if (!pred(r)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("transform") {

TEST_CASE("hand-enumerated unraveling") {
  KripkeModel m({"a", "b"}, {"u"});
  m.add_edge(0, 0, 0);
  m.declare_atom("p");
  m.set_true("p", 0);
  Unraveling u = alt_unravel(PointedModel{m, 0}, 2, Completion::None);
  REQUIRE(u.result.model.num_worlds() == 2);
  CHECK(u.traces[u.result.point].size() == 1);
  CHECK(u.result.model.relation(0).edge_count() == 1);
  CHECK(u.result.model.relation(1).edge_count() == 0);
  for (std::size_t w = 0; w < 2; ++w) CHECK(u.result.model.holds_atom("p", w));
  CHECK(u.result.model.world_name(u.result.point) == "alt:u");
  CHECK_THROWS(alt_unravel(PointedModel{m, 0}, 0, Completion::None));
}

TEST_CASE("trace invariants") {
  Rng rng(default_seed() + 40);
  ModelGen mg;
  mg.max_worlds = 3;
  for (int i = 0; i < 50; ++i) {
    PointedModel pm = random_model(rng, mg);
    Unraveling u = alt_unravel(pm, 3, Completion::None);
    const std::size_t alt = pm.model.num_agents();
    REQUIRE(u.traces[u.result.point].size() == 1);
    CHECK(u.traces[u.result.point][0].world == pm.point);
    for (const auto& t : u.traces) {
      REQUIRE(!t.empty());
      CHECK(t.size() <= 4);
      CHECK(t[0].tag == alt);
      for (std::size_t k = 1; k < t.size(); ++k) {
        CHECK(t[k].tag < alt);
        CHECK(t[k].tag != t[k - 1].tag);
        CHECK(pm.model.relation(t[k].tag).contains(t[k - 1].world, t[k].world));
      }
    }
  }
}

TEST_CASE("completions give their frame properties and preserve L_alt truth") {
  Rng rng(default_seed() + 41);
  ModelGen mg;
  mg.max_worlds = 4;
  FormulaGen fg;
  fg.fragment = FormulaFragment::Alternating;
  fg.max_depth = 3;
  for (int i = 0; i < 200; ++i) {
    PointedModel pm = random_model(rng, mg);
    Evaluator src(pm.model);
    for (auto c : {Completion::None, Completion::K45, Completion::B}) {
      Unraveling u = alt_unravel(pm, 3, c);
      if (c == Completion::K45) {
        CHECK(all_agents(u.result.model, [](const AgentFrameReport& r) { return r.transitive && r.euclidean; }));
      }
      if (c == Completion::B) CHECK(all_agents(u.result.model, [](const AgentFrameReport& r) { return r.symmetric; }));
      Evaluator dst(u.result.model);
      for (int j = 0; j < 5; ++j) {
        Formula f = random_formula(rng, fg);
        REQUIRE_MESSAGE(src.holds(f, pm.point) == dst.holds(f, u.result.point), render(f));
      }
    }
  }
}

TEST_CASE("interior seriality under k45") {
  Rng rng(default_seed() + 42);
  ModelGen mg;
  mg.frames = FrameClass::from_name("KD");
  for (int i = 0; i < 100; ++i) {
    PointedModel pm = random_model(rng, mg);
    Unraveling u = alt_unravel(pm, 3, Completion::K45);
    for (std::size_t s = 0; s < u.result.model.num_worlds(); ++s) {
      if (!u.interior(s)) continue;
      for (std::size_t a = 0; a < pm.model.num_agents(); ++a) {
        CHECK_FALSE(u.result.model.relation(a).successors(s).empty());
      }
    }
  }
}

TEST_CASE("non-alternating formulas can fail to transfer") {
  // [a][a]p holds at a K45 unraveling of a chain whose second a-step leaves p.
  KripkeModel m({"a", "b"}, {"u", "v", "w"});
  m.add_edge(0, 0, 1);
  m.add_edge(0, 1, 2);
  m.declare_atom("p");
  m.set_true("p", 1);
  PointedModel pm{m, 0};
  Formula f = parse_formula("[a][a]p");
  CHECK_FALSE(in_L_alt(f, {"a", "b"}));
  CHECK_FALSE(model_check(pm, f));
  Unraveling u = alt_unravel(pm, 3, Completion::None);
  CHECK(model_check(u.result, f));
}

TEST_CASE("projection family verifies layer by layer") {
  Rng rng(default_seed() + 43);
  ModelGen mg;
  mg.max_worlds = 3;
  for (int i = 0; i < 50; ++i) {
    PointedModel pm = random_model(rng, mg);
    Unraveling u = alt_unravel(pm, 3, Completion::None);
    auto layers = projection_layers(pm.model, u);
    CHECK(layers.size() == 4);
    CHECK(verify_layers(pm.model, u.result.model, BisimKind::Alternating, layers).ok);
    CHECK(layers.back()[pm.model.num_agents()].test(pm.point, u.result.point));
  }
}

TEST_CASE("singleton partition model") {
  KripkeModel m({"a", "b"}, {"w"});
  m.add_edge(0, 0, 0);
  m.add_edge(1, 0, 0);
  PartitionModel p = nr_partition(PointedModel{m, 0});
  CHECK(p.result.model.num_worlds() == 5);
  std::multiset<std::size_t> lengths;
  for (const auto& t : p.traces) lengths.insert(t.size());
  CHECK(lengths == std::multiset<std::size_t>{1, 2, 2, 3, 3});
  CHECK(p.traces[p.result.point].size() == 1);
  CHECK(p.traces[p.result.point][0].agents == 3u);
}

TEST_CASE("partition models are S5 and preserve L_A truth") {
  Rng rng(default_seed() + 44);
  ModelGen mg;
  mg.frames = FrameClass::from_name("T");
  FormulaGen fg;
  fg.fragment = FormulaFragment::Nonrepeating;
  for (int i = 0; i < 200; ++i) {
    PointedModel pm = random_model(rng, mg);
    PartitionModel p = nr_partition(pm);
    CHECK(FrameClass::from_name("S5").admits(p.result.model));
    for (const auto& t : p.traces) CHECK(t.size() <= pm.model.num_agents() + 1);
    Evaluator src(pm.model);
    Evaluator dst(p.result.model);
    for (int j = 0; j < 10; ++j) {
      Formula f = random_formula(rng, fg);
      REQUIRE_MESSAGE(src.holds(f, pm.point) == dst.holds(f, p.result.point), render(f));
    }
    auto fam = partition_family(pm.model, p);
    BisimFamily bf{BisimKind::Nonrepeating, pm.model.agents(), fam, std::nullopt, {}};
    CHECK(verify_family(pm.model, p.result.model, bf).ok);
  }
}

TEST_CASE("partition model of prop6-M") {
  PointedModel pm = zoo("prop6-M");
  PartitionModel p = nr_partition(pm);
  Formula w = parse_formula("(<a>(p | ~p) & [a]p) -> p");
  CHECK(model_check(pm, w) == model_check(p.result, w));
  Rng rng(default_seed() + 45);
  FormulaGen fg;
  fg.fragment = FormulaFragment::Nonrepeating;
  fg.max_depth = 2;
  for (int j = 0; j < 300; ++j) {
    Formula f = random_formula(rng, fg);
    CHECK(model_check(pm, f) == model_check(p.result, f));
  }
}

TEST_CASE("non-reflexive input is rejected") {
  KripkeModel m({"a", "b"}, {"w"});
  m.add_edge(0, 0, 0);
  CHECK_THROWS_AS(nr_partition(PointedModel{m, 0}), ModelError);
}

}
