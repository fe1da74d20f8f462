#include "doctest.h"

#include "altlab/model_io.hpp"
#include "altlab/random.hpp"
#include "altlab/zoo.hpp"
#include "support.hpp"

using namespace altlab;

namespace {

std::size_t agent(const PointedModel& pm, const std::string& a) { return pm.model.require_agent(a); }

}  // namespace

TEST_SUITE("kripke") {

TEST_CASE("frame properties of small models") {
  PointedModel m = zoo("prop6-M");
  auto rep = frame_properties(m.model);
  for (auto& r : rep) {
    CHECK(r.reflexive);
    CHECK(r.transitive);
  }
  CHECK(rep[agent(m, "b")].symmetric);
  CHECK(rep[agent(m, "b")].euclidean);

  KripkeModel empty({"a", "b"}, {"w1", "w2"});
  for (auto& r : frame_properties(empty)) {
    CHECK(r.transitive);
    CHECK(r.euclidean);
    CHECK(r.symmetric);
    CHECK_FALSE(r.serial);
    CHECK_FALSE(r.reflexive);
  }

  PointedModel chi5 = zoo("chi5-M");
  auto c = frame_properties(chi5.model);
  CHECK(c[agent(chi5, "a")].serial);
  CHECK(c[agent(chi5, "b")].serial);
  CHECK_FALSE(c[agent(chi5, "a")].euclidean);
}

TEST_CASE("frame properties agree with direct quantifier checks") {
  Rng rng(default_seed() + 20);
  ModelGen mg;
  mg.max_worlds = 5;
  for (int i = 0; i < 300; ++i) {
    PointedModel pm = random_model(rng, mg);
    auto r = oracle::matrices(pm.model);
    const std::size_t n = pm.model.num_worlds();
    auto rep = frame_properties(pm.model);
    for (std::size_t a = 0; a < r.size(); ++a) {
      bool ser = true, refl = true, trans = true, eucl = true, sym = true;
      for (std::size_t u = 0; u < n; ++u) {
        bool any = false;
        for (std::size_t v = 0; v < n; ++v) any = any || r[a][u][v];
        ser = ser && any;
        refl = refl && r[a][u][u];
        for (std::size_t v = 0; v < n; ++v) {
          if (r[a][u][v] && !r[a][v][u]) sym = false;
          for (std::size_t w = 0; w < n; ++w) {
            if (r[a][u][v] && r[a][v][w] && !r[a][u][w]) trans = false;
            if (r[a][u][v] && r[a][u][w] && !r[a][v][w]) eucl = false;
          }
        }
      }
      CHECK(rep[a].serial == ser);
      CHECK(rep[a].reflexive == refl);
      CHECK(rep[a].transitive == trans);
      CHECK(rep[a].euclidean == eucl);
      CHECK(rep[a].symmetric == sym);
    }
  }
}

TEST_CASE("frame class aliases") {
  CHECK(FrameClass::from_name("S5").admits(zoo("prop6-M'").model) == false);
  CHECK(FrameClass::from_name("B").admits(zoo("prop6-M'").model));
  CHECK(FrameClass::from_name("S4").admits(zoo("prop6-M").model));
  CHECK(FrameClass::from_name("KD").admits(zoo("chiD4-M").model));
  KripkeModel loop({"a", "b"}, {"w"});
  loop.add_edge(0, 0, 0);
  loop.add_edge(1, 0, 0);
  for (const auto& name : FrameClass::alias_names()) CHECK(FrameClass::from_name(name).admits(loop));
  CHECK_THROWS(FrameClass::from_name("K7"));
}

TEST_CASE("model checking examples") {
  PointedModel m = zoo("prop6-M");
  CHECK(model_check(m, parse_formula("<a>[b][a]p")));
  CHECK_FALSE(model_check(m, parse_formula("p")));

  KripkeModel one({"a", "b"}, {"w"});
  one.add_edge(0, 0, 0);
  one.declare_atom("p");
  one.set_true("p", 0);
  CHECK(model_check(one, 0, parse_formula("C p")));

  PointedModel d4 = zoo("chiD4-M");
  CHECK(model_check(d4, parse_formula("[b]p & C[b]p & [b][a]p & C[b][a]p & [a]p")));
  CHECK_FALSE(model_check(d4, parse_formula("C p")));
  CHECK_FALSE(model_check(zoo("chi5-M"), parse_formula("(<a>p & <a>~p) -> <C>(p & <C>~p)")));
  CHECK_FALSE(model_check(m, parse_formula("undeclared_atom")));
}

TEST_CASE("evaluator matches the reference semantics") {
  Rng rng(default_seed() + 21);
  FormulaGen fg;
  fg.common = true;
  fg.constants = true;
  fg.max_depth = 4;
  ModelGen mg;
  mg.max_worlds = 5;
  for (int i = 0; i < 200; ++i) {
    PointedModel pm = random_model(rng, mg);
    Evaluator ev(pm.model);
    oracle::Eval ref(pm.model);
    for (int j = 0; j < 20; ++j) {
      Formula f = random_formula(rng, fg);
      for (std::size_t w = 0; w < pm.model.num_worlds(); ++w) {
        REQUIRE_MESSAGE(ev.holds(f, w) == ref.holds(f, w), render(f));
      }
    }
  }
}

TEST_CASE("C and E coherence") {
  Rng rng(default_seed() + 22);
  FormulaGen fg;
  fg.max_depth = 2;
  ModelGen mg;
  mg.max_worlds = 5;
  for (int i = 0; i < 200; ++i) {
    PointedModel pm = random_model(rng, mg);
    Evaluator ev(pm.model);
    Formula phi = random_formula(rng, fg);
    Formula c = Formula::common(phi);
    Formula fix = Formula::everyone(Formula::conj(phi, c));
    Formula boxes = Formula::conj(Formula::box("a", phi), Formula::box("b", phi));
    for (std::size_t w = 0; w < pm.model.num_worlds(); ++w) {
      if (ev.holds(c, w)) {
        CHECK(ev.holds(Formula::everyone(phi), w));
        CHECK(ev.holds(Formula::everyone(c), w));
        CHECK(ev.holds(fix, w));
      }
      CHECK(ev.holds(boxes, w) == ev.holds(Formula::everyone(phi), w));
    }
  }
}

TEST_CASE("zoo transcriptions") {
  struct Row {
    const char* name;
    std::size_t worlds;
    std::size_t a;
    std::size_t b;
    const char* point;
  };
  const Row rows[] = {
      {"prop6-M", 2, 3, 2, "w1"},       {"prop6-M'", 3, 7, 3, "w1"},      {"chi5-M", 3, 4, 4, "w1"},
      {"chiD4-M", 4, 6, 4, "w1"},       {"appB-S4-M", 6, 9, 12, "l1"},    {"appB-S4-N", 6, 12, 12, "l'1"},
      {"appB-KD5-M", 3, 3, 3, "m1"},    {"appB-KD5-N", 6, 6, 6, "r1"},    {"appB-B-M", 6, 10, 12, "l1"},
      {"appB-B-N", 6, 10, 12, "l'1"},
  };
  CHECK(zoo_names().size() == std::size(rows));
  for (const auto& r : rows) {
    PointedModel pm = zoo(r.name);
    CAPTURE(r.name);
    CHECK(pm.model.num_worlds() == r.worlds);
    CHECK(pm.model.relation(agent(pm, "a")).edge_count() == r.a);
    CHECK(pm.model.relation(agent(pm, "b")).edge_count() == r.b);
    CHECK(pm.point_name() == r.point);
  }
  PointedModel mp = zoo("prop6-M'");
  auto a = oracle::matrices(mp.model)[agent(mp, "a")];
  for (std::size_t u = 0; u < 3; ++u) {
    for (std::size_t v = 0; v < 3; ++v) CHECK(a[u][v] == a[v][u]);
  }
  CHECK(mp.model.holds_atom("p", mp.model.require_world("w3")));
  CHECK_THROWS(zoo("nope"));
}

TEST_CASE("model files") {
  for (const auto& name : zoo_names()) {
    PointedModel pm = zoo(name);
    LoadedModel back = model_from_json(model_to_json(pm.model, pm.point));
    CHECK(back.model == pm.model);
    CHECK(back.point == pm.point);
  }
  nlohmann::json bad = model_to_json(zoo("prop6-M").model);
  bad["rel"]["a"].push_back({"w1", "w9"});
  try {
    model_from_json(bad);
    FAIL("accepted a dangling edge");
  } catch (const ModelError& e) {
    CHECK(std::string(e.what()).find("rel.a[3][1]") != std::string::npos);
  }
  nlohmann::json no_worlds = {{"agents", {"a", "b"}}, {"worlds", nlohmann::json::array()}};
  CHECK_THROWS_AS(model_from_json(no_worlds), ModelError);
  CHECK(load_model("zoo:prop6-M").point == 0);
}

}
