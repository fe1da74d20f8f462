#include "doctest.h"

#include "altlab/bisimulation.hpp"
#include "altlab/fragments.hpp"
#include "altlab/random.hpp"
#include "altlab/zoo.hpp"
#include "support.hpp"

using namespace altlab;

namespace {

using Rel = std::vector<std::vector<bool>>;

// Naive greatest fixed point straight from the definitions. Index layout as in
// IndexScheme; agent order of m, with n sharing it.
std::vector<Rel> naive_family(const KripkeModel& m, const KripkeModel& n, BisimKind kind) {
  const std::size_t k = m.num_agents();
  auto rm = oracle::matrices(m);
  auto rn = oracle::matrices(n);
  std::size_t count = kind == BisimKind::Plain ? 1 : kind == BisimKind::Alternating ? k + 1 : (std::size_t{1} << k);
  // obligations[i] = list of (agent, target index)
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> ob(count);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t b = 0; b < k; ++b) {
      if (kind == BisimKind::Plain) ob[i].push_back({b, 0});
      if (kind == BisimKind::Alternating && b != i) ob[i].push_back({b, b});
      if (kind == BisimKind::Nonrepeating && (i >> b & 1u)) ob[i].push_back({b, i & ~(std::size_t{1} << b)});
    }
  }
  std::set<std::string> atoms;
  for (const auto& [p, s] : m.valuations()) atoms.insert(p);
  for (const auto& [p, s] : n.valuations()) atoms.insert(p);
  Rel base(m.num_worlds(), std::vector<bool>(n.num_worlds()));
  for (std::size_t u = 0; u < m.num_worlds(); ++u) {
    for (std::size_t v = 0; v < n.num_worlds(); ++v) {
      bool same = true;
      for (const auto& p : atoms) same = same && m.holds_atom(p, u) == n.holds_atom(p, v);
      base[u][v] = same;
    }
  }
  std::vector<Rel> fam(count, base);
  for (bool changed = true; changed;) {
    changed = false;
    auto old = fam;
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t u = 0; u < m.num_worlds(); ++u) {
        for (std::size_t v = 0; v < n.num_worlds(); ++v) {
          if (!fam[i][u][v]) continue;
          bool ok = true;
          for (auto [b, t] : ob[i]) {
            for (std::size_t u2 = 0; u2 < m.num_worlds() && ok; ++u2) {
              if (!rm[b][u][u2]) continue;
              bool found = false;
              for (std::size_t v2 = 0; v2 < n.num_worlds(); ++v2) found = found || (rn[b][v][v2] && old[t][u2][v2]);
              ok = found;
            }
            for (std::size_t v2 = 0; v2 < n.num_worlds() && ok; ++v2) {
              if (!rn[b][v][v2]) continue;
              bool found = false;
              for (std::size_t u2 = 0; u2 < m.num_worlds(); ++u2) found = found || (rm[b][u][u2] && old[t][u2][v2]);
              ok = found;
            }
          }
          if (!ok) {
            fam[i][u][v] = false;
            changed = true;
          }
        }
      }
    }
  }
  return fam;
}

void same_family(const BisimFamily& f, const std::vector<Rel>& g) {
  REQUIRE(f.relations.size() == g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t u = 0; u < g[i].size(); ++u) {
      for (std::size_t v = 0; v < g[i][u].size(); ++v) REQUIRE(f.related(i, u, v) == g[i][u][v]);
    }
  }
}

}  // namespace

TEST_SUITE("bisimulation") {

TEST_CASE("S4 model pair") {
  PointedModel m = zoo("appB-S4-M");
  PointedModel n = zoo("appB-S4-N");
  BisimFamily fam = greatest_family(m.model, n.model, BisimKind::Alternating);
  IndexScheme s = fam.scheme();
  CHECK(fam.related(s.alt_index(), m.point, n.point));
  const std::size_t b = *s.index_of(s.index_name(m.model.require_agent("b")));
  for (int i = 1; i <= 3; ++i) {
    std::string k = std::to_string(i);
    CHECK(fam.related(b, m.model.require_world("l" + k), n.model.require_world("l'" + k)));
    CHECK(fam.related(b, m.model.require_world("r" + k), n.model.require_world("r'" + k)));
  }
  CHECK(verify_family(m.model, n.model, fam).ok);
  for (std::size_t d = 0; d <= 10; ++d) {
    CHECK(bounded_family(m.model, n.model, BisimKind::Alternating, d).related(s.alt_index(), m.point, n.point));
  }
  CHECK_FALSE(bounded_family(m.model, n.model, BisimKind::Plain, 2).related(0, m.point, n.point));
}

TEST_CASE("KD5 model pair relates m1 and r1") {
  PointedModel m = zoo("appB-KD5-M");
  PointedModel n = zoo("appB-KD5-N");
  BisimFamily fam = greatest_family(m.model, n.model, BisimKind::Alternating);
  CHECK(fam.related(fam.scheme().alt_index(), m.model.require_world("m1"), n.model.require_world("r1")));
}

TEST_CASE("identity pairs at every index") {
  for (const auto& name : zoo_names()) {
    const KripkeModel& m = zoo(name).model;
    for (auto kind : {BisimKind::Plain, BisimKind::Alternating, BisimKind::Nonrepeating}) {
      BisimFamily fam = greatest_family(m, m, kind);
      for (std::size_t i = 0; i < fam.relations.size(); ++i) {
        for (std::size_t w = 0; w < m.num_worlds(); ++w) CHECK(fam.related(i, w, w));
      }
    }
  }
}

TEST_CASE("adding an unjustified pair breaks the family") {
  PointedModel m = zoo("appB-S4-M");
  PointedModel n = zoo("appB-S4-N");
  BisimFamily fam = greatest_family(m.model, n.model, BisimKind::Alternating);
  PairChecker pc(m.model, n.model, fam.scheme());
  const std::size_t b = m.model.require_agent("b");
  std::size_t tried = 0;
  for (std::size_t u = 0; u < m.model.num_worlds(); ++u) {
    for (std::size_t v = 0; v < n.model.num_worlds(); ++v) {
      if (fam.related(b, u, v) || !pc.atoms_agree(u, v)) continue;
      BisimFamily bad = fam;
      bad.relations[b].set(u, v);
      BisimVerdict verdict = verify_family(m.model, n.model, bad);
      CHECK_FALSE(verdict.ok);
      CHECK(verdict.index == b);
      CHECK(verdict.left == u);
      CHECK(verdict.right == v);
      CHECK((verdict.clause == Clause::Zig || verdict.clause == Clause::Zag));
      ++tried;
    }
  }
  CHECK(tried > 0);
}

TEST_CASE("greatest families agree with the naive fixed point") {
  Rng rng(default_seed() + 30);
  ModelGen mg;
  mg.max_worlds = 4;
  for (int i = 0; i < 60; ++i) {
    PointedModel a = random_model(rng, mg);
    PointedModel b = random_model(rng, mg);
    for (auto kind : {BisimKind::Plain, BisimKind::Alternating, BisimKind::Nonrepeating}) {
      BisimFamily fam = greatest_family(a.model, b.model, kind);
      same_family(fam, naive_family(a.model, b.model, kind));
      CHECK(verify_family(a.model, b.model, fam).ok);
    }
  }
}

TEST_CASE("bounded families are monotone and converge to the fixed point") {
  Rng rng(default_seed() + 31);
  ModelGen mg;
  mg.max_worlds = 4;
  for (int i = 0; i < 40; ++i) {
    PointedModel a = random_model(rng, mg);
    PointedModel b = random_model(rng, mg);
    for (auto kind : {BisimKind::Plain, BisimKind::Alternating, BisimKind::Nonrepeating}) {
      BisimFamily omega = greatest_family(a.model, b.model, kind);
      std::vector<PairRelation> prev;
      for (std::size_t d = 0; d <= 70; ++d) {
        BisimFamily fam = bounded_family(a.model, b.model, kind, d);
        CHECK(verify_family(a.model, b.model, fam).ok);
        for (std::size_t k = 0; k < fam.relations.size(); ++k) {
          CHECK(omega.relations[k].subset_of(fam.relations[k]));
          if (!prev.empty()) CHECK(fam.relations[k].subset_of(prev[k]));
        }
        prev = fam.relations;
      }
      CHECK(prev == omega.relations);
    }
  }
}

TEST_CASE("families of a model with itself are equivalence relations") {
  Rng rng(default_seed() + 32);
  ModelGen mg;
  mg.max_worlds = 5;
  for (int i = 0; i < 40; ++i) {
    const KripkeModel m = random_model(rng, mg).model;
    for (std::size_t d : {1, 2, 3}) {
      BisimFamily fam = bounded_family(m, m, BisimKind::Alternating, d);
      const std::size_t n = m.num_worlds();
      for (const auto& r : fam.relations) {
        for (std::size_t u = 0; u < n; ++u) {
          CHECK(r.test(u, u));
          for (std::size_t v = 0; v < n; ++v) {
            CHECK(r.test(u, v) == r.test(v, u));
            for (std::size_t w = 0; w < n; ++w) {
              if (r.test(u, v) && r.test(v, w)) CHECK(r.test(u, w));
            }
          }
        }
      }
      auto classes = refine_classes(m, BisimKind::Alternating, d);
      for (std::size_t k = 0; k < fam.relations.size(); ++k) {
        for (std::size_t u = 0; u < n; ++u) {
          for (std::size_t v = 0; v < n; ++v) CHECK(fam.related(k, u, v) == (classes[k][u] == classes[k][v]));
        }
      }
    }
  }
}

TEST_CASE("related worlds agree on fragment formulas") {
  Rng rng(default_seed() + 33);
  ModelGen mg;
  mg.max_worlds = 4;
  std::size_t related = 0;
  for (int i = 0; i < 12; ++i) {
    PointedModel a = random_model(rng, mg);
    PointedModel b = random_model(rng, mg);
    BisimFamily fam = greatest_family(a.model, b.model, BisimKind::Alternating);
    Evaluator ea(a.model);
    Evaluator eb(b.model);
    for (std::size_t k = 0; k < fam.relations.size(); ++k) {
      FormulaGen fg;
      fg.fragment = FormulaFragment::Alternating;
      fg.max_depth = 4;
      if (k < 2) fg.blocked = {a.model.agents()[k]};
      for (int j = 0; j < 500; ++j) {
        Formula f = random_formula(rng, fg);
        for (std::size_t u = 0; u < a.model.num_worlds(); ++u) {
          for (std::size_t v = 0; v < b.model.num_worlds(); ++v) {
            if (!fam.related(k, u, v)) continue;
            ++related;
            REQUIRE_MESSAGE(ea.holds(f, u) == eb.holds(f, v), render(f));
          }
        }
      }
    }
  }
  CHECK(related > 0);
}

TEST_CASE("bounded families give agreement up to their depth") {
  PointedModel m = zoo("appB-S4-M");
  PointedModel n = zoo("appB-S4-N");
  BisimFamily one = bounded_family(m.model, n.model, BisimKind::Plain, 1);
  CHECK(one.related(0, m.point, n.point));
  Formula dd = parse_formula("[a]<a>p");
  CHECK(model_check(m, dd) != model_check(n, dd));
}

TEST_CASE("agent mismatch and nonrepeating bound") {
  KripkeModel ab({"a", "b"}, {"w"});
  KripkeModel ac({"a", "c"}, {"w"});
  CHECK_THROWS(greatest_family(ab, ac, BisimKind::Plain));
  KripkeModel big({"a", "b", "c", "d", "e"}, {"w"});
  CHECK_THROWS(greatest_family(big, big, BisimKind::Nonrepeating));
  CHECK_NOTHROW(greatest_family(big, big, BisimKind::Alternating));
}

}
