#include "doctest.h"

#include "altlab/fragments.hpp"
#include "altlab/random.hpp"
#include "support.hpp"

using namespace altlab;

TEST_SUITE("fragments") {

TEST_CASE("classification examples") {
  FragmentReport r1 = classify(parse_formula("[a](p & [b]q)"));
  CHECK(r1.alternating_occ);
  CHECK(r1.alternating_ind);
  FragmentReport r2 = classify(parse_formula("[a]([b][a]p & [a]q)"));
  CHECK_FALSE(r2.alternating_occ);
  CHECK_FALSE(r2.alternating_ind);
  FragmentReport r3 = classify(parse_formula("[a][b][a]p"));
  CHECK(r3.alternating_occ);
  CHECK_FALSE(r3.nonrepeating_occ);
  FragmentReport r4 = classify(parse_formula("(<a>(p | ~p) & [a]p) -> p"));
  CHECK(r4.nonrepeating_occ);
  CHECK(r4.nonrepeating_ind);
}

TEST_CASE("common belief fragments") {
  CHECK(classify_c(parse_formula("[a]C p")) == CFragment::Alt);
  CHECK(classify_c(parse_formula("C C p")) == CFragment::Pure);
  CHECK(classify_c(parse_formula("[b]p & C[b]p & [b][a]p & C[b][a]p & [a]p -> C p")) == CFragment::Alt);
  CHECK(classify_c(parse_formula("[a][b]p & C p")) == CFragment::AltPure);
  CHECK(classify_c(parse_formula("[a][a]p")) == CFragment::None);
  CHECK(classify(parse_formula("[a]C p")).extended);
}

TEST_CASE("both classifiers agree with the path oracle") {
  Rng rng(default_seed() + 10);
  FormulaGen gen;
  gen.agents = {"a", "b", "c"};
  gen.max_depth = 6;
  gen.max_size = 40;
  for (int i = 0; i < 10000; ++i) {
    Formula f = random_formula(rng, gen);
    FragmentReport r = classify(f, gen.agents);
    REQUIRE_MESSAGE(r.alternating_occ == oracle::alternating(f), render(f));
    REQUIRE_MESSAGE(r.alternating_ind == oracle::alternating(f), render(f));
    REQUIRE_MESSAGE(r.nonrepeating_occ == oracle::nonrepeating(f), render(f));
    REQUIRE_MESSAGE(r.nonrepeating_ind == oracle::nonrepeating(f), render(f));
    for (const auto& a : gen.agents) REQUIRE(r.in_minus.at(a) == oracle::in_minus(f, a));
    CHECK(r.in_Lx({"a", "b"}) == oracle::in_lx(f, {"a", "b"}));
    CHECK(in_L_X(f, {"c"}) == oracle::in_lx(f, {"c"}));
  }
}

TEST_CASE("inclusions") {
  Rng rng(default_seed() + 11);
  FormulaGen gen;
  gen.agents = {"a", "b", "c"};
  gen.max_depth = 5;
  for (int i = 0; i < 3000; ++i) {
    Formula f = random_formula(rng, gen);
    FragmentReport r = classify(f, gen.agents);
    if (r.nonrepeating_occ) {
      CHECK(r.alternating_occ);
      CHECK(modal_depth(f) <= gen.agents.size());
    }
    for (const auto& [a, in] : r.in_minus) {
      if (in) CHECK(r.alternating_occ);
    }
  }
}

TEST_CASE("closure under Boolean combinations and boxes") {
  Rng rng(default_seed() + 12);
  FormulaGen gen;
  gen.fragment = FormulaFragment::Alternating;
  std::vector<std::string> u = {"a", "b"};
  for (int i = 0; i < 1000; ++i) {
    Formula f = random_formula(rng, gen);
    Formula g = random_formula(rng, gen);
    REQUIRE(in_L_alt(f, u));
    CHECK(in_L_alt(Formula::conj(f, Formula::negation(g)), u));
    CHECK(in_L_alt(Formula::implies(f, g), u));
    if (in_L_minus(f, "b", u)) {
      CHECK(in_L_minus(Formula::box("b", f), "a", u));
      CHECK(in_L_alt(Formula::box("b", f), u));
    }
  }
}

TEST_CASE("fragment-restricted generators stay inside their fragment") {
  Rng rng(default_seed() + 13);
  FormulaGen gen;
  gen.agents = {"a", "b", "c"};
  gen.max_depth = 4;
  for (int i = 0; i < 500; ++i) {
    gen.fragment = FormulaFragment::Alternating;
    gen.blocked = {"b"};
    CHECK(oracle::in_minus(random_formula(rng, gen), "b"));
    gen.fragment = FormulaFragment::Nonrepeating;
    gen.blocked = {"a"};
    CHECK(oracle::in_lx(random_formula(rng, gen), {"b", "c"}));
  }
}

}
