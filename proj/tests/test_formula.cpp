#include "doctest.h"

#include <functional>

#include "altlab/formula.hpp"
#include "altlab/random.hpp"
#include "support.hpp"

using namespace altlab;

TEST_SUITE("formula") {

TEST_CASE("parse builds the expected trees") {
  Formula f = parse_formula("[a][b][a] p");
  CHECK(f == Formula::box("a", Formula::box("b", Formula::box("a", Formula::atom("p")))));
  CHECK(parse_formula("p") == Formula::atom("p"));
  Formula w = parse_formula("<a>[b]<a> p -> <a> p");
  CHECK(w.op() == Op::Implies);
  CHECK(w.lhs().op() == Op::Diamond);
  CHECK(parse_formula(render(w)) == w);
}

TEST_CASE("precedence and associativity") {
  Formula p = Formula::atom("p"), q = Formula::atom("q"), r = Formula::atom("r");
  CHECK(parse_formula("p & q | r") == Formula::disj(Formula::conj(p, q), r));
  CHECK(parse_formula("p -> q -> r") == Formula::implies(p, Formula::implies(q, r)));
  CHECK(parse_formula("p -> q <-> r") == Formula::iff(Formula::implies(p, q), r));
  CHECK(parse_formula("~[a]p & q") == Formula::conj(Formula::negation(Formula::box("a", p)), q));
  CHECK(parse_formula("<C>(p & <C>~p)") == Formula::common_dual(Formula::conj(p, Formula::common_dual(Formula::negation(p)))));
  CHECK(parse_formula("E p") == Formula::everyone(p));
  CHECK(parse_formula("<E>p") == Formula::everyone_dual(p));
  CHECK(parse_formula("true").op() == Op::True);
  CHECK(parse_formula("false").op() == Op::False);
}

TEST_CASE("render") {
  CHECK(render(Formula::box("a", Formula::atom("p"))) == "[a] p");
  Formula chi5 = parse_formula("(<a>p & <a>~p) -> <C>(p & <C>~p)");
  CHECK(parse_formula(render(chi5)) == chi5);
  Formula nested = parse_formula("p -> (q | r)");
  CHECK(render(nested) == "p -> q | r");
  CHECK(parse_formula(render(nested)) == nested);
}

TEST_CASE("syntax errors carry positions") {
  CHECK_THROWS_AS(parse_formula("[a p"), ParseError);
  CHECK_THROWS_AS(parse_formula("p &"), ParseError);
  CHECK_THROWS_AS(parse_formula("(p"), ParseError);
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  try {
    parse_formula("p & & q");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse_formula("[c]p", {"a", "b"}), UnknownAgentError);
  CHECK_NOTHROW(parse_formula("[a]p", {"a", "b"}));
}

TEST_CASE("occurrence trees") {
  CHECK(occurrence_tree(parse_formula("p")).size() == 1);
  OccurrenceTree chain = occurrence_tree(parse_formula("[a][a]p"));
  REQUIRE(chain.size() == 3);
  CHECK(chain.leq(1, 0));
  CHECK(chain.leq(2, 1));
  CHECK_FALSE(chain.leq(0, 1));
  Formula f = parse_formula("[a]([b]p & [a]q)");
  OccurrenceTree t = occurrence_tree(f);
  CHECK(t.size() == 6);
  CHECK(t.size() == formula_size(f.core()));
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(t.node(i).length == t.sequence(i).size());
    for (std::size_t c : t.node(i).children) CHECK(t.node(c).parent == i);
  }
}

TEST_CASE("modal depth") {
  CHECK(modal_depth(parse_formula("p")) == 0);
  CHECK(modal_depth(parse_formula("<a>[b][a]p -> p")) == 3);
  // C[b][a]p nests three levels when C counts as one.
  CHECK(modal_depth(parse_formula("[b]p & C[b]p & [b][a]p & C[b][a]p & [a]p -> C p")) == 3);
  CHECK(modal_depth(parse_formula("E C p")) == 2);
}

TEST_CASE("round trip over random formulas") {
  Rng rng(default_seed());
  FormulaGen gen;
  gen.agents = {"a", "b", "c"};
  gen.max_depth = 6;
  gen.max_size = 40;
  gen.constants = true;
  gen.common = true;
  for (int i = 0; i < 10000; ++i) {
    Formula f = random_formula(rng, gen);
    Formula g = parse_formula(render(f));
    REQUIRE_MESSAGE(g == f, render(f));
    CHECK(modal_depth(f) <= 6);
  }
}

TEST_CASE("occurrence tree matches the subformula relation") {
  Rng rng(default_seed() + 1);
  FormulaGen gen;
  gen.max_depth = 4;
  for (int i = 0; i < 300; ++i) {
    Formula f = random_formula(rng, gen).core();
    OccurrenceTree t = occurrence_tree(f);
    CHECK(t.size() == formula_size(f));
    std::vector<Formula> subs;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
      subs.push_back(g);
      for (std::size_t k = 0; k < g.arity(); ++k) walk(g.operand(k));
    };
    walk(f);
    for (const auto& s : subs) {
      bool found = false;
      for (std::size_t k = 0; k < t.size() && !found; ++k) found = t.node(k).formula == s;
      CHECK(found);
    }
    for (std::size_t k = 0; k < t.size(); ++k) {
      CHECK(std::find(subs.begin(), subs.end(), t.node(k).formula) != subs.end());
    }
  }
}

TEST_CASE("sugar soundness against the reference evaluator") {
  Rng rng(default_seed() + 2);
  FormulaGen fg;
  fg.constants = true;
  fg.common = true;
  ModelGen mg;
  for (int i = 0; i < 200; ++i) {
    PointedModel pm = random_model(rng, mg);
    oracle::Eval ev(pm.model);
    for (int j = 0; j < 10; ++j) {
      Formula f = random_formula(rng, fg);
      Formula c = f.core();
      CHECK(c.is_core());
      for (std::size_t w = 0; w < pm.model.num_worlds(); ++w) {
        REQUIRE_MESSAGE(ev.holds(f, w) == ev.holds(c, w), render(f));
      }
    }
  }
}

}
