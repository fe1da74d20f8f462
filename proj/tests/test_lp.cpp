#include "doctest.h"

#include "altlab/lp.hpp"
#include "altlab/random.hpp"

using namespace altlab;

namespace {

LinearConstraint row(std::vector<int> c, Sense s, int rhs) {
  LinearConstraint out;
  for (int x : c) out.coeffs.push_back(x);
  out.sense = s;
  out.rhs = rhs;
  return out;
}

}  // namespace

TEST_SUITE("lp") {

TEST_CASE("rationals") {
  CHECK(parse_rational("-2/6") == Rational(-1, 3));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("010") == 10);
  CHECK(parse_rational("-1/010") == Rational(-1, 10));
  CHECK(parse_rational("1.05") == Rational(21, 20));
  CHECK(parse_rational("-0.5") == Rational(-1, 2));
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(-4, 2)) == "-2");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("textbook programs") {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
  LinearProgram lp{2, {3, 5}, {row({1, 0}, Sense::LessEq, 4), row({0, 2}, Sense::LessEq, 12),
                               row({3, 2}, Sense::LessEq, 18)}};
  LpResult r = solve(lp);
  CHECK(r.status == LpStatus::Optimal);
  CHECK(r.value == 36);
  CHECK(r.x == std::vector<Rational>{2, 6});

  LinearProgram inf{1, {1}, {row({1}, Sense::LessEq, 1), row({1}, Sense::GreaterEq, 2)}};
  CHECK(solve(inf).status == LpStatus::Infeasible);
  LinearProgram unb{2, {1, 1}, {row({1, -1}, Sense::LessEq, 1)}};
  CHECK(solve(unb).status == LpStatus::Unbounded);
  // equality with a redundant copy
  LinearProgram eq{2, {1, 2}, {row({1, 1}, Sense::Equal, 1), row({2, 2}, Sense::Equal, 2)}};
  LpResult e = solve(eq);
  CHECK(e.status == LpStatus::Optimal);
  CHECK(e.value == 2);
  // negative right-hand side
  LinearProgram neg{1, {-1}, {row({-1}, Sense::LessEq, -3)}};
  LpResult n = solve(neg);
  CHECK(n.status == LpStatus::Optimal);
  CHECK(n.value == -3);
}

TEST_CASE("random two-variable programs against vertex enumeration") {
  Rng rng(default_seed() + 60);
  std::uniform_int_distribution<int> coef(-4, 6);
  std::uniform_int_distribution<int> rhs(-3, 12);
  for (int t = 0; t < 500; ++t) {
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = {coef(rng), coef(rng)};
    int m = 1 + t % 4;
    for (int i = 0; i < m; ++i) {
      lp.constraints.push_back(row({coef(rng), coef(rng)}, t % 3 == 0 ? Sense::GreaterEq : Sense::LessEq, rhs(rng)));
    }
    lp.constraints.push_back(row({1, 1}, Sense::LessEq, 20));
    // lines a.x = b, including the axes
    std::vector<std::pair<std::vector<Rational>, Rational>> lines = {{{1, 0}, 0}, {{0, 1}, 0}};
    for (const auto& c : lp.constraints) lines.push_back({c.coeffs, c.rhs});
    std::optional<Rational> best;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        const auto& [a, b] = lines[i];
        const auto& [c, d] = lines[j];
        Rational det = a[0] * c[1] - a[1] * c[0];
        if (det == 0) continue;
        Rational x = (b * c[1] - a[1] * d) / det;
        Rational y = (a[0] * d - b * c[0]) / det;
        if (x < 0 || y < 0) continue;
        bool ok = true;
        for (const auto& con : lp.constraints) {
          Rational v = con.coeffs[0] * x + con.coeffs[1] * y;
          if (con.sense == Sense::LessEq && v > con.rhs) ok = false;
          if (con.sense == Sense::GreaterEq && v < con.rhs) ok = false;
        }
        if (!ok) continue;
        Rational val = lp.objective[0] * x + lp.objective[1] * y;
        if (!best || val > *best) best = val;
      }
    }
    LpResult r = solve(lp);
    if (!best) {
      CHECK(r.status == LpStatus::Infeasible);
    } else {
      REQUIRE(r.status == LpStatus::Optimal);
      CHECK(r.value == *best);
    }
  }
}

}
