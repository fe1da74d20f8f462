// Exact rational linear programs: two-phase tableau simplex with Bland's rule.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace altlab {

using Rational = boost::multiprecision::cpp_rational;

// "3", "-2/6", "0.25" are accepted; the result is normalized.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

enum class Sense { LessEq, GreaterEq, Equal };

struct LinearConstraint {
  std::vector<Rational> coeffs;
  Sense sense = Sense::LessEq;
  Rational rhs;
};

// maximize objective . x subject to the constraints and x >= 0
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<Rational> objective;
  std::vector<LinearConstraint> constraints;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };
std::string to_string(LpStatus s);

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
  std::size_t pivots = 0;
};

LpResult solve(const LinearProgram& lp);

}  // namespace altlab
