#include "altlab/lp.hpp"

#include <algorithm>
#include <optional>

#include "altlab/formula.hpp"

namespace altlab {

namespace {

// Signed decimal digits; leading zeros would otherwise select octal.
boost::multiprecision::cpp_int decimal_int(std::string s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  s.erase(0, std::min(s.find_first_not_of('0'), s.size() - 1));
  boost::multiprecision::cpp_int v(s);
  return neg ? boost::multiprecision::cpp_int(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw Error("empty rational");
  try {
    if (auto dot = s.find('.'); dot != std::string::npos) {
      if (s.find('/') != std::string::npos) throw Error("bad rational '" + text + "'");
      std::string frac = s.substr(dot + 1);
      std::string whole = s.substr(0, dot);
      bool neg = !whole.empty() && whole[0] == '-';
      if (neg || (!whole.empty() && whole[0] == '+')) whole.erase(0, 1);
      if (whole.empty()) whole = "0";
      for (char c : whole + frac) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw Error("bad rational '" + text + "'");
      }
      boost::multiprecision::cpp_int num = decimal_int(whole + frac);
      boost::multiprecision::cpp_int den = boost::multiprecision::pow(boost::multiprecision::cpp_int(10),
                                                                      static_cast<unsigned>(frac.size()));
      Rational r(num, den);
      return neg ? Rational(-r) : r;
    }
    auto slash = s.find('/');
    auto check_int = [&](const std::string& part) {
      std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
      if (i >= part.size()) throw Error("bad rational '" + text + "'");
      for (; i < part.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(part[i]))) throw Error("bad rational '" + text + "'");
      }
    };
    if (slash == std::string::npos) {
      check_int(s);
      return Rational(decimal_int(s));
    }
    std::string n = s.substr(0, slash);
    std::string d = s.substr(slash + 1);
    check_int(n);
    check_int(d);
    boost::multiprecision::cpp_int den = decimal_int(d);
    if (den == 0) throw Error("zero denominator in '" + text + "'");
    return Rational(decimal_int(n), den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error("bad rational '" + text + "'");
  }
}

std::string to_string(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal:
      return "optimal";
    case LpStatus::Infeasible:
      return "infeasible";
    case LpStatus::Unbounded:
      return "unbounded";
  }
  return "?";
}

namespace {

struct Tableau {
  // rows_ x (cols_ + 1); last column is the right-hand side
  std::vector<std::vector<Rational>> a;
  std::vector<std::size_t> basis;
  std::size_t cols = 0;
  std::size_t pivots = 0;

  void pivot(std::size_t r, std::size_t c) {
    ++pivots;
    Rational p = a[r][c];
    for (auto& v : a[r]) v /= p;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j <= cols; ++j) a[i][j] -= f * a[r][j];
    }
    basis[r] = c;
  }

  // Maximizes obj over the columns allowed; obj is given on the original
  // columns. Returns false when unbounded.
  bool optimize(const std::vector<Rational>& obj, const std::vector<bool>& allowed) {
    while (true) {
      // reduced cost c_j - c_B B^-1 A_j
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < cols && !enter; ++j) {
        if (!allowed[j]) continue;
        Rational rc = obj[j];
        for (std::size_t i = 0; i < a.size(); ++i) rc -= obj[basis[i]] * a[i][j];
        if (rc > 0) enter = j;
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i][*enter] <= 0) continue;
        Rational ratio = a[i][cols] / a[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }
};

}  // namespace

LpResult solve(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.constraints.size();
  // columns: originals, one slack/surplus per inequality, one artificial per
  // row needing it
  std::vector<LinearConstraint> rows = lp.constraints;
  std::size_t slack_count = 0;
  for (auto& row : rows) {
    row.coeffs.resize(n);
    if (row.rhs < 0) {
      for (auto& c : row.coeffs) c = -c;
      row.rhs = -row.rhs;
      if (row.sense == Sense::LessEq) {
        row.sense = Sense::GreaterEq;
      } else if (row.sense == Sense::GreaterEq) {
        row.sense = Sense::LessEq;
      }
    }
    if (row.sense != Sense::Equal) ++slack_count;
  }
  std::size_t art_count = 0;
  for (const auto& row : rows) {
    if (row.sense != Sense::LessEq) ++art_count;
  }
  Tableau t;
  t.cols = n + slack_count + art_count;
  t.a.assign(m, std::vector<Rational>(t.cols + 1));
  t.basis.assign(m, 0);
  std::size_t next_slack = n;
  std::size_t next_art = n + slack_count;
  std::vector<bool> is_art(t.cols, false);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.a[i][j] = rows[i].coeffs[j];
    t.a[i][t.cols] = rows[i].rhs;
    if (rows[i].sense == Sense::LessEq) {
      t.a[i][next_slack] = 1;
      t.basis[i] = next_slack++;
    } else {
      if (rows[i].sense == Sense::GreaterEq) t.a[i][next_slack++] = -1;
      t.a[i][next_art] = 1;
      is_art[next_art] = true;
      t.basis[i] = next_art++;
    }
  }

  LpResult res;
  std::vector<bool> all(t.cols, true);
  if (art_count > 0) {
    std::vector<Rational> phase1(t.cols);
    for (std::size_t j = 0; j < t.cols; ++j) {
      if (is_art[j]) phase1[j] = -1;
    }
    t.optimize(phase1, all);
    Rational infeas = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (is_art[t.basis[i]]) infeas += t.a[i][t.cols];
    }
    if (infeas != 0) {
      res.status = LpStatus::Infeasible;
      res.pivots = t.pivots;
      return res;
    }
    // drive zero-level artificials out of the basis; drop redundant rows
    for (std::size_t i = 0; i < t.a.size();) {
      if (!is_art[t.basis[i]]) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < t.cols && !col; ++j) {
        if (!is_art[j] && t.a[i][j] != 0) col = j;
      }
      if (col) {
        t.pivot(i, *col);
        ++i;
      } else {
        t.a.erase(t.a.begin() + static_cast<std::ptrdiff_t>(i));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }
  std::vector<bool> allowed(t.cols);
  for (std::size_t j = 0; j < t.cols; ++j) allowed[j] = !is_art[j];
  std::vector<Rational> obj(t.cols);
  for (std::size_t j = 0; j < n && j < lp.objective.size(); ++j) obj[j] = lp.objective[j];
  if (!t.optimize(obj, allowed)) {
    res.status = LpStatus::Unbounded;
    res.pivots = t.pivots;
    return res;
  }
  res.status = LpStatus::Optimal;
  res.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < t.a.size(); ++i) {
    if (t.basis[i] < n) res.x[t.basis[i]] = t.a[i][t.cols];
  }
  res.value = 0;
  for (std::size_t j = 0; j < n && j < lp.objective.size(); ++j) res.value += lp.objective[j] * res.x[j];
  res.pivots = t.pivots;
  return res;
}

}  // namespace altlab
