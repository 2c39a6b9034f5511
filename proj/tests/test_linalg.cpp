#include "generators.hpp"
#include "oracles.hpp"

#include "pik/linalg.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace pik;

namespace {

std::vector<Rational> row_of(const RationalMatrix& m, std::size_t r) { return {m.row(r).begin(), m.row(r).end()}; }

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/6") == make_rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(parse_rational("0.25") == make_rational(1, 4));
  CHECK(parse_rational("-1e-3") == make_rational(-1, 1000));
  CHECK(parse_rational("2.5E1") == Rational(25));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK(to_string(make_rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(-2)) == "-2");
  CHECK(to_decimal(make_rational(1, 3)) == "0.333333333333");
  CHECK(from_double(0.375) == make_rational(3, 8));
  CHECK(approximate(0.3333333333, 100) == make_rational(1, 3));
  CHECK(approximate(-0.7071067811865476, 10) == make_rational(-7, 10));
}

TEST_CASE("matrix products and shape checks") {
  RationalMatrix a{{1, 2}, {3, 4}};
  RationalMatrix b{{0, 1}, {1, 0}};
  CHECK(a * b == RationalMatrix{{2, 1}, {4, 3}});
  CHECK(a.transpose() == RationalMatrix{{1, 3}, {2, 4}});
  CHECK((a - a) == RationalMatrix(2, 2));
  CHECK_THROWS_AS(a * RationalMatrix(3, 1), std::invalid_argument);
  CHECK_THROWS_AS((RationalMatrix{{1, 2}, {3}}), std::invalid_argument);
  CHECK(max_abs_difference(a, b) == doctest::Approx(4.0));
}

TEST_CASE("rank of optimal matrices") {
  CHECK(rank(gen_copt(3, 1).matrix()) == 3);
  CHECK(rank(gen_vn(4).matrix()) == 1);
  CHECK(rank(gen_copt(5, 2).matrix()) == 5);
  CHECK(rank(gen_copt(2, 1).matrix()) == 2);
  CHECK(rank(RationalMatrix(3, 4)) == 0);
}

TEST_CASE("rank is invariant under permutation and duplication") {
  testing::Gen gen(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto rows = static_cast<std::size_t>(gen.integer(1, 8));
    const auto cols = static_cast<std::size_t>(gen.integer(1, 8));
    RationalMatrix m = gen.rational_matrix(rows, cols);
    // Force some dependence.
    if (rows > 2 && gen.coin())
      for (std::size_t c = 0; c < cols; ++c) m(rows - 1, c) = m(0, c) * 2 - m(1, c);
    const auto r = rank(m);
    CHECK(r == testing::naive_rank(m));
    std::vector<std::size_t> perm(rows);
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    CHECK(rank(m.select_rows(perm)) == r);
    std::vector<std::size_t> cperm(cols);
    std::iota(cperm.begin(), cperm.end(), 0);
    std::rotate(cperm.begin(), cperm.begin() + 1, cperm.end());
    CHECK(rank(m.select_cols(cperm)) == r);
    perm.push_back(0);
    CHECK(rank(m.select_rows(perm)) == r);
  }
}

TEST_CASE("solve_lp on small programs") {
  LpProblem eq{1, {{{1}, 1}}, {}, std::nullopt};
  auto r = solve_lp(eq);
  REQUIRE(r.status == LpStatus::Feasible);
  CHECK((*r.assignment)[0] == 1);

  LpProblem infeasible{1, {}, {{{1}, -1, Sense::LessEqual}}, std::nullopt};
  CHECK(solve_lp(infeasible).status == LpStatus::Infeasible);

  LpProblem unbounded{1, {}, {}, std::vector<Rational>{-1}};
  CHECK(solve_lp(unbounded).status == LpStatus::Unbounded);

  // min x + y s.t. x + 2y >= 2, 3x + y >= 3: optimum (4/5, 3/5) with value 7/5.
  LpProblem lp{2, {}, {{{1, 2}, 2, Sense::GreaterEqual}, {{3, 1}, 3, Sense::GreaterEqual}}, std::vector<Rational>{1, 1}};
  auto opt = solve_lp(lp);
  REQUIRE(opt.status == LpStatus::Feasible);
  CHECK(opt.objective_value == make_rational(7, 5));
  CHECK((*opt.assignment)[0] == make_rational(4, 5));
  CHECK(satisfies(lp, *opt.assignment));
  // Duals: both constraints active, y = (2/5, 1/5) solves y1 + 3y2 = 1, 2y1 + y2 = 1.
  CHECK(opt.inequality_duals[0] == make_rational(2, 5));
  CHECK(opt.inequality_duals[1] == make_rational(1, 5));

  CHECK_THROWS_AS(solve_lp(LpProblem{2, {{{1}, 1}}, {}, std::nullopt}), std::invalid_argument);
}

TEST_CASE("float simplex agrees with the exact one") {
  FloatLpProblem lp{2, {}, {{{1, 2}, 2, Sense::GreaterEqual}, {{3, 1}, 3, Sense::GreaterEqual}}, std::vector<double>{1, 1}};
  auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Feasible);
  CHECK(r.objective_value == doctest::Approx(1.4));
}

TEST_CASE("exact feasible assignments satisfy every constraint") {
  testing::Gen gen(5);
  int feasible = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const auto vars = static_cast<std::size_t>(gen.integer(1, 5));
    LpProblem lp;
    lp.variables = vars;
    auto row = [&] {
      std::vector<Rational> c(vars);
      for (auto& x : c) x = make_rational(gen.integer(-3, 3), gen.integer(1, 3));
      return c;
    };
    for (int e = gen.integer(0, 2); e > 0; --e) lp.equalities.push_back({row(), Rational(gen.integer(-2, 4))});
    for (int i = gen.integer(0, 3); i > 0; --i)
      lp.inequalities.push_back({row(), Rational(gen.integer(-2, 4)), gen.coin() ? Sense::LessEqual : Sense::GreaterEqual});
    if (gen.coin()) {
      std::vector<Rational> obj(vars);
      for (auto& x : obj) x = Rational(gen.integer(0, 3));  // bounded below on x >= 0
      lp.objective = obj;
    }
    auto r = solve_lp(lp);
    if (r.status == LpStatus::Feasible) {
      ++feasible;
      CHECK(satisfies(lp, *r.assignment));
    }
  }
  CHECK(feasible > 10);
}

TEST_CASE("convex hull membership") {
  RationalMatrix seg{{0, 1}, {1, 0}};
  std::vector<Rational> mid{make_rational(1, 2), make_rational(1, 2)};
  auto w = in_convex_hull(mid, seg);
  REQUIRE(w);
  CHECK((*w)[0] == make_rational(1, 2));
  CHECK((*w)[1] == make_rational(1, 2));

  std::vector<Rational> vertex{0, 1};
  auto unit = in_convex_hull(vertex, seg);
  REQUIRE(unit);
  CHECK((*unit)[0] == 1);

  // Hull of (0,1) and (1/2,1/2) is the segment x + y = 1 with 0 <= x <= 1/2.
  RationalMatrix half{{0, 1}, {make_rational(1, 2), make_rational(1, 2)}};
  std::vector<Rational> outside{1, 0};
  CHECK_FALSE(in_convex_hull(outside, half));

  // A row of C(4,1) is the mean of the three rows of C(4,2) sharing its zero.
  auto c41 = gen_copt(4, 1).matrix();
  auto c42 = gen_copt(4, 2).matrix();
  auto weights = in_convex_hull(row_of(c41, 0), c42);
  REQUIRE(weights);
  std::vector<Rational> expected{make_rational(1, 3), make_rational(1, 3), make_rational(1, 3), 0, 0, 0};
  CHECK(*weights == expected);

  CHECK_THROWS_AS(in_convex_hull(std::vector<Rational>{1}, seg), std::invalid_argument);
}

TEST_CASE("hull membership matches the direct LP encoding") {
  testing::Gen gen(21);
  for (int trial = 0; trial < 60; ++trial) {
    const auto k = static_cast<std::size_t>(gen.integer(1, 4));
    const auto dim = static_cast<std::size_t>(gen.integer(1, 3));
    RationalMatrix g = gen.rational_matrix(k, dim, 2);
    std::vector<Rational> p(dim);
    for (auto& x : p) x = make_rational(gen.integer(-2, 2), gen.integer(1, 2));
    LpProblem lp;
    lp.variables = k;
    for (std::size_t c = 0; c < dim; ++c) {
      std::vector<Rational> coeffs(k);
      for (std::size_t i = 0; i < k; ++i) coeffs[i] = g(i, c);
      lp.equalities.push_back({coeffs, p[c]});
    }
    lp.equalities.push_back({std::vector<Rational>(k, Rational(1)), Rational(1)});
    const bool direct = solve_lp(lp).status == LpStatus::Feasible;
    auto w = in_convex_hull(p, g);
    CHECK(direct == w.has_value());
    if (w) {
      for (std::size_t c = 0; c < dim; ++c) {
        Rational s = 0;
        for (std::size_t i = 0; i < k; ++i) s += (*w)[i] * g(i, c);
        CHECK(s == p[c]);
      }
    }
  }
}
