#include "generators.hpp"

#include "pik/commat.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace pik;

namespace {

using Tuple = std::vector<int>;

// Every subset of {1..n} with t elements, from bitmasks, then sorted.
std::vector<Tuple> enumerate_and_sort(int n, int t) {
  std::vector<Tuple> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != t) continue;
    Tuple tup;
    for (int b = 0; b < n; ++b)
      if (mask & (1u << b)) tup.push_back(b + 1);
    out.push_back(tup);
  }
  std::sort(out.begin(), out.end());
  return out;
}

RationalMatrix halves(std::initializer_list<std::initializer_list<int>> rows) {
  RationalMatrix m(rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (int v : row) m(r, c++) = make_rational(v, 2);
    ++r;
  }
  return m;
}

}  // namespace

TEST_CASE("tuple index order") {
  auto ti = tuple_index(4, 2);
  std::vector<Tuple> expected{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  CHECK(ti.tuples() == expected);
  CHECK(tuple_index(3, 1).tuples() == std::vector<Tuple>{{1}, {2}, {3}});

  auto t53 = tuple_index(5, 3).tuples();
  CHECK(t53.size() == 10);
  CHECK(t53.front() == Tuple{1, 2, 3});
  CHECK(t53.back() == Tuple{3, 4, 5});
  for (int n = 2; n <= 9; ++n)
    for (int t = 1; t < n; ++t) CHECK(tuple_index(n, t).tuples() == enumerate_and_sort(n, t));

  CHECK(ti.position(Tuple{2, 4}) == 4);
  CHECK_THROWS_AS(tuple_index(4, 4), DomainError);
  CHECK_THROWS_AS(tuple_index(4, 0), DomainError);
  CHECK_THROWS_AS(tuple_index(1, 1), DomainError);
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("optimal matrices") {
  CHECK(gen_copt(4, 2).matrix() == halves({{0, 0, 1, 1}, {0, 1, 0, 1}, {0, 1, 1, 0}, {1, 0, 0, 1}, {1, 0, 1, 0}, {1, 1, 0, 0}}));
  CHECK(gen_copt(2, 1).matrix() == RationalMatrix{{0, 1}, {1, 0}});
  for (int n = 2; n <= 7; ++n) {
    auto c = gen_copt(n, n - 1).matrix();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(c(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) == (i + j == n - 1 ? 1 : 0));
  }
  CHECK_THROWS_AS(gen_copt(3, 3), DomainError);
}

TEST_CASE("optimal matrices have the stated row structure") {
  for (int n = 2; n <= 8; ++n)
    for (int t = 1; t < n; ++t) {
      auto c = gen_copt(n, t);
      CHECK(c.rows() == binomial(n, t));
      std::set<std::vector<Rational>> distinct;
      for (std::size_t r = 0; r < c.rows(); ++r) {
        auto row = c.matrix().row(r);
        distinct.insert({row.begin(), row.end()});
        CHECK(std::count(row.begin(), row.end(), Rational(0)) == t);
        CHECK(std::count(row.begin(), row.end(), make_rational(1, n - t)) == n - t);
      }
      CHECK(distinct.size() == c.rows());
    }
}

TEST_CASE("uniform matrices") {
  CHECK(gen_vn(1).matrix() == RationalMatrix{{1}});
  CHECK(gen_vn(2).matrix() == RationalMatrix{{make_rational(1, 2), make_rational(1, 2)}, {make_rational(1, 2), make_rational(1, 2)}});
  CHECK(gen_vn(4).matrix() == RationalMatrix::constant(4, 4, make_rational(1, 4)));
}

TEST_CASE("communication matrices validate their rows") {
  CHECK_THROWS_AS(CommMatrix(RationalMatrix{{1, 0}, {make_rational(1, 2), make_rational(1, 3)}}), std::invalid_argument);
  CHECK_THROWS_AS(CommMatrix(RationalMatrix{{2, -1}}), std::invalid_argument);
  CHECK_THROWS_AS(CommMatrix{RationalMatrix{}}, std::invalid_argument);
  CHECK(is_row_stochastic(RationalMatrix{{make_rational(1, 3), make_rational(2, 3)}}));
}

TEST_CASE("success functionals") {
  for (int n = 2; n <= 12; ++n) {
    auto c = gen_copt(n, 1);
    CHECK(psuc(c) == make_rational(1, n - 1));
    CHECK(psuc_prime(c) == make_rational(1, n - 1));
  }
  CHECK(psuc(CommMatrix::identity(3)) == 0);
  CHECK(psuc(gen_vn(3)) == make_rational(1, 3));
  CHECK(psuc_prime(CommMatrix::identity(2)) == 0);
  // Row minima off the diagonal are 1 and 1/2, so the mean is 3/4.
  CHECK(psuc_prime(CommMatrix(RationalMatrix{{0, 1}, {make_rational(1, 2), make_rational(1, 2)}})) == make_rational(3, 4));
  CHECK_THROWS_AS(psuc(gen_copt(4, 2)), ShapeError);
  CHECK_THROWS_AS(psuc_prime(gen_copt(4, 2)), ShapeError);
}

TEST_CASE("zero-diagonal matrices never beat the optimum") {
  testing::Gen gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen.integer(2, 6);
    auto raw = gen.stochastic(static_cast<std::size_t>(n), static_cast<std::size_t>(n)).matrix();
    // Move each diagonal entry onto the next column.
    for (int i = 0; i < n; ++i) {
      auto r = static_cast<std::size_t>(i);
      auto next = static_cast<std::size_t>((i + 1) % n);
      raw(r, next) += raw(r, r);
      raw(r, r) = 0;
    }
    CommMatrix c(raw);
    CHECK(psuc(c) <= make_rational(1, n - 1));
    if (psuc(c) == make_rational(1, n - 1)) CHECK(c == gen_copt(n, 1));
  }
}

TEST_CASE("recognizing optimal matrices up to row order") {
  auto c = gen_copt(5, 2).matrix();
  std::vector<std::size_t> perm{9, 3, 0, 1, 2, 4, 5, 6, 7, 8};
  auto shuffled = c.select_rows(perm);
  auto shape = recognize_copt(shuffled);
  REQUIRE(shape);
  CHECK(shape->n == 5);
  CHECK(shape->t == 2);
  CHECK(shape->row_of == perm);
  CHECK_FALSE(recognize_copt(gen_vn(3).matrix()));
  CHECK_FALSE(recognize_copt(c.select_rows(std::vector<std::size_t>{0, 1, 2})));
}
