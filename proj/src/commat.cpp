#include "pik/commat.hpp"

#include <algorithm>
#include <numeric>

namespace pik {

bool is_row_stochastic(const RationalMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational sum = 0;
    for (const auto& v : m.row(i)) {
      if (sgn(v) < 0) return false;
      sum += v;
    }
    if (sum != 1) return false;
  }
  return true;
}

CommMatrix::CommMatrix(RationalMatrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.cols() == 0) throw std::invalid_argument("communication matrix is empty");
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    Rational sum = 0;
    for (std::size_t j = 0; j < m_.cols(); ++j) {
      if (sgn(m_(i, j)) < 0)
        throw std::invalid_argument("negative entry at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
      sum += m_(i, j);
    }
    if (sum != 1)
      throw std::invalid_argument("row " + std::to_string(i) + " sums to " + to_string(sum));
  }
}

CommMatrix CommMatrix::identity(std::size_t n) { return CommMatrix(RationalMatrix::identity(n)); }

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

TupleIndex::TupleIndex(int n, int t) : n_(n), t_(t) {
  if (n < 2 || t < 1 || t > n - 1)
    throw DomainError("tuple index needs n >= 2 and 1 <= t <= n-1, got n=" + std::to_string(n) +
                      " t=" + std::to_string(t));
  tuples_.reserve(binomial(n, t));
  std::vector<int> cur(static_cast<std::size_t>(t));
  std::iota(cur.begin(), cur.end(), 1);
  for (;;) {
    tuples_.push_back(cur);
    // Rightmost position that can still be incremented.
    int i = t - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - t + i + 1) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < t; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
}

std::size_t TupleIndex::position(const std::vector<int>& tuple) const {
  auto it = std::lower_bound(tuples_.begin(), tuples_.end(), tuple);
  if (it == tuples_.end() || *it != tuple) return tuples_.size();
  return static_cast<std::size_t>(it - tuples_.begin());
}

TupleIndex tuple_index(int n, int t) { return TupleIndex(n, t); }

CommMatrix gen_copt(int n, int t) {
  TupleIndex index(n, t);
  const Rational value(1, n - t);
  const auto cols = static_cast<std::size_t>(n);
  RationalMatrix m(index.size(), cols);
  for (std::size_t r = 0; r < index.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = value;
    for (int zero : index[r]) m(r, static_cast<std::size_t>(zero - 1)) = 0;
  }
  return CommMatrix(std::move(m));
}

CommMatrix gen_vn(int n) {
  if (n < 1) throw DomainError("V_n needs n >= 1");
  const auto size = static_cast<std::size_t>(n);
  return CommMatrix(RationalMatrix::constant(size, size, Rational(1, n)));
}

namespace {
void require_square(const CommMatrix& c) {
  if (c.rows() != c.cols())
    throw ShapeError("success probability needs a square matrix, got " + std::to_string(c.rows()) +
                     "x" + std::to_string(c.cols()));
  if (c.rows() < 2) throw ShapeError("success probability needs n >= 2");
}
}  // namespace

Rational psuc(const CommMatrix& c) {
  require_square(c);
  Rational best = 1;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j)
      if (i != j && c(i, j) < best) best = c(i, j);
  return best;
}

Rational psuc_prime(const CommMatrix& c) {
  require_square(c);
  const std::size_t n = c.rows();
  Rational total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Rational row_min = 1;
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && c(i, j) < row_min) row_min = c(i, j);
    total += row_min;
  }
  return total / Rational(static_cast<long>(n));
}

std::optional<CoptShape> recognize_copt(const RationalMatrix& m) {
  const int n = static_cast<int>(m.cols());
  if (n < 2 || m.rows() == 0) return std::nullopt;
  // Zero count of the first row fixes t.
  int t = 0;
  for (const auto& v : m.row(0))
    if (v == 0) ++t;
  if (t < 1 || t > n - 1 || m.rows() != binomial(n, t)) return std::nullopt;
  const Rational value(1, n - t);
  TupleIndex index(n, t);
  CoptShape shape{n, t, {}};
  shape.row_of.reserve(m.rows());
  std::vector<bool> seen(m.rows(), false);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<int> zeros;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) == 0)
        zeros.push_back(static_cast<int>(c) + 1);
      else if (m(r, c) != value)
        return std::nullopt;
    }
    if (static_cast<int>(zeros.size()) != t) return std::nullopt;
    std::size_t pos = index.position(zeros);
    if (pos == index.size() || seen[pos]) return std::nullopt;
    seen[pos] = true;
    shape.row_of.push_back(pos);
  }
  return shape;
}

}  // namespace pik
