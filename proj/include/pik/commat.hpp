#pragma once

#include "pik/matrix.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pik {

/// Thrown when an (n, t) pair or similar integer argument is out of range.
class DomainError : public std::domain_error {
  using std::domain_error::domain_error;
};

/// Thrown when matrix shapes do not fit the requested operation.
class ShapeError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Row-stochastic matrix with exact rational entries: every entry is
/// nonnegative and every row sums to exactly one. C(i, j) = p(j | i).
class CommMatrix {
 public:
  /// Throws std::invalid_argument if `m` is empty, has a negative entry or a
  /// row whose sum differs from one.
  explicit CommMatrix(RationalMatrix m);

  std::size_t rows() const { return m_.rows(); }
  std::size_t cols() const { return m_.cols(); }
  const Rational& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  const RationalMatrix& matrix() const { return m_; }
  operator const RationalMatrix&() const { return m_; }

  bool operator==(const CommMatrix& other) const = default;

  static CommMatrix identity(std::size_t n);

 private:
  RationalMatrix m_;
};

/// True iff `m` is nonempty with nonnegative rows summing to one.
bool is_row_stochastic(const RationalMatrix& m);

/// Strictly increasing t-tuples over {1..n} (1-based), lexicographically sorted.
class TupleIndex {
 public:
  TupleIndex(int n, int t);

  int n() const { return n_; }
  int t() const { return t_; }
  const std::vector<std::vector<int>>& tuples() const { return tuples_; }
  std::size_t size() const { return tuples_.size(); }
  const std::vector<int>& operator[](std::size_t i) const { return tuples_[i]; }
  /// Position of a tuple in the order, or size() if absent.
  std::size_t position(const std::vector<int>& tuple) const;

 private:
  int n_;
  int t_;
  std::vector<std::vector<int>> tuples_;
};

/// All strictly increasing t-tuples for 1 <= t <= n-1; throws DomainError otherwise.
TupleIndex tuple_index(int n, int t);

std::size_t binomial(int n, int k);

/// Optimal matrix of the test with n boxes and t revealed empty boxes:
/// binomial(n,t) x n, the row of tuple T is 1/(n-t) off T and 0 on T.
CommMatrix gen_copt(int n, int t);

/// n x n matrix with every entry 1/n.
CommMatrix gen_vn(int n);

/// Worst-case success probability: the minimum off-diagonal entry.
Rational psuc(const CommMatrix& c);

/// Success probability for a uniformly random revealed box: mean over rows of
/// the minimal off-diagonal entry.
Rational psuc_prime(const CommMatrix& c);

/// Identifies `m` as some C^opt_{n,t} up to a row permutation. On success
/// returns (n, t) and fills `row_of`: row i of m equals row row_of[i] of
/// gen_copt(n, t).
struct CoptShape {
  int n = 0;
  int t = 0;
  std::vector<std::size_t> row_of;
};
std::optional<CoptShape> recognize_copt(const RationalMatrix& m);

}  // namespace pik
