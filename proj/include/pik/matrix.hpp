#pragma once

#include "pik/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pik {

/// Dense row-major matrix of exact rationals with no sign or sum constraints.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> data);
  /// Row-list literal; throws std::invalid_argument on ragged input.
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix identity(std::size_t n);
  /// rows x cols with every entry equal to `value`.
  static RationalMatrix constant(std::size_t rows, std::size_t cols, const Rational& value);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::vector<Rational> column(std::size_t c) const;
  const std::vector<Rational>& data() const { return data_; }

  RationalMatrix transpose() const;
  RationalMatrix scaled(const Rational& factor) const;

  /// Submatrix formed by the listed rows (in the given order).
  RationalMatrix select_rows(std::span<const std::size_t> indices) const;
  RationalMatrix select_cols(std::span<const std::size_t> indices) const;

  bool operator==(const RationalMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Throws std::invalid_argument when the inner dimensions differ.
RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);

/// Largest absolute entry of a - b, as a double.
double max_abs_difference(const RationalMatrix& a, const RationalMatrix& b);

std::vector<double> to_doubles(const RationalMatrix& m);

}  // namespace pik
