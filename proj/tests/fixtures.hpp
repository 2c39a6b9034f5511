#pragma once

#include "pik/ultraweak.hpp"

namespace pik::testing {

inline CommMatrix cm(std::initializer_list<std::initializer_list<Rational>> rows) {
  return CommMatrix(RationalMatrix(rows));
}

// Reference certificates reading smaller tests out of C(4,2).
inline Certificate pair_in_c42() {
  return {cm({{1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 1}}), cm({{1, 0}, {1, 0}, {0, 1}, {0, 1}})};
}

inline Certificate c31_in_c42() {
  return {cm({{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}}),
          cm({{1, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})};
}

inline Certificate c41_in_c42() {
  const Rational third = make_rational(1, 3);
  return {cm({{third, third, third, 0, 0, 0},
              {third, 0, 0, third, third, 0},
              {0, third, 0, third, 0, third},
              {0, 0, third, 0, third, third}}),
          CommMatrix::identity(4)};
}

// C(4,2) written out by hand.
inline RationalMatrix c42_display() {
  const Rational h = make_rational(1, 2);
  return RationalMatrix{{0, 0, h, h}, {0, h, 0, h}, {0, h, h, 0}, {h, 0, 0, h}, {h, 0, h, 0}, {h, h, 0, 0}};
}

// Zero diagonal, 1/(n-1) elsewhere.
inline RationalMatrix uniform_exclusion(int n) {
  RationalMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = i == j ? Rational(0) : make_rational(1, n - 1);
  return m;
}

}  // namespace pik::testing
