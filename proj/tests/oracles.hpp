#pragma once

#include "pik/matrix.hpp"

namespace pik::testing {

// Plain Gauss–Jordan elimination over the rationals, kept deliberately
// different from the fraction-free routine in the library.
inline std::size_t naive_rank(RationalMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(r, k), m(p, k));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c) / m(r, c);
      for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) -= f * m(r, k);
    }
    ++r;
  }
  return r;
}

// Triple product computed entry by entry.
inline RationalMatrix triple(const RationalMatrix& l, const RationalMatrix& n, const RationalMatrix& r) {
  RationalMatrix out(l.rows(), r.cols());
  for (std::size_t a = 0; a < l.rows(); ++a)
    for (std::size_t b = 0; b < r.cols(); ++b)
      for (std::size_t i = 0; i < n.rows(); ++i)
        for (std::size_t j = 0; j < n.cols(); ++j) out(a, b) += l(a, i) * n(i, j) * r(j, b);
  return out;
}

}  // namespace pik::testing
