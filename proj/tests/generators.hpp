#pragma once

#include "pik/quantum.hpp"

#include <random>

namespace pik::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>()(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  // Small-denominator rational matrix with no sign or sum constraints.
  RationalMatrix rational_matrix(std::size_t rows, std::size_t cols, int range = 3) {
    RationalMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = make_rational(integer(-range, range), integer(1, 4));
    return m;
  }

  // Rows are random integer weights (about a third of them zero) normalised
  // to sum to one.
  CommMatrix stochastic(std::size_t rows, std::size_t cols) {
    RationalMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<int> w(cols);
      int total = 0;
      for (auto& x : w) {
        x = coin(0.35) ? 0 : integer(1, 6);
        total += x;
      }
      if (total == 0) {
        w[static_cast<std::size_t>(integer(0, static_cast<int>(cols) - 1))] = 1;
        total = 1;
      }
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = make_rational(w[c], total);
    }
    return CommMatrix(std::move(m));
  }

  ComplexMatrix gaussian(Eigen::Index d, bool real = false) {
    ComplexMatrix g(d, d);
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = 0; b < d; ++b) g(a, b) = {normal(), real ? 0.0 : normal()};
    return g;
  }

  DensityOperator density(Eigen::Index d, bool real = false) {
    ComplexMatrix g = gaussian(d, real);
    if (coin(0.3)) g.col(0).setZero();  // rank-deficient now and then
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityOperator(rho);
  }

  Povm povm(Eigen::Index d, std::size_t outcomes) {
    std::vector<ComplexMatrix> a;
    ComplexMatrix total = ComplexMatrix::Zero(d, d);
    for (std::size_t j = 0; j < outcomes; ++j) {
      ComplexMatrix g = gaussian(d);
      a.push_back(g * g.adjoint());
      total += a.back();
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(total);
    ComplexMatrix root = es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                         es.eigenvectors().adjoint();
    for (auto& x : a) {
      x = root * x * root;
      x = 0.5 * (x + x.adjoint()).eval();
    }
    return Povm(std::move(a));
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace pik::testing
