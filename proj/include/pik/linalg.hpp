#pragma once

#include "pik/matrix.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace pik {

/// Exact rank by fraction-free (Bareiss) elimination on integer-scaled rows.
std::size_t rank(const RationalMatrix& m);

enum class Sense { LessEqual, GreaterEqual };

template <class T>
struct Equality {
  std::vector<T> coeffs;
  T rhs;
};

template <class T>
struct Inequality {
  std::vector<T> coeffs;
  T rhs;
  Sense sense = Sense::LessEqual;
};

/// Linear program over nonnegative variables x >= 0. When `objective` is set
/// it is minimized; otherwise the problem is a pure feasibility question.
template <class T>
struct BasicLpProblem {
  std::size_t variables = 0;
  std::vector<Equality<T>> equalities;
  std::vector<Inequality<T>> inequalities;
  std::optional<std::vector<T>> objective;
};

enum class LpStatus { Feasible, Infeasible, Unbounded };

template <class T>
struct BasicLpResult {
  LpStatus status = LpStatus::Infeasible;
  /// Vertex solution; present iff status == Feasible.
  std::optional<std::vector<T>> assignment;
  T objective_value{};
  // Multipliers y with c - A^T y >= 0 at the optimum: free for equalities,
  // >= 0 for GreaterEqual rows and <= 0 for LessEqual rows. Only filled for a
  // Feasible result with an objective.
  std::vector<T> equality_duals;
  std::vector<T> inequality_duals;
};

using LpProblem = BasicLpProblem<Rational>;
using LpResult = BasicLpResult<Rational>;
using FloatLpProblem = BasicLpProblem<double>;
using FloatLpResult = BasicLpResult<double>;

/// Exact two-phase dense simplex with Bland's rule. Throws
/// std::invalid_argument if a coefficient row has the wrong length.
LpResult solve_lp(const LpProblem& problem);

/// Floating-point counterpart (tolerance 1e-9, Dantzig pricing with a Bland
/// fallback). Used only where results are re-derived or bounded exactly.
FloatLpResult solve_lp(const FloatLpProblem& problem);

/// Exact check that `assignment` satisfies every constraint of `problem`.
bool satisfies(const LpProblem& problem, std::span<const Rational> assignment);

/// Convex weights over the generator rows reproducing `point` exactly, or
/// nullopt if the point lies outside their convex hull.
std::optional<std::vector<Rational>> in_convex_hull(std::span<const Rational> point,
                                                    const RationalMatrix& generators);

}  // namespace pik
