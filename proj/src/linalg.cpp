#include "pik/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pik {

std::size_t rank(const RationalMatrix& m) {
  // Clear denominators row by row, then Bareiss elimination over Z.
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class lcm = 1;
    for (std::size_t j = 0; j < cols; ++j)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j).get_num() * (lcm / m(i, j).get_den());
  }
  std::size_t r = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class v = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

namespace {

template <class T>
struct Arith;

template <>
struct Arith<Rational> {
  static bool pos(const Rational& x) { return sgn(x) > 0; }
  static bool neg(const Rational& x) { return sgn(x) < 0; }
  static bool zero(const Rational& x) { return sgn(x) == 0; }
  static constexpr bool exact = true;
};

template <>
struct Arith<double> {
  static constexpr double eps = 1e-9;
  static bool pos(double x) { return x > eps; }
  static bool neg(double x) { return x < -eps; }
  static bool zero(double x) { return std::abs(x) <= eps; }
  static constexpr bool exact = false;
};

// Dense tableau over the standard form A x = b, x >= 0, b >= 0.
template <class T>
class Tableau {
 public:
  using A = Arith<T>;

  Tableau(const BasicLpProblem<T>& p) : n_orig_(p.variables) {
    const std::size_t m = p.equalities.size() + p.inequalities.size();
    std::size_t n_slack = p.inequalities.size();
    n_struct_ = n_orig_ + n_slack;
    // Count artificials after normalisation.
    struct Row {
      const std::vector<T>* coeffs;
      T rhs;
      int slack_sign;  // +1, -1, or 0 for none
      std::size_t slack_col;
    };
    std::vector<Row> rows;
    rows.reserve(m);
    for (const auto& e : p.equalities) {
      check_len(e.coeffs, p.variables);
      rows.push_back({&e.coeffs, e.rhs, 0, 0});
    }
    for (std::size_t k = 0; k < p.inequalities.size(); ++k) {
      const auto& in = p.inequalities[k];
      check_len(in.coeffs, p.variables);
      rows.push_back({&in.coeffs, in.rhs, in.sense == Sense::LessEqual ? 1 : -1, n_orig_ + k});
    }
    row_sign_.assign(m, 1);
    std::size_t n_art = 0;
    std::vector<bool> needs_art(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (A::neg(rows[i].rhs) || (!A::exact && rows[i].rhs < 0)) row_sign_[i] = -1;
      int s = rows[i].slack_sign * row_sign_[i];
      needs_art[i] = s != 1;
      if (needs_art[i]) ++n_art;
    }
    n_total_ = n_struct_ + n_art;
    width_ = n_total_ + 1;
    t_.assign(m * width_, T(0));
    basis_.assign(m, 0);
    unit_col_.assign(m, 0);
    std::size_t art = n_struct_;
    for (std::size_t i = 0; i < m; ++i) {
      const T sign = T(row_sign_[i]);
      for (std::size_t j = 0; j < n_orig_; ++j) at(i, j) = sign * (*rows[i].coeffs)[j];
      if (rows[i].slack_sign != 0) at(i, rows[i].slack_col) = T(rows[i].slack_sign * row_sign_[i]);
      at(i, n_total_) = sign * rows[i].rhs;
      if (needs_art[i]) {
        at(i, art) = T(1);
        basis_[i] = art;
        unit_col_[i] = art;
        ++art;
      } else {
        basis_[i] = rows[i].slack_col;
        unit_col_[i] = rows[i].slack_col;
      }
    }
    m_ = m;
    n_eq_ = p.equalities.size();
  }

  BasicLpResult<T> solve(const std::optional<std::vector<T>>& objective) {
    BasicLpResult<T> result;
    // Phase 1.
    if (n_total_ > n_struct_) {
      std::vector<T> c1(n_total_, T(0));
      for (std::size_t j = n_struct_; j < n_total_; ++j) c1[j] = T(1);
      compute_reduced(c1);
      if (!iterate(/*allow_artificial=*/true)) {
        // Phase 1 is bounded below by zero; cannot be unbounded.
        throw std::logic_error("phase 1 unbounded");
      }
      T infeas(0);
      for (std::size_t i = 0; i < m_; ++i)
        if (basis_[i] >= n_struct_) infeas += at(i, n_total_);
      if (A::pos(infeas)) return result;  // Infeasible
      drive_out_artificials();
    }
    std::vector<T> c2(n_total_, T(0));
    if (objective) {
      if (objective->size() != n_orig_) throw std::invalid_argument("objective length mismatch");
      for (std::size_t j = 0; j < n_orig_; ++j) c2[j] = (*objective)[j];
    }
    compute_reduced(c2);
    if (!iterate(/*allow_artificial=*/false)) {
      result.status = LpStatus::Unbounded;
      return result;
    }
    result.status = LpStatus::Feasible;
    std::vector<T> x(n_total_, T(0));
    for (std::size_t i = 0; i < m_; ++i) x[basis_[i]] = at(i, n_total_);
    result.assignment = std::vector<T>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n_orig_));
    T obj(0);
    for (std::size_t j = 0; j < n_orig_; ++j) obj += c2[j] * x[j];
    result.objective_value = obj;
    if (objective) {
      for (std::size_t i = 0; i < m_; ++i) {
        T y = -reduced_[unit_col_[i]] * T(row_sign_[i]);
        if (i < n_eq_)
          result.equality_duals.push_back(y);
        else
          result.inequality_duals.push_back(y);
      }
    }
    return result;
  }

 private:
  static void check_len(const std::vector<T>& v, std::size_t n) {
    if (v.size() != n) throw std::invalid_argument("constraint length does not match variable count");
  }

  T& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }

  void compute_reduced(const std::vector<T>& c) {
    cost_ = c;
    reduced_ = c;
    for (std::size_t i = 0; i < m_; ++i) {
      const T& cb = c[basis_[i]];
      if (A::exact ? cb == 0 : cb == 0.0) continue;
      for (std::size_t j = 0; j < n_total_; ++j) reduced_[j] -= cb * at(i, j);
    }
    for (std::size_t i = 0; i < m_; ++i) reduced_[basis_[i]] = T(0);
  }

  void pivot(std::size_t r, std::size_t col) {
    T inv = T(1) / at(r, col);
    for (std::size_t j = 0; j <= n_total_; ++j) at(r, j) *= inv;
    at(r, col) = T(1);
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      T f = at(i, col);
      if (A::exact ? f == 0 : f == 0.0) continue;
      for (std::size_t j = 0; j <= n_total_; ++j)
        if (!(A::exact ? at(r, j) == 0 : at(r, j) == 0.0)) at(i, j) -= f * at(r, j);
      at(i, col) = T(0);
    }
    T f = reduced_[col];
    if (!(A::exact ? f == 0 : f == 0.0))
      for (std::size_t j = 0; j < n_total_; ++j) reduced_[j] -= f * at(r, j);
    reduced_[col] = T(0);
    basis_[r] = col;
  }

  // Returns false when unbounded.
  bool iterate(bool allow_artificial) {
    const std::size_t limit = allow_artificial ? n_total_ : n_struct_;
    std::size_t iterations = 0;
    for (;;) {
      ++iterations;
      // Bland's rule always for exact arithmetic; Dantzig pricing for floats,
      // switching to Bland after many iterations to break cycling.
      const bool bland = A::exact || iterations > 50 * (m_ + n_total_);
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (!A::neg(reduced_[j])) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (enter == limit || reduced_[j] < reduced_[enter]) enter = j;
      }
      if (enter == limit) return true;
      std::size_t leave = m_;
      T best_ratio(0);
      for (std::size_t i = 0; i < m_; ++i) {
        if (!A::pos(at(i, enter))) continue;
        T ratio = at(i, n_total_) / at(i, enter);
        if (leave == m_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
      if constexpr (!A::exact) {
        if (iterations > 200 * (m_ + n_total_) + 1000) throw std::runtime_error("simplex iteration limit");
      }
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_struct_) continue;
      std::size_t best = n_struct_;
      for (std::size_t j = 0; j < n_struct_; ++j) {
        if (!A::zero(at(i, j))) {
          if constexpr (A::exact) {
            best = j;
            break;
          } else {
            if (best == n_struct_ || std::abs(at(i, j)) > std::abs(at(i, best))) best = j;
          }
        }
      }
      if (best != n_struct_) pivot(i, best);
      // Otherwise the row is redundant; its artificial stays basic at zero
      // and can never become nonzero since the row has no structural entries.
    }
  }

  std::size_t n_orig_ = 0, n_struct_ = 0, n_total_ = 0, width_ = 0, m_ = 0, n_eq_ = 0;
  std::vector<T> t_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> unit_col_;
  std::vector<int> row_sign_;
  std::vector<T> cost_;
  std::vector<T> reduced_;
};

template <class T>
BasicLpResult<T> solve_impl(const BasicLpProblem<T>& problem) {
  Tableau<T> tableau(problem);
  return tableau.solve(problem.objective);
}

}  // namespace

LpResult solve_lp(const LpProblem& problem) { return solve_impl(problem); }

FloatLpResult solve_lp(const FloatLpProblem& problem) { return solve_impl(problem); }

bool satisfies(const LpProblem& problem, std::span<const Rational> x) {
  if (x.size() != problem.variables) return false;
  for (const auto& v : x)
    if (sgn(v) < 0) return false;
  auto dot = [&](const std::vector<Rational>& a) {
    Rational s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * x[j];
    return s;
  };
  for (const auto& e : problem.equalities)
    if (dot(e.coeffs) != e.rhs) return false;
  for (const auto& in : problem.inequalities) {
    Rational s = dot(in.coeffs);
    if (in.sense == Sense::LessEqual ? s > in.rhs : s < in.rhs) return false;
  }
  return true;
}

std::optional<std::vector<Rational>> in_convex_hull(std::span<const Rational> point,
                                                    const RationalMatrix& generators) {
  if (point.size() != generators.cols())
    throw std::invalid_argument("point dimension does not match generator columns");
  const std::size_t k = generators.rows();
  if (k == 0) return std::nullopt;
  LpProblem lp;
  lp.variables = k;
  for (std::size_t c = 0; c < generators.cols(); ++c) {
    Equality<Rational> e;
    e.coeffs = generators.column(c);
    e.rhs = point[c];
    lp.equalities.push_back(std::move(e));
  }
  lp.equalities.push_back({std::vector<Rational>(k, Rational(1)), Rational(1)});
  LpResult r = solve_lp(lp);
  if (r.status != LpStatus::Feasible) return std::nullopt;
  return r.assignment;
}

}  // namespace pik
