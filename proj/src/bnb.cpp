// Branch and bound over the R polytope for M = L N R.
//
// Each node is a box lo <= R <= hi intersected with the row-stochastic
// constraints. With S = N R (linear in R) the bilinear terms z = L_pi S_iq
// get McCormick envelopes over L in [0,1] and S in [S_lo, S_hi], plus the
// exact identity sum_q z_piq = L_pi. The relaxation minimises the residual
// bound delta >= |sum_i z_piq - M_pq|. It is solved in floating point and
// its dual multipliers are turned into a rigorous lower bound with exact
// rational arithmetic, so pruning decisions are proofs.

#include "pik/linalg.hpp"
#include "pik/ultraweak.hpp"

#include <algorithm>
#include <queue>

namespace pik::detail {

namespace {

struct Row {
  std::vector<Rational> coeffs;
  Rational rhs;
  int kind;  // 0 equality, 1 <=, 2 >=
};

struct Node {
  std::vector<Rational> lo, hi;  // R entries, row-major d×b
  double priority;
  std::size_t id;
};

struct NodeOrder {
  bool operator()(const Node& x, const Node& y) const {
    if (x.priority != y.priority) return x.priority > y.priority;
    return x.id > y.id;
  }
};

// Tightens bounds using the row sums; returns false if the box is empty.
bool tighten(std::vector<Rational>& lo, std::vector<Rational>& hi, std::size_t d, std::size_t b) {
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t j = 0; j < d; ++j) {
      Rational sum_lo = 0, sum_hi = 0;
      for (std::size_t q = 0; q < b; ++q) {
        sum_lo += lo[j * b + q];
        sum_hi += hi[j * b + q];
      }
      if (sum_lo > 1 || sum_hi < 1) return false;
      for (std::size_t q = 0; q < b; ++q) {
        Rational cap = 1 - (sum_lo - lo[j * b + q]);
        Rational floor = 1 - (sum_hi - hi[j * b + q]);
        if (cap < hi[j * b + q]) hi[j * b + q] = cap;
        if (floor > lo[j * b + q]) lo[j * b + q] = floor;
        if (lo[j * b + q] > hi[j * b + q]) return false;
      }
    }
  return true;
}

class Relaxation {
 public:
  Relaxation(const CommMatrix& n, const CommMatrix& m)
      : n_(n), m_(m), a_(m.rows()), b_(m.cols()), c_(n.rows()), d_(n.cols()) {
    nv_ = a_ * c_ + d_ * b_ + a_ * c_ * b_ + 1;
  }

  std::size_t lvar(std::size_t p, std::size_t i) const { return p * c_ + i; }
  std::size_t rvar(std::size_t j, std::size_t q) const { return a_ * c_ + j * b_ + q; }
  std::size_t zvar(std::size_t p, std::size_t i, std::size_t q) const {
    return a_ * c_ + d_ * b_ + (p * c_ + i) * b_ + q;
  }
  std::size_t delta() const { return nv_ - 1; }

  struct Result {
    bool solved = false;
    Rational bound;                 // rigorous lower bound
    std::vector<double> right;      // LP's R, row-major
  };

  Result evaluate(const std::vector<Rational>& lo, const std::vector<Rational>& hi) const {
    // S bounds.
    std::vector<Rational> slo(c_ * b_), shi(c_ * b_);
    for (std::size_t i = 0; i < c_; ++i)
      for (std::size_t q = 0; q < b_; ++q) {
        Rational l = 0, h = 0;
        for (std::size_t j = 0; j < d_; ++j) {
          l += n_(i, j) * lo[j * b_ + q];
          h += n_(i, j) * hi[j * b_ + q];
        }
        if (h > 1) h = 1;
        slo[i * b_ + q] = l;
        shi[i * b_ + q] = h;
      }
    std::vector<Row> rows;
    auto blank = [&] { return std::vector<Rational>(nv_); };
    for (std::size_t p = 0; p < a_; ++p) {
      auto r = blank();
      for (std::size_t i = 0; i < c_; ++i) r[lvar(p, i)] = 1;
      rows.push_back({std::move(r), Rational(1), 0});
    }
    for (std::size_t j = 0; j < d_; ++j) {
      auto r = blank();
      for (std::size_t q = 0; q < b_; ++q) r[rvar(j, q)] = 1;
      rows.push_back({std::move(r), Rational(1), 0});
    }
    for (std::size_t p = 0; p < a_; ++p)
      for (std::size_t i = 0; i < c_; ++i) {
        // sum_q z_piq = L_pi (rows of N and R sum to one)
        auto r = blank();
        for (std::size_t q = 0; q < b_; ++q) r[zvar(p, i, q)] = 1;
        r[lvar(p, i)] = -1;
        rows.push_back({std::move(r), Rational(0), 0});
        for (std::size_t q = 0; q < b_; ++q) {
          const Rational& sl = slo[i * b_ + q];
          const Rational& su = shi[i * b_ + q];
          auto with_s = [&](Rational s_coeff) {
            auto row = blank();
            for (std::size_t j = 0; j < d_; ++j)
              if (n_(i, j) != 0) row[rvar(j, q)] = s_coeff * n_(i, j);
            return row;
          };
          {  // z >= sl L
            auto row = blank();
            row[zvar(p, i, q)] = 1;
            row[lvar(p, i)] = -sl;
            rows.push_back({std::move(row), Rational(0), 2});
          }
          {  // z >= S + su L - su
            auto row = with_s(-1);
            row[zvar(p, i, q)] = 1;
            row[lvar(p, i)] = -su;
            rows.push_back({std::move(row), -su, 2});
          }
          {  // z <= S + sl L - sl
            auto row = with_s(-1);
            row[zvar(p, i, q)] = 1;
            row[lvar(p, i)] = -sl;
            rows.push_back({std::move(row), -sl, 1});
          }
          {  // z <= su L
            auto row = blank();
            row[zvar(p, i, q)] = 1;
            row[lvar(p, i)] = -su;
            rows.push_back({std::move(row), Rational(0), 1});
          }
        }
      }
    for (std::size_t p = 0; p < a_; ++p)
      for (std::size_t q = 0; q < b_; ++q) {
        auto row = blank();
        for (std::size_t i = 0; i < c_; ++i) row[zvar(p, i, q)] = 1;
        auto up = row, down = row;
        up[delta()] = -1;
        down[delta()] = 1;
        rows.push_back({std::move(up), m_(p, q), 1});
        rows.push_back({std::move(down), m_(p, q), 2});
      }

    // Variable box used by the safe bound.
    std::vector<Rational> vlo(nv_), vhi(nv_);
    for (std::size_t p = 0; p < a_; ++p)
      for (std::size_t i = 0; i < c_; ++i) vhi[lvar(p, i)] = 1;
    for (std::size_t j = 0; j < d_; ++j)
      for (std::size_t q = 0; q < b_; ++q) {
        vlo[rvar(j, q)] = lo[j * b_ + q];
        vhi[rvar(j, q)] = hi[j * b_ + q];
      }
    for (std::size_t p = 0; p < a_; ++p)
      for (std::size_t i = 0; i < c_; ++i)
        for (std::size_t q = 0; q < b_; ++q) vhi[zvar(p, i, q)] = shi[i * b_ + q];
    vhi[delta()] = 1;

    // Floating-point LP including the R box.
    FloatLpProblem lp;
    lp.variables = nv_;
    std::vector<std::size_t> eq_rows, in_rows;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      std::vector<double> coeffs(nv_);
      for (std::size_t v = 0; v < nv_; ++v) coeffs[v] = rows[k].coeffs[v].get_d();
      if (rows[k].kind == 0) {
        lp.equalities.push_back({std::move(coeffs), rows[k].rhs.get_d()});
        eq_rows.push_back(k);
      } else {
        lp.inequalities.push_back(
            {std::move(coeffs), rows[k].rhs.get_d(), rows[k].kind == 1 ? Sense::LessEqual : Sense::GreaterEqual});
        in_rows.push_back(k);
      }
    }
    for (std::size_t j = 0; j < d_; ++j)
      for (std::size_t q = 0; q < b_; ++q) {
        std::vector<double> coeffs(nv_);
        coeffs[rvar(j, q)] = 1.0;
        if (sgn(lo[j * b_ + q]) > 0) lp.inequalities.push_back({coeffs, lo[j * b_ + q].get_d(), Sense::GreaterEqual});
        if (hi[j * b_ + q] < 1) lp.inequalities.push_back({coeffs, hi[j * b_ + q].get_d(), Sense::LessEqual});
      }
    std::vector<double> obj(nv_);
    obj[delta()] = 1.0;
    lp.objective = obj;

    Result out;
    FloatLpResult res;
    try {
      res = solve_lp(lp);
    } catch (const std::runtime_error&) {
      return out;
    }
    if (res.status != LpStatus::Feasible) return out;

    // Safe bound: for any sign-correct y, c^T x >= y^T b + sum_j min(r_j lo_j, r_j hi_j)
    // with r = c - A^T y, over every x in the box satisfying the rows.
    std::vector<Rational> y(rows.size());
    for (std::size_t k = 0; k < eq_rows.size(); ++k) y[eq_rows[k]] = from_double(res.equality_duals[k]);
    for (std::size_t k = 0; k < in_rows.size(); ++k) {
      double v = res.inequality_duals[k];
      if (rows[in_rows[k]].kind == 1) v = std::min(v, 0.0);
      if (rows[in_rows[k]].kind == 2) v = std::max(v, 0.0);
      y[in_rows[k]] = from_double(v);
    }
    std::vector<Rational> reduced(nv_);
    reduced[delta()] = 1;
    Rational bound = 0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (sgn(y[k]) == 0) continue;
      bound += y[k] * rows[k].rhs;
      for (std::size_t v = 0; v < nv_; ++v)
        if (sgn(rows[k].coeffs[v]) != 0) reduced[v] -= y[k] * rows[k].coeffs[v];
    }
    for (std::size_t v = 0; v < nv_; ++v) {
      Rational at_lo = reduced[v] * vlo[v], at_hi = reduced[v] * vhi[v];
      bound += at_lo < at_hi ? at_lo : at_hi;
    }
    out.solved = true;
    out.bound = bound;
    out.right.resize(d_ * b_);
    for (std::size_t j = 0; j < d_; ++j)
      for (std::size_t q = 0; q < b_; ++q) out.right[j * b_ + q] = std::max(0.0, (*res.assignment)[rvar(j, q)]);
    return out;
  }

 private:
  const CommMatrix& n_;
  const CommMatrix& m_;
  std::size_t a_, b_, c_, d_, nv_;
};

}  // namespace

BnbOutcome branch_and_bound(const CommMatrix& n, const CommMatrix& m, const MajorizeBudget& budget) {
  const std::size_t b = m.cols(), d = n.cols();
  const Rational delta = from_double(budget.delta);
  Relaxation relax(n, m);
  BnbOutcome out{BnbOutcome::Kind::Exhausted, Rational(0), std::nullopt, 1.0, std::nullopt, 0};

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::size_t next_id = 0;
  open.push({std::vector<Rational>(d * b, Rational(0)), std::vector<Rational>(d * b, Rational(1)), 0.0, next_id++});
  std::optional<Rational> weakest_pruned;
  bool incomplete = false;

  while (!open.empty()) {
    if (out.nodes >= budget.max_nodes) {
      incomplete = true;
      break;
    }
    Node node = open.top();
    open.pop();
    ++out.nodes;
    if (!tighten(node.lo, node.hi, d, b)) continue;  // empty box

    auto eval = relax.evaluate(node.lo, node.hi);
    if (eval.solved && eval.bound >= delta) {
      if (!weakest_pruned || eval.bound < *weakest_pruned) weakest_pruned = eval.bound;
      continue;
    }
    if (eval.solved) {
      // Incumbent from the relaxation's R.
      std::vector<double> right = eval.right;
      for (std::size_t j = 0; j < d; ++j) {
        double s = 0.0;
        for (std::size_t q = 0; q < b; ++q) s += right[j * b + q];
        for (std::size_t q = 0; q < b; ++q) right[j * b + q] = s > 0 ? right[j * b + q] / s : 1.0 / static_cast<double>(b);
      }
      std::vector<double> left;
      double res = 1.0;
      try {
        res = best_left_for(n, m, right, left);
      } catch (const std::runtime_error&) {
      }
      if (res < out.best_residual) {
        out.best_residual = res;
        out.best = FloatPair{left, right};
      }
      if (res < 1e-9) {
        if (auto cert = extract_certificate(n, m, FloatPair{left, right})) {
          out.kind = BnbOutcome::Kind::Found;
          out.certificate = std::move(cert);
          return out;
        }
      }
    }
    // Branch on the widest R entry.
    std::size_t pick = 0;
    Rational widest = -1;
    for (std::size_t k = 0; k < d * b; ++k) {
      Rational w = node.hi[k] - node.lo[k];
      if (w > widest) {
        widest = w;
        pick = k;
      }
    }
    if (widest <= Rational(1, 1 << 30)) {
      incomplete = true;  // cannot refine further
      continue;
    }
    Rational mid = (node.lo[pick] + node.hi[pick]) / 2;
    double prio = eval.solved ? eval.bound.get_d() : 0.0;
    Node left_child{node.lo, node.hi, prio, next_id++};
    left_child.hi[pick] = mid;
    Node right_child{node.lo, node.hi, prio, next_id++};
    right_child.lo[pick] = mid;
    open.push(std::move(left_child));
    open.push(std::move(right_child));
  }
  if (!incomplete && open.empty()) {
    out.kind = BnbOutcome::Kind::Proven;
    // Every box was empty or pruned; the weakest pruned bound holds globally.
    out.proven_bound = weakest_pruned ? *weakest_pruned : Rational(1);
  }
  return out;
}

}  // namespace pik::detail
