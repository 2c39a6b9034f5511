#include "pik/ultraweak.hpp"

#include "pik/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>

namespace pik {

bool check_certificate(const CommMatrix& m, const CommMatrix& n, const Certificate& cert) {
  const auto& l = cert.left;
  const auto& r = cert.right;
  if (l.rows() != m.rows() || l.cols() != n.rows() || r.rows() != n.cols() || r.cols() != m.cols())
    throw ShapeError("certificate shapes do not compose: L " + std::to_string(l.rows()) + "x" +
                     std::to_string(l.cols()) + ", N " + std::to_string(n.rows()) + "x" +
                     std::to_string(n.cols()) + ", R " + std::to_string(r.rows()) + "x" +
                     std::to_string(r.cols()) + ", M " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
  return l.matrix() * n.matrix() * r.matrix() == m.matrix();
}

Certificate compose(const Certificate& inner, const Certificate& outer) {
  return {CommMatrix(inner.left.matrix() * outer.left.matrix()),
          CommMatrix(outer.right.matrix() * inner.right.matrix())};
}

namespace {

RationalMatrix unit_rows(std::size_t rows, std::size_t cols, const std::vector<std::size_t>& hot) {
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) m(i, hot[i]) = 1;
  return m;
}

bool lex_greater(std::span<const Rational> a, std::span<const Rational> b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != b[k]) return a[k] > b[k];
  }
  return false;
}

}  // namespace

CanonicalForm equiv_transforms(const CommMatrix& m) {
  const std::size_t a = m.rows(), b = m.cols();
  // Duplicate rows.
  std::vector<std::size_t> unique_rows;
  std::vector<std::size_t> rep(a);
  for (std::size_t i = 0; i < a; ++i) {
    std::size_t found = unique_rows.size();
    for (std::size_t k = 0; k < unique_rows.size(); ++k) {
      auto u = m.matrix().row(unique_rows[k]);
      auto v = m.matrix().row(i);
      if (std::equal(u.begin(), u.end(), v.begin())) {
        found = k;
        break;
      }
    }
    if (found == unique_rows.size()) unique_rows.push_back(i);
    rep[i] = found;
  }
  // Zero columns.
  std::vector<std::size_t> kept_cols;
  for (std::size_t j = 0; j < b; ++j) {
    bool nonzero = false;
    for (std::size_t i = 0; i < a && !nonzero; ++i) nonzero = m(i, j) != 0;
    if (nonzero) kept_cols.push_back(j);
  }
  RationalMatrix reduced = m.matrix().select_rows(unique_rows).select_cols(kept_cols);
  const std::size_t ua = reduced.rows(), kb = reduced.cols();

  // Alternate column and row sorts until both orders are stable.
  std::vector<std::size_t> rp(ua), cp(kb);
  for (std::size_t i = 0; i < ua; ++i) rp[i] = i;
  for (std::size_t j = 0; j < kb; ++j) cp[j] = j;
  auto current = [&]() {
    RationalMatrix out(ua, kb);
    for (std::size_t i = 0; i < ua; ++i)
      for (std::size_t j = 0; j < kb; ++j) out(i, j) = reduced(rp[i], cp[j]);
    return out;
  };
  for (std::size_t round = 0; round < ua + kb + 2; ++round) {
    bool changed = false;
    {
      RationalMatrix cur = current().transpose();
      std::vector<std::size_t> order(kb);
      for (std::size_t j = 0; j < kb; ++j) order[j] = j;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return lex_greater(cur.row(x), cur.row(y));
      });
      std::vector<std::size_t> next(kb);
      for (std::size_t j = 0; j < kb; ++j) next[j] = cp[order[j]];
      changed |= next != cp;
      cp = next;
    }
    {
      RationalMatrix cur = current();
      std::vector<std::size_t> order(ua);
      for (std::size_t i = 0; i < ua; ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return lex_greater(cur.row(x), cur.row(y));
      });
      std::vector<std::size_t> next(ua);
      for (std::size_t i = 0; i < ua; ++i) next[i] = rp[order[i]];
      changed |= next != rp;
      rp = next;
    }
    if (!changed) break;
  }
  RationalMatrix form = current();

  // form = P · Lsel · M · Rdel · Q, M = Lrep · P^T · form · Q^T · Rins.
  std::vector<std::size_t> sel_hot(unique_rows);
  RationalMatrix lsel = unit_rows(ua, a, sel_hot);
  RationalMatrix lrep = unit_rows(a, ua, rep);
  RationalMatrix rdel(b, kb);
  for (std::size_t j = 0; j < b; ++j) {
    auto it = std::find(kept_cols.begin(), kept_cols.end(), j);
    rdel(j, it == kept_cols.end() ? 0 : static_cast<std::size_t>(it - kept_cols.begin())) = 1;
  }
  RationalMatrix rins = unit_rows(kb, b, kept_cols);
  RationalMatrix p = unit_rows(ua, ua, rp);
  RationalMatrix q(kb, kb);
  for (std::size_t j = 0; j < kb; ++j) q(cp[j], j) = 1;

  CommMatrix form_c(form);
  Certificate down{CommMatrix(p * lsel), CommMatrix(rdel * q)};
  Certificate up{CommMatrix(lrep * p.transpose()), CommMatrix(q.transpose() * rins)};
  return {std::move(form_c), std::move(down), std::move(up)};
}

UniversalBounds universal_bounds(const CommMatrix& m) {
  const std::size_t a = m.rows(), n = m.cols();
  CommMatrix vn = gen_vn(static_cast<int>(n));
  Certificate lower{CommMatrix(RationalMatrix::constant(n, a, Rational(1, static_cast<long>(a)))),
                    vn};
  Certificate upper{m, CommMatrix::identity(n)};
  return {vn, std::move(lower), CommMatrix::identity(n), std::move(upper)};
}

Certificate build_diagonal_cert(int n, int t) {
  if (n < 2 || t < 1 || t > n - 1)
    throw DomainError("diagonal certificate needs 1 <= t <= n-1");
  const std::size_t small_rows = binomial(n, t), big_rows = binomial(n + 1, t + 1);
  RationalMatrix l(small_rows, big_rows);
  for (std::size_t i = 0; i < small_rows; ++i) l(i, i) = 1;
  const auto cols = static_cast<std::size_t>(n);
  RationalMatrix r(cols + 1, cols);
  r(0, 0) = 1;
  for (std::size_t j = 1; j <= cols; ++j) r(j, j - 1) = 1;
  return {CommMatrix(std::move(l)), CommMatrix(std::move(r))};
}

Certificate build_t_reduction(int n, int t) {
  if (n < 3 || t < 2 || t > n - 1) throw DomainError("t-reduction needs 2 <= t <= n-1");
  const CommMatrix lower = gen_copt(n, t - 1);
  const CommMatrix upper = gen_copt(n, t);
  const Rational weight(1, n - t + 1);
  RationalMatrix l(lower.rows(), upper.rows());
  for (std::size_t i = 0; i < lower.rows(); ++i)
    for (std::size_t k = 0; k < upper.rows(); ++k) {
      Rational dot = 0;
      for (std::size_t j = 0; j < lower.cols(); ++j) dot += lower(i, j) * upper(k, j);
      if (dot == weight) l(i, k) = weight;
    }
  return {CommMatrix(std::move(l)), CommMatrix::identity(static_cast<std::size_t>(n))};
}

std::optional<Certificate> build_collapse_cert(int m, int n, int t) {
  if (m < 2 || n < 2 || t < 1 || t > n - 1) return std::nullopt;
  const int width = n - t;
  if (n / width < m) return std::nullopt;
  TupleIndex index(n, t);
  const auto out = static_cast<std::size_t>(m);
  // Output column c collects the block [n-(m-c)w, n-(m-c-1)w); the leading
  // leftover columns are zero in every selected row and go to column 0.
  RationalMatrix r(static_cast<std::size_t>(n), out);
  std::vector<int> block_of(static_cast<std::size_t>(n), -1);
  for (int c = 0; c < m; ++c)
    for (int j = n - (m - c) * width; j < n - (m - c - 1) * width; ++j)
      block_of[static_cast<std::size_t>(j)] = c;
  for (int j = 0; j < n; ++j) {
    int c = block_of[static_cast<std::size_t>(j)];
    r(static_cast<std::size_t>(j), static_cast<std::size_t>(c < 0 ? 0 : c)) = 1;
  }
  // Row i of C^opt_{m,m-1} puts its mass on column m-1-i.
  RationalMatrix l(out, index.size());
  for (int i = 0; i < m; ++i) {
    const int target = m - 1 - i;
    std::vector<int> zeros;
    for (int j = 0; j < n; ++j)
      if (block_of[static_cast<std::size_t>(j)] != target) zeros.push_back(j + 1);
    l(static_cast<std::size_t>(i), index.position(zeros)) = 1;
  }
  return Certificate{CommMatrix(std::move(l)), CommMatrix(std::move(r))};
}

namespace {

enum class ChainStep { TReduction, Diagonal, Collapse };
using ChainNode = std::pair<int, int>;

// Breadth-first search over (n, t) nodes; returns (destination, step) pairs
// from start to goal.
std::optional<std::vector<std::pair<ChainNode, ChainStep>>> chain_path(int n_from, int t_from, int n_to, int t_to) {
  auto valid = [](int n, int t) { return n >= 2 && t >= 1 && t <= n - 1; };
  if (!valid(n_from, t_from) || !valid(n_to, t_to)) return std::nullopt;
  if (n_from > n_to) return std::nullopt;
  const ChainNode start{n_from, t_from}, goal{n_to, t_to};
  std::map<ChainNode, std::pair<ChainNode, ChainStep>> parent;
  std::deque<ChainNode> queue{start};
  parent[start] = {start, ChainStep::TReduction};
  while (!queue.empty()) {
    auto [n, t] = queue.front();
    queue.pop_front();
    if (ChainNode{n, t} == goal) break;
    std::vector<std::pair<ChainNode, ChainStep>> next;
    if (t + 1 <= n - 1) next.push_back({{n, t + 1}, ChainStep::TReduction});
    if (n + 1 <= n_to) next.push_back({{n + 1, t + 1}, ChainStep::Diagonal});
    if (t == n - 1)
      for (int n2 = n; n2 <= n_to; ++n2)
        for (int t2 = 1; t2 <= n2 - 1; ++t2)
          if (n2 / (n2 - t2) >= n && ChainNode{n2, t2} != ChainNode{n, t})
            next.push_back({{n2, t2}, ChainStep::Collapse});
    for (const auto& [node, step] : next) {
      if (parent.count(node)) continue;
      parent[node] = {{n, t}, step};
      queue.push_back(node);
    }
  }
  if (!parent.count(goal)) return std::nullopt;
  std::vector<std::pair<ChainNode, ChainStep>> path;
  for (ChainNode cur = goal; cur != start; cur = parent[cur].first) path.push_back({cur, parent[cur].second});
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

bool copt_reachable(int n_from, int t_from, int n_to, int t_to) {
  return chain_path(n_from, t_from, n_to, t_to).has_value();
}

std::optional<Certificate> copt_chain(int n_from, int t_from, int n_to, int t_to) {
  auto path = chain_path(n_from, t_from, n_to, t_to);
  if (!path) return std::nullopt;
  if (path->empty()) {
    const auto rows = binomial(n_from, t_from);
    return Certificate{CommMatrix::identity(rows), CommMatrix::identity(static_cast<std::size_t>(n_from))};
  }
  using Step = ChainStep;
  using Node = ChainNode;
  const Node start{n_from, t_from};
  std::optional<Certificate> acc;
  Node from = start;
  for (const auto& [to, step] : *path) {
    Certificate c = [&] {
      switch (step) {
        case Step::TReduction: return build_t_reduction(to.first, to.second);
        case Step::Diagonal: return build_diagonal_cert(from.first, from.second);
        case Step::Collapse: return *build_collapse_cert(from.first, to.first, to.second);
      }
      throw std::logic_error("unreachable");
    }();
    acc = acc ? compose(*acc, c) : c;
    from = to;
  }
  return acc;
}

namespace detail {

namespace {

std::vector<double> product(const std::vector<double>& x, std::size_t r, std::size_t k,
                            const std::vector<double>& y, std::size_t c) {
  std::vector<double> out(r * c, 0.0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      double v = x[i * k + l];
      if (v == 0.0) continue;
      for (std::size_t j = 0; j < c; ++j) out[i * c + j] += v * y[l * c + j];
    }
  return out;
}

double best_right_for(const CommMatrix& n, const CommMatrix& m, const std::vector<double>& left,
                      std::vector<double>& right) {
  const std::size_t a = m.rows(), b = m.cols(), c = n.rows(), d = n.cols();
  const auto nd = to_doubles(n.matrix());
  const auto md = to_doubles(m.matrix());
  const auto t = product(left, a, c, nd, d);  // a×d
  FloatLpProblem lp;
  lp.variables = d * b + 1;
  const std::size_t delta = d * b;
  for (std::size_t p = 0; p < a; ++p)
    for (std::size_t q = 0; q < b; ++q) {
      std::vector<double> row(lp.variables, 0.0);
      for (std::size_t j = 0; j < d; ++j) row[j * b + q] = t[p * d + j];
      auto up = row, lo = row;
      up[delta] = -1.0;
      lo[delta] = 1.0;
      lp.inequalities.push_back({std::move(up), md[p * b + q], Sense::LessEqual});
      lp.inequalities.push_back({std::move(lo), md[p * b + q], Sense::GreaterEqual});
    }
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> row(lp.variables, 0.0);
    for (std::size_t q = 0; q < b; ++q) row[j * b + q] = 1.0;
    lp.equalities.push_back({std::move(row), 1.0});
  }
  std::vector<double> obj(lp.variables, 0.0);
  obj[delta] = 1.0;
  lp.objective = obj;
  auto res = solve_lp(lp);
  if (res.status != LpStatus::Feasible) return 1.0;
  right.assign(res.assignment->begin(), res.assignment->begin() + static_cast<std::ptrdiff_t>(d * b));
  return std::max(0.0, res.objective_value);
}

std::vector<double> random_stochastic(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> out(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      double u = unit(rng);
      out[i * cols + j] = -std::log(1.0 - u);
      sum += out[i * cols + j];
    }
    for (std::size_t j = 0; j < cols; ++j) out[i * cols + j] /= sum;
  }
  return out;
}

std::optional<RationalMatrix> round_stochastic(const std::vector<double>& v, std::size_t rows,
                                               std::size_t cols, long max_den) {
  RationalMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    Rational sum = 0;
    std::size_t largest = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      Rational x = approximate(std::max(0.0, v[i * cols + j]), max_den);
      out(i, j) = x;
      sum += x;
      if (x > out(i, largest)) largest = j;
    }
    out(i, largest) += 1 - sum;
    if (sgn(out(i, largest)) < 0) return std::nullopt;
  }
  return out;
}

}  // namespace

double best_left_for(const CommMatrix& n, const CommMatrix& m, const std::vector<double>& right,
                     std::vector<double>& left) {
  const std::size_t a = m.rows(), b = m.cols(), c = n.rows(), d = n.cols();
  const auto nd = to_doubles(n.matrix());
  const auto md = to_doubles(m.matrix());
  const auto s = product(nd, c, d, right, b);  // c×b
  left.assign(a * c, 0.0);
  double worst = 0.0;
  for (std::size_t p = 0; p < a; ++p) {
    FloatLpProblem lp;
    lp.variables = c + 1;
    for (std::size_t q = 0; q < b; ++q) {
      std::vector<double> row(c + 1, 0.0);
      for (std::size_t i = 0; i < c; ++i) row[i] = s[i * b + q];
      auto up = row, lo = row;
      up[c] = -1.0;
      lo[c] = 1.0;
      lp.inequalities.push_back({std::move(up), md[p * b + q], Sense::LessEqual});
      lp.inequalities.push_back({std::move(lo), md[p * b + q], Sense::GreaterEqual});
    }
    std::vector<double> ones(c + 1, 1.0);
    ones[c] = 0.0;
    lp.equalities.push_back({std::move(ones), 1.0});
    std::vector<double> obj(c + 1, 0.0);
    obj[c] = 1.0;
    lp.objective = obj;
    auto res = solve_lp(lp);
    if (res.status != LpStatus::Feasible) return 1.0;
    for (std::size_t i = 0; i < c; ++i) left[p * c + i] = (*res.assignment)[i];
    worst = std::max(worst, res.objective_value);
  }
  return worst;
}

AlternatingResult alternating_lp(const CommMatrix& n, const CommMatrix& m, std::uint64_t seed,
                                 int alternations) {
  const std::size_t a = m.rows(), b = m.cols(), c = n.rows(), d = n.cols();
  std::mt19937_64 rng(seed);
  std::vector<double> right = random_stochastic(d, b, rng);
  std::vector<double> left(a * c, 0.0);
  AlternatingResult best{1e300, {left, right}};
  int stalled = 0;
  for (int it = 0; it < alternations; ++it) {
    double res = 1.0;
    try {
      best_left_for(n, m, right, left);
      res = best_right_for(n, m, left, right);
    } catch (const std::runtime_error&) {
      break;
    }
    if (res < best.residual - 1e-12) {
      best = {res, {left, right}};
      stalled = 0;
    } else if (++stalled >= 3) {
      break;
    }
    if (res < 1e-10) break;
  }
  return best;
}

std::optional<Certificate> extract_certificate(const CommMatrix& n, const CommMatrix& m,
                                               const FloatPair& approx) {
  static constexpr long kDenominators[] = {1,  2,  3,  4,   5,   6,   8,    10,   12,    16,     20,
                                           24, 30, 36, 48,  60,  120, 240,  360,  720,   2520,   5040,
                                           10000, 100000, 1000000};
  const std::size_t a = m.rows(), b = m.cols(), c = n.rows(), d = n.cols();
  std::optional<RationalMatrix> previous;
  for (long den : kDenominators) {
    auto r = round_stochastic(approx.right, d, b, den);
    if (!r || r == previous) continue;
    previous = r;
    RationalMatrix s = n.matrix() * *r;
    RationalMatrix l(a, c);
    bool ok = true;
    for (std::size_t p = 0; p < a && ok; ++p) {
      auto w = in_convex_hull(m.matrix().row(p), s);
      if (!w) {
        ok = false;
        break;
      }
      for (std::size_t i = 0; i < c; ++i) l(p, i) = (*w)[i];
    }
    if (!ok) continue;
    Certificate cert{CommMatrix(std::move(l)), CommMatrix(*r)};
    if (check_certificate(m, n, cert)) return cert;
  }
  previous.reset();
  for (long den : kDenominators) {
    auto l = round_stochastic(approx.left, a, c, den);
    if (!l || l == previous) continue;
    previous = l;
    RationalMatrix t = *l * n.matrix();  // a×d
    LpProblem lp;
    lp.variables = d * b;
    for (std::size_t p = 0; p < a; ++p)
      for (std::size_t q = 0; q < b; ++q) {
        std::vector<Rational> row(d * b);
        for (std::size_t j = 0; j < d; ++j) row[j * b + q] = t(p, j);
        lp.equalities.push_back({std::move(row), m(p, q)});
      }
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Rational> row(d * b);
      for (std::size_t q = 0; q < b; ++q) row[j * b + q] = 1;
      lp.equalities.push_back({std::move(row), Rational(1)});
    }
    auto res = solve_lp(lp);
    if (res.status != LpStatus::Feasible) continue;
    Certificate cert{CommMatrix(*l), CommMatrix(RationalMatrix(d, b, *res.assignment))};
    if (check_certificate(m, n, cert)) return cert;
  }
  return std::nullopt;
}

}  // namespace detail

namespace {

std::optional<Certificate> identity_packing(const CommMatrix& n, const CommMatrix& m) {
  const std::size_t a = m.rows(), b = m.cols(), c = n.rows(), d = n.cols();
  const std::size_t need = std::min(a, b);
  if (need > d) return std::nullopt;
  std::vector<std::vector<bool>> support(c, std::vector<bool>(d));
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < d; ++j) support[i][j] = n(i, j) != 0;
  std::vector<std::size_t> chosen;
  std::vector<bool> used(d, false);
  std::size_t visits = 0;
  auto search = [&](auto&& self, std::size_t from) -> bool {
    if (chosen.size() == need) return true;
    if (++visits > 200000) return false;
    for (std::size_t i = from; i < c; ++i) {
      bool clash = false;
      for (std::size_t j = 0; j < d && !clash; ++j) clash = support[i][j] && used[j];
      if (clash) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (support[i][j]) used[j] = true;
      chosen.push_back(i);
      if (self(self, i + 1)) return true;
      chosen.pop_back();
      for (std::size_t j = 0; j < d; ++j)
        if (support[i][j]) used[j] = false;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  const std::size_t k = need;
  // id_k = Lk N Rk.
  RationalMatrix lk = unit_rows(k, c, chosen);
  RationalMatrix rk(d, k);
  for (std::size_t j = 0; j < d; ++j) {
    std::size_t block = 0;
    for (std::size_t s = 0; s < k; ++s)
      if (support[chosen[s]][j]) block = s;
    rk(j, block) = 1;
  }
  // M = L' id_k R'.
  RationalMatrix lp(a, k), rp(k, b);
  if (b <= k) {
    for (std::size_t p = 0; p < a; ++p)
      for (std::size_t q = 0; q < b; ++q) lp(p, q) = m(p, q);
    for (std::size_t s = 0; s < k; ++s) rp(s, s < b ? s : 0) = 1;
  } else {
    for (std::size_t p = 0; p < a; ++p) lp(p, p) = 1;
    for (std::size_t s = 0; s < k; ++s)
      for (std::size_t q = 0; q < b; ++q) rp(s, q) = m(s < a ? s : 0, q);
  }
  return Certificate{CommMatrix(lp * lk), CommMatrix(rk * rp)};
}

std::optional<Certificate> rank_one(const CommMatrix& n, const CommMatrix& m) {
  for (std::size_t i = 1; i < m.rows(); ++i) {
    auto r0 = m.matrix().row(0), ri = m.matrix().row(i);
    if (!std::equal(r0.begin(), r0.end(), ri.begin())) return std::nullopt;
  }
  RationalMatrix l(m.rows(), n.rows());
  for (std::size_t p = 0; p < m.rows(); ++p) l(p, 0) = 1;
  RationalMatrix r(n.cols(), m.cols());
  for (std::size_t j = 0; j < n.cols(); ++j)
    for (std::size_t q = 0; q < m.cols(); ++q) r(j, q) = m(0, q);
  return Certificate{CommMatrix(std::move(l)), CommMatrix(std::move(r))};
}

std::optional<Certificate> via_canonical(const CommMatrix& n, const CommMatrix& m) {
  CanonicalForm cn = equiv_transforms(n);
  CanonicalForm cm = equiv_transforms(m);
  if (!(cn.form == cm.form)) return std::nullopt;
  // M ⊑ form(M) = form(N) ⊑ N.
  return compose(cm.original_below_form, cn.form_below_original);
}

std::optional<Certificate> via_copt(const CommMatrix& n, const CommMatrix& m) {
  auto sn = recognize_copt(n.matrix());
  auto sm = recognize_copt(m.matrix());
  if (!sn || !sm) return std::nullopt;
  auto chain = copt_chain(sm->n, sm->t, sn->n, sn->t);
  if (!chain) return std::nullopt;
  // M = P_M C_M, C_N = Q N with Q = P_N^T.
  RationalMatrix pm = unit_rows(m.rows(), m.rows(), sm->row_of);
  RationalMatrix q(n.rows(), n.rows());
  for (std::size_t i = 0; i < n.rows(); ++i) q(sn->row_of[i], i) = 1;
  return Certificate{CommMatrix(pm * chain->left.matrix() * q), chain->right};
}

}  // namespace

MajorizationDecision majorizes(const CommMatrix& n, const CommMatrix& m, const MajorizeBudget& budget) {
  if (rank(m.matrix()) > rank(n.matrix()))
    return {MajorizationNo{NoReason::RankExceeds, Rational(0), 0}};

  auto accept = [&](std::optional<Certificate> cert, const char* route) -> std::optional<MajorizationDecision> {
    if (cert && check_certificate(m, n, *cert)) return MajorizationDecision{MajorizationYes{std::move(*cert), route}};
    return std::nullopt;
  };

  if (budget.structural) {
    if (m == n)
      return {MajorizationYes{{CommMatrix::identity(m.rows()), CommMatrix::identity(m.cols())}, "reflexive"}};
    if (auto d = accept(rank_one(n, m), "rank-one target")) return *d;
    if (auto d = accept(via_canonical(n, m), "equivalent canonical forms")) return *d;
    if (auto d = accept(via_copt(n, m), "optimal-matrix chain")) return *d;
    if (auto d = accept(identity_packing(n, m), "identity packing")) return *d;
  }

  double best_residual = 1e300;
  std::optional<FloatPair> best_pair;
  for (int k = 0; k < budget.restarts; ++k) {
    auto run = detail::alternating_lp(n, m, budget.seed + static_cast<std::uint64_t>(k), budget.alternations);
    if (run.residual < best_residual) {
      best_residual = run.residual;
      best_pair = run.pair;
    }
    if (run.residual < 1e-7) {
      if (auto d = accept(detail::extract_certificate(n, m, run.pair), "alternating LP")) return *d;
    }
  }

  auto bnb = detail::branch_and_bound(n, m, budget);
  switch (bnb.kind) {
    case detail::BnbOutcome::Kind::Proven:
      return {MajorizationNo{NoReason::BranchAndBoundExhausted, bnb.proven_bound, bnb.nodes}};
    case detail::BnbOutcome::Kind::Found:
      if (auto d = accept(std::move(bnb.certificate), "branch and bound")) return *d;
      break;
    case detail::BnbOutcome::Kind::Exhausted:
      break;
  }
  if (bnb.best_residual < best_residual) {
    best_residual = bnb.best_residual;
    best_pair = bnb.best;
  }
  return {MajorizationUnknown{best_residual, best_pair, bnb.nodes}};
}

}  // namespace pik
