#include "pik/implsearch.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <random>

namespace pik {

SystemSpec SystemSpec::qudit(int d) {
  if (d < 2) throw DomainError("qudit dimension must be at least 2");
  return d == 2 ? qubit() : SystemSpec(Kind::Qudit, d);
}

SystemSpec SystemSpec::parse(std::string_view text) {
  if (text == "qubit") return qubit();
  if (text == "rebit") return rebit();
  constexpr std::string_view prefix = "qudit:";
  if (text.starts_with(prefix)) {
    auto digits = text.substr(prefix.size());
    int d = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return qudit(d);
  }
  throw std::invalid_argument("unknown system '" + std::string(text) + "' (expected qubit, rebit or qudit:<d>)");
}

std::string SystemSpec::name() const {
  switch (kind_) {
    case Kind::Qubit: return "qubit";
    case Kind::Rebit: return "rebit";
    case Kind::Qudit: return "qudit:" + std::to_string(dim_);
  }
  return {};
}

int operational_dimension(const SystemSpec& system) { return system.dim(); }

std::string_view theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::UniformBound: return "uniform-antidistinguishability-bound";
    case TheoremId::QubitTwoOrMore: return "no-qubit-realization-for-t>=2";
    case TheoremId::PlanarGeometry: return "planar-bloch-geometry";
    case TheoremId::OperationalDimension: return "operational-dimension-bound";
  }
  return {};
}

namespace {

using cd = std::complex<double>;

ComplexMatrix basis_projector(Eigen::Index d, Eigen::Index j) {
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  p(j, j) = 1.0;
  return p;
}

// Diagonal encoding when C has at most d columns: ρ_i = diag(row i), and the
// measurement reads out the basis (the unused levels go to outcome 1).
std::optional<QuantumSetup> diagonal_by_columns(const CommMatrix& c, Eigen::Index d) {
  const auto k = c.rows(), n = c.cols();
  if (static_cast<Eigen::Index>(n) > d) return std::nullopt;
  std::vector<DensityOperator> states;
  for (std::size_t i = 0; i < k; ++i) {
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    for (std::size_t j = 0; j < n; ++j) rho(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = c(i, j).get_d();
    states.emplace_back(std::move(rho));
  }
  std::vector<ComplexMatrix> effects;
  for (std::size_t j = 0; j < n; ++j) effects.push_back(basis_projector(d, static_cast<Eigen::Index>(j)));
  for (Eigen::Index extra = static_cast<Eigen::Index>(n); extra < d; ++extra) effects[0](extra, extra) = 1.0;
  return QuantumSetup{std::move(states), Povm(std::move(effects))};
}

// Dual encoding when C has at most d rows: basis states and
// M(j) = Σ_i C_ij |i⟩⟨i|.
std::optional<QuantumSetup> diagonal_by_rows(const CommMatrix& c, Eigen::Index d) {
  const auto k = c.rows(), n = c.cols();
  if (static_cast<Eigen::Index>(k) > d) return std::nullopt;
  std::vector<DensityOperator> states;
  for (std::size_t i = 0; i < k; ++i) states.emplace_back(basis_projector(d, static_cast<Eigen::Index>(i)));
  std::vector<ComplexMatrix> effects(n, ComplexMatrix::Zero(d, d));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < k; ++i)
      effects[j](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = c(i, j).get_d();
  for (Eigen::Index extra = static_cast<Eigen::Index>(k); extra < d; ++extra) effects[0](extra, extra) = 1.0;
  return QuantumSetup{std::move(states), Povm(std::move(effects))};
}

QuantumSetup to_setup(std::pair<std::vector<DensityOperator>, Povm> p) {
  return {std::move(p.first), std::move(p.second)};
}

struct Construction {
  QuantumSetup setup;  // rows in gen_copt order
  std::string provenance;
};

// Direct constructions of C^opt_{n,t} in dimension d (no certificate chains).
std::optional<Construction> direct_copt(int n, int t, const SystemSpec& system) {
  const int d = system.dim();
  if (n <= d) {
    auto s = diagonal_by_columns(gen_copt(n, t), d);
    return Construction{std::move(*s), t == 1 ? "leave-one-out basis mixtures" : "basis mixtures (n <= d)"};
  }
  if (t == 1) {
    if (n <= 4 && (!system.real() || n <= 3))
      return Construction{embed(to_setup(qubit_setup(qubit_uniform_set(n))), d), "uniform Bloch family"};
    if (n == 9 && d >= 3 && !system.real()) {
      auto sic = qutrit_sic_povm();
      auto states = sym_states_from_povm(sic, 9, 3);
      return Construction{embed(QuantumSetup{std::move(states), sic}, d), "qutrit SIC symmetric states"};
    }
  }
  if (n == 4 && t == 2 && d >= 3) return Construction{embed(qutrit_c42(), d), "qutrit C(4,2) realization"};
  return std::nullopt;
}

QuantumSetup reorder_rows(const QuantumSetup& s, const std::vector<std::size_t>& row_of) {
  std::vector<DensityOperator> states;
  for (auto r : row_of) states.push_back(s.states[r]);
  return {std::move(states), s.povm};
}

std::optional<Realizable> verified(QuantumSetup setup, const CommMatrix& c, std::string provenance) {
  double dev = max_deviation(born(setup.states, setup.povm), c.matrix());
  if (dev > kPhysicalTolerance) return std::nullopt;
  return Realizable{std::move(setup), std::move(provenance), dev};
}

std::optional<Realizable> construct(const CommMatrix& c, const SystemSpec& system) {
  const Eigen::Index d = system.dim();
  if (auto shape = recognize_copt(c.matrix())) {
    const int n = shape->n, t = shape->t;
    if (auto direct = direct_copt(n, t, system))
      if (auto r = verified(reorder_rows(direct->setup, shape->row_of), c, direct->provenance)) return r;
    // Pull a realization back along a certified chain from a constructible shape.
    const int reach = std::max({system.dim(), 9, 4});
    for (int n2 = n; n2 <= reach; ++n2)
      for (int t2 = 1; t2 < n2; ++t2) {
        if ((n2 == n && t2 == t) || !copt_reachable(n, t, n2, t2)) continue;
        auto source = direct_copt(n2, t2, system);
        if (!source) continue;
        auto cert = copt_chain(n, t, n2, t2);
        auto pulled = compose_with_certificate(source->setup.states, source->setup.povm, *cert);
        std::string prov = source->provenance + " via certificate from C(" + std::to_string(n2) + "," +
                           std::to_string(t2) + ")";
        if (auto r = verified(reorder_rows(pulled, shape->row_of), c, prov)) return r;
      }
  }
  if (auto s = diagonal_by_columns(c, d))
    if (auto r = verified(std::move(*s), c, "diagonal encoding (columns <= d)")) return r;
  if (auto s = diagonal_by_rows(c, d))
    if (auto r = verified(std::move(*s), c, "diagonal encoding (rows <= d)")) return r;
  return std::nullopt;
}

// Largest set of rows with pairwise disjoint supports, stopping once `want`
// rows are found.
std::size_t disjoint_rows(const CommMatrix& c, std::size_t want) {
  const auto k = c.rows();
  std::vector<std::vector<bool>> support(k, std::vector<bool>(c.cols()));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) support[i][j] = c(i, j) != 0;
  auto disjoint = [&](std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < c.cols(); ++j)
      if (support[a][j] && support[b][j]) return false;
    return true;
  };
  std::size_t best = 0;
  std::size_t calls = 0;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    best = std::max(best, chosen.size());
    if (best >= want || ++calls > 200000) return;
    for (std::size_t i = from; i < k; ++i) {
      if (!std::all_of(chosen.begin(), chosen.end(), [&](std::size_t s) { return disjoint(s, i); })) continue;
      chosen.push_back(i);
      grow(i + 1);
      chosen.pop_back();
      if (best >= want) return;
    }
  };
  grow(0);
  return best;
}

std::optional<ImpossibleByTheorem> impossibility(const CommMatrix& c, const SystemSpec& system) {
  const int d = system.dim();
  if (auto shape = recognize_copt(c.matrix())) {
    const int n = shape->n, t = shape->t;
    if (d == 2 && t >= 2)
      return ImpossibleByTheorem{TheoremId::QubitTwoOrMore,
                                 "C(" + std::to_string(n) + "," + std::to_string(t) +
                                     ") has no qubit realization for any t >= 2"};
    if (t == 1 && n > d * d)
      return ImpossibleByTheorem{TheoremId::UniformBound, "at most d^2 = " + std::to_string(d * d) +
                                                              " states can be uniformly antidistinguished, n = " +
                                                              std::to_string(n)};
    if (t == 1 && system.real() && n >= 4) {
      // Uniformly antidistinguishable qubit states are pure with pairwise
      // Bloch dot products 1/(1-n); their Gram matrix must fit in a plane.
      ComplexMatrix gram = ComplexMatrix::Constant(n, n, 1.0 / (1.0 - n));
      gram.diagonal().setOnes();
      auto ev = hermitian_eigenvalues(gram);
      const auto rank = (ev.array() > 1e-9).count();
      if (rank > 2)
        return ImpossibleByTheorem{TheoremId::PlanarGeometry,
                                   "the " + std::to_string(n) + " Bloch vectors would span " + std::to_string(rank) +
                                       " dimensions, but rebit states lie in the x-z plane"};
    }
    if (n / (n - t) > d)
      return ImpossibleByTheorem{TheoremId::OperationalDimension,
                                 "id_" + std::to_string(n / (n - t)) + " is majorized by C(" + std::to_string(n) +
                                     "," + std::to_string(t) + ") but exceeds operational dimension " +
                                     std::to_string(d)};
    return std::nullopt;
  }
  const auto want = static_cast<std::size_t>(d) + 1;
  if (c.rows() >= want && c.cols() >= want) {
    auto m = disjoint_rows(c, want);
    if (m >= want)
      return ImpossibleByTheorem{TheoremId::OperationalDimension,
                                 std::to_string(m) + " rows with disjoint supports exceed operational dimension " +
                                     std::to_string(d)};
  }
  return std::nullopt;
}

// ---- see-saw ----

Eigen::VectorXd simplex_projection(const Eigen::VectorXd& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cum += u[k];
    double cand = (cum - 1.0) / static_cast<double>(k + 1);
    if (u[k] - cand > 0) theta = cand;
  }
  return (v.array() - theta).cwiseMax(0.0);
}

class Seesaw {
 public:
  Seesaw(const CommMatrix& c, const SystemSpec& system, std::uint64_t seed)
      : k_(static_cast<Eigen::Index>(c.rows())),
        n_(static_cast<Eigen::Index>(c.cols())),
        d_(system.dim()),
        real_(system.real()),
        target_(k_, n_),
        rng_(seed) {
    for (Eigen::Index i = 0; i < k_; ++i)
      for (Eigen::Index j = 0; j < n_; ++j) target_(i, j) = c(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
    for (Eigen::Index i = 0; i < k_; ++i) {
      ComplexMatrix g = random_matrix();
      ComplexMatrix rho = g * g.adjoint();
      states_.push_back(clean(rho / rho.trace().real()));
    }
    std::vector<ComplexMatrix> a;
    for (Eigen::Index j = 0; j < n_; ++j) {
      ComplexMatrix g = random_matrix();
      a.push_back(g * g.adjoint());
    }
    effects_ = normalise(a);
  }

  double objective() const { return (probabilities() - target_).squaredNorm(); }
  double residual() const { return (probabilities() - target_).cwiseAbs().maxCoeff(); }

  void step_states() {
    double lip = 0.0;
    for (const auto& e : effects_) lip += 2.0 * e.squaredNorm();
    if (lip <= 0) return;
    for (Eigen::Index i = 0; i < k_; ++i) {
      auto& rho = states_[static_cast<std::size_t>(i)];
      for (int inner = 0; inner < 3; ++inner) {
        Eigen::VectorXd r = row(rho) - target_.row(i).transpose();
        ComplexMatrix grad = ComplexMatrix::Zero(d_, d_);
        for (Eigen::Index j = 0; j < n_; ++j) grad += 2.0 * r(j) * effects_[static_cast<std::size_t>(j)];
        ComplexMatrix next = density_projection(rho - grad / lip);
        if ((row(next) - target_.row(i).transpose()).squaredNorm() <= r.squaredNorm()) rho = next;
      }
    }
  }

  void step_effects() {
    const double before = objective();
    double lip = 0.0;
    for (const auto& s : states_) lip += 2.0 * s.squaredNorm();
    RealMatrix r = probabilities() - target_;
    std::vector<ComplexMatrix> grad(static_cast<std::size_t>(n_), ComplexMatrix::Zero(d_, d_));
    for (Eigen::Index j = 0; j < n_; ++j)
      for (Eigen::Index i = 0; i < k_; ++i) grad[static_cast<std::size_t>(j)] += 2.0 * r(i, j) * states_[static_cast<std::size_t>(i)];
    auto saved = effects_;
    for (int attempt = 0; attempt < 4; ++attempt, lip *= 2.0) {
      std::vector<ComplexMatrix> y;
      for (Eigen::Index j = 0; j < n_; ++j)
        y.push_back(saved[static_cast<std::size_t>(j)] - grad[static_cast<std::size_t>(j)] / lip);
      effects_ = povm_projection(y);
      if (objective() <= before) return;
    }
    effects_ = saved;
  }

  QuantumSetup setup() const {
    std::vector<DensityOperator> states;
    for (const auto& s : states_) states.emplace_back(s);
    return {std::move(states), Povm(effects_)};
  }

 private:
  ComplexMatrix random_matrix() {
    std::normal_distribution<double> g;
    ComplexMatrix m(d_, d_);
    for (Eigen::Index a = 0; a < d_; ++a)
      for (Eigen::Index b = 0; b < d_; ++b) m(a, b) = cd(g(rng_), real_ ? 0.0 : g(rng_));
    return m;
  }

  ComplexMatrix clean(const ComplexMatrix& h) const {
    ComplexMatrix out = 0.5 * (h + h.adjoint());
    if (real_) out = out.real().cast<cd>();
    return out;
  }

  Eigen::VectorXd row(const ComplexMatrix& rho) const {
    Eigen::VectorXd p(n_);
    for (Eigen::Index j = 0; j < n_; ++j) p(j) = (rho * effects_[static_cast<std::size_t>(j)]).trace().real();
    return p;
  }

  RealMatrix probabilities() const {
    RealMatrix p(k_, n_);
    for (Eigen::Index i = 0; i < k_; ++i) p.row(i) = row(states_[static_cast<std::size_t>(i)]).transpose();
    return p;
  }

  ComplexMatrix density_projection(const ComplexMatrix& h) const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(clean(h));
    Eigen::VectorXd w = simplex_projection(es.eigenvalues());
    return clean(es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint());
  }

  ComplexMatrix psd_part(const ComplexMatrix& h) const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(clean(h));
    Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
    return clean(es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint());
  }

  // Rescales PSD operators so that they sum to the identity exactly.
  std::vector<ComplexMatrix> normalise(const std::vector<ComplexMatrix>& a) const {
    ComplexMatrix s = ComplexMatrix::Zero(d_, d_);
    for (const auto& x : a) s += x;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(clean(s));
    Eigen::VectorXd inv = es.eigenvalues().cwiseMax(1e-12).cwiseSqrt().cwiseInverse();
    ComplexMatrix root = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
    std::vector<ComplexMatrix> out;
    for (const auto& x : a) out.push_back(clean(root * x * root));
    return out;
  }

  // Dykstra's alternating projection onto {Σ E_j = 1} ∩ {E_j ⪰ 0}.
  std::vector<ComplexMatrix> povm_projection(const std::vector<ComplexMatrix>& y) const {
    const auto n = y.size();
    const ComplexMatrix id = ComplexMatrix::Identity(d_, d_);
    std::vector<ComplexMatrix> x = y, p(n, ComplexMatrix::Zero(d_, d_)), q(n, ComplexMatrix::Zero(d_, d_));
    for (int it = 0; it < 100; ++it) {
      ComplexMatrix excess = -id;
      for (std::size_t j = 0; j < n; ++j) excess += x[j] + p[j];
      excess /= static_cast<double>(n);
      std::vector<ComplexMatrix> z(n);
      for (std::size_t j = 0; j < n; ++j) {
        z[j] = x[j] + p[j] - excess;
        p[j] = x[j] + p[j] - z[j];
      }
      ComplexMatrix sum = ComplexMatrix::Zero(d_, d_);
      for (std::size_t j = 0; j < n; ++j) {
        ComplexMatrix next = psd_part(z[j] + q[j]);
        q[j] = z[j] + q[j] - next;
        x[j] = next;
        sum += next;
      }
      if ((sum - id).cwiseAbs().maxCoeff() < 1e-13) break;
    }
    return normalise(x);
  }

  Eigen::Index k_, n_, d_;
  bool real_;
  RealMatrix target_;
  std::mt19937_64 rng_;
  std::vector<ComplexMatrix> states_;
  std::vector<ComplexMatrix> effects_;
};

// Least-squares refinement over unconstrained factors:
// ρ_i = A_i A_i† / tr(A_i A_i†) and E_j = T^{-1/2} B_j B_j† T^{-1/2} with
// T = Σ_j B_j B_j†.
class FactorModel {
 public:
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  FactorModel(const CommMatrix& c, const SystemSpec& system)
      : k_(static_cast<Eigen::Index>(c.rows())),
        n_(static_cast<Eigen::Index>(c.cols())),
        d_(system.dim()),
        real_(system.real()),
        target_(k_, n_) {
    for (Eigen::Index i = 0; i < k_; ++i)
      for (Eigen::Index j = 0; j < n_; ++j) target_(i, j) = c(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
  }

  Eigen::Index block() const { return (real_ ? 1 : 2) * d_ * d_; }
  int inputs() const { return static_cast<int>((k_ + n_) * block()); }
  // MINPACK needs at least as many residuals as unknowns; the rest are zero.
  int values() const { return std::max(inputs(), static_cast<int>(k_ * n_)); }

  Eigen::VectorXd encode(const QuantumSetup& s) const {
    Eigen::VectorXd x(inputs());
    Eigen::Index p = 0;
    auto put = [&](const ComplexMatrix& h) {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
      ComplexMatrix root = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                           es.eigenvectors().adjoint();
      for (Eigen::Index a = 0; a < d_; ++a)
        for (Eigen::Index b = 0; b < d_; ++b) {
          x(p++) = root(a, b).real();
          if (!real_) x(p++) = root(a, b).imag();
        }
    };
    for (const auto& rho : s.states) put(rho.matrix());
    for (const auto& e : s.povm.effects()) put(e);
    return x;
  }

  std::pair<std::vector<ComplexMatrix>, std::vector<ComplexMatrix>> decode(const Eigen::VectorXd& x) const {
    Eigen::Index p = 0;
    auto factor = [&] {
      ComplexMatrix a(d_, d_);
      for (Eigen::Index r = 0; r < d_; ++r)
        for (Eigen::Index c = 0; c < d_; ++c) {
          double re = x(p++);
          a(r, c) = std::complex<double>(re, real_ ? 0.0 : x(p++));
        }
      return ComplexMatrix(a * a.adjoint());
    };
    std::vector<ComplexMatrix> states, effects;
    for (Eigen::Index i = 0; i < k_; ++i) {
      ComplexMatrix g = factor();
      states.push_back(g / std::max(g.trace().real(), 1e-300));
    }
    ComplexMatrix total = ComplexMatrix::Zero(d_, d_);
    for (Eigen::Index j = 0; j < n_; ++j) {
      effects.push_back(factor());
      total += effects.back();
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(total);
    ComplexMatrix root = es.eigenvectors() *
                         es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse().asDiagonal() *
                         es.eigenvectors().adjoint();
    for (auto& e : effects) {
      e = root * e * root;
      e = 0.5 * (e + e.adjoint()).eval();
    }
    for (auto& rho : states) rho = 0.5 * (rho + rho.adjoint()).eval();
    return {std::move(states), std::move(effects)};
  }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    auto [states, effects] = decode(x);
    f.setZero(values());
    for (Eigen::Index i = 0; i < k_; ++i)
      for (Eigen::Index j = 0; j < n_; ++j)
        f(i * n_ + j) = (states[static_cast<std::size_t>(i)] * effects[static_cast<std::size_t>(j)]).trace().real() - target_(i, j);
    return 0;
  }

 private:
  Eigen::Index k_, n_, d_;
  bool real_;
  RealMatrix target_;
};

std::optional<QuantumSetup> polish(const CommMatrix& c, const SystemSpec& system, const QuantumSetup& start) {
  FactorModel model(c, system);
  Eigen::VectorXd x = model.encode(start);
  Eigen::NumericalDiff<FactorModel, Eigen::Central> diff(model);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<FactorModel, Eigen::Central>> lm(diff);
  lm.parameters.maxfev = 200 * (model.inputs() + 1);
  lm.parameters.ftol = lm.parameters.xtol = 1e-15;
  lm.minimize(x);
  auto [states, effects] = model.decode(x);
  try {
    std::vector<DensityOperator> rho;
    for (auto& s : states) rho.emplace_back(std::move(s));
    return QuantumSetup{std::move(rho), Povm(std::move(effects))};
  } catch (const PhysicalityError&) {
    return std::nullopt;
  }
}

}  // namespace

SeesawRun seesaw(const CommMatrix& c, const SystemSpec& system, std::uint64_t seed, int alternations) {
  Seesaw s(c, system, seed);
  std::vector<double> trace;
  double f = s.objective();
  trace.push_back(f);
  int stalled = 0;
  for (int it = 0; it < alternations; ++it) {
    s.step_states();
    s.step_effects();
    double next = s.objective();
    trace.push_back(next);
    if (s.residual() < 1e-12) break;
    stalled = f - next <= 1e-14 * std::max(f, 1e-12) ? stalled + 1 : 0;
    if (stalled >= 50) break;
    f = next;
  }
  return SeesawRun{s.setup(), s.residual(), std::move(trace)};
}

SearchVerdict decide_without_search(const CommMatrix& c, const SystemSpec& system) {
  if (auto r = construct(c, system)) return std::move(*r);
  if (auto t = impossibility(c, system)) return std::move(*t);
  return Unknown{std::numeric_limits<double>::infinity(), std::nullopt};
}

SearchVerdict find_implementation(const CommMatrix& c, const SystemSpec& system, const ImplBudget& budget) {
  if (budget.constructions)
    if (auto r = construct(c, system)) return std::move(*r);
  if (budget.theorems)
    if (auto t = impossibility(c, system)) return std::move(*t);
  Unknown best{std::numeric_limits<double>::infinity(), std::nullopt};
  for (int r = 0; r < budget.restarts; ++r) {
    const std::uint64_t seed = budget.seed + static_cast<std::uint64_t>(r);
    SeesawRun run = seesaw(c, system, seed, budget.alternations);
    if (run.residual < kPhysicalTolerance)
      if (auto v = verified(run.setup, c, "see-saw search (seed " + std::to_string(seed) + ")")) return std::move(*v);
    if (run.residual < 0.05)
      if (auto refined = polish(c, system, run.setup)) {
        const std::string prov = "see-saw search with least-squares polish (seed " + std::to_string(seed) + ")";
        if (auto v = verified(*refined, c, prov)) return std::move(*v);
        double res = max_deviation(born(refined->states, refined->povm), c.matrix());
        if (res < run.residual) {
          run.residual = res;
          run.setup = std::move(*refined);
        }
      }
    if (run.residual < best.best_residual) {
      best.best_residual = run.residual;
      best.best = std::move(run.setup);
    }
  }
  return best;
}

}  // namespace pik
