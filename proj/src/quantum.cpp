#include "pik/quantum.hpp"

#include "pik/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <numbers>

namespace pik {

namespace {

using cd = std::complex<double>;

ComplexMatrix make2(cd a, cd b, cd c, cd d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ComplexMatrix pauli_combination(double c0, const Eigen::Vector3d& r) {
  return c0 * ComplexMatrix::Identity(2, 2) + r.x() * sigma_x() + r.y() * sigma_y() + r.z() * sigma_z();
}

double hermiticity_defect(const ComplexMatrix& h) { return (h - h.adjoint()).cwiseAbs().maxCoeff(); }

}  // namespace

const ComplexMatrix& sigma_x() {
  static const ComplexMatrix m = make2(0, 1, 1, 0);
  return m;
}
const ComplexMatrix& sigma_y() {
  static const ComplexMatrix m = make2(0, cd(0, -1), cd(0, 1), 0);
  return m;
}
const ComplexMatrix& sigma_z() {
  static const ComplexMatrix m = make2(1, 0, 0, -1);
  return m;
}

bool is_hermitian(const ComplexMatrix& h, double tol) {
  return h.rows() == h.cols() && hermiticity_defect(h) <= tol;
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& h) {
  // Householder tridiagonalisation followed by implicit symmetric QR/QL.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

bool is_psd(const ComplexMatrix& h, double tol) {
  return is_hermitian(h, tol) && hermitian_eigenvalues(h).minCoeff() >= -tol;
}

DensityOperator::DensityOperator(ComplexMatrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() == 0 || rho_.rows() != rho_.cols()) throw PhysicalityError("state must be a nonempty square matrix");
  if (!is_hermitian(rho_)) throw PhysicalityError("state is not Hermitian");
  cd tr = rho_.trace();
  if (std::abs(tr - cd(1.0)) > kPhysicalTolerance) throw PhysicalityError("state trace differs from one");
  if (hermitian_eigenvalues(rho_).minCoeff() < -kPhysicalTolerance) throw PhysicalityError("state is not positive");
}

bool DensityOperator::is_real() const { return rho_.imag().cwiseAbs().maxCoeff() <= kPhysicalTolerance; }

Povm::Povm(std::vector<ComplexMatrix> effects) : effects_(std::move(effects)) {
  if (effects_.empty()) throw PhysicalityError("POVM needs at least one effect");
  const Eigen::Index d = effects_.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::size_t j = 0; j < effects_.size(); ++j) {
    const auto& e = effects_[j];
    if (e.rows() != d || e.cols() != d) throw PhysicalityError("POVM effects differ in dimension");
    if (!is_psd(e)) throw PhysicalityError("effect " + std::to_string(j) + " is not positive semidefinite");
    sum += e;
  }
  if ((sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > kPhysicalTolerance)
    throw PhysicalityError("POVM effects do not sum to the identity");
}

DensityOperator qubit_state(const Eigen::Vector3d& r) {
  if (r.norm() > 1.0 + kPhysicalTolerance) throw PhysicalityError("Bloch vector longer than one");
  return DensityOperator(pauli_combination(0.5, 0.5 * r));
}

Eigen::Vector3d bloch_vector(const DensityOperator& rho) {
  if (rho.dim() != 2) throw ShapeError("Bloch vectors need a qubit state");
  const auto& m = rho.matrix();
  return {(m * sigma_x()).trace().real(), (m * sigma_y()).trace().real(), (m * sigma_z()).trace().real()};
}

RealMatrix born(const std::vector<DensityOperator>& states, const Povm& povm) {
  const auto k = static_cast<Eigen::Index>(states.size());
  const auto n = static_cast<Eigen::Index>(povm.outcomes());
  RealMatrix c(k, n);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto& rho = states[static_cast<std::size_t>(i)];
    if (rho.dim() != povm.dim()) throw ShapeError("state and POVM dimensions differ");
    for (Eigen::Index j = 0; j < n; ++j) {
      cd p = (rho.matrix() * povm[static_cast<std::size_t>(j)]).trace();
      if (std::abs(p.imag()) > kPhysicalTolerance) throw PhysicalityError("Born probability has an imaginary part");
      double v = p.real();
      if (v < -kPhysicalTolerance || v > 1.0 + kPhysicalTolerance)
        throw PhysicalityError("Born probability outside [0,1]");
      c(i, j) = std::clamp(v, 0.0, 1.0);
    }
  }
  return c;
}

double max_deviation(const RealMatrix& b, const RationalMatrix& target) {
  if (static_cast<std::size_t>(b.rows()) != target.rows() || static_cast<std::size_t>(b.cols()) != target.cols())
    throw ShapeError("Born matrix and target differ in shape");
  double worst = 0.0;
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      worst = std::max(worst, std::abs(b(i, j) - target(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d()));
  return worst;
}

namespace {

void check_family(const std::vector<DensityOperator>& states) {
  if (states.size() < 2) throw DomainError("need at least two states");
  for (const auto& s : states)
    if (s.dim() != states.front().dim()) throw ShapeError("states differ in dimension");
}

// Orthonormal real coordinates of a k×k Hermitian matrix: diagonal entries,
// then sqrt(2)·Re and sqrt(2)·Im of the strict upper triangle, so that the
// Euclidean inner product matches tr(A B).
Eigen::VectorXd hvec(const ComplexMatrix& h) {
  const Eigen::Index k = h.rows();
  Eigen::VectorXd v(k * k);
  Eigen::Index p = 0;
  for (Eigen::Index a = 0; a < k; ++a) v(p++) = h(a, a).real();
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = a + 1; b < k; ++b) {
      v(p++) = std::sqrt(2.0) * h(a, b).real();
      v(p++) = std::sqrt(2.0) * h(a, b).imag();
    }
  return v;
}

ComplexMatrix hmat(const Eigen::VectorXd& v, Eigen::Index offset, Eigen::Index k) {
  ComplexMatrix h = ComplexMatrix::Zero(k, k);
  Eigen::Index p = offset;
  for (Eigen::Index a = 0; a < k; ++a) h(a, a) = v(p++);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = a + 1; b < k; ++b) {
      double re = v(p++) / std::sqrt(2.0);
      double im = v(p++) / std::sqrt(2.0);
      h(a, b) = cd(re, im);
      h(b, a) = cd(re, -im);
    }
  return h;
}

ComplexMatrix psd_part(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

// Effects restricted to the kernels of their own state (so tr[ρ_j M(j)] = 0
// holds by construction), found by alternating projections between the
// affine constraints and the PSD cone.
std::optional<Povm> antidistinguishing_search(const std::vector<DensityOperator>& states, bool uniform) {
  const std::size_t n = states.size();
  const Eigen::Index d = states.front().dim();
  std::vector<ComplexMatrix> kernels(n);
  for (std::size_t j = 0; j < n; ++j) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(states[j].matrix());
    std::vector<Eigen::Index> cols;
    for (Eigen::Index a = 0; a < d; ++a)
      if (es.eigenvalues()(a) <= kPhysicalTolerance) cols.push_back(a);
    if (cols.empty()) return std::nullopt;  // full-rank state: M(j) would vanish
    ComplexMatrix v(d, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) v.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(cols[c]);
    kernels[j] = v;
  }
  std::vector<Eigen::Index> offset(n + 1, 0);
  for (std::size_t j = 0; j < n; ++j) offset[j + 1] = offset[j] + kernels[j].cols() * kernels[j].cols();
  const Eigen::Index params = offset[n];

  // Constraint rows.
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  const Eigen::Index d2 = d * d;
  for (Eigen::Index basis = 0; basis < d2; ++basis) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(d2);
    e(basis) = 1.0;
    ComplexMatrix b = hmat(e, 0, d);
    Eigen::VectorXd row(params);
    for (std::size_t j = 0; j < n; ++j) {
      Eigen::Index k = kernels[j].cols();
      row.segment(offset[j], k * k) = hvec(kernels[j].adjoint() * b * kernels[j]);
    }
    rows.push_back(row);
    rhs.push_back(hvec(ComplexMatrix::Identity(d, d))(basis));
  }
  if (uniform) {
    const double target = 1.0 / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        Eigen::VectorXd row = Eigen::VectorXd::Zero(params);
        Eigen::Index k = kernels[j].cols();
        row.segment(offset[j], k * k) = hvec(kernels[j].adjoint() * states[i].matrix() * kernels[j]);
        rows.push_back(row);
        rhs.push_back(target);
      }
  }
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), params);
  Eigen::VectorXd bvec(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    a.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
    bvec(static_cast<Eigen::Index>(r)) = rhs[r];
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  auto project_affine = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    Eigen::VectorXd resid = a * x - bvec;
    return x - cod.solve(resid);
  };
  auto project_psd = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd out(params);
    for (std::size_t j = 0; j < n; ++j) {
      Eigen::Index k = kernels[j].cols();
      out.segment(offset[j], k * k) = hvec(psd_part(hmat(x, offset[j], k)));
    }
    return out;
  };

  Eigen::VectorXd x = project_psd(project_affine(Eigen::VectorXd::Zero(params)));
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXd y = project_affine(x);
    x = project_psd(y);
    if ((a * x - bvec).cwiseAbs().maxCoeff() < 1e-13) break;
  }
  std::vector<ComplexMatrix> effects(n);
  for (std::size_t j = 0; j < n; ++j) {
    Eigen::Index k = kernels[j].cols();
    effects[j] = kernels[j] * hmat(x, offset[j], k) * kernels[j].adjoint();
  }
  std::optional<Povm> povm;
  try {
    povm.emplace(std::move(effects));
  } catch (const PhysicalityError&) {
    return std::nullopt;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double p = (states[i].matrix() * (*povm)[j]).trace().real();
      double want = i == j ? 0.0 : (uniform ? 1.0 / static_cast<double>(n - 1) : p);
      if (std::abs(p - want) > kPhysicalTolerance) return std::nullopt;
    }
  return povm;
}

std::vector<Eigen::Vector3d> bloch_family(const std::vector<DensityOperator>& states) {
  std::vector<Eigen::Vector3d> out;
  for (const auto& s : states) out.push_back(bloch_vector(s));
  return out;
}

}  // namespace

std::optional<Povm> is_antidistinguishable(const std::vector<DensityOperator>& states) {
  check_family(states);
  if (states.front().dim() != 2) return antidistinguishing_search(states, false);
  // Qubit: the states must be pure and sum_j t_j r_j = 0 must have a strictly
  // positive solution with sum t_j = 2; then M(j) = (t_j/2)(1 - r_j·σ).
  auto r = bloch_family(states);
  for (const auto& v : r)
    if (std::abs(v.norm() - 1.0) > kPhysicalTolerance) return std::nullopt;
  const std::size_t n = r.size();
  FloatLpProblem lp;
  lp.variables = n + 1;  // t_1..t_n, s
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<double> row(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) row[j] = r[j](axis);
    lp.equalities.push_back({std::move(row), 0.0});
  }
  std::vector<double> sum(n + 1, 1.0);
  sum[n] = 0.0;
  lp.equalities.push_back({std::move(sum), 2.0});
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> row(n + 1, 0.0);
    row[j] = 1.0;
    row[n] = -1.0;
    lp.inequalities.push_back({std::move(row), 0.0, Sense::GreaterEqual});
  }
  std::vector<double> obj(n + 1, 0.0);
  obj[n] = -1.0;
  lp.objective = obj;
  auto res = solve_lp(lp);
  if (res.status == LpStatus::Infeasible) return std::nullopt;
  std::vector<double> t(n);
  if (res.status == LpStatus::Unbounded) return std::nullopt;
  for (std::size_t j = 0; j < n; ++j) t[j] = (*res.assignment)[j];
  if ((*res.assignment)[n] <= kPhysicalTolerance) return std::nullopt;
  std::vector<ComplexMatrix> effects;
  for (std::size_t j = 0; j < n; ++j) effects.push_back(pauli_combination(t[j] / 2.0, -t[j] / 2.0 * r[j]));
  try {
    return Povm(std::move(effects));
  } catch (const PhysicalityError&) {
    return std::nullopt;
  }
}

std::optional<Povm> is_uniformly_antidistinguishable(const std::vector<DensityOperator>& states) {
  check_family(states);
  const auto d = static_cast<std::size_t>(states.front().dim());
  const std::size_t n = states.size();
  if (n > d * d) return std::nullopt;  // at most d² such states
  if (d != 2) return antidistinguishing_search(states, true);
  // Qubit: pure states with all pairwise Bloch dot products 1/(1-n); the
  // unique witness has equal weights t_j = 2/n.
  auto r = bloch_family(states);
  for (const auto& v : r)
    if (std::abs(v.norm() - 1.0) > kPhysicalTolerance) return std::nullopt;
  const double target = 1.0 / (1.0 - static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k)
      if (std::abs(r[j].dot(r[k]) - target) > kPhysicalTolerance) return std::nullopt;
  std::vector<ComplexMatrix> effects;
  const double w = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) effects.push_back(pauli_combination(w, -w * r[j]));
  try {
    return Povm(std::move(effects));
  } catch (const PhysicalityError&) {
    return std::nullopt;
  }
}

std::vector<DensityOperator> mixture_construction(const std::vector<DensityOperator>& states) {
  check_family(states);
  const std::size_t n = states.size();
  const Eigen::Index d = states.front().dim();
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (const auto& s : states) total += s.matrix();
  std::vector<DensityOperator> out;
  out.reserve(n);
  for (const auto& s : states) out.emplace_back((total - s.matrix()) / static_cast<double>(n - 1));
  return out;
}

Povm qubit_sic_povm() {
  const double k = 1.0 / std::sqrt(3.0);
  const Eigen::Vector3d signs[4] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  std::vector<ComplexMatrix> effects;
  for (const auto& s : signs) effects.push_back(pauli_combination(0.25, 0.25 * k * s));
  return Povm(std::move(effects));
}

Povm trine_povm() {
  const double h = std::sqrt(3.0) / 2.0;
  const Eigen::Vector3d dirs[3] = {{1, 0, 0}, {-0.5, h, 0}, {-0.5, -h, 0}};
  std::vector<ComplexMatrix> effects;
  for (const auto& v : dirs) effects.push_back(pauli_combination(1.0 / 3.0, v / 3.0));
  return Povm(std::move(effects));
}

Povm qutrit_sic_povm() {
  const cd omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  Eigen::VectorXcd fiducial(3);
  fiducial << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  ComplexMatrix shift = ComplexMatrix::Zero(3, 3), clock = ComplexMatrix::Zero(3, 3);
  for (int k = 0; k < 3; ++k) {
    shift((k + 1) % 3, k) = 1.0;
    clock(k, k) = std::pow(omega, k);
  }
  std::vector<ComplexMatrix> effects;
  ComplexMatrix xa = ComplexMatrix::Identity(3, 3);
  for (int a = 0; a < 3; ++a) {
    ComplexMatrix zb = ComplexMatrix::Identity(3, 3);
    for (int b = 0; b < 3; ++b) {
      Eigen::VectorXcd v = xa * zb * fiducial;
      effects.push_back(v * v.adjoint() / 3.0);
      zb = zb * clock;
    }
    xa = xa * shift;
  }
  return Povm(std::move(effects));
}

std::vector<DensityOperator> sym_states_from_povm(const Povm& povm, int n, int d) {
  if (d < 2 || n < d) throw DomainError("symmetric construction needs n >= d >= 2");
  if (povm.outcomes() != static_cast<std::size_t>(n) || povm.dim() != d)
    throw ShapeError("POVM does not have n outcomes in dimension d");
  const double tol = 1e-9;
  const double trace = static_cast<double>(d) / n;
  const double overlap = static_cast<double>(d * n - d * d) / (static_cast<double>(n) * n * (n - 1));
  for (std::size_t j = 0; j < povm.outcomes(); ++j) {
    const auto& mj = povm[j];
    double tr = mj.trace().real();
    if (std::abs(tr - trace) > tol) throw PhysicalityError("effect traces are not d/n");
    if (std::abs((mj * mj).trace().real() - tr * tr) > tol) throw PhysicalityError("effect is not rank one");
    for (std::size_t k = j + 1; k < povm.outcomes(); ++k)
      if (std::abs((mj * povm[k]).trace().real() - overlap) > tol)
        throw PhysicalityError("pairwise effect overlaps are not constant");
  }
  std::vector<DensityOperator> out;
  for (const auto& mj : povm.effects())
    out.emplace_back((ComplexMatrix::Identity(d, d) - (static_cast<double>(n) / d) * mj) / static_cast<double>(d - 1));
  return out;
}

std::vector<BlochVector> qubit_uniform_set(int n) {
  const double w = 2.0 / n;
  switch (n) {
    case 2:
      return {{{0, 0, 1}, w}, {{0, 0, -1}, w}};
    case 3: {
      std::vector<BlochVector> out;
      for (int k = 0; k < 3; ++k) {
        double a = 2.0 * std::numbers::pi * k / 3.0;
        out.push_back({{std::sin(a), 0, std::cos(a)}, w});
      }
      return out;
    }
    case 4: {
      const double k = 1.0 / std::sqrt(3.0);
      return {{{k, k, k}, w}, {{k, -k, -k}, w}, {{-k, k, -k}, w}, {{-k, -k, k}, w}};
    }
    default:
      throw DomainError("uniformly antidistinguishable qubit families exist only for n = 2, 3, 4");
  }
}

std::pair<std::vector<DensityOperator>, Povm> qubit_setup(const std::vector<BlochVector>& family) {
  std::vector<DensityOperator> states;
  std::vector<ComplexMatrix> effects;
  for (const auto& b : family) {
    states.push_back(qubit_state(b.r));
    double t = b.weight.value_or(2.0 / static_cast<double>(family.size()));
    effects.push_back(pauli_combination(t / 2.0, -t / 2.0 * b.r));
  }
  return {std::move(states), Povm(std::move(effects))};
}

QuantumSetup qutrit_c42() {
  const double q = 0.25, h = 0.5, s = 1.0 / (2.0 * std::sqrt(2.0));
  auto m3 = [](std::initializer_list<double> v) {
    ComplexMatrix m(3, 3);
    auto it = v.begin();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = *it++;
    return m;
  };
  // ρ_ij gives ½ on outcomes i and j, so the row of tuple (a, b) in
  // lexicographic order is carried by the state of the complementary pair.
  const ComplexMatrix rho12 = m3({1, 0, 0, 0, 0, 0, 0, 0, 0});
  const ComplexMatrix rho13 = m3({q, -q, -s, -q, q, s, -s, s, h});
  const ComplexMatrix rho14 = m3({q, q, -s, q, q, -s, -s, -s, h});
  const ComplexMatrix rho23 = m3({q, q, s, q, q, s, s, s, h});
  const ComplexMatrix rho24 = m3({q, -q, s, -q, q, -s, s, -s, h});
  const ComplexMatrix rho34 = m3({0, 0, 0, 0, 1, 0, 0, 0, 0});
  std::vector<DensityOperator> states;
  for (const auto* rho : {&rho34, &rho24, &rho23, &rho14, &rho13, &rho12}) states.emplace_back(*rho);
  std::vector<ComplexMatrix> effects{
      m3({h, 0, -s, 0, 0, 0, -s, 0, q}),
      m3({h, 0, s, 0, 0, 0, s, 0, q}),
      m3({0, 0, 0, 0, h, s, 0, s, q}),
      m3({0, 0, 0, 0, h, -s, 0, -s, q}),
  };
  return {std::move(states), Povm(std::move(effects))};
}

QuantumSetup compose_with_certificate(const std::vector<DensityOperator>& states, const Povm& povm,
                                      const Certificate& cert) {
  const auto& l = cert.left;
  const auto& r = cert.right;
  if (l.cols() != states.size()) throw ShapeError("L columns must match the number of states");
  if (r.rows() != povm.outcomes()) throw ShapeError("R rows must match the number of outcomes");
  const Eigen::Index d = povm.dim();
  std::vector<DensityOperator> mixed;
  for (std::size_t p = 0; p < l.rows(); ++p) {
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    for (std::size_t i = 0; i < l.cols(); ++i)
      if (l(p, i) != 0) rho += l(p, i).get_d() * states[i].matrix();
    mixed.emplace_back(std::move(rho));
  }
  std::vector<ComplexMatrix> effects;
  for (std::size_t q = 0; q < r.cols(); ++q) {
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    for (std::size_t j = 0; j < r.rows(); ++j)
      if (r(j, q) != 0) e += r(j, q).get_d() * povm[j];
    effects.push_back(std::move(e));
  }
  return {std::move(mixed), Povm(std::move(effects))};
}

QuantumSetup embed(const QuantumSetup& setup, Eigen::Index dim) {
  const Eigen::Index d = setup.povm.dim();
  if (dim < d) throw ShapeError("cannot embed into a smaller dimension");
  if (dim == d) return setup;
  std::vector<DensityOperator> states;
  for (const auto& s : setup.states) {
    ComplexMatrix big = ComplexMatrix::Zero(dim, dim);
    big.topLeftCorner(d, d) = s.matrix();
    states.emplace_back(std::move(big));
  }
  std::vector<ComplexMatrix> effects;
  for (std::size_t j = 0; j < setup.povm.outcomes(); ++j) {
    ComplexMatrix big = ComplexMatrix::Zero(dim, dim);
    big.topLeftCorner(d, d) = setup.povm[j];
    if (j == 0) big.bottomRightCorner(dim - d, dim - d).setIdentity();
    effects.push_back(std::move(big));
  }
  return {std::move(states), Povm(std::move(effects))};
}

}  // namespace pik
