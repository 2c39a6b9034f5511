#pragma once

#include "pik/ultraweak.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <vector>

namespace pik {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// Physicality tolerance for Hermiticity, positivity, trace and normalisation.
inline constexpr double kPhysicalTolerance = 1e-9;

/// Thrown when an operator fails a physicality check.
class PhysicalityError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Hermitian, positive semidefinite, unit-trace operator on C^d (or R^d).
class DensityOperator {
 public:
  /// Validates within kPhysicalTolerance; throws PhysicalityError otherwise.
  explicit DensityOperator(ComplexMatrix rho);

  Eigen::Index dim() const { return rho_.rows(); }
  const ComplexMatrix& matrix() const { return rho_; }
  /// True when every entry has zero imaginary part (within tolerance).
  bool is_real() const;

 private:
  ComplexMatrix rho_;
};

/// Effects M(1..n): Hermitian, PSD, summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<ComplexMatrix> effects);

  Eigen::Index dim() const { return effects_.front().rows(); }
  std::size_t outcomes() const { return effects_.size(); }
  const ComplexMatrix& operator[](std::size_t j) const { return effects_[j]; }
  const std::vector<ComplexMatrix>& effects() const { return effects_; }

 private:
  std::vector<ComplexMatrix> effects_;
};

struct BlochVector {
  Eigen::Vector3d r;
  std::optional<double> weight;  ///< t_j > 0 when part of an antidistinguishing family

  bool is_pure() const { return std::abs(r.norm() - 1.0) <= kPhysicalTolerance; }
};

// Pauli matrices.
const ComplexMatrix& sigma_x();
const ComplexMatrix& sigma_y();
const ComplexMatrix& sigma_z();

/// ½(1 + r·σ); throws PhysicalityError if |r| > 1.
DensityOperator qubit_state(const Eigen::Vector3d& r);
/// Bloch vector (tr ρσx, tr ρσy, tr ρσz) of a qubit state.
Eigen::Vector3d bloch_vector(const DensityOperator& rho);

/// Eigenvalues of a Hermitian matrix in ascending order.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& h);
bool is_hermitian(const ComplexMatrix& h, double tol = kPhysicalTolerance);
bool is_psd(const ComplexMatrix& h, double tol = kPhysicalTolerance);

/// C_ij = tr[ρ_i M(j)]. Throws ShapeError on dimension mismatch and
/// PhysicalityError if an entry has an imaginary part or leaves [0,1] beyond
/// tolerance. Entries are clamped to [0,1].
RealMatrix born(const std::vector<DensityOperator>& states, const Povm& povm);

/// max |born - target| over all entries.
double max_deviation(const RealMatrix& born_matrix, const RationalMatrix& target);

/// A POVM with tr[ρ_i M(j)] = 1/(n-1) for all i != j, or nullopt.
std::optional<Povm> is_uniformly_antidistinguishable(const std::vector<DensityOperator>& states);

/// A POVM with tr[ρ_j M(j)] = 0 for all j, or nullopt.
std::optional<Povm> is_antidistinguishable(const std::vector<DensityOperator>& states);

/// ρ'_i = 1/(n-1) Σ_{j≠i} ρ_j. Throws DomainError for n < 2.
std::vector<DensityOperator> mixture_construction(const std::vector<DensityOperator>& states);

/// The tetrahedral qubit SIC: M(j) = ¼(1 + m_j·σ/√3).
Povm qubit_sic_povm();
/// The trine: N(j) = ⅓(1 + n_j·σ) with n_j in the x–y plane.
Povm trine_povm();
/// The Weyl–Heisenberg qutrit SIC generated by (0, 1, -1)/√2.
Povm qutrit_sic_povm();
/// ρ_i = 1/(d-1)(1 - (n/d) M(i)) for a symmetric rank-one POVM. Throws
/// PhysicalityError when the POVM is not symmetric (rank one, constant
/// traces d/n, constant pairwise overlaps).
std::vector<DensityOperator> sym_states_from_povm(const Povm& povm, int n, int d);

/// Unit Bloch vectors with pairwise dot 1/(1-n) and weights 2/n: n = 2 the
/// ±z pair, n = 3 a trine in the x–z plane, n = 4 a regular tetrahedron.
/// Throws DomainError otherwise.
std::vector<BlochVector> qubit_uniform_set(int n);

/// States and POVM M(j) = (t_j/2)(1 - r_j·σ) for a weighted Bloch family.
std::pair<std::vector<DensityOperator>, Povm> qubit_setup(const std::vector<BlochVector>& family);

struct QuantumSetup {
  std::vector<DensityOperator> states;
  Povm povm;
};

/// Six pure qutrit states and a four-outcome POVM with tr[ρ_ij M(k)] = ½ for
/// k in {i,j} and 0 otherwise. The states are returned as ρ_34, ρ_24, ρ_23,
/// ρ_14, ρ_13, ρ_12 so that born() equals gen_copt(4, 2) row by row.
QuantumSetup qutrit_c42();

/// Mixed states s'_p = Σ_i L_pi ρ_i and post-processed effects
/// M'(q) = Σ_j R_jq M(j). Throws ShapeError on mismatch.
QuantumSetup compose_with_certificate(const std::vector<DensityOperator>& states, const Povm& povm,
                                      const Certificate& cert);

/// Pads a setup into dimension `dim` >= current: states get zero blocks and
/// the complement projector is added to the first effect.
QuantumSetup embed(const QuantumSetup& setup, Eigen::Index dim);

}  // namespace pik
