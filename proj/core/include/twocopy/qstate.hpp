// Finite-dimensional density operators on a bipartite space A⊗B.
//
// Basis convention: product basis ordered with the A index most significant,
// so for two qubits the order is |HH>, |HV>, |VH>, |VV> with H = 0, V = 1.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace twocopy {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Tolerance used when validating Hermiticity, trace and positivity.
inline constexpr double kStateTolerance = 1e-10;

/// Raised when a matrix fails one of the density-operator invariants.
/// `invariant()` names the failed check, `violation()` is by how much.
class InvariantViolation : public std::invalid_argument {
 public:
  InvariantViolation(std::string invariant, double violation);

  const std::string& invariant() const noexcept { return invariant_; }
  double violation() const noexcept { return violation_; }

 private:
  std::string invariant_;
  double violation_;
};

enum class Subsystem { A, B };

/// Trace-one Hermitian positive-semidefinite operator on C^{dim_a}⊗C^{dim_b}.
/// Monopartite states use dim_b = 1. Immutable once constructed.
class DensityOperator {
 public:
  const CMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  std::size_t dim() const noexcept { return dim_a_ * dim_b_; }
  bool is_bipartite() const noexcept { return dim_a_ > 1 && dim_b_ > 1; }

  /// <psi|rho|psi> for a normalized vector psi of matching dimension.
  double expectation(const CVector& psi) const;

 private:
  DensityOperator(CMatrix m, std::size_t dim_a, std::size_t dim_b)
      : matrix_(std::move(m)), dim_a_(dim_a), dim_b_(dim_b) {}

  CMatrix matrix_;
  std::size_t dim_a_;
  std::size_t dim_b_;

  friend DensityOperator make_density(const CMatrix&, std::size_t, std::size_t);
};

/// Validates `matrix` and wraps it. Throws std::invalid_argument on a size
/// mismatch and InvariantViolation ("not Hermitian", "trace not one",
/// "not positive semidefinite") beyond kStateTolerance. The stored matrix is
/// the Hermitian part of the input, so later algebra sees exact symmetry.
DensityOperator make_density(const CMatrix& matrix, std::size_t dim_a,
                             std::size_t dim_b = 1);

/// |psi><psi| / <psi|psi>.
DensityOperator pure_state(const CVector& psi, std::size_t dim_a,
                           std::size_t dim_b = 1);

/// I / (dim_a·dim_b).
DensityOperator maximally_mixed(std::size_t dim_a, std::size_t dim_b = 1);

/// (|HV> − |VH>)/√2 as a normalized vector.
CVector singlet_vector();

/// Projector onto the two-qubit singlet.
DensityOperator singlet();

/// p·singlet + (1 − p)·I/4. Throws std::domain_error unless 0 ≤ p ≤ 1.
DensityOperator werner(double p);

/// Kronecker product rho⊗sigma. The result's A factor is all of rho and its
/// B factor is all of sigma.
DensityOperator tensor(const DensityOperator& rho, const DensityOperator& sigma);

/// Reduced operator on the kept subsystem. Throws std::invalid_argument for a
/// monopartite input.
DensityOperator partial_trace(const DensityOperator& rho, Subsystem keep);

/// Tr(rho²).
double purity(const DensityOperator& rho);

/// Partial transpose over B (index swap inside each B block).
CMatrix partial_transpose_b(const DensityOperator& rho);

/// Smallest eigenvalue of the partial transpose over B. For two qubits it is
/// negative exactly when the state is entangled. Requires dim_a = dim_b = 2.
double ppt_min_eigenvalue(const DensityOperator& rho);

/// U rho U† for a unitary U of matching dimension (dimension split kept).
DensityOperator conjugate(const DensityOperator& rho, const CMatrix& unitary);

/// Kronecker product of two matrices.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Largest entry-wise |a − b|.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace twocopy
