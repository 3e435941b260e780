#include "twocopy/qstate.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace twocopy {

namespace {

std::string describe(const std::string& invariant, double violation) {
  std::ostringstream os;
  os << invariant << " (violation " << violation << ")";
  return os.str();
}

}  // namespace

InvariantViolation::InvariantViolation(std::string invariant, double violation)
    : std::invalid_argument(describe(invariant, violation)),
      invariant_(std::move(invariant)),
      violation_(violation) {}

double DensityOperator::expectation(const CVector& psi) const {
  if (static_cast<std::size_t>(psi.size()) != dim()) {
    throw std::invalid_argument("expectation: vector dimension mismatch");
  }
  return (psi.adjoint() * matrix_ * psi)(0, 0).real();
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

DensityOperator make_density(const CMatrix& matrix, std::size_t dim_a,
                             std::size_t dim_b) {
  if (dim_a == 0 || dim_b == 0) {
    throw std::invalid_argument("make_density: dimensions must be positive");
  }
  const auto n = static_cast<Eigen::Index>(dim_a * dim_b);
  if (matrix.rows() != n || matrix.cols() != n) {
    std::ostringstream os;
    os << "make_density: dimension mismatch, expected " << n << "x" << n
       << " for " << dim_a << "x" << dim_b << ", got " << matrix.rows() << "x"
       << matrix.cols();
    throw std::invalid_argument(os.str());
  }

  const double asym = max_abs_diff(matrix, matrix.adjoint());
  if (asym > kStateTolerance) throw InvariantViolation("not Hermitian", asym);

  CMatrix herm = (matrix + matrix.adjoint()) * 0.5;

  const double trace_err = std::abs(herm.trace() - Complex(1.0, 0.0));
  if (trace_err > kStateTolerance) {
    throw InvariantViolation("trace not one", trace_err);
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> eig(herm, Eigen::EigenvaluesOnly);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (min_eig < -kStateTolerance) {
    throw InvariantViolation("not positive semidefinite", -min_eig);
  }
  return DensityOperator(std::move(herm), dim_a, dim_b);
}

DensityOperator pure_state(const CVector& psi, std::size_t dim_a,
                           std::size_t dim_b) {
  const double n = psi.norm();
  if (n == 0.0) throw std::invalid_argument("pure_state: zero vector");
  const CVector unit = psi / n;
  return make_density(unit * unit.adjoint(), dim_a, dim_b);
}

DensityOperator maximally_mixed(std::size_t dim_a, std::size_t dim_b) {
  const auto n = static_cast<Eigen::Index>(dim_a * dim_b);
  return make_density(CMatrix::Identity(n, n) / static_cast<double>(n), dim_a,
                      dim_b);
}

CVector singlet_vector() {
  CVector psi = CVector::Zero(4);
  psi(1) = 1.0 / std::sqrt(2.0);   // |HV>
  psi(2) = -1.0 / std::sqrt(2.0);  // |VH>
  return psi;
}

DensityOperator singlet() { return pure_state(singlet_vector(), 2, 2); }

DensityOperator werner(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("werner: mixing weight must lie in [0, 1]");
  }
  const CVector psi = singlet_vector();
  const CMatrix m =
      p * (psi * psi.adjoint()) + (1.0 - p) * CMatrix::Identity(4, 4) / 4.0;
  return make_density(m, 2, 2);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityOperator tensor(const DensityOperator& rho, const DensityOperator& sigma) {
  return make_density(kron(rho.matrix(), sigma.matrix()), rho.dim(), sigma.dim());
}

DensityOperator partial_trace(const DensityOperator& rho, Subsystem keep) {
  if (!rho.is_bipartite()) {
    throw std::invalid_argument("partial_trace: state is not bipartite");
  }
  const auto da = static_cast<Eigen::Index>(rho.dim_a());
  const auto db = static_cast<Eigen::Index>(rho.dim_b());
  const CMatrix& m = rho.matrix();

  if (keep == Subsystem::A) {
    CMatrix out = CMatrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index j = 0; j < da; ++j)
        for (Eigen::Index k = 0; k < db; ++k)
          out(i, j) += m(i * db + k, j * db + k);
    return make_density(out, rho.dim_a(), 1);
  }
  CMatrix out = CMatrix::Zero(db, db);
  for (Eigen::Index i = 0; i < db; ++i)
    for (Eigen::Index j = 0; j < db; ++j)
      for (Eigen::Index k = 0; k < da; ++k)
        out(i, j) += m(k * db + i, k * db + j);
  return make_density(out, rho.dim_b(), 1);
}

double purity(const DensityOperator& rho) {
  // Tr(M·M) = Σ_ij M_ij M_ji = Σ_ij |M_ij|² for Hermitian M.
  return (rho.matrix() * rho.matrix()).trace().real();
}

CMatrix partial_transpose_b(const DensityOperator& rho) {
  const auto da = static_cast<Eigen::Index>(rho.dim_a());
  const auto db = static_cast<Eigen::Index>(rho.dim_b());
  const CMatrix& m = rho.matrix();
  CMatrix out(m.rows(), m.cols());
  for (Eigen::Index a1 = 0; a1 < da; ++a1)
    for (Eigen::Index b1 = 0; b1 < db; ++b1)
      for (Eigen::Index a2 = 0; a2 < da; ++a2)
        for (Eigen::Index b2 = 0; b2 < db; ++b2)
          out(a1 * db + b1, a2 * db + b2) = m(a1 * db + b2, a2 * db + b1);
  return out;
}

double ppt_min_eigenvalue(const DensityOperator& rho) {
  if (rho.dim_a() != 2 || rho.dim_b() != 2) {
    throw std::invalid_argument(
        "ppt_min_eigenvalue: requires a two-qubit (2x2) bipartite state");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(partial_transpose_b(rho),
                                             Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

DensityOperator conjugate(const DensityOperator& rho, const CMatrix& unitary) {
  if (unitary.rows() != rho.matrix().rows() ||
      unitary.cols() != rho.matrix().cols()) {
    throw std::invalid_argument("conjugate: unitary dimension mismatch");
  }
  return make_density(unitary * rho.matrix() * unitary.adjoint(), rho.dim_a(),
                      rho.dim_b());
}

}  // namespace twocopy
