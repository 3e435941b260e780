#include "twocopy/chsh.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace twocopy {

namespace {

void require_two_qubit(const DensityOperator& rho, const char* where) {
  if (rho.dim_a() != 2 || rho.dim_b() != 2) {
    throw std::invalid_argument(std::string(where) +
                                ": dimension mismatch, requires a two-qubit state");
  }
}

CMatrix spin_along(const Eigen::Vector3d& n) {
  const auto& s = pauli_matrices();
  return n(0) * s[0] + n(1) * s[1] + n(2) * s[2];
}

}  // namespace

const std::array<CMatrix, 3>& pauli_matrices() {
  static const std::array<CMatrix, 3> paulis = [] {
    const Complex i(0.0, 1.0);
    CMatrix x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, -i, i, 0;
    z << 1, 0, 0, -1;
    return std::array<CMatrix, 3>{x, y, z};
  }();
  return paulis;
}

CorrelationMatrix correlation_matrix(const DensityOperator& rho) {
  require_two_qubit(rho, "correlation_matrix");
  const auto& s = pauli_matrices();
  CorrelationMatrix out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out.t(i, j) = (rho.matrix() * kron(s[i], s[j])).trace().real();
  return out;
}

double max_chsh(const DensityOperator& rho) {
  const Eigen::Matrix3d t = correlation_matrix(rho).t;
  // Singular values come back sorted in decreasing order.
  const Eigen::Vector3d sv = Eigen::JacobiSVD<Eigen::Matrix3d>(t).singularValues();
  return 2.0 * std::sqrt(sv(0) * sv(0) + sv(1) * sv(1));
}

double correlation(const DensityOperator& rho, const Eigen::Vector3d& a,
                   const Eigen::Vector3d& b) {
  require_two_qubit(rho, "correlation");
  return (rho.matrix() * kron(spin_along(a), spin_along(b))).trace().real();
}

double chsh_value(const DensityOperator& rho, const Eigen::Vector3d& a,
                  const Eigen::Vector3d& a_prime, const Eigen::Vector3d& b,
                  const Eigen::Vector3d& b_prime) {
  return correlation(rho, a, b) + correlation(rho, a, b_prime) +
         correlation(rho, a_prime, b) - correlation(rho, a_prime, b_prime);
}

}  // namespace twocopy
