// CHSH baseline for two-qubit states: the best violation over all local
// projective settings, via the correlation tensor.

#pragma once

#include <array>

#include <Eigen/Dense>

#include "twocopy/qstate.hpp"

namespace twocopy {

/// t_ij = Tr(rho σ_i⊗σ_j), i, j over (X, Y, Z).
struct CorrelationMatrix {
  Eigen::Matrix3d t;
};

/// Pauli matrices X, Y, Z.
const std::array<CMatrix, 3>& pauli_matrices();

/// Throws std::invalid_argument unless rho is 2x2.
CorrelationMatrix correlation_matrix(const DensityOperator& rho);

/// 2·sqrt(s1² + s2²) over the two largest singular values of t. Values above
/// 2 mean some choice of settings violates CHSH; the maximum is 2√2.
double max_chsh(const DensityOperator& rho);

/// E(a, b) = Tr(rho (a·σ)⊗(b·σ)) for unit vectors a, b.
double correlation(const DensityOperator& rho, const Eigen::Vector3d& a,
                   const Eigen::Vector3d& b);

/// E(a,b) + E(a,b') + E(a',b) − E(a',b') for explicit settings.
double chsh_value(const DensityOperator& rho, const Eigen::Vector3d& a,
                  const Eigen::Vector3d& a_prime, const Eigen::Vector3d& b,
                  const Eigen::Vector3d& b_prime);

}  // namespace twocopy
