// Random ensembles over state space, for property checks and benchmarks.

#pragma once

#include <cstddef>
#include <random>

#include "twocopy/qstate.hpp"

namespace twocopy {

using Rng = std::mt19937_64;

/// Haar-random unit vector in C^dim.
CVector haar_pure_vector(std::size_t dim, Rng& rng);

/// Haar-random dim×dim unitary (QR of a Ginibre matrix with phase fix).
CMatrix haar_unitary(std::size_t dim, Rng& rng);

/// Mixture of `components` Haar-random pure states on C^{dim_a}⊗C^{dim_b}
/// with Dirichlet(1,…,1) weights. components = 1 gives a pure state.
DensityOperator random_mixed_state(std::size_t dim_a, std::size_t dim_b,
                                   std::size_t components, Rng& rng);

/// random_mixed_state with the number of components drawn from [1, dim].
DensityOperator random_density(std::size_t dim_a, std::size_t dim_b, Rng& rng);

/// Convex mixture of up to `max_terms` product states rho_A⊗rho_B.
DensityOperator random_separable(std::size_t dim_a, std::size_t dim_b,
                                 std::size_t max_terms, Rng& rng);

}  // namespace twocopy
