// Two-copy collision measurements and the Renyi-2 entropic witness.
//
// Two copies rho⊗rho of a bipartite state are measured by projecting the two
// A halves onto the symmetric (coalescence) or antisymmetric
// (anticoalescence) subspace, and likewise the two B halves. The four joint
// outcome probabilities determine Tr rho², Tr rho_A² and Tr rho_B² linearly.

#pragma once

#include <cstddef>
#include <optional>

#include "twocopy/qstate.hpp"

namespace twocopy {

/// Symmetric/antisymmetric projectors on C^dim ⊗ C^dim.
struct ProjectorPair {
  std::size_t dim = 0;
  CMatrix p_sym;
  CMatrix p_anti;
};

/// Operator exchanging the two factors of C^dim ⊗ C^dim.
CMatrix swap_operator(std::size_t dim);

/// P_S = (I + SWAP)/2, P_A = (I − SWAP)/2. Throws for dim < 2.
ProjectorPair projectors(std::size_t dim);

/// Joint outcome probabilities; the first subscript is location A, the
/// second location B (c = coalescence, a = anticoalescence).
struct CollisionProbabilities {
  double p_cc = 0.0;
  double p_ca = 0.0;
  double p_ac = 0.0;
  double p_aa = 0.0;

  double sum() const { return p_cc + p_ca + p_ac + p_aa; }
};

/// Throws std::invalid_argument unless every entry is in [0,1] and the sum is
/// one, both within kStateTolerance.
void validate(const CollisionProbabilities& p);

/// Tr[(P_X ⊗ P_Y)(rho⊗rho)] with P_X acting on the two A copies and P_Y on
/// the two B copies. Works for any dim_a, dim_b ≥ 2.
CollisionProbabilities collision_probabilities(const DensityOperator& rho);

struct Purities {
  double tr_rho2 = 0.0;
  double tr_rho_a2 = 0.0;
  double tr_rho_b2 = 0.0;
  /// True when any value lies outside [0, 1] by more than kStateTolerance.
  /// Values are reported unclamped; out-of-range means inconsistent input.
  bool out_of_range = false;
};

/// Tr rho²   = p_cc − p_ca − p_ac + p_aa
/// Tr rho_A² = p_cc + p_ca − p_ac − p_aa
/// Tr rho_B² = p_cc − p_ca + p_ac − p_aa
Purities purities_from_probabilities(const CollisionProbabilities& p);

/// Inverse map, using p_cc + p_ca + p_ac + p_aa = 1.
CollisionProbabilities probabilities_from_purities(double tr_rho2,
                                                   double tr_rho_a2,
                                                   double tr_rho_b2);

/// Standard errors of independently estimated probabilities.
struct ProbabilityErrors {
  double p_ca = 0.0;
  double p_ac = 0.0;
  double p_aa = 0.0;
};

struct WitnessVerdict {
  bool violated_a = false;  ///< p_ca < p_aa, i.e. Tr rho_A² < Tr rho².
  bool violated_b = false;  ///< p_ac < p_aa, i.e. Tr rho_B² < Tr rho².
  double margin_a = 0.0;    ///< p_aa − p_ca
  double margin_b = 0.0;    ///< p_aa − p_ac
  /// margin / sqrt(σ_aa² + σ_x²); absent when no errors were supplied or the
  /// combined error is zero.
  std::optional<double> significance_a;
  std::optional<double> significance_b;

  bool entangled() const { return violated_a || violated_b; }
  /// Largest significance among violated sides, if any is defined.
  std::optional<double> significance() const;
};

/// Separable states satisfy p_ca ≥ p_aa and p_ac ≥ p_aa; any violation
/// certifies entanglement. Throws std::invalid_argument on negative errors.
WitnessVerdict entropic_witness(double p_ca, double p_ac, double p_aa,
                                std::optional<ProbabilityErrors> errors = {});

/// Same, for a validated probability quadruple.
WitnessVerdict entropic_witness(const CollisionProbabilities& p,
                                std::optional<ProbabilityErrors> errors = {});

}  // namespace twocopy
