// Bosonic Fock-space model of the two-source, two-beam-splitter setup.
//
// Eight optical modes: spatial modes 1..4, each with H and V polarization.
// Source 1 emits pairs into spatial modes 1 and 3, source 2 into 2 and 4.
// Location A owns spatial modes 1 and 2 (joined by one 50:50 beam splitter),
// location B owns 3 and 4.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "twocopy/qstate.hpp"
#include "twocopy/two_copy.hpp"

namespace twocopy::fock {

enum class Polarization : std::uint8_t { H = 0, V = 1 };

inline constexpr std::size_t kModeCount = 8;
inline constexpr unsigned kDefaultPhotonCap = 4;

/// One of the eight optical modes. Spatial index is 1-based.
class ModeIndex {
 public:
  /// Throws std::out_of_range unless 1 ≤ spatial ≤ 4.
  ModeIndex(int spatial, Polarization pol);

  int spatial() const noexcept { return spatial_; }
  Polarization polarization() const noexcept { return pol_; }
  std::size_t flat() const noexcept {
    return static_cast<std::size_t>(spatial_ - 1) * 2 + static_cast<std::size_t>(pol_);
  }

 private:
  int spatial_;
  Polarization pol_;
};

/// Photon count per mode, indexed by ModeIndex::flat().
using Occupation = std::array<std::uint8_t, kModeCount>;

unsigned photon_number(const Occupation& occ);

/// Photons in a spatial mode, summed over polarization.
unsigned spatial_count(const Occupation& occ, int spatial);

class PhotonCapExceeded : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Sparse superposition over occupation vectors. Every term respects the
/// photon-number cap. `normalized()` is a flag set by constructors that
/// promise unit norm; intermediate operator applications clear it.
class FockState {
 public:
  using Amplitudes = std::map<Occupation, Complex>;

  explicit FockState(unsigned photon_cap = kDefaultPhotonCap);
  /// Throws PhotonCapExceeded if any occupation exceeds the cap.
  FockState(Amplitudes amplitudes, unsigned photon_cap, bool normalized = false);

  static FockState vacuum(unsigned photon_cap = kDefaultPhotonCap);

  const Amplitudes& amplitudes() const noexcept { return amplitudes_; }
  unsigned photon_cap() const noexcept { return photon_cap_; }
  bool normalized() const noexcept { return normalized_; }
  bool empty() const noexcept { return amplitudes_.empty(); }

  Complex amplitude(const Occupation& occ) const;
  double norm_squared() const;

  /// Copy scaled to unit norm, with the flag set. Throws on a zero state.
  FockState normalize() const;

 private:
  Amplitudes amplitudes_;
  unsigned photon_cap_;
  bool normalized_ = false;
};

FockState operator+(const FockState& a, const FockState& b);
FockState operator*(Complex c, const FockState& s);

/// <a|b>.
Complex inner_product(const FockState& a, const FockState& b);

/// |<a|b>| / (‖a‖‖b‖): one iff equal up to a global phase.
double overlap_magnitude(const FockState& a, const FockState& b);

/// Terms with exactly n photons (unnormalized).
FockState photon_sector(const FockState& s, unsigned n);

/// a†_mode |psi>. Amplitudes pick up √(n+1). Throws PhotonCapExceeded.
FockState apply_creation(const FockState& s, ModeIndex mode);

/// a_mode |psi>. Amplitudes pick up √n; terms with n = 0 vanish.
FockState apply_annihilation(const FockState& s, ModeIndex mode);

/// Singlet pair creation (a†_{xH} a†_{yV} − a†_{xV} a†_{yH}) |psi>.
FockState apply_pair_creation(const FockState& s, int spatial_x, int spatial_y);

/// Its adjoint (a_{xH} a_{yV} − a_{xV} a_{yH}) |psi>.
FockState apply_pair_annihilation(const FockState& s, int spatial_x, int spatial_y);

/// The three pieces of the four-photon emission amplitude at relative pump
/// phase phi, with their coefficients:
///   pair_pair = e^{iφ}/√10 · K†L†|vac>          (one pair from each source)
///   double_1  = 1/√10 · (K†)²/2 |vac>           (two pairs from source 1)
///   double_2  = e^{2iφ}/√10 · (L†)²/2 |vac>     (two pairs from source 2)
/// with K† creating a singlet pair in modes 1,3 and L† in modes 2,4.
struct SpdcComponents {
  FockState pair_pair;
  FockState double_1;
  FockState double_2;
};

SpdcComponents spdc_components(double phi);

/// Normalized sum of the three components.
FockState spdc_four_photon_state(double phi);

/// Normalized K†L†|vac>: two independent singlet pairs, the ideal input.
FockState singlet_pair_state();

/// Share of the four-photon emission made of one pair per source (2/5).
double singlet_pair_weight();

/// H|psi> for H = η(K + K†) + η(L e^{−iφ} + L† e^{iφ}).
FockState apply_hamiltonian(const FockState& s, double phi, double coupling);

/// Σ_{k=0}^{order} (−i)^k/k! H^k |vac>, unnormalized. Every intermediate
/// must fit the photon cap, which means order ≤ cap/2.
FockState hamiltonian_series(double phi, unsigned order, double coupling = 1.0,
                             unsigned photon_cap = kDefaultPhotonCap);

/// Normalized four-photon sector of hamiltonian_series. Requires order ≥ 2.
/// The coupling only sets the sector's overall scale, so it is fixed here.
FockState hamiltonian_four_photon_term(double phi, unsigned order = 2,
                                       unsigned photon_cap = kDefaultPhotonCap);

enum class BeamSplitterConvention {
  /// a† → (a† + b†)/√2, b† → (a† − b†)/√2.
  Real,
  /// a† → (a† + i b†)/√2, b† → (i a† + b†)/√2.
  SymmetricPhase,
};

/// 50:50 beam splitter between two spatial modes, acting identically on both
/// polarizations. Throws std::invalid_argument for equal indices.
FockState beam_splitter(const FockState& s, int spatial_a, int spatial_b,
                        BeamSplitterConvention convention = BeamSplitterConvention::Real);

enum class Outcome { CC, CA, AC, AA, Other };

const char* to_string(Outcome o);

/// Outcome class of a detection pattern behind both beam splitters. A side
/// with two photons in one port coalesced, with one per port anticoalesced;
/// any side without exactly two photons makes the pattern Other.
Outcome classify_outcome(const Occupation& pattern);

struct CoincidenceProbabilities {
  double p_cc = 0.0;
  double p_ca = 0.0;
  double p_ac = 0.0;
  double p_aa = 0.0;
  double p_other = 0.0;

  double sum() const { return p_cc + p_ca + p_ac + p_aa + p_other; }
  double operator[](Outcome o) const;
  /// Four-fold part; valid as CollisionProbabilities only when p_other = 0.
  CollisionProbabilities four_fold() const { return {p_cc, p_ca, p_ac, p_aa}; }
};

/// Applies the A and B beam splitters and bins |amplitude|² by outcome.
/// Throws std::invalid_argument unless the input has unit norm.
CoincidenceProbabilities coincidence_probabilities(
    const FockState& s, BeamSplitterConvention convention = BeamSplitterConvention::Real);

struct CurvePoint {
  double phi = 0.0;
  CoincidenceProbabilities p;
};

/// coincidence_probabilities(spdc_four_photon_state(phi)) over a phase grid.
/// Throws std::invalid_argument on an empty grid.
std::vector<CurvePoint> coincidence_curves(std::span<const double> phi_grid);

enum class Side { A, B };

enum class Herald {
  /// Anticoalescence at the heralding side only; the other side's photons
  /// are read in its input modes (before its beam splitter).
  SingleSide,
  /// Anticoalescence at both sides; the other side is read at its outputs.
  BothSides,
};

/// Two-photon polarization state left at the non-heralding side.
struct ConditionalState {
  /// Normalized within the one-photon-per-mode sector. Basis: polarization
  /// of the photon in the lower spatial mode ⊗ that in the higher one.
  DensityOperator polarization;
  double event_probability = 0.0;  ///< probability of the heralding event
  double sector_weight = 0.0;      ///< conditional weight of one-photon-per-mode
  double singlet_fidelity = 0.0;   ///< <ψ⁻|ρ|ψ⁻> against the full conditional state
};

/// Post-selects anticoalescence at `side`, traces out that side and returns
/// what remains at the other. Throws std::domain_error when the heralding
/// event or the one-photon-per-mode sector has zero probability.
ConditionalState conditional_state_after_anticoalescence(const FockState& s, Side side,
                                                         Herald herald = Herald::SingleSide);

}  // namespace twocopy::fock
