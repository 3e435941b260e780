#include "twocopy/fock.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

namespace twocopy::fock {
namespace {

using P = Polarization;
constexpr double kPi = std::numbers::pi;

Occupation occupation(std::initializer_list<std::pair<ModeIndex, int>> entries) {
  Occupation occ{};
  for (const auto& [mode, n] : entries) occ[mode.flat()] = static_cast<std::uint8_t>(n);
  return occ;
}

FockState create(std::initializer_list<ModeIndex> modes) {
  FockState s = FockState::vacuum();
  for (const auto& m : modes) s = apply_creation(s, m);
  return s;
}

// Random normalized superposition of up to `terms` occupation vectors with
// `photons` photons scattered over the eight modes.
FockState random_state(std::mt19937_64& rng, unsigned photons, int terms) {
  std::uniform_int_distribution<int> mode(0, 7);
  std::normal_distribution<double> gauss;
  FockState::Amplitudes amps;
  for (int t = 0; t < terms; ++t) {
    Occupation occ{};
    for (unsigned k = 0; k < photons; ++k) ++occ[mode(rng)];
    amps[occ] += Complex(gauss(rng), gauss(rng));
  }
  return FockState(std::move(amps), kDefaultPhotonCap).normalize();
}

double eq8_cross(double phi) { return 3.0 / 20.0 * (1.0 - std::cos(2.0 * phi)); }
double eq8_aa(double phi) { return 0.25 + 3.0 / 20.0 * std::cos(2.0 * phi); }

TEST(ModeIndex, ValidatesSpatialRange) {
  EXPECT_THROW(ModeIndex(0, P::H), std::out_of_range);
  EXPECT_THROW(ModeIndex(5, P::V), std::out_of_range);
  EXPECT_EQ(ModeIndex(1, P::H).flat(), 0u);
  EXPECT_EQ(ModeIndex(4, P::V).flat(), 7u);
}

TEST(ApplyCreation, SinglePhotonFromVacuum) {
  const auto s = apply_creation(FockState::vacuum(), {1, P::H});
  ASSERT_EQ(s.amplitudes().size(), 1u);
  EXPECT_NEAR(std::abs(s.amplitude(occupation({{{1, P::H}, 1}})) - 1.0), 0.0, 1e-15);
  EXPECT_FALSE(s.normalized());
}

TEST(ApplyCreation, BosonicEnhancement) {
  const auto s = create({{1, P::H}, {1, P::H}});
  EXPECT_NEAR(s.amplitude(occupation({{{1, P::H}, 2}})).real(), std::sqrt(2.0), 1e-15);
}

TEST(ApplyCreation, SingletPairHasSquaredNormTwo) {
  EXPECT_NEAR(apply_pair_creation(FockState::vacuum(), 1, 3).norm_squared(), 2.0, 1e-15);
}

TEST(ApplyCreation, CapExceeded) {
  const auto four = create({{1, P::H}, {2, P::H}, {3, P::H}, {4, P::H}});
  EXPECT_THROW(apply_creation(four, {1, P::V}), PhotonCapExceeded);
}

TEST(ApplyAnnihilation, InvertsCreationUpToNorm) {
  const auto two = create({{2, P::V}, {2, P::V}});
  const auto one = apply_annihilation(two, {2, P::V});
  // a|2> = √2 |1>, after the √2 from creating |2>: amplitude 2.
  EXPECT_NEAR(one.amplitude(occupation({{{2, P::V}, 1}})).real(), 2.0, 1e-15);
  EXPECT_TRUE(apply_annihilation(two, {2, P::H}).empty());
}

TEST(Spdc, ComponentWeights) {
  // K†L†|vac> has squared norm 2·2 = 4, times 1/10. Each (K†)²/2 |vac> is
  // three orthogonal terms of unit squared norm, times 1/10.
  const auto parts = spdc_components(0.3);
  EXPECT_NEAR(parts.pair_pair.norm_squared(), 0.4, 1e-14);
  EXPECT_NEAR(parts.double_1.norm_squared(), 0.3, 1e-14);
  EXPECT_NEAR(parts.double_2.norm_squared(), 0.3, 1e-14);
  EXPECT_NEAR(singlet_pair_weight(), 0.4, 1e-14);
  const auto s = spdc_four_photon_state(0.3);
  EXPECT_TRUE(s.normalized());
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-14);
}

TEST(Spdc, DoublePairTermMatchesWrittenMonomials) {
  // (1/2)a†²_{1H}a†²_{3V} − a†_{1H}a†_{1V}a†_{3V}a†_{3H} + (1/2)a†²_{1V}a†²_{3H}.
  const double c = 1.0 / std::sqrt(10.0);
  const FockState direct =
      Complex(0.5 * c, 0) * create({{1, P::H}, {1, P::H}, {3, P::V}, {3, P::V}}) +
      Complex(-c, 0) * create({{1, P::H}, {1, P::V}, {3, P::V}, {3, P::H}}) +
      Complex(0.5 * c, 0) * create({{1, P::V}, {1, P::V}, {3, P::H}, {3, P::H}});
  const auto parts = spdc_components(1.1);
  EXPECT_NEAR(std::abs(inner_product(direct, parts.double_1) - Complex(0.3, 0.0)), 0.0, 1e-14);
}

TEST(Spdc, ProbabilitiesHavePeriodPi) {
  for (double phi : {0.0, 0.4, 1.3, 2.2}) {
    const auto a = coincidence_probabilities(spdc_four_photon_state(phi));
    const auto b = coincidence_probabilities(spdc_four_photon_state(phi + kPi));
    EXPECT_NEAR(a.p_aa, b.p_aa, 1e-12);
    EXPECT_NEAR(a.p_ca, b.p_ca, 1e-12);
    EXPECT_NEAR(a.p_cc, b.p_cc, 1e-12);
  }
}

TEST(Hamiltonian, OrderZeroIsVacuum) {
  const auto s = hamiltonian_series(0.7, 0);
  EXPECT_NEAR(std::abs(s.amplitude(Occupation{})), 1.0, 1e-15);
  EXPECT_EQ(s.amplitudes().size(), 1u);
}

TEST(Hamiltonian, FirstOrderTwoPhotonSector) {
  const double phi = 0.9;
  const auto sector = photon_sector(hamiltonian_series(phi, 1), 2);
  const FockState expected = apply_pair_creation(FockState::vacuum(), 1, 3) +
                             std::polar(1.0, phi) * apply_pair_creation(FockState::vacuum(), 2, 4);
  EXPECT_NEAR(overlap_magnitude(sector, expected), 1.0, 1e-14);
}

TEST(Hamiltonian, FourPhotonSectorMatchesEmissionState) {
  for (double phi : {0.0, kPi / 4, kPi / 2, 2.0}) {
    EXPECT_NEAR(overlap_magnitude(hamiltonian_four_photon_term(phi),
                                  spdc_four_photon_state(phi)),
                1.0, 1e-10)
        << phi;
  }
}

TEST(Hamiltonian, HigherOrderNeedsLargerCap) {
  EXPECT_THROW(hamiltonian_four_photon_term(0.3, 3), PhotonCapExceeded);
  EXPECT_THROW(hamiltonian_four_photon_term(0.3, 1), std::invalid_argument);
  // Fourth order mixes H² and H⁴ contributions into the four-photon sector;
  // the normalized sector is unchanged.
  EXPECT_NEAR(overlap_magnitude(hamiltonian_four_photon_term(0.3, 4, 8),
                                spdc_four_photon_state(0.3)),
              1.0, 1e-10);
}

double one_per_port(const FockState& s, int a, int b) {
  double p = 0.0;
  for (const auto& [occ, amp] : beam_splitter(s, a, b).amplitudes()) {
    if (spatial_count(occ, a) == 1 && spatial_count(occ, b) == 1) p += std::norm(amp);
  }
  return p;
}

TEST(BeamSplitter, HongOuMandelDip) {
  EXPECT_NEAR(one_per_port(create({{1, P::H}, {2, P::H}}), 1, 2), 0.0, 1e-15);
}

TEST(BeamSplitter, OrthogonalPolarizationsAreDistinguishable) {
  EXPECT_NEAR(one_per_port(create({{1, P::H}, {2, P::V}}), 1, 2), 0.5, 1e-15);
}

TEST(BeamSplitter, SingletAnticoalesces) {
  const auto s = apply_pair_creation(FockState::vacuum(), 1, 2).normalize();
  EXPECT_NEAR(one_per_port(s, 1, 2), 1.0, 1e-15);
}

TEST(BeamSplitter, RejectsSameMode) {
  EXPECT_THROW(beam_splitter(FockState::vacuum(), 2, 2), std::invalid_argument);
}

TEST(BeamSplitter, PreservesNorm) {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 500; ++k) {
    const auto s = random_state(rng, 1 + k % 4, 1 + k % 6);
    const int a = 1 + k % 4, b = 1 + (k + 1 + k / 4 % 3) % 4;
    if (a == b) continue;
    EXPECT_NEAR(beam_splitter(s, a, b).norm_squared(), 1.0, 1e-12);
  }
}

TEST(BeamSplitter, RealConventionIsAnInvolution) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const auto s = random_state(rng, 4, 5);
    const auto twice = beam_splitter(beam_splitter(s, 1, 2), 1, 2);
    EXPECT_NEAR(std::abs(inner_product(s, twice) - Complex(1.0, 0.0)), 0.0, 1e-12);
  }
}

TEST(BeamSplitter, ConventionDoesNotChangeOutcomeProbabilities) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 50; ++k) {
    const auto s = random_state(rng, 4, 6);
    const auto a = coincidence_probabilities(s, BeamSplitterConvention::Real);
    const auto b = coincidence_probabilities(s, BeamSplitterConvention::SymmetricPhase);
    for (Outcome o : {Outcome::CC, Outcome::CA, Outcome::AC, Outcome::AA, Outcome::Other}) {
      EXPECT_NEAR(a[o], b[o], 1e-12);
    }
  }
  for (double phi : {0.0, 0.5, kPi / 2}) {
    const auto s = spdc_four_photon_state(phi);
    const auto a = coincidence_probabilities(s, BeamSplitterConvention::Real);
    const auto b = coincidence_probabilities(s, BeamSplitterConvention::SymmetricPhase);
    EXPECT_NEAR(a.p_aa, b.p_aa, 1e-12);
    EXPECT_NEAR(a.p_ac, b.p_ac, 1e-12);
  }
}

TEST(ClassifyOutcome, Definitions) {
  EXPECT_EQ(classify_outcome(occupation({{{1, P::H}, 2}, {{3, P::H}, 1}, {{4, P::V}, 1}})),
            Outcome::CA);
  EXPECT_EQ(classify_outcome(occupation({{{1, P::H}, 1}, {{2, P::V}, 1}, {{3, P::H}, 1},
                                         {{4, P::V}, 1}})),
            Outcome::AA);
  EXPECT_EQ(classify_outcome(occupation({{{1, P::H}, 1}, {{2, P::V}, 1}, {{4, P::H}, 1},
                                         {{4, P::V}, 1}})),
            Outcome::AC);
  EXPECT_EQ(classify_outcome(occupation({{{2, P::H}, 1}, {{2, P::V}, 1}, {{3, P::V}, 2}})),
            Outcome::CC);
  EXPECT_EQ(classify_outcome(occupation({{{1, P::H}, 3}, {{3, P::H}, 1}})), Outcome::Other);
  EXPECT_EQ(classify_outcome(Occupation{}), Outcome::Other);
}

TEST(Coincidence, TwoSingletsGiveSingletPrediction) {
  const auto p = coincidence_probabilities(singlet_pair_state());
  EXPECT_NEAR(p.p_cc, 0.75, 1e-12);
  EXPECT_NEAR(p.p_ca, 0.0, 1e-12);
  EXPECT_NEAR(p.p_ac, 0.0, 1e-12);
  EXPECT_NEAR(p.p_aa, 0.25, 1e-12);
  EXPECT_NEAR(p.p_other, 0.0, 1e-15);
}

TEST(Coincidence, PhaseMarkingSettings) {
  const auto zero = coincidence_probabilities(spdc_four_photon_state(0.0));
  EXPECT_NEAR(zero.p_ac, 0.0, 1e-12);
  EXPECT_NEAR(zero.p_ca, 0.0, 1e-12);
  EXPECT_NEAR(zero.p_aa, 0.4, 1e-12);
  const auto quarter = coincidence_probabilities(spdc_four_photon_state(kPi / 2));
  EXPECT_NEAR(quarter.p_ac, 0.3, 1e-12);
  EXPECT_NEAR(quarter.p_ca, 0.3, 1e-12);
  EXPECT_NEAR(quarter.p_aa, 0.1, 1e-12);
  // Spurious terms add nothing to aa at π/2: only the singlet pair counts.
  const double singlet_only =
      singlet_pair_weight() * coincidence_probabilities(singlet_pair_state()).p_aa;
  EXPECT_NEAR(quarter.p_aa, singlet_only, 1e-12);
}

TEST(Coincidence, RejectsUnnormalizedInput) {
  EXPECT_THROW(coincidence_probabilities(apply_pair_creation(FockState::vacuum(), 1, 3)),
               std::invalid_argument);
}

TEST(Coincidence, CompletenessOnRandomStates) {
  std::mt19937_64 rng(77);
  for (int k = 0; k < 200; ++k) {
    const auto p = coincidence_probabilities(random_state(rng, 4, 1 + k % 8));
    EXPECT_NEAR(p.sum(), 1.0, 1e-10);
  }
}

TEST(Curves, MatchClosedFormsOnFineGrid) {
  std::vector<double> grid(181);
  for (int i = 0; i < 181; ++i) grid[i] = kPi * i / 180.0;
  const auto rows = coincidence_curves(grid);
  ASSERT_EQ(rows.size(), 181u);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.p.p_ac, eq8_cross(r.phi), 1e-10);
    EXPECT_NEAR(r.p.p_ca, eq8_cross(r.phi), 1e-10);
    EXPECT_NEAR(r.p.p_aa, eq8_aa(r.phi), 1e-10);
    EXPECT_NEAR(r.p.p_cc, 9.0 / 20.0 + 3.0 / 20.0 * std::cos(2.0 * r.phi), 1e-10);
    EXPECT_NEAR(r.p.sum(), 1.0, 1e-12);
  }
}

TEST(Curves, NamedRows) {
  const std::vector<double> grid = {0.0, kPi / 4, kPi / 2};
  const auto rows = coincidence_curves(grid);
  EXPECT_NEAR(rows[0].p.p_cc, 0.6, 1e-12);
  EXPECT_NEAR(rows[0].p.p_aa, 0.4, 1e-12);
  EXPECT_NEAR(rows[1].p.p_aa, 0.25, 1e-12);
  EXPECT_NEAR(rows[1].p.p_ac, 0.15, 1e-12);
  // p_cc(π/2) = 9/20 − 3/20 by normalization.
  EXPECT_NEAR(rows[2].p.p_cc, 0.3, 1e-12);
  EXPECT_NEAR(rows[2].p.p_ca, 0.3, 1e-12);
  EXPECT_NEAR(rows[2].p.p_aa, 0.1, 1e-12);
  EXPECT_THROW(coincidence_curves({}), std::invalid_argument);
}

TEST(Conditional, TwoSingletsSwapEntanglement) {
  const auto c = conditional_state_after_anticoalescence(singlet_pair_state(), Side::A);
  EXPECT_NEAR(c.event_probability, 0.25, 1e-12);
  EXPECT_NEAR(c.sector_weight, 1.0, 1e-12);
  EXPECT_NEAR(c.singlet_fidelity, 1.0, 1e-10);
  EXPECT_NEAR(c.polarization.expectation(singlet_vector()), 1.0, 1e-10);

  const auto b = conditional_state_after_anticoalescence(singlet_pair_state(), Side::B);
  EXPECT_NEAR(b.singlet_fidelity, 1.0, 1e-10);
}

TEST(Conditional, JointHeraldAtQuarterPeriod) {
  const auto c = conditional_state_after_anticoalescence(spdc_four_photon_state(kPi / 2),
                                                         Side::A, Herald::BothSides);
  EXPECT_NEAR(c.event_probability, 0.1, 1e-12);
  EXPECT_NEAR(c.singlet_fidelity, 1.0, 1e-10);
}

TEST(Conditional, SpuriousPairsDegradeSwappingAtZeroPhase) {
  // Anticoalescence at A has probability p_aa + p_ac = 0.4 at φ = 0. The
  // singlet-pair share of that is 0.4·(1/4) = 0.1; the double-pair share
  // leaves both B photons in one input mode, orthogonal to the singlet.
  // Fidelity 0.1/0.4.
  const auto c = conditional_state_after_anticoalescence(spdc_four_photon_state(0.0), Side::A);
  EXPECT_NEAR(c.event_probability, 0.4, 1e-12);
  EXPECT_NEAR(c.sector_weight, 0.25, 1e-12);
  EXPECT_NEAR(c.singlet_fidelity, 0.25, 1e-12);
  EXPECT_LT(c.singlet_fidelity, 1.0);
}

TEST(Conditional, ZeroProbabilityHeraldThrows) {
  const auto hom = create({{1, P::H}, {2, P::H}, {3, P::H}, {4, P::V}}).normalize();
  EXPECT_THROW(conditional_state_after_anticoalescence(hom, Side::A), std::domain_error);
}

}  // namespace
}  // namespace twocopy::fock
