// Counting-experiment emulation and analysis: sampling four-fold events on a
// phase grid, turning counts into probability estimates, fitting the
// cos 2φ interference curves and reading the entropic witness off their
// minima.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "twocopy/fock.hpp"
#include "twocopy/two_copy.hpp"

namespace twocopy::experiment {

enum class DetectorModel {
  /// Photon-number-resolving detection: every class is seen as it happened.
  NumberResolving,
  /// Bucket detectors behind polarizing splitters: a coalesced pair is only
  /// registered when its photons leave through different PBS outputs, so
  /// half of the coalescence events at each side are lost.
  BucketWithPbs,
};

const char* to_string(DetectorModel m);
/// Throws std::invalid_argument for an unknown name.
DetectorModel detector_model_from_string(const std::string& name);

/// n evenly spaced phases from start to stop inclusive (n = 1 gives {start}).
std::vector<double> phase_grid(double start, double stop, std::size_t n);

struct RunConfig {
  std::vector<double> phi_grid;
  std::uint64_t shots_per_phase = 100000;
  double visibility = 1.0;       ///< weight of the ideal interference distribution
  double background_rate = 0.0;  ///< fraction of accidental, uniformly spread events
  std::uint64_t seed = 1;
  DetectorModel detector_model = DetectorModel::NumberResolving;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const RunConfig& config);

/// Counts recorded at one phase setting, indexed by fock::Outcome.
struct PhaseCounts {
  double phi = 0.0;
  std::array<std::uint64_t, 5> n{};

  std::uint64_t& operator[](fock::Outcome o) { return n[static_cast<std::size_t>(o)]; }
  std::uint64_t operator[](fock::Outcome o) const { return n[static_cast<std::size_t>(o)]; }
  std::uint64_t total() const;
};

using CountRecord = std::vector<PhaseCounts>;

/// Splittable seed derivation: a SplitMix64 hash of (seed, stream index).
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream);

/// Outcome distribution at phase phi before detection:
/// (1 − bg)·[V·ideal(φ) + (1 − V)·distinguishable] + bg·uniform over all
/// five classes. Distinguishable photons coalesce with probability 1/2 at
/// each side independently.
std::array<double, 5> outcome_distribution(const RunConfig& config, double phi);

/// Draws shots_per_phase events per phase. Phase i uses its own generator
/// seeded from derive_stream_seed(seed, i), so results do not depend on
/// scheduling. Under BucketWithPbs each coalesced side survives with
/// probability 1/2 and lost events are booked as Other.
CountRecord simulate_counts(const RunConfig& config);

struct Estimate {
  double value = 0.0;
  double sigma = 0.0;
  bool degenerate = false;  ///< count was 0 or N, so sigma is zero
};

struct PhaseEstimate {
  double phi = 0.0;
  std::array<Estimate, 5> p;

  const Estimate& operator[](fock::Outcome o) const { return p[static_cast<std::size_t>(o)]; }
};

/// Multinomial proportions with σ = sqrt(p̂(1 − p̂)/N). Under BucketWithPbs
/// the coalescence counts are doubled per coalesced side (cc ×4, ca/ac ×2)
/// before normalization and σ is scaled alike. Throws std::invalid_argument
/// on a phase with zero events.
std::vector<PhaseEstimate> estimate_probabilities(const CountRecord& counts,
                                                  DetectorModel detector_model);

struct CurveSample {
  double phi = 0.0;
  double value = 0.0;
  double sigma = 0.0;
};

/// offset + amplitude·cos(2φ + phase_origin), fitted by weighted least
/// squares with the period fixed at π.
struct FitResult {
  double offset = 0.0;
  double amplitude = 0.0;
  double phase_origin = 0.0;
  double offset_sigma = 0.0;
  double amplitude_sigma = 0.0;
  double residual_rms = 0.0;
  double chi2 = 0.0;
  std::vector<double> minima_locations;
  double minimum_value = 0.0;
  double minimum_sigma = 0.0;

  double evaluate(double phi) const;
};

/// Requires at least 4 samples spanning at least π/2 and every σ > 0; throws
/// std::invalid_argument otherwise, or when the normal equations are
/// ill-conditioned. Minima are listed inside the sampled range, or the one in
/// [0, π) if none falls inside.
FitResult fit_interference(std::span<const CurveSample> samples);

struct WitnessReading {
  double value = 0.0;
  double sigma = 0.0;
};

struct RunReport {
  RunConfig config;
  CountRecord counts;
  std::vector<PhaseEstimate> estimates;
  FitResult fit_ca;
  FitResult fit_ac;
  FitResult fit_aa;
  /// Fitted curve minima: p_ca, p_ac at their minima and p_aa at its own.
  WitnessReading min_ca;
  WitnessReading min_ac;
  WitnessReading min_aa;
  /// Minima divided by the one-pair-per-source weight of the emission, i.e.
  /// the values an ideal two-singlet input would give.
  WitnessReading singlet_ca;
  WitnessReading singlet_ac;
  WitnessReading singlet_aa;
  WitnessVerdict witness;
  double detection_threshold_sigma = 3.0;
  /// Some side violates with significance ≥ detection_threshold_sigma.
  bool violated = false;
};

inline constexpr double kDefaultDetectionThreshold = 3.0;

/// simulate → estimate → fit p_ca, p_ac, p_aa → witness at the minima.
RunReport witness_from_run(const RunConfig& config,
                           double detection_threshold_sigma = kDefaultDetectionThreshold);

}  // namespace twocopy::experiment
