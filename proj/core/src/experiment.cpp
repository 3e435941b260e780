#include "twocopy/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "parallel.hpp"

namespace twocopy::experiment {

namespace {

using fock::Outcome;

constexpr std::size_t kClasses = 5;
constexpr std::size_t idx(Outcome o) { return static_cast<std::size_t>(o); }

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw std::invalid_argument(field + ": " + what);
}

// Coalesced sides per class; each one halves the detection probability
// under the bucket model.
constexpr std::array<int, kClasses> kCoalescedSides = {2, 1, 1, 0, 0};

std::uint64_t binomial(std::mt19937_64& rng, std::uint64_t n, double p) {
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  std::binomial_distribution<std::uint64_t> dist(n, p);
  return dist(rng);
}

}  // namespace

const char* to_string(DetectorModel m) {
  return m == DetectorModel::NumberResolving ? "number_resolving" : "bucket_with_pbs";
}

DetectorModel detector_model_from_string(const std::string& name) {
  if (name == "number_resolving") return DetectorModel::NumberResolving;
  if (name == "bucket_with_pbs") return DetectorModel::BucketWithPbs;
  throw std::invalid_argument("detector_model: unknown model '" + name +
                              "' (expected number_resolving or bucket_with_pbs)");
}

std::vector<double> phase_grid(double start, double stop, std::size_t n) {
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = n == 1 ? start
                     : start + (stop - start) * static_cast<double>(i) /
                                   static_cast<double>(n - 1);
  }
  return grid;
}

void validate(const RunConfig& config) {
  if (config.phi_grid.empty()) field_error("phi_grid", "must be non-empty");
  for (double phi : config.phi_grid) {
    if (!std::isfinite(phi)) field_error("phi_grid", "entries must be finite");
  }
  if (config.shots_per_phase == 0) field_error("shots_per_phase", "must be positive");
  if (!(config.visibility >= 0.0 && config.visibility <= 1.0)) {
    field_error("visibility", "must be in [0, 1]");
  }
  if (!(config.background_rate >= 0.0 && config.background_rate <= 1.0)) {
    field_error("background_rate", "must be in [0, 1]");
  }
}

std::uint64_t PhaseCounts::total() const {
  std::uint64_t t = 0;
  for (auto c : n) t += c;
  return t;
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
  auto splitmix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return splitmix(splitmix(seed) ^ splitmix(stream + 0x632be59bd9b4e019ULL));
}

std::array<double, 5> outcome_distribution(const RunConfig& config, double phi) {
  const fock::CoincidenceProbabilities ideal =
      fock::coincidence_probabilities(fock::spdc_four_photon_state(phi));
  const double v = config.visibility;
  const double bg = config.background_rate;
  std::array<double, kClasses> dist{};
  for (Outcome o : {Outcome::CC, Outcome::CA, Outcome::AC, Outcome::AA, Outcome::Other}) {
    const double distinguishable = o == Outcome::Other ? 0.0 : 0.25;
    const double mixed = v * ideal[o] + (1.0 - v) * distinguishable;
    dist[idx(o)] = (1.0 - bg) * mixed + bg / static_cast<double>(kClasses);
  }
  return dist;
}

CountRecord simulate_counts(const RunConfig& config) {
  validate(config);
  CountRecord record(config.phi_grid.size());
  detail::parallel_for(config.phi_grid.size(), [&](std::size_t i) {
    const double phi = config.phi_grid[i];
    std::mt19937_64 rng(derive_stream_seed(config.seed, i));
    const auto dist = outcome_distribution(config, phi);

    // Multinomial draw as a chain of conditional binomials.
    PhaseCounts pc;
    pc.phi = phi;
    std::uint64_t remaining = config.shots_per_phase;
    double mass_left = 1.0;
    for (std::size_t k = 0; k + 1 < kClasses; ++k) {
      const double p = mass_left > 0.0 ? std::clamp(dist[k] / mass_left, 0.0, 1.0) : 0.0;
      pc.n[k] = binomial(rng, remaining, p);
      remaining -= pc.n[k];
      mass_left -= dist[k];
    }
    pc.n[kClasses - 1] = remaining;

    if (config.detector_model == DetectorModel::BucketWithPbs) {
      for (std::size_t k = 0; k < kClasses; ++k) {
        if (kCoalescedSides[k] == 0) continue;
        const double keep = std::pow(0.5, kCoalescedSides[k]);
        const std::uint64_t kept = binomial(rng, pc.n[k], keep);
        pc.n[idx(Outcome::Other)] += pc.n[k] - kept;
        pc.n[k] = kept;
      }
    }
    record[i] = pc;
  });
  return record;
}

std::vector<PhaseEstimate> estimate_probabilities(const CountRecord& counts,
                                                  DetectorModel detector_model) {
  std::vector<PhaseEstimate> out;
  out.reserve(counts.size());
  for (const PhaseCounts& pc : counts) {
    const std::uint64_t total = pc.total();
    if (total == 0) {
      std::ostringstream os;
      os << "estimate_probabilities: zero total counts at phi=" << pc.phi;
      throw std::invalid_argument(os.str());
    }
    const auto n = static_cast<double>(total);
    PhaseEstimate pe;
    pe.phi = pc.phi;
    double four_fold = 0.0;
    for (std::size_t k = 0; k + 1 < kClasses; ++k) {
      const double factor = detector_model == DetectorModel::BucketWithPbs
                                ? std::pow(2.0, kCoalescedSides[k])
                                : 1.0;
      const double q = static_cast<double>(pc.n[k]) / n;
      pe.p[k] = {factor * q, factor * std::sqrt(q * (1.0 - q) / n),
                 pc.n[k] == 0 || pc.n[k] == total};
      four_fold += pe.p[k].value;
    }
    const double other = std::max(0.0, 1.0 - four_fold);
    const auto k_other = idx(Outcome::Other);
    pe.p[k_other] = {other, std::sqrt(other * (1.0 - other) / n),
                     other == 0.0 || other == 1.0};
    out.push_back(pe);
  }
  return out;
}

double FitResult::evaluate(double phi) const {
  return offset + amplitude * std::cos(2.0 * phi + phase_origin);
}

FitResult fit_interference(std::span<const CurveSample> samples) {
  if (samples.size() < 4) {
    throw std::invalid_argument("fit_interference: need at least 4 samples");
  }
  double lo = samples.front().phi, hi = samples.front().phi;
  for (const auto& s : samples) {
    if (!(s.sigma > 0.0) || !std::isfinite(s.sigma)) {
      throw std::invalid_argument("fit_interference: every sigma must be positive");
    }
    lo = std::min(lo, s.phi);
    hi = std::max(hi, s.phi);
  }
  if (hi - lo < std::numbers::pi / 2.0 - 1e-12) {
    throw std::invalid_argument(
        "fit_interference: degenerate design, samples must span at least half a period");
  }

  // Linear model value = c0 + c1 cos 2φ + c2 sin 2φ.
  Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  for (const auto& s : samples) {
    const Eigen::Vector3d x(1.0, std::cos(2.0 * s.phi), std::sin(2.0 * s.phi));
    const double w = 1.0 / (s.sigma * s.sigma);
    normal += w * x * x.transpose();
    rhs += w * s.value * x;
  }
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(normal);
  const auto sv = svd.singularValues();
  if (sv(2) <= 0.0 || sv(0) / sv(2) > 1e12) {
    std::ostringstream os;
    os << "fit_interference: degenerate design matrix (condition number "
       << (sv(2) > 0.0 ? sv(0) / sv(2) : INFINITY) << ")";
    throw std::invalid_argument(os.str());
  }
  const Eigen::Matrix3d cov = normal.inverse();
  const Eigen::Vector3d c = cov * rhs;

  FitResult fit;
  fit.offset = c(0);
  fit.amplitude = std::hypot(c(1), c(2));
  // A cos(2φ + δ) = A cos δ cos 2φ − A sin δ sin 2φ.
  fit.phase_origin = std::atan2(-c(2), c(1));
  fit.offset_sigma = std::sqrt(cov(0, 0));

  Eigen::Vector3d grad_amp = Eigen::Vector3d::Zero();
  if (fit.amplitude > 0.0) grad_amp << 0.0, c(1) / fit.amplitude, c(2) / fit.amplitude;
  fit.amplitude_sigma = std::sqrt(std::max(0.0, grad_amp.dot(cov * grad_amp)));

  const Eigen::Vector3d grad_min = Eigen::Vector3d(1.0, 0.0, 0.0) - grad_amp;
  fit.minimum_value = fit.offset - fit.amplitude;
  fit.minimum_sigma = std::sqrt(std::max(0.0, grad_min.dot(cov * grad_min)));

  double sq = 0.0;
  for (const auto& s : samples) {
    const double r = s.value - fit.evaluate(s.phi);
    sq += r * r;
    fit.chi2 += r * r / (s.sigma * s.sigma);
  }
  fit.residual_rms = std::sqrt(sq / static_cast<double>(samples.size()));

  // Minima where 2φ + δ ≡ π (mod 2π); repeats with period π.
  const double pi = std::numbers::pi;
  double first = std::fmod((pi - fit.phase_origin) / 2.0, pi);
  if (first < 0.0) first += pi;
  const double eps = 1e-12;
  for (double m = first + std::floor((lo - first) / pi) * pi; m <= hi + eps; m += pi) {
    if (m >= lo - eps) fit.minima_locations.push_back(m);
  }
  if (fit.minima_locations.empty()) fit.minima_locations.push_back(first);
  return fit;
}

RunReport witness_from_run(const RunConfig& config, double detection_threshold_sigma) {
  validate(config);
  RunReport report;
  report.config = config;
  report.detection_threshold_sigma = detection_threshold_sigma;
  report.counts = simulate_counts(config);
  report.estimates = estimate_probabilities(report.counts, config.detector_model);

  // A count of 0 or N carries no binomial spread; 1/N is the counting
  // resolution and keeps those points from dominating the fit.
  const double sigma_floor = 1.0 / static_cast<double>(config.shots_per_phase);
  auto curve = [&](Outcome o) {
    std::vector<CurveSample> pts;
    pts.reserve(report.estimates.size());
    for (const auto& pe : report.estimates) {
      pts.push_back({pe.phi, pe[o].value, std::max(pe[o].sigma, sigma_floor)});
    }
    return fit_interference(pts);
  };
  report.fit_ca = curve(Outcome::CA);
  report.fit_ac = curve(Outcome::AC);
  report.fit_aa = curve(Outcome::AA);

  report.min_ca = {report.fit_ca.minimum_value, report.fit_ca.minimum_sigma};
  report.min_ac = {report.fit_ac.minimum_value, report.fit_ac.minimum_sigma};
  report.min_aa = {report.fit_aa.minimum_value, report.fit_aa.minimum_sigma};

  const double w = fock::singlet_pair_weight();
  auto rescale = [w](const WitnessReading& r) { return WitnessReading{r.value / w, r.sigma / w}; };
  report.singlet_ca = rescale(report.min_ca);
  report.singlet_ac = rescale(report.min_ac);
  report.singlet_aa = rescale(report.min_aa);

  report.witness = entropic_witness(
      report.min_ca.value, report.min_ac.value, report.min_aa.value,
      ProbabilityErrors{report.min_ca.sigma, report.min_ac.sigma, report.min_aa.sigma});

  auto detected = [&](bool violated, const std::optional<double>& s) {
    return violated && s && *s >= detection_threshold_sigma;
  };
  report.violated = detected(report.witness.violated_a, report.witness.significance_a) ||
                    detected(report.witness.violated_b, report.witness.significance_b);
  return report;
}

}  // namespace twocopy::experiment
