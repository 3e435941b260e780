#include "twocopy/fock.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "parallel.hpp"

namespace twocopy::fock {

namespace {

constexpr double kNormTolerance = 1e-10;

void add_term(FockState::Amplitudes& amps, const Occupation& occ, Complex value) {
  auto [it, inserted] = amps.try_emplace(occ, value);
  if (!inserted) it->second += value;
}

void check_spatial(int spatial) {
  if (spatial < 1 || spatial > 4) {
    throw std::out_of_range("spatial mode index must be in 1..4");
  }
}

double factorial(unsigned n) {
  double f = 1.0;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

FockState pair_power(int x, int y, unsigned power) {
  FockState s = FockState::vacuum();
  for (unsigned k = 0; k < power; ++k) s = apply_pair_creation(s, x, y);
  return s;
}

}  // namespace

ModeIndex::ModeIndex(int spatial, Polarization pol) : spatial_(spatial), pol_(pol) {
  check_spatial(spatial);
}

unsigned photon_number(const Occupation& occ) {
  unsigned n = 0;
  for (auto c : occ) n += c;
  return n;
}

unsigned spatial_count(const Occupation& occ, int spatial) {
  check_spatial(spatial);
  const auto base = static_cast<std::size_t>(spatial - 1) * 2;
  return occ[base] + occ[base + 1];
}

FockState::FockState(unsigned photon_cap) : photon_cap_(photon_cap) {}

FockState::FockState(Amplitudes amplitudes, unsigned photon_cap, bool normalized)
    : amplitudes_(std::move(amplitudes)), photon_cap_(photon_cap), normalized_(normalized) {
  for (const auto& [occ, amp] : amplitudes_) {
    if (photon_number(occ) > photon_cap_) {
      throw PhotonCapExceeded("FockState: occupation exceeds photon cap");
    }
  }
}

FockState FockState::vacuum(unsigned photon_cap) {
  return FockState({{Occupation{}, Complex(1.0, 0.0)}}, photon_cap, true);
}

Complex FockState::amplitude(const Occupation& occ) const {
  const auto it = amplitudes_.find(occ);
  return it == amplitudes_.end() ? Complex{} : it->second;
}

double FockState::norm_squared() const {
  double n = 0.0;
  for (const auto& [occ, amp] : amplitudes_) n += std::norm(amp);
  return n;
}

FockState FockState::normalize() const {
  const double n = std::sqrt(norm_squared());
  if (n == 0.0) throw std::domain_error("FockState::normalize: zero state");
  Amplitudes out;
  for (const auto& [occ, amp] : amplitudes_) out.emplace(occ, amp / n);
  return FockState(std::move(out), photon_cap_, true);
}

FockState operator+(const FockState& a, const FockState& b) {
  FockState::Amplitudes out = a.amplitudes();
  for (const auto& [occ, amp] : b.amplitudes()) add_term(out, occ, amp);
  return FockState(std::move(out), std::max(a.photon_cap(), b.photon_cap()));
}

FockState operator*(Complex c, const FockState& s) {
  FockState::Amplitudes out;
  for (const auto& [occ, amp] : s.amplitudes()) out.emplace(occ, c * amp);
  return FockState(std::move(out), s.photon_cap());
}

Complex inner_product(const FockState& a, const FockState& b) {
  Complex acc{};
  for (const auto& [occ, amp] : a.amplitudes()) acc += std::conj(amp) * b.amplitude(occ);
  return acc;
}

double overlap_magnitude(const FockState& a, const FockState& b) {
  return std::abs(inner_product(a, b)) / std::sqrt(a.norm_squared() * b.norm_squared());
}

FockState photon_sector(const FockState& s, unsigned n) {
  FockState::Amplitudes out;
  for (const auto& [occ, amp] : s.amplitudes()) {
    if (photon_number(occ) == n) out.emplace(occ, amp);
  }
  return FockState(std::move(out), s.photon_cap());
}

FockState apply_creation(const FockState& s, ModeIndex mode) {
  const std::size_t m = mode.flat();
  FockState::Amplitudes out;
  for (const auto& [key, amp] : s.amplitudes()) {
    Occupation occ = key;
    if (photon_number(occ) + 1 > s.photon_cap()) {
      std::ostringstream os;
      os << "apply_creation: photon cap " << s.photon_cap() << " exceeded";
      throw PhotonCapExceeded(os.str());
    }
    const double factor = std::sqrt(static_cast<double>(occ[m]) + 1.0);
    ++occ[m];
    add_term(out, occ, amp * factor);
  }
  return FockState(std::move(out), s.photon_cap());
}

FockState apply_annihilation(const FockState& s, ModeIndex mode) {
  const std::size_t m = mode.flat();
  FockState::Amplitudes out;
  for (const auto& [key, amp] : s.amplitudes()) {
    if (key[m] == 0) continue;
    Occupation occ = key;
    const double factor = std::sqrt(static_cast<double>(occ[m]));
    --occ[m];
    add_term(out, occ, amp * factor);
  }
  return FockState(std::move(out), s.photon_cap());
}

FockState apply_pair_creation(const FockState& s, int x, int y) {
  using P = Polarization;
  const FockState hv = apply_creation(apply_creation(s, {y, P::V}), {x, P::H});
  const FockState vh = apply_creation(apply_creation(s, {y, P::H}), {x, P::V});
  return hv + Complex(-1.0, 0.0) * vh;
}

FockState apply_pair_annihilation(const FockState& s, int x, int y) {
  using P = Polarization;
  const FockState hv = apply_annihilation(apply_annihilation(s, {y, P::V}), {x, P::H});
  const FockState vh = apply_annihilation(apply_annihilation(s, {y, P::H}), {x, P::V});
  return hv + Complex(-1.0, 0.0) * vh;
}

SpdcComponents spdc_components(double phi) {
  const double c = 1.0 / std::sqrt(10.0);
  const Complex e1 = std::polar(1.0, phi);
  const Complex e2 = std::polar(1.0, 2.0 * phi);
  const FockState kl = apply_pair_creation(apply_pair_creation(FockState::vacuum(), 2, 4), 1, 3);
  return {c * e1 * kl, Complex(c / 2.0, 0.0) * pair_power(1, 3, 2),
          c / 2.0 * e2 * pair_power(2, 4, 2)};
}

FockState spdc_four_photon_state(double phi) {
  const SpdcComponents parts = spdc_components(phi);
  const FockState sum = parts.pair_pair + parts.double_1 + parts.double_2;
  const double n2 = sum.norm_squared();
  if (std::abs(n2 - 1.0) > kNormTolerance) {
    throw std::logic_error("spdc_four_photon_state: emission amplitude not normalized");
  }
  return FockState(sum.amplitudes(), sum.photon_cap(), true);
}

FockState singlet_pair_state() {
  return apply_pair_creation(apply_pair_creation(FockState::vacuum(), 2, 4), 1, 3).normalize();
}

double singlet_pair_weight() { return spdc_components(0.0).pair_pair.norm_squared(); }

FockState apply_hamiltonian(const FockState& s, double phi, double coupling) {
  const Complex down = std::polar(1.0, -phi);
  const Complex up = std::polar(1.0, phi);
  const FockState k_part = apply_pair_annihilation(s, 1, 3) + apply_pair_creation(s, 1, 3);
  const FockState l_part =
      down * apply_pair_annihilation(s, 2, 4) + up * apply_pair_creation(s, 2, 4);
  return Complex(coupling, 0.0) * (k_part + l_part);
}

FockState hamiltonian_series(double phi, unsigned order, double coupling,
                             unsigned photon_cap) {
  FockState term = FockState::vacuum(photon_cap);
  FockState sum = term;
  const Complex minus_i(0.0, -1.0);
  for (unsigned k = 1; k <= order; ++k) {
    term = (minus_i / static_cast<double>(k)) * apply_hamiltonian(term, phi, coupling);
    sum = sum + term;
  }
  return sum;
}

FockState hamiltonian_four_photon_term(double phi, unsigned order, unsigned photon_cap) {
  if (order < 2) {
    throw std::invalid_argument(
        "hamiltonian_four_photon_term: order must be >= 2 to reach four photons");
  }
  return photon_sector(hamiltonian_series(phi, order, 1.0, photon_cap), 4).normalize();
}

FockState beam_splitter(const FockState& s, int spatial_a, int spatial_b,
                        BeamSplitterConvention convention) {
  check_spatial(spatial_a);
  check_spatial(spatial_b);
  if (spatial_a == spatial_b) {
    throw std::invalid_argument("beam_splitter: input ports must be distinct spatial modes");
  }
  const double r = 1.0 / std::sqrt(2.0);
  // Column j lists the images of input port j in terms of output ports (a, b).
  Complex t[2][2];
  if (convention == BeamSplitterConvention::Real) {
    t[0][0] = r, t[0][1] = r, t[1][0] = r, t[1][1] = -r;
  } else {
    const Complex ir(0.0, r);
    t[0][0] = r, t[0][1] = ir, t[1][0] = ir, t[1][1] = r;
  }
  const int ports[2] = {spatial_a, spatial_b};

  FockState::Amplitudes out;
  for (const auto& [occ, amp] : s.amplitudes()) {
    Occupation base = occ;
    double norm = 1.0;
    for (int port : ports) {
      for (auto pol : {Polarization::H, Polarization::V}) {
        const std::size_t m = ModeIndex(port, pol).flat();
        norm *= factorial(occ[m]);
        base[m] = 0;
      }
    }
    FockState branch({{base, amp / std::sqrt(norm)}}, s.photon_cap());
    for (int j = 0; j < 2; ++j) {
      for (auto pol : {Polarization::H, Polarization::V}) {
        const unsigned count = occ[ModeIndex(ports[j], pol).flat()];
        for (unsigned c = 0; c < count; ++c) {
          branch = t[j][0] * apply_creation(branch, {ports[0], pol}) +
                   t[j][1] * apply_creation(branch, {ports[1], pol});
        }
      }
    }
    for (const auto& [o, a] : branch.amplitudes()) add_term(out, o, a);
  }
  return FockState(std::move(out), s.photon_cap(), s.normalized());
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::CC: return "cc";
    case Outcome::CA: return "ca";
    case Outcome::AC: return "ac";
    case Outcome::AA: return "aa";
    case Outcome::Other: return "other";
  }
  return "other";
}

Outcome classify_outcome(const Occupation& pattern) {
  const unsigned a1 = spatial_count(pattern, 1), a2 = spatial_count(pattern, 2);
  const unsigned b1 = spatial_count(pattern, 3), b2 = spatial_count(pattern, 4);
  if (a1 + a2 != 2 || b1 + b2 != 2) return Outcome::Other;
  const bool coalesced_a = a1 != 1;
  const bool coalesced_b = b1 != 1;
  if (coalesced_a) return coalesced_b ? Outcome::CC : Outcome::CA;
  return coalesced_b ? Outcome::AC : Outcome::AA;
}

double CoincidenceProbabilities::operator[](Outcome o) const {
  switch (o) {
    case Outcome::CC: return p_cc;
    case Outcome::CA: return p_ca;
    case Outcome::AC: return p_ac;
    case Outcome::AA: return p_aa;
    case Outcome::Other: return p_other;
  }
  return p_other;
}

CoincidenceProbabilities coincidence_probabilities(const FockState& s,
                                                   BeamSplitterConvention convention) {
  if (std::abs(s.norm_squared() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("coincidence_probabilities: input state is not normalized");
  }
  const FockState out = beam_splitter(beam_splitter(s, 1, 2, convention), 3, 4, convention);
  CoincidenceProbabilities p;
  for (const auto& [occ, amp] : out.amplitudes()) {
    const double w = std::norm(amp);
    switch (classify_outcome(occ)) {
      case Outcome::CC: p.p_cc += w; break;
      case Outcome::CA: p.p_ca += w; break;
      case Outcome::AC: p.p_ac += w; break;
      case Outcome::AA: p.p_aa += w; break;
      case Outcome::Other: p.p_other += w; break;
    }
  }
  return p;
}

std::vector<CurvePoint> coincidence_curves(std::span<const double> phi_grid) {
  if (phi_grid.empty()) throw std::invalid_argument("coincidence_curves: empty phase grid");
  std::vector<CurvePoint> rows(phi_grid.size());
  detail::parallel_for(phi_grid.size(), [&](std::size_t i) {
    rows[i] = {phi_grid[i], coincidence_probabilities(spdc_four_photon_state(phi_grid[i]))};
  });
  return rows;
}

ConditionalState conditional_state_after_anticoalescence(const FockState& s, Side side,
                                                         Herald herald) {
  if (std::abs(s.norm_squared() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("conditional_state: input state is not normalized");
  }
  const int herald_lo = side == Side::A ? 1 : 3;
  const int other_lo = side == Side::A ? 3 : 1;

  FockState out = beam_splitter(s, herald_lo, herald_lo + 1);
  if (herald == Herald::BothSides) out = beam_splitter(out, other_lo, other_lo + 1);

  // Split each surviving pattern into its heralding-side part and the
  // other side's part; tracing out the herald sums outer products of the
  // other side's amplitude vectors, one vector per heralding pattern.
  std::map<Occupation, std::map<Occupation, Complex>> by_herald;
  double event_probability = 0.0;
  for (const auto& [occ, amp] : out.amplitudes()) {
    if (spatial_count(occ, herald_lo) != 1 || spatial_count(occ, herald_lo + 1) != 1) continue;
    if (herald == Herald::BothSides &&
        (spatial_count(occ, other_lo) != 1 || spatial_count(occ, other_lo + 1) != 1)) {
      continue;
    }
    Occupation herald_part{}, other_part{};
    for (int sp : {herald_lo, herald_lo + 1}) {
      for (auto pol : {Polarization::H, Polarization::V}) {
        const std::size_t m = ModeIndex(sp, pol).flat();
        herald_part[m] = occ[m];
      }
    }
    for (int sp : {other_lo, other_lo + 1}) {
      for (auto pol : {Polarization::H, Polarization::V}) {
        const std::size_t m = ModeIndex(sp, pol).flat();
        other_part[m] = occ[m];
      }
    }
    by_herald[herald_part][other_part] += amp;
    event_probability += std::norm(amp);
  }
  if (event_probability <= 1e-14) {
    throw std::domain_error("conditional_state: heralding event has zero probability");
  }

  // One photon in each of the other side's modes: index pol_lo*2 + pol_hi.
  auto sector_index = [&](const Occupation& occ) -> int {
    if (spatial_count(occ, other_lo) != 1 || spatial_count(occ, other_lo + 1) != 1) return -1;
    const int lo = occ[ModeIndex(other_lo, Polarization::V).flat()];
    const int hi = occ[ModeIndex(other_lo + 1, Polarization::V).flat()];
    return lo * 2 + hi;
  };

  CMatrix block = CMatrix::Zero(4, 4);
  for (const auto& [herald_part, vec] : by_herald) {
    CVector v = CVector::Zero(4);
    for (const auto& [occ, amp] : vec) {
      const int i = sector_index(occ);
      if (i >= 0) v(i) += amp;
    }
    block += v * v.adjoint();
  }
  const double sector_prob = block.trace().real();
  if (sector_prob <= 1e-14) {
    throw std::domain_error(
        "conditional_state: no one-photon-per-mode component at the other side");
  }
  const CVector psi = singlet_vector();
  const double singlet_overlap = (psi.adjoint() * block * psi)(0, 0).real();
  return {make_density(block / sector_prob, 2, 2), event_probability,
          sector_prob / event_probability, singlet_overlap / event_probability};
}

}  // namespace twocopy::fock
