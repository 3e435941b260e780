#include "twocopy/two_copy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace twocopy {

CMatrix swap_operator(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix s = CMatrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
  return s;
}

ProjectorPair projectors(std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("projectors: dim must be >= 2");
  const auto n = static_cast<Eigen::Index>(dim * dim);
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix s = swap_operator(dim);
  return {dim, (id + s) * 0.5, (id - s) * 0.5};
}

void validate(const CollisionProbabilities& p) {
  for (double x : {p.p_cc, p.p_ca, p.p_ac, p.p_aa}) {
    if (!(x >= -kStateTolerance && x <= 1.0 + kStateTolerance)) {
      throw std::invalid_argument("collision probabilities: entry outside [0,1]");
    }
  }
  if (std::abs(p.sum() - 1.0) > kStateTolerance) {
    std::ostringstream os;
    os << "collision probabilities: sum is " << p.sum() << ", expected 1";
    throw std::invalid_argument(os.str());
  }
}

namespace {

// rho⊗rho is ordered (A1, B1, A2, B2). Regroup as (A1, A2, B1, B2) so the
// A-copy projector and the B-copy projector act on contiguous factors.
CMatrix two_copy_regrouped(const DensityOperator& rho) {
  const auto da = static_cast<Eigen::Index>(rho.dim_a());
  const auto db = static_cast<Eigen::Index>(rho.dim_b());
  const CMatrix& m = rho.matrix();
  const Eigen::Index n = da * da * db * db;

  auto idx = [&](Eigen::Index a1, Eigen::Index a2, Eigen::Index b1,
                 Eigen::Index b2) { return ((a1 * da + a2) * db + b1) * db + b2; };

  CMatrix out(n, n);
  for (Eigen::Index a1 = 0; a1 < da; ++a1)
    for (Eigen::Index a2 = 0; a2 < da; ++a2)
      for (Eigen::Index b1 = 0; b1 < db; ++b1)
        for (Eigen::Index b2 = 0; b2 < db; ++b2)
          for (Eigen::Index c1 = 0; c1 < da; ++c1)
            for (Eigen::Index c2 = 0; c2 < da; ++c2)
              for (Eigen::Index e1 = 0; e1 < db; ++e1)
                for (Eigen::Index e2 = 0; e2 < db; ++e2)
                  out(idx(a1, a2, b1, b2), idx(c1, c2, e1, e2)) =
                      m(a1 * db + b1, c1 * db + e1) * m(a2 * db + b2, c2 * db + e2);
  return out;
}

double joint_trace(const CMatrix& pa, const CMatrix& pb, const CMatrix& two) {
  return (kron(pa, pb) * two).trace().real();
}

}  // namespace

CollisionProbabilities collision_probabilities(const DensityOperator& rho) {
  if (!rho.is_bipartite()) {
    throw std::invalid_argument(
        "collision_probabilities: dimension mismatch, state must be bipartite");
  }
  const ProjectorPair pa = projectors(rho.dim_a());
  const ProjectorPair pb = projectors(rho.dim_b());
  const CMatrix two = two_copy_regrouped(rho);
  return {joint_trace(pa.p_sym, pb.p_sym, two), joint_trace(pa.p_sym, pb.p_anti, two),
          joint_trace(pa.p_anti, pb.p_sym, two), joint_trace(pa.p_anti, pb.p_anti, two)};
}

Purities purities_from_probabilities(const CollisionProbabilities& p) {
  Purities out;
  out.tr_rho2 = p.p_cc - p.p_ca - p.p_ac + p.p_aa;
  out.tr_rho_a2 = p.p_cc + p.p_ca - p.p_ac - p.p_aa;
  out.tr_rho_b2 = p.p_cc - p.p_ca + p.p_ac - p.p_aa;
  for (double x : {out.tr_rho2, out.tr_rho_a2, out.tr_rho_b2}) {
    if (x < -kStateTolerance || x > 1.0 + kStateTolerance) out.out_of_range = true;
  }
  return out;
}

CollisionProbabilities probabilities_from_purities(double tr_rho2, double tr_rho_a2,
                                                   double tr_rho_b2) {
  return {(1.0 + tr_rho2 + tr_rho_a2 + tr_rho_b2) / 4.0,
          (1.0 - tr_rho2 + tr_rho_a2 - tr_rho_b2) / 4.0,
          (1.0 - tr_rho2 - tr_rho_a2 + tr_rho_b2) / 4.0,
          (1.0 + tr_rho2 - tr_rho_a2 - tr_rho_b2) / 4.0};
}

std::optional<double> WitnessVerdict::significance() const {
  std::optional<double> best;
  auto consider = [&](bool violated, const std::optional<double>& s) {
    if (violated && s && (!best || *s > *best)) best = s;
  };
  consider(violated_a, significance_a);
  consider(violated_b, significance_b);
  return best;
}

WitnessVerdict entropic_witness(double p_ca, double p_ac, double p_aa,
                                std::optional<ProbabilityErrors> errors) {
  WitnessVerdict v;
  v.margin_a = p_aa - p_ca;
  v.margin_b = p_aa - p_ac;
  v.violated_a = p_ca < p_aa;
  v.violated_b = p_ac < p_aa;
  if (errors) {
    if (errors->p_ca < 0.0 || errors->p_ac < 0.0 || errors->p_aa < 0.0) {
      throw std::invalid_argument("entropic_witness: negative standard error");
    }
    const double sa = std::hypot(errors->p_aa, errors->p_ca);
    const double sb = std::hypot(errors->p_aa, errors->p_ac);
    if (sa > 0.0) v.significance_a = v.margin_a / sa;
    if (sb > 0.0) v.significance_b = v.margin_b / sb;
  }
  return v;
}

WitnessVerdict entropic_witness(const CollisionProbabilities& p,
                                std::optional<ProbabilityErrors> errors) {
  validate(p);
  return entropic_witness(p.p_ca, p.p_ac, p.p_aa, errors);
}

}  // namespace twocopy
