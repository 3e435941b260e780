#include "twocopy/qstate.hpp"

#include <cmath>

#include "gtest/gtest.h"

#include "support/oracles.hpp"
#include "twocopy/random_states.hpp"

namespace twocopy {
namespace {

CMatrix ket_bra(int i, int j, int dim) {
  CMatrix m = CMatrix::Zero(dim, dim);
  m(i, j) = 1.0;
  return m;
}

TEST(MakeDensity, AcceptsMaximallyMixed) {
  const auto rho = make_density(CMatrix::Identity(4, 4) / 4.0, 2, 2);
  EXPECT_EQ(rho.dim_a(), 2u);
  EXPECT_EQ(rho.dim_b(), 2u);
  EXPECT_NEAR(purity(rho), 0.25, 1e-15);
}

TEST(MakeDensity, RejectsNonHermitian) {
  CMatrix m = CMatrix::Identity(4, 4) / 4.0;
  m(0, 1) = 0.1;
  try {
    make_density(m, 2, 2);
    FAIL() << "expected InvariantViolation";
  } catch (const InvariantViolation& e) {
    EXPECT_EQ(e.invariant(), "not Hermitian");
    EXPECT_NEAR(e.violation(), 0.1, 1e-15);
  }
}

TEST(MakeDensity, RejectsBadTraceAndNegativeEigenvalue) {
  try {
    make_density(CMatrix::Identity(4, 4) / 2.0, 2, 2);
    FAIL();
  } catch (const InvariantViolation& e) {
    EXPECT_EQ(e.invariant(), "trace not one");
    EXPECT_NEAR(e.violation(), 1.0, 1e-15);
  }
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  try {
    make_density(m, 2);
    FAIL();
  } catch (const InvariantViolation& e) {
    EXPECT_EQ(e.invariant(), "not positive semidefinite");
    EXPECT_NEAR(e.violation(), 0.5, 1e-12);
  }
}

TEST(MakeDensity, RejectsDimensionMismatch) {
  EXPECT_THROW(make_density(CMatrix::Identity(4, 4) / 4.0, 2, 3), std::invalid_argument);
  EXPECT_THROW(make_density(CMatrix::Identity(3, 4), 3, 1), std::invalid_argument);
}

TEST(MakeDensity, ToleratesRoundoffAtTheBoundary) {
  // werner(1/3) has a PPT eigenvalue of exactly zero; small noise must pass.
  CMatrix m = werner(1.0 / 3.0).matrix();
  m(0, 0) += 5e-12;
  m(3, 3) -= 5e-12;
  EXPECT_NO_THROW(make_density(m, 2, 2));
}

TEST(Singlet, IsPureWithMaximallyMixedMarginals) {
  const auto s = singlet();
  EXPECT_NEAR(purity(s), 1.0, 1e-14);
  const CMatrix half = CMatrix::Identity(2, 2) / 2.0;
  EXPECT_LT(max_abs_diff(partial_trace(s, Subsystem::A).matrix(), half), 1e-14);
  EXPECT_LT(max_abs_diff(partial_trace(s, Subsystem::B).matrix(), half), 1e-14);
  CVector hh = CVector::Zero(4);
  hh(0) = 1.0;
  EXPECT_NEAR(s.expectation(hh), 0.0, 1e-15);
}

TEST(Werner, Endpoints) {
  EXPECT_LT(max_abs_diff(werner(1.0).matrix(), singlet().matrix()), 1e-15);
  EXPECT_LT(max_abs_diff(werner(0.0).matrix(), CMatrix::Identity(4, 4) / 4.0), 1e-15);
  EXPECT_THROW(werner(-0.1), std::domain_error);
  EXPECT_THROW(werner(1.1), std::domain_error);
}

TEST(Werner, PurityAtInverseSqrtThreeIsHalf) {
  const double p = 1.0 / std::sqrt(3.0);
  // Closed form (1 + 3p²)/4 versus brute-force Σ|M_ij|².
  const CMatrix m = werner(p).matrix();
  double brute = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) brute += std::norm(m(i, j));
  EXPECT_NEAR((1.0 + 3.0 * p * p) / 4.0, 0.5, 1e-15);
  EXPECT_NEAR(brute, 0.5, 1e-14);
  EXPECT_NEAR(purity(werner(p)), 0.5, 1e-14);
}

TEST(Werner, MarginalsAreMaximallyMixedForAllP) {
  for (double p = 0.0; p <= 1.0; p += 0.125) {
    const auto ra = partial_trace(werner(p), Subsystem::A);
    EXPECT_LT(max_abs_diff(ra.matrix(), CMatrix::Identity(2, 2) / 2.0), 1e-14) << p;
  }
}

TEST(Tensor, ProductOfMaximallyMixedQubits) {
  const auto rho = tensor(maximally_mixed(2), maximally_mixed(2));
  EXPECT_LT(max_abs_diff(rho.matrix(), CMatrix::Identity(4, 4) / 4.0), 1e-15);
  EXPECT_EQ(rho.dim_a(), 2u);
  EXPECT_EQ(rho.dim_b(), 2u);
}

TEST(Tensor, TwoSingletsArePure) {
  const auto two = tensor(singlet(), singlet());
  EXPECT_EQ(two.dim(), 16u);
  EXPECT_NEAR(purity(two), 1.0, 1e-14);
}

TEST(Tensor, PurityIsMultiplicative) {
  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    const auto rho = random_density(2, 2, rng);
    EXPECT_NEAR(purity(tensor(rho, rho)), purity(rho) * purity(rho), 1e-12);
  }
}

TEST(PartialTrace, ProductBasisState) {
  // |H><H| ⊗ |V><V| is basis index 1 (|HV>).
  const auto rho = make_density(ket_bra(1, 1, 4), 2, 2);
  const auto rb = partial_trace(rho, Subsystem::B);
  EXPECT_LT(max_abs_diff(rb.matrix(), ket_bra(1, 1, 2)), 1e-15);
}

TEST(PartialTrace, RejectsMonopartite) {
  EXPECT_THROW(partial_trace(maximally_mixed(4), Subsystem::A), std::invalid_argument);
}

TEST(PartialTrace, RecoversFactorsOfProducts) {
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    const auto rho = random_density(2, 2, rng);
    const auto sigma = random_density(2, 1, rng);
    const auto joint = tensor(rho, sigma);
    EXPECT_LT(max_abs_diff(partial_trace(joint, Subsystem::A).matrix(), rho.matrix()), 1e-12);
    EXPECT_LT(max_abs_diff(partial_trace(joint, Subsystem::B).matrix(), sigma.matrix()), 1e-12);
  }
}

TEST(Purity, BoundsAndUnitaryInvariance) {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const auto rho = random_density(2, 2, rng);
    const double p = purity(rho);
    EXPECT_GE(p, 0.25 - 1e-12);
    EXPECT_LE(p, 1.0 + 1e-12);
    const auto rotated = conjugate(rho, haar_unitary(4, rng));
    EXPECT_NEAR(purity(rotated), p, 1e-10);
  }
  EXPECT_NEAR(purity(pure_state(haar_pure_vector(4, rng), 2, 2)), 1.0, 1e-12);
}

TEST(Ppt, SingletEigenvalueByHand) {
  // Partial transpose of the singlet, written out by hand in the
  // |HH>,|HV>,|VH>,|VV> basis: diag entries (0, 1/2, 1/2, 0) and the
  // coherences −1/2 moved to the (HH, VV) corners. Its spectrum is
  // {1/2, 1/2, 1/2, −1/2}.
  Eigen::Matrix4d pt = Eigen::Matrix4d::Zero();
  pt(1, 1) = pt(2, 2) = 0.5;
  pt(0, 3) = pt(3, 0) = -0.5;
  const double oracle =
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(pt).eigenvalues().minCoeff();
  EXPECT_NEAR(oracle, -0.5, 1e-15);
  EXPECT_NEAR(ppt_min_eigenvalue(singlet()), -0.5, 1e-12);
  EXPECT_LT(max_abs_diff(partial_transpose_b(singlet()), pt.cast<Complex>()), 1e-15);
}

TEST(Ppt, WernerBoundaryAndMaximallyMixed) {
  EXPECT_NEAR(ppt_min_eigenvalue(werner(1.0 / 3.0)), 0.0, 1e-10);
  EXPECT_NEAR(ppt_min_eigenvalue(maximally_mixed(2, 2)), 0.25, 1e-14);
  EXPECT_THROW(ppt_min_eigenvalue(maximally_mixed(4)), std::invalid_argument);
}

TEST(Ppt, WernerThresholdByBisection) {
  const double p = oracle::bisect([](double x) { return ppt_min_eigenvalue(werner(x)); },
                                  0.0, 1.0, 1e-10);
  EXPECT_NEAR(p, 1.0 / 3.0, 1e-8);
}

TEST(Ppt, ProductStatesArePpt) {
  Rng rng(17);
  for (int k = 0; k < 100; ++k) {
    const auto rho = random_separable(2, 2, 4, rng);
    EXPECT_GE(ppt_min_eigenvalue(rho), -1e-10);
  }
}

}  // namespace
}  // namespace twocopy
