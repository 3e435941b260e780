#include "twocopy/random_states.hpp"

#include <cmath>
#include <vector>

namespace twocopy {

namespace {

CMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = {gauss(rng), gauss(rng)};
  return g;
}

std::vector<double> dirichlet_flat(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) total += (x = expo(rng));
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace

CVector haar_pure_vector(std::size_t dim, Rng& rng) {
  CVector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

CMatrix haar_unitary(std::size_t dim, Rng& rng) {
  const CMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

DensityOperator random_mixed_state(std::size_t dim_a, std::size_t dim_b,
                                   std::size_t components, Rng& rng) {
  const std::size_t dim = dim_a * dim_b;
  const auto weights = dirichlet_flat(components, rng);
  CMatrix m = CMatrix::Zero(dim, dim);
  for (double w : weights) {
    const CVector v = haar_pure_vector(dim, rng);
    m += w * (v * v.adjoint());
  }
  return make_density(m, dim_a, dim_b);
}

DensityOperator random_density(std::size_t dim_a, std::size_t dim_b, Rng& rng) {
  std::uniform_int_distribution<std::size_t> k(1, dim_a * dim_b);
  return random_mixed_state(dim_a, dim_b, k(rng), rng);
}

DensityOperator random_separable(std::size_t dim_a, std::size_t dim_b,
                                 std::size_t max_terms, Rng& rng) {
  std::uniform_int_distribution<std::size_t> k(1, max_terms);
  const auto weights = dirichlet_flat(k(rng), rng);
  CMatrix m = CMatrix::Zero(dim_a * dim_b, dim_a * dim_b);
  for (double w : weights) {
    m += w * tensor(random_density(dim_a, 1, rng), random_density(dim_b, 1, rng))
                 .matrix();
  }
  return make_density(m, dim_a, dim_b);
}

}  // namespace twocopy
