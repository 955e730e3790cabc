#include "tracelab/random.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tracelab/errors.hpp"

namespace tracelab {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  if (rows <= 0 || cols <= 0) throw DomainError("ginibre: dimensions must be positive");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  // Fill in a fixed order so results do not depend on Eigen's storage order.
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

ComplexMatrix random_unitary(Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(dim, rng);
}

HermitianMatrix random_hermitian(Eigen::Index dim, Rng& rng) {
  return HermitianMatrix::symmetrize(ginibre(dim, dim, rng));
}

PositiveMatrix random_positive(Eigen::Index dim, Rng& rng, double max_condition) {
  if (dim <= 0) throw DomainError("random_positive: dimension must be positive");
  if (!(max_condition >= 1.0)) throw DomainError("random_positive: max_condition must be >= 1");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_cond = unit(rng) * std::log(max_condition);
  std::vector<double> logs(static_cast<std::size_t>(dim));
  for (auto& l : logs) l = (unit(rng) - 0.5) * log_cond;
  if (dim >= 2) {
    logs[0] = -0.5 * log_cond;
    logs[1] = 0.5 * log_cond;
  }
  const ComplexMatrix u = random_unitary(dim, rng);
  Eigen::VectorXcd d(dim);
  for (Eigen::Index i = 0; i < dim; ++i) d(i) = std::exp(logs[static_cast<std::size_t>(i)]);
  return PositiveMatrix::from(HermitianMatrix::symmetrize(u * d.asDiagonal() * u.adjoint()));
}

PositiveMatrix random_positive(Eigen::Index dim, std::uint64_t seed, double max_condition) {
  Rng rng(seed);
  return random_positive(dim, rng, max_condition);
}

ComplexMatrix random_invertible(Eigen::Index dim, Rng& rng) {
  return ginibre(dim, dim, rng) / std::sqrt(static_cast<double>(dim));
}

ComplexMatrix random_invertible(Eigen::Index dim, Rng& rng, double max_condition) {
  const PositiveMatrix p = random_positive(dim, rng, max_condition);
  const ComplexMatrix v = random_unitary(dim, rng);
  return p.matrix() * v;
}

}  // namespace tracelab
