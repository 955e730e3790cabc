#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

#include "tracelab/channel.hpp"
#include "tracelab/entropy.hpp"
#include "tracelab/errors.hpp"
#include "tracelab/random.hpp"

using namespace tracelab;

namespace {

DensityMatrix ddiag(std::initializer_list<double> d) {
  RealVector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return DensityMatrix::diagonal(v);
}

ComplexMatrix ref_fn(const ComplexMatrix& a, double (*f)(double, double), double p) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
  Eigen::VectorXcd d(es.eigenvalues().size());
  for (int i = 0; i < d.size(); ++i) d(i) = f(es.eigenvalues()(i), p);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}
double pow_fn(double x, double p) { return std::pow(x, p); }
double log_fn(double x, double) { return std::log(x); }

// Full-rank reference formulas.
double ref_umegaki(const ComplexMatrix& r, const ComplexMatrix& s) {
  return (r * (ref_fn(r, log_fn, 0) - ref_fn(s, log_fn, 0))).trace().real();
}
double ref_alpha_z(const ComplexMatrix& r, const ComplexMatrix& s, double a, double z) {
  ComplexMatrix g = ref_fn(s, pow_fn, (1 - a) / (2 * z));
  ComplexMatrix inner = g * ref_fn(r, pow_fn, a / z) * g;
  inner = (inner + inner.adjoint()) / 2.0;
  return std::log(ref_fn(inner, pow_fn, z).trace().real()) / (a - 1);
}

const std::vector<EntropySpec> kInRange = {
    {EntropyKind::Umegaki, 0.5, 1.0},   {EntropyKind::Renyi, 0.5, 1.0},
    {EntropyKind::Renyi, 2.0, 1.0},     {EntropyKind::Sandwiched, 0.5, 1.0},
    {EntropyKind::Sandwiched, 3.0, 1.0}, {EntropyKind::AlphaZ, 0.5, 0.7},
    {EntropyKind::AlphaZ, 1.5, 1.0},    {EntropyKind::AlphaZ, 3.0, 2.5},
};

}  // namespace

TEST(Umegaki, EqualStatesGiveZero) {
  Rng rng(31);
  auto rho = random_density(3, rng);
  EXPECT_NEAR(umegaki(rho, rho).value(), 0.0, 1e-12);
}

TEST(Umegaki, ClassicalKullbackLeibler) {
  const double expect = 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0);
  EXPECT_NEAR(umegaki(ddiag({0.5, 0.5}), ddiag({0.25, 0.75})).value(), expect, 1e-14);
  EXPECT_NEAR(expect, 0.1438410, 1e-7);
}

TEST(Umegaki, DisjointSupportIsInfinite) {
  auto v = umegaki(ddiag({1, 0}), ddiag({0, 1}));
  EXPECT_FALSE(v.is_finite());
  EXPECT_TRUE(std::isinf(v.value()));
}

TEST(Umegaki, SingularRhoInsideSupport) {
  // 1 * ln(1 / 0.5)
  EXPECT_NEAR(umegaki(ddiag({1, 0}), ddiag({0.5, 0.5})).value(), std::log(2.0), 1e-14);
}

TEST(Umegaki, DimensionMismatchThrows) {
  EXPECT_THROW(umegaki(ddiag({1, 0}), ddiag({0.5, 0.25, 0.25})), DimensionError);
}

TEST(Renyi, ClassicalAlphaTwo) {
  EXPECT_NEAR(renyi_alpha(ddiag({0.5, 0.5}), ddiag({0.25, 0.75}), 2.0).value(),
              std::log(4.0 / 3.0), 1e-14);
}

TEST(Renyi, EqualStatesGiveZero) {
  Rng rng(32);
  auto rho = random_density(2, rng);
  EXPECT_NEAR(renyi_alpha(rho, rho, 0.5).value(), 0.0, 1e-12);
}

TEST(Renyi, RejectsAlphaNearOne) {
  auto r = ddiag({0.5, 0.5});
  EXPECT_THROW(renyi_alpha(r, r, 1.0), DomainError);
  EXPECT_THROW(renyi_alpha(r, r, 1.0 + 1e-7), DomainError);
}

TEST(Renyi, ApproachesUmegakiAsAlphaTendsToOne) {
  Rng rng(33);
  auto rho = random_density(3, rng), sigma = random_density(3, rng);
  const double target = umegaki(rho, sigma).value();
  double prev = INFINITY;
  for (double a : {0.9, 0.99, 0.999}) {
    const double err = std::abs(renyi_alpha(rho, sigma, a).value() - target);
    EXPECT_LT(err, prev);
    prev = err;
  }
  EXPECT_LT(prev, 1e-2);
}

TEST(Sandwiched, CommutingCaseCollapses) {
  EXPECT_NEAR(sandwiched_alpha(ddiag({0.5, 0.5}), ddiag({0.25, 0.75}), 2.0).value(),
              std::log(4.0 / 3.0), 1e-13);
}

TEST(Sandwiched, BelowPetzRenyi) {
  Rng rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    auto rho = random_density(2, rng), sigma = random_density(2, rng);
    EXPECT_LE(sandwiched_alpha(rho, sigma, 2.0).value(), renyi_alpha(rho, sigma, 2.0).value() + 1e-12);
  }
}

TEST(Sandwiched, RejectsNonPositiveAlpha) {
  auto r = ddiag({0.5, 0.5});
  EXPECT_THROW(sandwiched_alpha(r, r, 0.0), DomainError);
  EXPECT_THROW(sandwiched_alpha(r, r, -1.0), DomainError);
}

TEST(AlphaZ, ReducesToPetzAndSandwiched) {
  Rng rng(35);
  for (int trial = 0; trial < 50; ++trial) {
    auto rho = random_density(2, rng), sigma = random_density(2, rng);
    EXPECT_NEAR(alpha_z(rho, sigma, 2.0, 1.0).value(), renyi_alpha(rho, sigma, 2.0).value(), 1e-9);
    EXPECT_NEAR(alpha_z(rho, sigma, 2.0, 2.0).value(), sandwiched_alpha(rho, sigma, 2.0).value(),
                1e-9);
  }
}

TEST(AlphaZ, MatchesReferenceFormula) {
  Rng rng(36);
  for (int trial = 0; trial < 50; ++trial) {
    auto rho = random_density(3, rng), sigma = random_density(3, rng);
    for (auto [a, z] : {std::pair{0.5, 0.7}, {1.5, 1.0}, {3.0, 2.5}, {0.3, 4.0}})
      EXPECT_NEAR(alpha_z(rho, sigma, a, z).value(), ref_alpha_z(rho.matrix(), sigma.matrix(), a, z),
                  1e-9);
  }
}

TEST(AlphaZ, ClassicalIndependentOfZ) {
  auto rho = ddiag({0.2, 0.3, 0.5}), sigma = ddiag({0.6, 0.1, 0.3});
  for (double a : {0.5, 2.0, 3.0}) {
    double lo = INFINITY, hi = -INFINITY;
    for (double z : {0.5, 1.0, 2.0, 5.0}) {
      const double v = alpha_z(rho, sigma, a, z).value();
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    EXPECT_LE(hi - lo, 1e-9);
  }
}

TEST(AlphaZ, DomainErrors) {
  auto r = ddiag({0.5, 0.5});
  EXPECT_THROW(alpha_z(r, r, 2.0, 0.0), DomainError);
  EXPECT_THROW(alpha_z(r, r, 1.0, 1.0), DomainError);
}

TEST(AlphaZ, MonotoneRegion) {
  EXPECT_TRUE(alpha_z_monotone_region(0.5, 0.5));
  EXPECT_FALSE(alpha_z_monotone_region(1.5, 0.6));
  EXPECT_TRUE(alpha_z_monotone_region(3.0, 2.5));
  EXPECT_TRUE(alpha_z_monotone_region(1.5, 0.75));
  EXPECT_TRUE(alpha_z_monotone_region(2.0, 1.0));
  EXPECT_FALSE(alpha_z_monotone_region(0.3, 0.5));
  EXPECT_FALSE(alpha_z_monotone_region(3.0, 1.5));
  EXPECT_FALSE(alpha_z_monotone_region(3.0, 3.5));
}

TEST(Entropies, UmegakiMatchesReference) {
  Rng rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    auto rho = random_density(3, rng), sigma = random_density(3, rng);
    EXPECT_NEAR(umegaki(rho, sigma).value(), ref_umegaki(rho.matrix(), sigma.matrix()), 1e-10);
  }
}

TEST(Entropies, NonnegativeAndPositiveOnDistinctPairs) {
  Rng rng(38);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 3;
    auto rho = random_density(n, rng), sigma = random_density(n, rng);
    for (const auto& spec : kInRange) {
      const double v = spec.evaluate(rho, sigma).value();
      EXPECT_GT(v, 0.0) << spec.name();
      EXPECT_NEAR(spec.evaluate(rho, rho).value(), 0.0, 1e-9) << spec.name();
    }
  }
}

TEST(Entropies, UnitaryInvariance) {
  Rng rng(39);
  for (int trial = 0; trial < 30; ++trial) {
    auto rho = random_density(3, rng), sigma = random_density(3, rng);
    ComplexMatrix u = random_unitary(3, rng);
    auto urho = DensityMatrix::from(ComplexMatrix(u * rho.matrix() * u.adjoint()));
    auto usigma = DensityMatrix::from(ComplexMatrix(u * sigma.matrix() * u.adjoint()));
    for (const auto& spec : kInRange)
      EXPECT_NEAR(spec.evaluate(urho, usigma).value(), spec.evaluate(rho, sigma).value(), 1e-9)
          << spec.name();
  }
}

TEST(Density, RejectsNonStates) {
  EXPECT_THROW(ddiag({0.5, 0.6}), InvariantError);
  EXPECT_THROW(ddiag({1.5, -0.5}), InvariantError);
}
