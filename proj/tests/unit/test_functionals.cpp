#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

#include "tracelab/errors.hpp"
#include "tracelab/functionals.hpp"
#include "tracelab/random.hpp"

using namespace tracelab;

namespace {

// Reference spectral calculus through Eigen's own solver.
ComplexMatrix ref_power(const ComplexMatrix& a, double p) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
  Eigen::VectorXd d = es.eigenvalues().array().pow(p);
  return es.eigenvectors() * d.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

double ref_trace_power(const ComplexMatrix& x, double s) {
  ComplexMatrix h = (x + x.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  double sum = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0) sum += std::pow(es.eigenvalues()(i), s);
  return sum;
}

double ref_lambda(const ComplexMatrix& a, const ComplexMatrix& k, const ComplexMatrix& m, double r,
                  double s) {
  ComplexMatrix ar = ref_power(a, r);
  return ref_trace_power(k.adjoint() * ar * m * ar * k, s);
}

PositiveMatrix pdiag(std::initializer_list<double> d) {
  RealVector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return PositiveMatrix::diagonal(v);
}

ComplexMatrix eye(int n) { return ComplexMatrix::Identity(n, n); }

}  // namespace

TEST(Lambda, IdentityInputs) {
  auto i2 = PositiveMatrix::identity(2);
  EXPECT_NEAR(lambda_rs(i2, eye(2), i2, {1.0, 1.0}), 2.0, 1e-14);
}

TEST(Lambda, ScalarMultiplesOfIdentity) {
  auto a = pdiag({0.75, 0.75});
  auto m = pdiag({2.5, 2.5});
  for (double s : {0.25, 1.0, 2.0}) {
    const double expect = 2.0 * std::pow(0.75 * 0.75 * 2.5, s);
    EXPECT_NEAR(lambda_rs(a, eye(2), m, {1.0, s}), expect, 1e-12 * expect);
  }
}

TEST(Lambda, SingularKWithPositiveExponent) {
  ComplexMatrix k = ComplexMatrix::Zero(2, 2);
  k(0, 0) = 1.0;
  auto i2 = PositiveMatrix::identity(2);
  EXPECT_NEAR(lambda_rs(i2, k, i2, {1.0, 1.0}), 1.0, 1e-14);
}

TEST(Lambda, SingularKWithNegativeExponentThrows) {
  ComplexMatrix k = ComplexMatrix::Zero(2, 2);
  k(0, 0) = 1.0;
  auto i2 = PositiveMatrix::identity(2);
  EXPECT_THROW(lambda_rs(i2, k, i2, {1.0, -0.5}), SingularityError);
}

TEST(Lambda, MatchesReferenceOnRandomInputs) {
  Rng rng(21);
  std::uniform_real_distribution<double> rd(-2.0, 2.0), sd(0.1, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 4;
    auto a = random_positive(n, rng, 100.0);
    auto m = random_positive(n, rng, 100.0);
    ComplexMatrix k = random_invertible(n, rng, 50.0);
    const double r = rd(rng), s = sd(rng);
    const double expect = ref_lambda(a.matrix(), k, m.matrix(), r, s);
    EXPECT_NEAR(lambda_rs(a, k, m, {r, s}), expect, 1e-10 * std::abs(expect));
  }
}

TEST(Lambda, HomogeneousInK) {
  Rng rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_positive(3, rng);
    auto m = random_positive(3, rng);
    ComplexMatrix k = random_invertible(3, rng);
    const double c = 0.3 + 0.2 * trial, s = 0.7;
    const double base = lambda_rs(a, k, m, {0.6, s});
    EXPECT_NEAR(lambda_rs(a, c * k, m, {0.6, s}), std::pow(c, 2 * s) * base,
                1e-10 * std::pow(c, 2 * s) * base);
  }
}

TEST(Lambda, UnitaryInvariance) {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 3;
    auto a = random_positive(n, rng);
    auto m = random_positive(n, rng);
    ComplexMatrix k = random_invertible(n, rng);
    ComplexMatrix u = random_unitary(n, rng);
    auto ua = PositiveMatrix::from(ComplexMatrix(u * a.matrix() * u.adjoint()));
    auto um = PositiveMatrix::from(ComplexMatrix(u * m.matrix() * u.adjoint()));
    const double v = lambda_rs(a, k, m, {0.8, 1.3});
    EXPECT_NEAR(lambda_rs(ua, u * k, um, {0.8, 1.3}), v, 1e-10 * v);
  }
}

TEST(Gamma, DiagonalExamples) {
  EXPECT_NEAR(gamma_ps(pdiag({1, 2}), eye(2), {2.0, 1.0}), 5.0, 1e-13);
  EXPECT_NEAR(gamma_ps(PositiveMatrix::identity(3), eye(3), {0.7, 1.9}), 3.0, 1e-13);
}

TEST(Gamma, ReciprocalSymmetry) {
  Rng rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_positive(3, rng);
    ComplexMatrix k = random_invertible(3, rng);
    ComplexMatrix kinv = k.adjoint().inverse();
    const double v = gamma_ps(a, k, {1.2, 0.6});
    EXPECT_NEAR(gamma_ps(a, kinv, {-1.2, -0.6}), v, 1e-10 * v);
  }
}

TEST(Psi, IdentityAndDiagonal) {
  auto i2 = PositiveMatrix::identity(2);
  EXPECT_NEAR(psi_pqs(i2, i2, eye(2), {1.0, 1.0, 1.0}), 2.0, 1e-14);
  EXPECT_NEAR(psi_pqs(pdiag({1, 2}), pdiag({3, 1}), eye(2), {1.0, 1.0, 1.0}), 5.0, 1e-13);
}

TEST(Psi, SwapSymmetry) {
  Rng rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_positive(3, rng);
    auto b = random_positive(3, rng);
    ComplexMatrix k = random_invertible(3, rng);
    const double v = psi_pqs(a, b, k, {0.4, -0.7, 1.5});
    EXPECT_NEAR(psi_pqs(b, a, k.adjoint(), {-0.7, 0.4, 1.5}), v, 1e-10 * v);
  }
}

TEST(Omega, Examples) {
  auto i2 = PositiveMatrix::identity(2);
  EXPECT_NEAR(omega_pqr(i2, i2, i2, {1.0, 1.0, 1.0}), 2.0, 1e-14);
  // A B A C on diagonals: 1*2*1*1 + 2*3*2*1
  EXPECT_NEAR(omega_pqr(pdiag({1, 2}), pdiag({2, 3}), i2, {1.0, 2.0, 1.0}), 14.0, 1e-13);
}

TEST(Omega, LinksToLambdaAtUnitExponent) {
  Rng rng(26);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_positive(3, rng);
    auto m = random_positive(3, rng);
    ComplexMatrix k = random_invertible(3, rng);
    auto kk = PositiveMatrix::from(ComplexMatrix(k * k.adjoint()));
    const double r = -1.0 + 0.07 * trial;
    const double v = lambda_rs(a, k, m, {r, 1.0});
    EXPECT_NEAR(omega_pqr(a, m, kk, {1.0, 2 * r, 1.0}), v, 1e-10 * v);
  }
}

TEST(Uplambda, Examples) {
  auto i2 = PositiveMatrix::identity(2);
  EXPECT_NEAR(uplambda_p(i2, eye(2), i2, 0.5), 2.0, 1e-14);
  // p = 1: tr(A^{1/2} A^{1/2}) = tr A
  EXPECT_NEAR(uplambda_p(pdiag({4, 1}), eye(2), i2, 1.0), 5.0, 1e-13);
  EXPECT_THROW(uplambda_p(i2, eye(2), i2, 0.0), DomainError);
}

TEST(TracePower, ClampsRoundoffButRejectsIndefinite) {
  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  x(0, 0) = 1.0;
  x(1, 1) = -1e-16;
  EXPECT_NEAR(trace_psd_power(x, 0.5), 1.0, 1e-15);
  x(1, 1) = -0.1;
  EXPECT_THROW(trace_psd_power(x, 0.5), NumericalError);
}

TEST(TracePower, RejectsComplexTrace) {
  ComplexMatrix x = ComplexMatrix::Identity(2, 2);
  x(0, 0) = Complex(1.0, 0.5);
  EXPECT_THROW(trace_psd_power(x, 1.0), NumericalError);
}

TEST(TracePower, RejectsZeroExponent) {
  EXPECT_THROW(trace_psd_power(eye(2), 0.0), DomainError);
}

TEST(Arguments, DimensionMismatchThrows) {
  auto i2 = PositiveMatrix::identity(2);
  auto i3 = PositiveMatrix::identity(3);
  EXPECT_THROW(lambda_rs(i2, eye(3), i2, {}), DimensionError);
  EXPECT_THROW(lambda_rs(i2, eye(2), i3, {}), DimensionError);
  EXPECT_THROW(psi_pqs(i2, i3, eye(2), {}), DimensionError);
}

TEST(IdentitySuite, AllIdentitiesHold) {
  IdentitySuiteConfig cfg;
  cfg.trials = 40;
  for (const auto& d : run_identity_suite(cfg)) {
    EXPECT_EQ(d.instances, 120) << d.name;
    EXPECT_LE(d.max_relative_deviation, 1e-10) << d.name;
  }
}
