#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tracelab/spectral.hpp"

namespace tracelab {

struct LambdaParams {
  double r = 1.0;
  double s = 1.0;
};

struct GammaParams {
  double p = 1.0;
  double s = 1.0;
};

struct PsiParams {
  double p = 1.0;
  double q = 1.0;
  double s = 1.0;
};

struct OmegaParams {
  double p = 1.0;
  double q = 1.0;
  double r = 1.0;
};

// tr[(K* A^r M A^r K)^s]. K may be singular when s > 0: zero eigenvalues of
// the inner matrix contribute nothing.
double lambda_rs(const PositiveMatrix& a, const ComplexMatrix& k, const PositiveMatrix& m,
                 LambdaParams params);

// tr[(K* A^p K)^s]
double gamma_ps(const PositiveMatrix& a, const ComplexMatrix& k, GammaParams params);

// tr[(B^{q/2} K* A^p K B^{q/2})^s]
double psi_pqs(const PositiveMatrix& a, const PositiveMatrix& b, const ComplexMatrix& k,
               PsiParams params);

// tr[A^{q/2} B^p A^{q/2} C^r]
double omega_pqr(const PositiveMatrix& a, const PositiveMatrix& b, const PositiveMatrix& c,
                 OmegaParams params);

// tr[(K* A^{p/2} M A^{p/2} K)^{1/p}], p != 0.
double uplambda_p(const PositiveMatrix& a, const ComplexMatrix& k, const PositiveMatrix& m,
                  double p);

// tr[X^s] for a Hermitian PSD X given as a general matrix. Shared by all of
// the above: checks the real-trace contract, clamps roundoff-negative
// eigenvalues, rejects genuine indefiniteness and s < 0 on singular X.
double trace_psd_power(const ComplexMatrix& x, double s);

// Maximum relative deviation of each algebraic identity linking the
// functionals, over random instances.
struct IdentityDeviation {
  std::string name;
  double max_relative_deviation = 0.0;
  int instances = 0;
};

struct IdentitySuiteConfig {
  int trials = 200;
  std::vector<int> dims{2, 3, 4};
  std::uint64_t seed = 20240601;
  double max_condition = 10.0;
};

std::vector<IdentityDeviation> run_identity_suite(const IdentitySuiteConfig& cfg);

}  // namespace tracelab
