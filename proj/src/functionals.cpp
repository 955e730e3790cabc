#include "tracelab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tracelab/errors.hpp"
#include "tracelab/random.hpp"
#include "tracelab/tolerances.hpp"

namespace tracelab {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

void require_conformable(const PositiveMatrix& a, const ComplexMatrix& k, const char* op) {
  if (k.rows() != a.dim() || k.cols() == 0)
    throw DimensionError(std::string(op) + ": K must have as many rows as A");
}

void require_same_dim(const PositiveMatrix& a, const PositiveMatrix& b, const char* op) {
  if (a.dim() != b.dim()) throw DimensionError(std::string(op) + ": argument dimensions differ");
}

void require_real_trace(Complex tr, const char* op) {
  if (std::abs(tr.imag()) > tolerances().imaginary_trace * (1.0 + std::abs(tr))) {
    std::ostringstream os;
    os << op << ": trace has imaginary part " << tr.imag();
    throw NumericalError(os.str());
  }
}

double relative_deviation(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

}  // namespace

double trace_psd_power(const ComplexMatrix& x, double s) {
  require_finite(s, "trace_psd_power: exponent");
  if (s == 0.0) throw DomainError("trace_psd_power: exponent s must be nonzero");
  require_real_trace(trace(x), "trace_psd_power");

  const auto sd = eig_hermitian(HermitianMatrix::from(x));
  const double floor = tolerances().psd_rel * max_abs(x);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
    const double lambda = sd.eigenvalues(i);
    if (lambda < -floor) {
      std::ostringstream os;
      os << "trace_psd_power: inner matrix is indefinite (eigenvalue " << lambda << ")";
      throw NumericalError(os.str());
    }
    if (s < 0.0) {
      if (lambda <= floor) throw SingularityError("trace_psd_power: singular inner matrix with s < 0");
      sum += std::pow(lambda, s);
    } else if (lambda > 0.0) {
      sum += std::pow(lambda, s);
    }
  }
  return sum;
}

double lambda_rs(const PositiveMatrix& a, const ComplexMatrix& k, const PositiveMatrix& m,
                 LambdaParams params) {
  require_finite(params.r, "lambda_rs: r");
  require_conformable(a, k, "lambda_rs");
  require_same_dim(a, m, "lambda_rs");
  const ComplexMatrix ar = matrix_power(a, params.r).matrix();
  const ComplexMatrix inner = k.adjoint() * ar * m.matrix() * ar * k;
  return trace_psd_power(inner, params.s);
}

double gamma_ps(const PositiveMatrix& a, const ComplexMatrix& k, GammaParams params) {
  require_finite(params.p, "gamma_ps: p");
  require_conformable(a, k, "gamma_ps");
  const ComplexMatrix inner = k.adjoint() * matrix_power(a, params.p).matrix() * k;
  return trace_psd_power(inner, params.s);
}

double psi_pqs(const PositiveMatrix& a, const PositiveMatrix& b, const ComplexMatrix& k,
               PsiParams params) {
  require_finite(params.p, "psi_pqs: p");
  require_finite(params.q, "psi_pqs: q");
  require_conformable(a, k, "psi_pqs");
  if (k.cols() != b.dim()) throw DimensionError("psi_pqs: K must have as many columns as B");
  const ComplexMatrix bq = matrix_power(b, params.q / 2.0).matrix();
  const ComplexMatrix inner = bq * k.adjoint() * matrix_power(a, params.p).matrix() * k * bq;
  return trace_psd_power(inner, params.s);
}

double omega_pqr(const PositiveMatrix& a, const PositiveMatrix& b, const PositiveMatrix& c,
                 OmegaParams params) {
  require_finite(params.p, "omega_pqr: p");
  require_finite(params.q, "omega_pqr: q");
  require_finite(params.r, "omega_pqr: r");
  require_same_dim(a, b, "omega_pqr");
  require_same_dim(a, c, "omega_pqr");
  const ComplexMatrix aq = matrix_power(a, params.q / 2.0).matrix();
  const ComplexMatrix product =
      aq * matrix_power(b, params.p).matrix() * aq * matrix_power(c, params.r).matrix();
  const Complex tr = product.trace();
  require_real_trace(tr, "omega_pqr");
  return tr.real();
}

double uplambda_p(const PositiveMatrix& a, const ComplexMatrix& k, const PositiveMatrix& m,
                  double p) {
  require_finite(p, "uplambda_p: p");
  if (p == 0.0) throw DomainError("uplambda_p: p must be nonzero");
  require_conformable(a, k, "uplambda_p");
  require_same_dim(a, m, "uplambda_p");
  const ComplexMatrix half = matrix_power(a, p / 2.0).matrix();
  const ComplexMatrix inner = k.adjoint() * half * m.matrix() * half * k;
  return trace_psd_power(inner, 1.0 / p);
}

// ---------------------------------------------------------------------------

std::vector<IdentityDeviation> run_identity_suite(const IdentitySuiteConfig& cfg) {
  if (cfg.trials < 1 || cfg.dims.empty()) throw DomainError("identity suite: empty configuration");

  std::vector<IdentityDeviation> out{
      {"lambda(A)[K,I] = gamma_{2r,s}(A)[K]", 0.0, 0},
      {"lambda(A)[I,M] = psi_{1,2r,s}(M,A)[I]", 0.0, 0},
      {"lambda(A)[K,M*M] = lambda(A)[M,KK*]", 0.0, 0},
      {"lambda_{1,s}(A)[K,M] = gamma_{2,s}(M^1/2 A M^1/2)[M^-1/2 K]", 0.0, 0},
      {"lambda_{r,s}(A)[K,M] = lambda_{-r,-s}(A)[(K*)^-1,M^-1]", 0.0, 0},
      {"lambda_{r,1}(A)[K,M] = omega_{1,2r,1}(A,M,KK*)", 0.0, 0},
      {"uplambda_p(A)[K,M] = lambda_{p/2,1/p}(A)[K,M]", 0.0, 0},
      {"gamma_{p,s}(A)[K] = gamma_{-p,-s}(A)[(K*)^-1]", 0.0, 0},
      {"psi_{p,q,s}(A,B)[K] = psi_{q,p,s}(B,A)[K*]", 0.0, 0},
  };
  auto record = [&](std::size_t idx, double lhs, double rhs) {
    out[idx].max_relative_deviation =
        std::max(out[idx].max_relative_deviation, relative_deviation(lhs, rhs));
    ++out[idx].instances;
  };

  std::uniform_real_distribution<double> r_dist(-1.0, 1.0);
  std::uniform_real_distribution<double> s_dist(0.25, 2.0);
  for (int dim : cfg.dims) {
    for (int trial = 0; trial < cfg.trials; ++trial) {
      Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(dim) * 1000003ULL + trial));
      const PositiveMatrix a = random_positive(dim, rng, cfg.max_condition);
      const PositiveMatrix b = random_positive(dim, rng, cfg.max_condition);
      const PositiveMatrix m = random_positive(dim, rng, cfg.max_condition);
      const ComplexMatrix k = random_invertible(dim, rng, cfg.max_condition);
      const LambdaParams lp{r_dist(rng), s_dist(rng)};
      const PositiveMatrix id = PositiveMatrix::identity(dim);
      const ComplexMatrix eye = ComplexMatrix::Identity(dim, dim);

      record(0, lambda_rs(a, k, id, lp), gamma_ps(a, k, {2.0 * lp.r, lp.s}));
      record(1, lambda_rs(a, eye, m, lp), psi_pqs(m, a, eye, {1.0, 2.0 * lp.r, lp.s}));

      // M Hermitian (here positive), so M*M = M^2.
      const PositiveMatrix m_star_m = PositiveMatrix::from(m.matrix().adjoint() * m.matrix());
      const PositiveMatrix kk_star = PositiveMatrix::from(k * k.adjoint());
      record(2, lambda_rs(a, k, m_star_m, lp), lambda_rs(a, m.matrix(), kk_star, lp));

      const ComplexMatrix m_half = matrix_power(m, 0.5).matrix();
      const ComplexMatrix m_neg_half = matrix_power(m, -0.5).matrix();
      const PositiveMatrix congruent = PositiveMatrix::from(m_half * a.matrix() * m_half);
      record(3, lambda_rs(a, k, m, {1.0, lp.s}),
             gamma_ps(congruent, m_neg_half * k, {2.0, lp.s}));

      const ComplexMatrix k_inv_star = inverse(k.adjoint());
      const PositiveMatrix m_inv = PositiveMatrix::from(matrix_power(m, -1.0));
      record(4, lambda_rs(a, k, m, lp), lambda_rs(a, k_inv_star, m_inv, {-lp.r, -lp.s}));

      record(5, lambda_rs(a, k, m, {lp.r, 1.0}),
             omega_pqr(a, m, kk_star, {1.0, 2.0 * lp.r, 1.0}));

      const double p = 2.0 * lp.r == 0.0 ? 0.5 : 2.0 * lp.r;
      record(6, uplambda_p(a, k, m, p), lambda_rs(a, k, m, {p / 2.0, 1.0 / p}));

      record(7, gamma_ps(a, k, {2.0 * lp.r, lp.s}),
             gamma_ps(a, k_inv_star, {-2.0 * lp.r, -lp.s}));

      const PsiParams pp{r_dist(rng), r_dist(rng), lp.s};
      record(8, psi_pqs(a, b, k, pp), psi_pqs(b, a, k.adjoint(), {pp.q, pp.p, pp.s}));
    }
  }
  return out;
}

}  // namespace tracelab
