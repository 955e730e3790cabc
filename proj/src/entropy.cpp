#include "tracelab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tracelab/errors.hpp"
#include "tracelab/tolerances.hpp"

namespace tracelab {

namespace {

void require_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma, const char* op) {
  if (rho.dim() != sigma.dim()) throw DimensionError(std::string(op) + ": state dimensions differ");
}

void require_alpha_not_one(double alpha, const char* op) {
  if (!std::isfinite(alpha)) throw DomainError(std::string(op) + ": alpha must be finite");
  if (std::abs(alpha - 1.0) < tolerances().alpha_one_band)
    throw DomainError(std::string(op) + ": alpha too close to 1, use umegaki");
}

HermitianMatrix support_of(const DensityMatrix& d) {
  const double tol = tolerances().support;
  return HermitianMatrix::symmetrize(
      spectral_apply(d.spectrum(), [tol](double x) { return x > tol ? 1.0 : 0.0; }));
}

HermitianMatrix power_of(const DensityMatrix& d, double p) {
  return psd_power(d.spectrum(), p, tolerances().support);
}

// (1/(alpha-1)) log q, with q <= 0 treated as the infinite branch.
EntropyValue renyi_from_quasi(double quasi, double alpha) {
  if (!(quasi > 0.0)) return EntropyValue::infinite();
  return EntropyValue::finite(std::log(quasi) / (alpha - 1.0));
}

// tr[X^p] over the positive part of a PSD matrix; zero eigenvalues drop out.
double trace_power_on_support(const ComplexMatrix& x, double p) {
  const auto sd = eig_hermitian(HermitianMatrix::symmetrize(x));
  const double floor = tolerances().psd_rel * std::max(1.0, max_abs(x));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
    const double lambda = sd.eigenvalues(i);
    if (lambda < -floor) throw NumericalError("entropy: inner matrix is indefinite");
    if (lambda > floor) sum += std::pow(lambda, p);
  }
  return sum;
}

}  // namespace

DensityMatrix DensityMatrix::from(const HermitianMatrix& h) {
  auto sd = std::make_shared<SpectralDecomposition>(eig_hermitian(h));
  const double floor = tolerances().psd_rel * std::max(1.0, max_abs(h.matrix()));
  if (sd->eigenvalues(0) < -floor) {
    std::ostringstream os;
    os << "DensityMatrix: negative eigenvalue " << sd->eigenvalues(0);
    throw InvariantError(os.str());
  }
  const double tr = h.matrix().trace().real();
  if (std::abs(tr - 1.0) > tolerances().unit_trace) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr << " differs from 1";
    throw InvariantError(os.str());
  }
  return DensityMatrix(h, std::move(sd));
}

DensityMatrix DensityMatrix::from(const ComplexMatrix& m) { return from(HermitianMatrix::from(m)); }

DensityMatrix DensityMatrix::diagonal(const RealVector& probabilities) {
  return from(HermitianMatrix::diagonal(probabilities));
}

EntropyValue EntropyValue::finite(double v) {
  if (!std::isfinite(v)) throw NumericalError("EntropyValue: finite branch requires a finite value");
  EntropyValue e;
  e.finite_ = true;
  e.value_ = v;
  return e;
}

std::string EntropyValue::to_string() const {
  if (!finite_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

bool support_contained(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "support_contained");
  const ComplexMatrix p_rho = support_of(rho).matrix();
  const ComplexMatrix p_sigma = support_of(sigma).matrix();
  const ComplexMatrix outside = ComplexMatrix::Identity(rho.dim(), rho.dim()) - p_sigma;
  return (outside * p_rho).norm() <= tolerances().containment;
}

EntropyValue umegaki(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "umegaki");
  if (!support_contained(rho, sigma)) return EntropyValue::infinite();
  const double tol = tolerances().support;
  double rho_log_rho = 0.0;
  for (Eigen::Index i = 0; i < rho.spectrum().eigenvalues.size(); ++i) {
    const double lambda = rho.spectrum().eigenvalues(i);
    if (lambda > tol) rho_log_rho += lambda * std::log(lambda);
  }
  const ComplexMatrix log_sigma = psd_log(sigma.spectrum(), tol).matrix();
  const double rho_log_sigma = (rho.matrix() * log_sigma).trace().real();
  return EntropyValue::finite(rho_log_rho - rho_log_sigma);
}

EntropyValue renyi_alpha(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  require_same_dim(rho, sigma, "renyi_alpha");
  require_alpha_not_one(alpha, "renyi_alpha");
  if (!support_contained(rho, sigma)) return EntropyValue::infinite();
  const ComplexMatrix product = power_of(rho, alpha).matrix() * power_of(sigma, 1.0 - alpha).matrix();
  return renyi_from_quasi(product.trace().real(), alpha);
}

EntropyValue sandwiched_alpha(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  require_same_dim(rho, sigma, "sandwiched_alpha");
  require_alpha_not_one(alpha, "sandwiched_alpha");
  if (!(alpha > 0.0)) throw DomainError("sandwiched_alpha: alpha must be positive");
  if (!support_contained(rho, sigma)) return EntropyValue::infinite();
  const ComplexMatrix sg = power_of(sigma, (1.0 - alpha) / (2.0 * alpha)).matrix();
  const ComplexMatrix inner = sg * rho.matrix() * sg;
  return renyi_from_quasi(trace_power_on_support(inner, alpha), alpha);
}

EntropyValue alpha_z(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha, double z) {
  require_same_dim(rho, sigma, "alpha_z");
  require_alpha_not_one(alpha, "alpha_z");
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("alpha_z: z must be positive");
  if (!support_contained(rho, sigma)) return EntropyValue::infinite();
  const ComplexMatrix sg = power_of(sigma, (1.0 - alpha) / (2.0 * z)).matrix();
  const ComplexMatrix inner = sg * power_of(rho, alpha / z).matrix() * sg;
  return renyi_from_quasi(trace_power_on_support(inner, z), alpha);
}

bool alpha_z_monotone_region(double alpha, double z) {
  if (!(z > 0.0) || alpha == 1.0) return false;
  if (alpha > 0.0 && alpha < 1.0) return z >= std::max(alpha, 1.0 - alpha);
  if (alpha > 1.0 && alpha <= 2.0) return alpha / 2.0 <= z && z <= alpha;
  if (alpha >= 2.0) return alpha - 1.0 <= z && z <= alpha;
  return false;
}

}  // namespace tracelab
