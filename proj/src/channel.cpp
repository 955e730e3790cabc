#include "tracelab/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tracelab/errors.hpp"
#include "tracelab/tolerances.hpp"

namespace tracelab {

namespace {

double pseudo_tol(const ComplexMatrix& x) {
  return std::max(tolerances().support, tolerances().psd_rel * max_abs(x));
}

// Pseudo-power of a PSD operator given as a raw product.
ComplexMatrix pseudo_power(const ComplexMatrix& x, double p) {
  return psd_power(HermitianMatrix::symmetrize(x), p, pseudo_tol(x)).matrix();
}

void require_input_dim(const KrausChannel& n, Eigen::Index d, const char* op) {
  if (d != n.d_in()) throw DimensionError(std::string(op) + ": operand does not match channel input");
}

void require_output_dim(const KrausChannel& n, Eigen::Index d, const char* op) {
  if (d != n.d_out()) throw DimensionError(std::string(op) + ": operand does not match channel output");
}

// sigma^g (sigma^g rho^a sigma^g)^e sigma^h for the equality conditions.
ComplexMatrix sandwich_condition(const ComplexMatrix& sigma, const ComplexMatrix& rho,
                                 double inner_sigma_power, double rho_power, double middle_power,
                                 double outer_sigma_power) {
  const ComplexMatrix s_in = pseudo_power(sigma, inner_sigma_power);
  const ComplexMatrix s_out = pseudo_power(sigma, outer_sigma_power);
  const ComplexMatrix r = rho_power == 1.0 ? rho : pseudo_power(rho, rho_power);
  const ComplexMatrix middle = pseudo_power(s_in * r * s_in, middle_power);
  return s_out * middle * s_out;
}

double condition_residual(const KrausChannel& n, const DensityMatrix& rho,
                          const DensityMatrix& sigma, double inner_sigma_power, double rho_power,
                          double middle_power, double outer_sigma_power) {
  if (rho.dim() != sigma.dim()) throw DimensionError("residual: state dimensions differ");
  require_input_dim(n, rho.dim(), "residual");
  const ComplexMatrix lhs = sandwich_condition(sigma.matrix(), rho.matrix(), inner_sigma_power,
                                               rho_power, middle_power, outer_sigma_power);
  const ComplexMatrix n_rho = apply(n, rho.matrix());
  const ComplexMatrix n_sigma = apply(n, sigma.matrix());
  const ComplexMatrix inside = sandwich_condition(n_sigma, n_rho, inner_sigma_power, rho_power,
                                                  middle_power, outer_sigma_power);
  const ComplexMatrix rhs = adjoint_apply(n, inside);
  return (lhs - rhs).norm();
}

}  // namespace

KrausChannel KrausChannel::from(std::vector<ComplexMatrix> kraus) {
  if (kraus.empty()) throw InvariantError("KrausChannel: empty Kraus family");
  const Eigen::Index d_out = kraus.front().rows();
  const Eigen::Index d_in = kraus.front().cols();
  if (d_out == 0 || d_in == 0) throw DimensionError("KrausChannel: empty Kraus operator");
  ComplexMatrix sum = ComplexMatrix::Zero(d_in, d_in);
  for (const auto& k : kraus) {
    if (k.rows() != d_out || k.cols() != d_in)
      throw DimensionError("KrausChannel: Kraus operators have different shapes");
    if (!k.allFinite()) throw InvariantError("KrausChannel: non-finite entry");
    sum += k.adjoint() * k;
  }
  const double defect = (sum - ComplexMatrix::Identity(d_in, d_in)).norm();
  if (defect > tolerances().trace_preservation) {
    std::ostringstream os;
    os << "KrausChannel: ||sum K*K - I||_F = " << defect << ", not trace preserving";
    throw InvariantError(os.str());
  }
  return KrausChannel(std::move(kraus), d_in, d_out);
}

KrausChannel identity_channel(Eigen::Index dim) {
  return KrausChannel::from({ComplexMatrix::Identity(dim, dim)});
}

KrausChannel unitary_channel(const ComplexMatrix& u) { return KrausChannel::from({u}); }

KrausChannel depolarizing_channel(Eigen::Index dim, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("depolarizing_channel: p must lie in [0, 1]");
  std::vector<ComplexMatrix> ops;
  if (p < 1.0) ops.push_back(std::sqrt(1.0 - p) * ComplexMatrix::Identity(dim, dim));
  const double w = std::sqrt(p / static_cast<double>(dim));
  if (p > 0.0) {
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) {
        ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
        e(i, j) = w;
        ops.push_back(std::move(e));
      }
  }
  return KrausChannel::from(std::move(ops));
}

ComplexMatrix apply(const KrausChannel& n, const ComplexMatrix& x) {
  if (x.rows() != n.d_in() || x.cols() != n.d_in())
    throw DimensionError("apply: operand does not match channel input");
  ComplexMatrix out = ComplexMatrix::Zero(n.d_out(), n.d_out());
  for (const auto& k : n.kraus()) out += k * x * k.adjoint();
  return out;
}

ComplexMatrix adjoint_apply(const KrausChannel& n, const ComplexMatrix& y) {
  if (y.rows() != n.d_out() || y.cols() != n.d_out())
    throw DimensionError("adjoint_apply: operand does not match channel output");
  ComplexMatrix out = ComplexMatrix::Zero(n.d_in(), n.d_in());
  for (const auto& k : n.kraus()) out += k.adjoint() * y * k;
  return out;
}

HermitianMatrix apply(const KrausChannel& n, const HermitianMatrix& x) {
  return HermitianMatrix::symmetrize(apply(n, x.matrix()));
}

HermitianMatrix adjoint_apply(const KrausChannel& n, const HermitianMatrix& y) {
  return HermitianMatrix::symmetrize(adjoint_apply(n, y.matrix()));
}

DensityMatrix apply(const KrausChannel& n, const DensityMatrix& rho) {
  return DensityMatrix::from(apply(n, rho.hermitian()));
}

DensityMatrix random_density(Eigen::Index dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  const ComplexMatrix w = g * g.adjoint();
  return DensityMatrix::from(HermitianMatrix::symmetrize(w / w.trace().real()));
}

DensityMatrix random_density(Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, rng);
}

KrausChannel random_channel(Eigen::Index d_in, Eigen::Index d_out, Eigen::Index env_dim, Rng& rng) {
  if (d_in <= 0 || d_out <= 0 || env_dim < 0) throw DomainError("random_channel: bad dimensions");
  if (env_dim == 0) env_dim = d_in * d_out;
  const Eigen::Index total = d_out * env_dim;
  if (total < d_in) throw DomainError("random_channel: d_out * env_dim must be at least d_in");
  const ComplexMatrix u = random_unitary(total, rng);
  const ComplexMatrix v = u.leftCols(d_in);
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(env_dim));
  for (Eigen::Index e = 0; e < env_dim; ++e) ops.push_back(v.middleRows(e * d_out, d_out));
  return KrausChannel::from(std::move(ops));
}

KrausChannel random_channel(Eigen::Index d_in, Eigen::Index d_out, Eigen::Index env_dim,
                            std::uint64_t seed) {
  Rng rng(seed);
  return random_channel(d_in, d_out, env_dim, rng);
}

HermitianMatrix petz_recover(const DensityMatrix& rho, const KrausChannel& n,
                             const HermitianMatrix& omega) {
  require_input_dim(n, rho.dim(), "petz_recover");
  require_output_dim(n, omega.dim(), "petz_recover");
  const ComplexMatrix n_rho = apply(n, rho.matrix());
  const auto sd = eig_hermitian(HermitianMatrix::symmetrize(n_rho));
  const double tol = pseudo_tol(n_rho);
  const ComplexMatrix support =
      spectral_apply(sd, [tol](double x) { return x > tol ? 1.0 : 0.0; });
  const ComplexMatrix outside = ComplexMatrix::Identity(n.d_out(), n.d_out()) - support;
  const double leak = (outside * omega.matrix()).norm();
  if (leak > tolerances().containment * std::max(1.0, omega.matrix().norm()))
    throw SupportError("petz_recover: omega is not supported on the support of N(rho)");

  const ComplexMatrix inv_half = psd_power(sd, -0.5, tol).matrix();
  const ComplexMatrix rho_half = psd_power(rho.spectrum(), 0.5, tolerances().support).matrix();
  const ComplexMatrix pulled = adjoint_apply(n, ComplexMatrix(inv_half * omega.matrix() * inv_half));
  return HermitianMatrix::symmetrize(rho_half * pulled * rho_half);
}

// --- DPI -------------------------------------------------------------------

std::string EntropySpec::name() const {
  std::ostringstream os;
  switch (kind) {
    case EntropyKind::Umegaki: return "umegaki";
    case EntropyKind::Renyi: os << "renyi(alpha=" << alpha << ")"; break;
    case EntropyKind::Sandwiched: os << "sandwiched(alpha=" << alpha << ")"; break;
    case EntropyKind::AlphaZ: os << "alpha_z(alpha=" << alpha << ",z=" << z << ")"; break;
  }
  return os.str();
}

EntropyValue EntropySpec::evaluate(const DensityMatrix& rho, const DensityMatrix& sigma) const {
  switch (kind) {
    case EntropyKind::Umegaki: return umegaki(rho, sigma);
    case EntropyKind::Renyi: return renyi_alpha(rho, sigma, alpha);
    case EntropyKind::Sandwiched: return sandwiched_alpha(rho, sigma, alpha);
    case EntropyKind::AlphaZ: return tracelab::alpha_z(rho, sigma, alpha, z);
  }
  throw DomainError("EntropySpec: unknown kind");
}

bool EntropySpec::in_dpi_range() const {
  switch (kind) {
    case EntropyKind::Umegaki: return true;
    case EntropyKind::Renyi: return (alpha >= 0.0 && alpha < 1.0) || (alpha > 1.0 && alpha <= 2.0);
    case EntropyKind::Sandwiched: return alpha >= 0.5 && alpha != 1.0;
    case EntropyKind::AlphaZ: return alpha_z_monotone_region(alpha, z);
  }
  return false;
}

EntropyKind parse_entropy_kind(const std::string& s) {
  if (s == "umegaki") return EntropyKind::Umegaki;
  if (s == "renyi") return EntropyKind::Renyi;
  if (s == "sandwiched") return EntropyKind::Sandwiched;
  if (s == "alpha_z" || s == "alpha-z") return EntropyKind::AlphaZ;
  throw DomainError("unknown entropy '" + s + "' (expected umegaki, renyi, sandwiched, alpha_z)");
}

DpiReport dpi_gap(const EntropySpec& spec, const KrausChannel& n, const DensityMatrix& rho,
                  const DensityMatrix& sigma, bool force) {
  DpiReport report;
  report.spec = spec;
  report.in_range = spec.in_dpi_range();
  if (!report.in_range && !force)
    throw DomainError(spec.name() + " is outside the range where the DPI holds (use force to explore)");
  report.value_in = spec.evaluate(rho, sigma);
  report.value_out = spec.evaluate(apply(n, rho), apply(n, sigma));
  if (report.value_in.is_finite() && report.value_out.is_finite())
    report.gap = report.value_in.value() - report.value_out.value();
  return report;
}

double sandwiched_equality_residual(const KrausChannel& n, const DensityMatrix& rho,
                                    const DensityMatrix& sigma, double alpha) {
  if (!(alpha >= 0.5) || alpha == 1.0)
    throw DomainError("sandwiched_equality_residual: alpha must satisfy alpha >= 1/2, alpha != 1");
  const double g = (1.0 - alpha) / (2.0 * alpha);
  return condition_residual(n, rho, sigma, g, 1.0, alpha - 1.0, g);
}

double alpha_z_equality_residual(const KrausChannel& n, const DensityMatrix& rho,
                                 const DensityMatrix& sigma, double alpha, double z) {
  if (!alpha_z_monotone_region(alpha, z))
    throw DomainError("alpha_z_equality_residual: (alpha, z) outside the monotone region");
  const double g = (1.0 - alpha) / (2.0 * z);
  return condition_residual(n, rho, sigma, g, alpha / z, alpha - 1.0, g);
}

double chehade_residual(const KrausChannel& n, const DensityMatrix& rho,
                        const DensityMatrix& sigma, double alpha, double z) {
  if (!(alpha > 1.0 && alpha <= 2.0 && alpha / 2.0 <= z && z <= alpha))
    throw DomainError("chehade_residual: requires 1 < alpha <= 2 and alpha/2 <= z <= alpha");
  const double inner = (1.0 - alpha) / (2.0 * z);
  const double outer = (1.0 - z) / (2.0 * z);
  return condition_residual(n, rho, sigma, inner, alpha / z, z - 1.0, outer);
}

// --- batch -----------------------------------------------------------------

DpiBatchResult run_dpi_batch(const DpiBatchConfig& cfg) {
  if (cfg.trials < 1 || cfg.dims.empty()) throw DomainError("dpi batch: trials and dims must be non-empty");
  if (!cfg.spec.in_dpi_range() && !cfg.force)
    throw DomainError(cfg.spec.name() + " is outside the range where the DPI holds (use --force to explore)");

  DpiBatchResult result;
  result.trials.resize(static_cast<std::size_t>(cfg.trials));
  for_each_task(result.trials.size(), cfg.execution, [&](std::size_t i) {
    DpiTrialRecord& rec = result.trials[i];
    rec.trial = static_cast<int>(i);
    rec.dim = cfg.dims[i % cfg.dims.size()];
    rec.seed = derive_seed(cfg.seed, i);
    rec.report.spec = cfg.spec;
    try {
      Rng rng(rec.seed);
      const KrausChannel n = random_channel(rec.dim, rec.dim, 0, rng);
      const DensityMatrix rho = random_density(rec.dim, rng);
      const DensityMatrix sigma = random_density(rec.dim, rng);
      rec.report = dpi_gap(cfg.spec, n, rho, sigma, cfg.force);
    } catch (const Error& e) {
      rec.error = e.what();
    }
  });

  double sum = 0.0;
  result.min_gap = std::numeric_limits<double>::infinity();
  for (const auto& rec : result.trials) {
    if (!rec.error.empty()) {
      ++result.errors;
      continue;
    }
    if (!rec.report.gap) continue;
    const double g = *rec.report.gap;
    ++result.finite_gaps;
    sum += g;
    result.min_gap = std::min(result.min_gap, g);
    if (g < -tolerances().dpi) ++result.violations;
  }
  result.mean_gap = result.finite_gaps > 0 ? sum / result.finite_gaps : 0.0;
  return result;
}

}  // namespace tracelab
