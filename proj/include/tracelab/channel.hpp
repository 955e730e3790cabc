#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tracelab/entropy.hpp"
#include "tracelab/parallel.hpp"
#include "tracelab/random.hpp"
#include "tracelab/spectral.hpp"

namespace tracelab {

// CPTP map X -> sum_i K_i X K_i*, each K_i of shape d_out x d_in.
class KrausChannel {
 public:
  // Validates shapes and trace preservation.
  static KrausChannel from(std::vector<ComplexMatrix> kraus);

  Eigen::Index d_in() const noexcept { return d_in_; }
  Eigen::Index d_out() const noexcept { return d_out_; }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }

 private:
  KrausChannel(std::vector<ComplexMatrix> k, Eigen::Index din, Eigen::Index dout)
      : kraus_(std::move(k)), d_in_(din), d_out_(dout) {}
  std::vector<ComplexMatrix> kraus_;
  Eigen::Index d_in_;
  Eigen::Index d_out_;
};

KrausChannel identity_channel(Eigen::Index dim);
KrausChannel unitary_channel(const ComplexMatrix& u);
// X -> (1 - p) X + p tr(X) I/d. Kraus: sqrt(1-p) I and sqrt(p/d) |i><j|.
KrausChannel depolarizing_channel(Eigen::Index dim, double p);

HermitianMatrix apply(const KrausChannel& n, const HermitianMatrix& x);
HermitianMatrix adjoint_apply(const KrausChannel& n, const HermitianMatrix& y);
// General (non-Hermitian) operands, for the duality check.
ComplexMatrix apply(const KrausChannel& n, const ComplexMatrix& x);
ComplexMatrix adjoint_apply(const KrausChannel& n, const ComplexMatrix& y);

DensityMatrix apply(const KrausChannel& n, const DensityMatrix& rho);

DensityMatrix random_density(Eigen::Index dim, Rng& rng);
DensityMatrix random_density(Eigen::Index dim, std::uint64_t seed);
// Stinespring isometry (first d_in columns of a Haar unitary on
// C^{d_out * env_dim}) sliced into env_dim Kraus operators.
// env_dim = 0 selects the default d_in * d_out.
KrausChannel random_channel(Eigen::Index d_in, Eigen::Index d_out, Eigen::Index env_dim, Rng& rng);
KrausChannel random_channel(Eigen::Index d_in, Eigen::Index d_out, Eigen::Index env_dim,
                            std::uint64_t seed);

// rho^{1/2} N*(N(rho)^{-1/2} omega N(rho)^{-1/2}) rho^{1/2}, with inverse
// powers taken on the support of N(rho).
HermitianMatrix petz_recover(const DensityMatrix& rho, const KrausChannel& n,
                             const HermitianMatrix& omega);

// --- DPI -------------------------------------------------------------------

enum class EntropyKind { Umegaki, Renyi, Sandwiched, AlphaZ };

struct EntropySpec {
  EntropyKind kind = EntropyKind::Umegaki;
  double alpha = 0.5;
  double z = 1.0;

  std::string name() const;
  EntropyValue evaluate(const DensityMatrix& rho, const DensityMatrix& sigma) const;
  // Whether the DPI is a theorem for these parameters.
  bool in_dpi_range() const;
};

EntropyKind parse_entropy_kind(const std::string& s);

struct DpiReport {
  EntropySpec spec;
  EntropyValue value_in = EntropyValue::infinite();
  EntropyValue value_out = EntropyValue::infinite();
  std::optional<double> gap;  // value_in - value_out, both finite only
  bool in_range = true;
};

// Refuses out-of-range parameters unless force is set.
DpiReport dpi_gap(const EntropySpec& spec, const KrausChannel& n, const DensityMatrix& rho,
                  const DensityMatrix& sigma, bool force = false);

// ||LHS - RHS||_F of the sandwiched equality condition, alpha >= 1/2.
double sandwiched_equality_residual(const KrausChannel& n, const DensityMatrix& rho,
                                    const DensityMatrix& sigma, double alpha);
// Same for the alpha-z condition; (alpha, z) in the monotone region.
double alpha_z_equality_residual(const KrausChannel& n, const DensityMatrix& rho,
                                 const DensityMatrix& sigma, double alpha, double z);
// Outer exponent (1-z)/(2z), inner power z-1; 1 < alpha <= 2, alpha/2 <= z <= alpha.
double chehade_residual(const KrausChannel& n, const DensityMatrix& rho,
                        const DensityMatrix& sigma, double alpha, double z);

// --- batch -----------------------------------------------------------------

struct DpiBatchConfig {
  EntropySpec spec;
  int trials = 200;
  std::vector<int> dims{2};
  std::uint64_t seed = 1;
  bool force = false;
  Execution execution = Execution::Parallel;
};

struct DpiTrialRecord {
  int trial = 0;
  int dim = 0;
  std::uint64_t seed = 0;
  DpiReport report;
  std::string error;
};

struct DpiBatchResult {
  std::vector<DpiTrialRecord> trials;
  double min_gap = 0.0;
  double mean_gap = 0.0;
  int finite_gaps = 0;
  int violations = 0;  // gap < -dpi tolerance
  int errors = 0;
};

// Trial i draws (channel, rho, sigma) from derive_seed(seed, i) at
// dims[i % dims.size()]. Serial and parallel runs produce identical results.
DpiBatchResult run_dpi_batch(const DpiBatchConfig& cfg);

}  // namespace tracelab
