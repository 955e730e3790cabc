#pragma once

#include <limits>
#include <memory>
#include <string>

#include "tracelab/spectral.hpp"

namespace tracelab {

// Quantum state: Hermitian PSD with unit trace. Caches its spectrum.
class DensityMatrix {
 public:
  static DensityMatrix from(const HermitianMatrix& h);
  static DensityMatrix from(const ComplexMatrix& m);
  static DensityMatrix diagonal(const RealVector& probabilities);

  const HermitianMatrix& hermitian() const noexcept { return base_; }
  const ComplexMatrix& matrix() const noexcept { return base_.matrix(); }
  Eigen::Index dim() const noexcept { return base_.dim(); }
  const SpectralDecomposition& spectrum() const noexcept { return *spectrum_; }

 private:
  DensityMatrix(HermitianMatrix base, std::shared_ptr<const SpectralDecomposition> sd)
      : base_(std::move(base)), spectrum_(std::move(sd)) {}
  HermitianMatrix base_;
  std::shared_ptr<const SpectralDecomposition> spectrum_;
};

// Finite real or +infinity.
class EntropyValue {
 public:
  static EntropyValue finite(double v);
  static EntropyValue infinite() noexcept { return EntropyValue(); }

  bool is_finite() const noexcept { return finite_; }
  // +inf for the infinite branch.
  double value() const noexcept {
    return finite_ ? value_ : std::numeric_limits<double>::infinity();
  }
  std::string to_string() const;

 private:
  EntropyValue() = default;
  bool finite_ = false;
  double value_ = 0.0;
};

// tr(rho log rho - rho log sigma), natural log.
EntropyValue umegaki(const DensityMatrix& rho, const DensityMatrix& sigma);

// (1/(alpha-1)) log tr(rho^alpha sigma^{1-alpha})
EntropyValue renyi_alpha(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha);

// (1/(alpha-1)) log tr[(sigma^g rho sigma^g)^alpha], g = (1-alpha)/(2 alpha)
EntropyValue sandwiched_alpha(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha);

// (1/(alpha-1)) log tr[(sigma^g rho^{alpha/z} sigma^g)^z], g = (1-alpha)/(2z)
EntropyValue alpha_z(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha, double z);

// Parameter pairs for which the alpha-z entropy is monotone under channels.
bool alpha_z_monotone_region(double alpha, double z);

// ||(I - P_sigma) P_rho||_F <= containment tolerance.
bool support_contained(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace tracelab
