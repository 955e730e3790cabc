#pragma once

#include <Eigen/Dense>

#include <complex>
#include <memory>

namespace tracelab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Dense arithmetic. Thin checked wrappers: every binary op rejects
// non-conformable operands with DimensionError instead of asserting.

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, Complex c);
ComplexMatrix adjoint(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
double max_abs(const ComplexMatrix& a);
ComplexMatrix inverse(const ComplexMatrix& a);
ComplexMatrix identity(Eigen::Index n);
bool all_finite(const ComplexMatrix& a);

// Largest singular value, via the Hermitian eigensolver on A*A.
double operator_norm(const ComplexMatrix& a);

// ---------------------------------------------------------------------------

// Square matrix with A = A*. Construction from a general matrix checks the
// anti-Hermitian part against the hermiticity tolerance and then stores the
// symmetrized (A + A*)/2, so diagonal entries are exactly real.
class HermitianMatrix {
 public:
  static HermitianMatrix from(const ComplexMatrix& a);
  // Symmetrizes without the tolerance check. For results of spectral
  // calculus and sums of Hermitian matrices, which are Hermitian up to roundoff.
  static HermitianMatrix symmetrize(const ComplexMatrix& a);
  static HermitianMatrix identity(Eigen::Index n);
  static HermitianMatrix diagonal(const RealVector& d);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

 private:
  explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator*(double c, const HermitianMatrix& a);

struct SpectralDecomposition {
  RealVector eigenvalues;    // ascending; ties keep original index order
  ComplexMatrix eigenvectors;  // unitary, columns pair with eigenvalues
  int sweeps = 0;
  double off_diagonal = 0.0;  // residual off-diagonal Frobenius norm at exit
};

// Cyclic complex Jacobi. Deterministic; throws ConvergenceError if the sweep
// budget runs out.
SpectralDecomposition eig_hermitian(const HermitianMatrix& a);

// U diag(f(lambda)) U*.
template <class F>
ComplexMatrix spectral_apply(const SpectralDecomposition& sd, F&& f) {
  const Eigen::Index n = sd.eigenvalues.size();
  Eigen::VectorXcd d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = Complex(f(sd.eigenvalues(i)), 0.0);
  return sd.eigenvectors * d.asDiagonal() * sd.eigenvectors.adjoint();
}

ComplexMatrix reconstruct(const SpectralDecomposition& sd);

// Strictly positive definite Hermitian matrix (the cone P_n). Caches its
// spectral decomposition, shared between copies.
class PositiveMatrix {
 public:
  static PositiveMatrix from(const HermitianMatrix& a);
  static PositiveMatrix from(const ComplexMatrix& a);
  static PositiveMatrix identity(Eigen::Index n);
  static PositiveMatrix diagonal(const RealVector& d);

  const HermitianMatrix& hermitian() const noexcept { return base_; }
  const ComplexMatrix& matrix() const noexcept { return base_.matrix(); }
  Eigen::Index dim() const noexcept { return base_.dim(); }
  double min_eigenvalue() const noexcept { return spectrum_->eigenvalues(0); }
  double max_eigenvalue() const noexcept {
    return spectrum_->eigenvalues(spectrum_->eigenvalues.size() - 1);
  }
  const SpectralDecomposition& spectrum() const noexcept { return *spectrum_; }

 private:
  PositiveMatrix(HermitianMatrix base, std::shared_ptr<const SpectralDecomposition> sd)
      : base_(std::move(base)), spectrum_(std::move(sd)) {}
  HermitianMatrix base_;
  std::shared_ptr<const SpectralDecomposition> spectrum_;
};

// (X1 + X2) / 2, which stays in the cone.
PositiveMatrix midpoint(const PositiveMatrix& x1, const PositiveMatrix& x2);

// True iff the Hermitian matrix has min eigenvalue above psd_rel * ||A||_max.
bool is_positive_definite(const HermitianMatrix& a);

// A^p for any real p.
HermitianMatrix matrix_power(const PositiveMatrix& a, double p);
HermitianMatrix matrix_log(const PositiveMatrix& a);

// Projector onto the span of eigenvectors with eigenvalue > tol.
HermitianMatrix support_projector(const HermitianMatrix& a, double tol);

// Pseudo-power of a PSD matrix: lambda^p on the support (lambda > tol), zero
// elsewhere. p = 0 yields the support projector. Eigenvalues below -tol mean
// the input is not PSD and raise NumericalError.
HermitianMatrix psd_power(const HermitianMatrix& a, double p, double tol);
HermitianMatrix psd_power(const SpectralDecomposition& sd, double p, double tol);

// log on the support, zero elsewhere.
HermitianMatrix psd_log(const SpectralDecomposition& sd, double tol);

}  // namespace tracelab
