#include "tracelab/spectral.hpp"

#include <cmath>
#include <sstream>

#include "tracelab/errors.hpp"
#include "tracelab/tolerances.hpp"

namespace tracelab {

namespace {

Tolerances g_tolerances{};

std::string shape(const ComplexMatrix& a) {
  std::ostringstream os;
  os << a.rows() << "x" << a.cols();
  return os.str();
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(op) + ": shape mismatch " + shape(a) + " vs " + shape(b));
}

void require_square(const ComplexMatrix& a, const char* op) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw DimensionError(std::string(op) + ": expected non-empty square matrix, got " + shape(a));
}

}  // namespace

const Tolerances& tolerances() noexcept { return g_tolerances; }
void set_tolerances(const Tolerances& t) noexcept { g_tolerances = t; }

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("multiply: inner dimensions differ, " + shape(a) + " * " + shape(b));
  return a * b;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "add");
  return a + b;
}

ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "subtract");
  return a - b;
}

ComplexMatrix scale(const ComplexMatrix& a, Complex c) { return c * a; }

ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

Complex trace(const ComplexMatrix& a) {
  require_square(a, "trace");
  return a.trace();
}

double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& a) { return a.allFinite(); }

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix inverse(const ComplexMatrix& a) {
  require_square(a, "inverse");
  Eigen::FullPivLU<ComplexMatrix> lu(a);
  if (!lu.isInvertible()) throw SingularityError("inverse: matrix is singular");
  return lu.inverse();
}

double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  const auto gram = HermitianMatrix::symmetrize(a.adjoint() * a);
  const auto sd = eig_hermitian(gram);
  return std::sqrt(std::max(0.0, sd.eigenvalues(sd.eigenvalues.size() - 1)));
}

// --- HermitianMatrix -------------------------------------------------------

HermitianMatrix HermitianMatrix::from(const ComplexMatrix& a) {
  require_square(a, "HermitianMatrix");
  if (!a.allFinite()) throw InvariantError("HermitianMatrix: non-finite entry");
  const double skew = max_abs(a - a.adjoint());
  const double bound = tolerances().hermiticity * std::max(1.0, max_abs(a));
  if (skew > bound) {
    std::ostringstream os;
    os << "HermitianMatrix: ||A - A*||_max = " << skew << " exceeds " << bound;
    throw InvariantError(os.str());
  }
  return symmetrize(a);
}

HermitianMatrix HermitianMatrix::symmetrize(const ComplexMatrix& a) {
  require_square(a, "HermitianMatrix");
  ComplexMatrix h = 0.5 * (a + a.adjoint());
  for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = Complex(h(i, i).real(), 0.0);
  return HermitianMatrix(std::move(h));
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index n) {
  return HermitianMatrix(ComplexMatrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& d) {
  ComplexMatrix m = ComplexMatrix::Zero(d.size(), d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) m(i, i) = d(i);
  return from(m);
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::symmetrize(add(a.matrix(), b.matrix()));
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::symmetrize(subtract(a.matrix(), b.matrix()));
}

HermitianMatrix operator*(double c, const HermitianMatrix& a) {
  return HermitianMatrix::symmetrize(c * a.matrix());
}

ComplexMatrix reconstruct(const SpectralDecomposition& sd) {
  return spectral_apply(sd, [](double x) { return x; });
}

// --- PositiveMatrix --------------------------------------------------------

bool is_positive_definite(const HermitianMatrix& a) {
  const auto sd = eig_hermitian(a);
  return sd.eigenvalues(0) > tolerances().psd_rel * max_abs(a.matrix());
}

PositiveMatrix PositiveMatrix::from(const HermitianMatrix& a) {
  auto sd = std::make_shared<SpectralDecomposition>(eig_hermitian(a));
  const double floor = tolerances().psd_rel * max_abs(a.matrix());
  if (!(sd->eigenvalues(0) > floor)) {
    std::ostringstream os;
    os << "PositiveMatrix: min eigenvalue " << sd->eigenvalues(0) << " <= " << floor;
    throw SingularityError(os.str());
  }
  return PositiveMatrix(a, std::move(sd));
}

PositiveMatrix PositiveMatrix::from(const ComplexMatrix& a) { return from(HermitianMatrix::from(a)); }

PositiveMatrix PositiveMatrix::identity(Eigen::Index n) { return from(HermitianMatrix::identity(n)); }

PositiveMatrix PositiveMatrix::diagonal(const RealVector& d) { return from(HermitianMatrix::diagonal(d)); }

PositiveMatrix midpoint(const PositiveMatrix& x1, const PositiveMatrix& x2) {
  return PositiveMatrix::from(
      HermitianMatrix::symmetrize(0.5 * add(x1.matrix(), x2.matrix())));
}

HermitianMatrix matrix_power(const PositiveMatrix& a, double p) {
  if (!std::isfinite(p)) throw DomainError("matrix_power: exponent must be finite");
  return HermitianMatrix::symmetrize(
      spectral_apply(a.spectrum(), [p](double x) { return std::pow(x, p); }));
}

HermitianMatrix matrix_log(const PositiveMatrix& a) {
  return HermitianMatrix::symmetrize(
      spectral_apply(a.spectrum(), [](double x) { return std::log(x); }));
}

HermitianMatrix support_projector(const HermitianMatrix& a, double tol) {
  const auto sd = eig_hermitian(a);
  return HermitianMatrix::symmetrize(
      spectral_apply(sd, [tol](double x) { return x > tol ? 1.0 : 0.0; }));
}

HermitianMatrix psd_power(const SpectralDecomposition& sd, double p, double tol) {
  if (sd.eigenvalues.size() > 0 && sd.eigenvalues(0) < -tol) {
    std::ostringstream os;
    os << "psd_power: eigenvalue " << sd.eigenvalues(0) << " below -" << tol;
    throw NumericalError(os.str());
  }
  return HermitianMatrix::symmetrize(spectral_apply(
      sd, [p, tol](double x) { return x > tol ? std::pow(x, p) : 0.0; }));
}

HermitianMatrix psd_power(const HermitianMatrix& a, double p, double tol) {
  return psd_power(eig_hermitian(a), p, tol);
}

HermitianMatrix psd_log(const SpectralDecomposition& sd, double tol) {
  if (sd.eigenvalues.size() > 0 && sd.eigenvalues(0) < -tol)
    throw NumericalError("psd_log: input is not positive semidefinite");
  return HermitianMatrix::symmetrize(
      spectral_apply(sd, [tol](double x) { return x > tol ? std::log(x) : 0.0; }));
}

}  // namespace tracelab
