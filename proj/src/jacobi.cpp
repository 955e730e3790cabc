#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "tracelab/errors.hpp"
#include "tracelab/spectral.hpp"
#include "tracelab/tolerances.hpp"

namespace tracelab {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// One complex Jacobi rotation annihilating a(p,q). The unitary is
// diag-phase * real Givens: U = D R with D_qq = conj(phase).
void rotate(ComplexMatrix& a, ComplexMatrix& v, Eigen::Index p, Eigen::Index q) {
  const Complex apq = a(p, q);
  const double g = std::abs(apq);
  const Complex phase = apq / g;
  const Complex cphase = std::conj(phase);
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double tau = (aqq - app) / (2.0 * g);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
  const double c = 1.0 / std::hypot(1.0, t);
  const double s = t * c;

  const Eigen::Index n = a.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex aip = a(i, p);
    const Complex aiq = a(i, q);
    a(i, p) = c * aip - s * cphase * aiq;
    a(i, q) = s * aip + c * cphase * aiq;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex apj = a(p, j);
    const Complex aqj = a(q, j);
    a(p, j) = c * apj - s * phase * aqj;
    a(q, j) = s * apj + c * phase * aqj;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex vip = v(i, p);
    const Complex viq = v(i, q);
    v(i, p) = c * vip - s * cphase * viq;
    v(i, q) = s * vip + c * cphase * viq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * g;
  a(q, q) = aqq + t * g;
}

}  // namespace

SpectralDecomposition eig_hermitian(const HermitianMatrix& h) {
  ComplexMatrix a = h.matrix();
  const Eigen::Index n = a.rows();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const int max_sweeps = tolerances().max_sweeps;

  SpectralDecomposition out;
  bool converged = false;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g == 0.0) continue;
        // Relative threshold keeps small eigenvalues of graded matrices accurate.
        const double scale = std::sqrt(std::abs(a(p, p).real()) * std::abs(a(q, q).real()));
        if (g <= eps * scale || g < std::numeric_limits<double>::min()) {
          continue;
        }
        rotate(a, v, p, q);
        rotated = true;
      }
    }
    if (!rotated) {
      converged = true;
      break;
    }
  }
  out.off_diagonal = off_diagonal_norm(a);
  out.sweeps = sweep;
  if (!converged) {
    std::ostringstream os;
    os << "eig_hermitian: no convergence after " << max_sweeps
       << " sweeps (off-diagonal residual " << out.off_diagonal << ")";
    throw ConvergenceError(os.str(), out.off_diagonal);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });

  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = a(src, src).real();
    out.eigenvectors.col(k) = v.col(src);
  }
  return out;
}

}  // namespace tracelab
