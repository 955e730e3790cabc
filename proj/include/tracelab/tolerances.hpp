#pragma once

namespace tracelab {

// Numerical thresholds shared by all modules. Relative thresholds are scaled
// by the max-abs entry of the matrix they are applied to.
struct Tolerances {
  double psd_rel = 1e-12;           // eigenvalue floor, times ||A||_max
  double hermiticity = 1e-12;       // ||A - A*||_max, times max(1, ||A||_max)
  double reconstruction = 1e-10;    // ||U diag U* - A||_F, times max(1, ||A||_F)
  double unitarity = 1e-10;         // ||U*U - I||_F
  double support = 1e-12;           // eigenvalues above this span the support
  double containment = 1e-8;        // ||(I - P_sigma) P_rho||_F
  double unit_trace = 1e-10;        // |tr(rho) - 1|
  double trace_preservation = 1e-10;  // ||sum K*K - I||_F
  double imaginary_trace = 1e-11;   // |Im tr| <= this * (1 + |tr|)
  double alpha_one_band = 1e-6;     // alpha in (1 - band, 1 + band) is rejected
  double dpi = 1e-8;                // gap below -dpi counts as a violation
  double residual = 1e-8;           // "approximately zero" equality residual
  int max_sweeps = 100;             // Jacobi sweep budget
};

// Process-wide defaults. Set once at startup, before any worker threads run.
const Tolerances& tolerances() noexcept;
void set_tolerances(const Tolerances& t) noexcept;

}  // namespace tracelab
