#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tracelab/functionals.hpp"
#include "tracelab/parallel.hpp"
#include "tracelab/spectral.hpp"

namespace tracelab {

enum class FunctionalKind {
  Gamma,          // A -> tr[(K* A^p K)^s]
  Lambda,         // A -> tr[(K* A^r M A^r K)^s]
  PsiJoint,       // (A, B) -> tr[(B^{q/2} K* A^p K B^{q/2})^s]
  OmegaJoint,     // (A, B, C) -> tr[A^{q/2} B^p A^{q/2} C^r]
  LambdaJointAM,  // (A, M) -> tr[(K* A^r M A^r K)^s]
};

std::string to_string(FunctionalKind kind);
FunctionalKind parse_functional_kind(const std::string& s);

// A functional with its parameters and fixed operators, as a callable on
// tuples of positive matrices.
struct FunctionalSpec {
  FunctionalKind kind = FunctionalKind::Gamma;
  double p = 1.0;
  double q = 1.0;
  double r = 1.0;
  double s = 1.0;
  ComplexMatrix k;                  // empty means identity of the argument dimension
  std::optional<PositiveMatrix> m;  // Lambda only; identity when absent

  int arity() const noexcept;
  double evaluate(std::span<const PositiveMatrix> args) const;
  // Parameter record, e.g. "lambda(r=1,s=0.25)".
  std::string name() const;
};

using Arguments = std::vector<PositiveMatrix>;

// f(X1) + f(X2) - 2 f((X1 + X2)/2). Joint functionals take the midpoint in
// every argument at once.
double midpoint_gap(const FunctionalSpec& f, const Arguments& x1, const Arguments& x2);
double midpoint_gap(const std::function<double(const PositiveMatrix&)>& f, const PositiveMatrix& x1,
                    const PositiveMatrix& x2);

enum class ViolationKind { Convexity, Concavity };
std::string to_string(ViolationKind kind);

struct Witness {
  FunctionalSpec functional;
  Arguments first;
  Arguments second;
  double gap = 0.0;
  ViolationKind violates = ViolationKind::Convexity;
  std::uint64_t seed = 0;
  std::string lineage;  // how the pair was produced
};

// Recomputes the stored gap from the stored arguments.
double replay_gap(const Witness& w);

struct ProbeConfig {
  int dim = 2;
  int trials = 500;
  double eta = 1e-9;
  std::uint64_t seed = 20240601;
  // Local pairs X +- delta H use delta = step_scale * lambda_min(X).
  double step_scale = 0.5;
  double max_condition = 1e3;
  Execution execution = Execution::Parallel;

  void validate() const;
};

enum class Verdict { ConsistentConvex, ConsistentConcave, NeitherWitnessed, AffineWithinTol };
std::string to_string(Verdict v);

struct ProbeVerdict {
  Verdict verdict = Verdict::AffineWithinTol;
  std::optional<Witness> convexity_violation;  // gap < -eta
  std::optional<Witness> concavity_violation;  // gap > eta
  double min_gap = 0.0;
  double max_gap = 0.0;
  int trials = 0;
  int failures = 0;
};

// Trial i draws from derive_seed(cfg.seed, i): even trials take independent
// pairs in every argument, odd trials take local pairs X +- delta H. The most
// extreme gap on each side becomes the witness, ties to the lower trial.
// More than 10% failed evaluations raises InconclusiveError.
ProbeVerdict probe(const FunctionalSpec& f, const ProbeConfig& cfg);

ProbeVerdict probe_gamma(GammaParams params, const ComplexMatrix& k, const ProbeConfig& cfg);
ProbeVerdict probe_lambda(LambdaParams params, const ComplexMatrix& k, const PositiveMatrix& m,
                          const ProbeConfig& cfg);
ProbeVerdict probe_psi_joint(PsiParams params, const ComplexMatrix& k, const ProbeConfig& cfg);
ProbeVerdict probe_omega_joint(OmegaParams params, const ProbeConfig& cfg);
ProbeVerdict probe_lambda_joint_AM(LambdaParams params, const ComplexMatrix& k,
                                   const ProbeConfig& cfg);

// (f(X + hH) - 2 f(X) + f(X - hH)) / h^2, halving h until X +- hH are
// positive definite. Throws NumericalError after 60 halvings.
double second_directional_derivative(const std::function<double(const PositiveMatrix&)>& f,
                                     const PositiveMatrix& x, const HermitianMatrix& h,
                                     double step);

}  // namespace tracelab
