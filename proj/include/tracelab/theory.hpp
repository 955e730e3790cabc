#pragma once

#include <string>

#include "tracelab/prober.hpp"

namespace tracelab {

// What the known theorems say about a parameter point, over all admissible
// fixed operators. Boundaries of the proven regions are closed.
struct TheoryClaim {
  bool convex_proven = false;
  bool concave_proven = false;
  bool convex_refuted = false;
  bool concave_refuted = false;

  // affine | convex | concave | neither | not_convex | not_concave | unknown
  std::string label() const;
};

TheoryClaim classify_gamma(double p, double s);
TheoryClaim classify_psi(double p, double q, double s);
TheoryClaim classify_lambda(double r, double s);
// Joint in (A, M) with K = I, which is Psi_{1,2r,s}(M, A).
TheoryClaim classify_lambda_joint(double r, double s);
TheoryClaim classify_omega(double p, double q, double r);
TheoryClaim classify(const FunctionalSpec& f);

// "monotone" or "not_monotone" per the three-branch region.
std::string alpha_z_class(double alpha, double z);

}  // namespace tracelab
