#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tracelab/prober.hpp"

namespace tracelab {

// Search schedule shared by the constructive witnesses: x halves from x0,
// k halves from k0, and a scale is accepted once the required signs have
// held (with margin eta) on stable_scales consecutive x values.
struct WitnessSearchConfig {
  double eta = 1e-9;
  double x0 = 0.1;
  int max_x_halvings = 60;
  double k0 = 1e-2;
  int max_k_halvings = 60;
  int stable_scales = 3;
};

struct CounterexampleResult {
  FunctionalSpec functional;  // carries K and M
  std::optional<Witness> convexity_violation;
  std::optional<Witness> concavity_violation;
  double b = 0.0;
  double t = 0.0;
  double k = 0.0;
  double x = 0.0;
  std::vector<std::string> trace;
};

// r - 2/(b-1) ((1 + (b-1)/2)^r - 1), for 0 <= b < 1/2.
double g_r(double b, double r);

// Grid point b in {0.01, ..., 0.49} maximizing |g_r(b)|, lowest on ties.
double best_b(double r);

// Lambda_{r,s} midpoint gap at A1 = diag(1, b), A2 = I + x [[0,1],[1,0]],
// K = diag(1, k), M = [[1, t], [t, 1]]. Needs 0 < b < 1/2, |x| < 1/2,
// |t| < 1, k >= 0.
double theorem22_xi(double r, double s, double b, double t, double k, double x);

// Invertible K = diag(1, k), ||M - I|| = epsilon/2, and a pair of opposite
// sign witnesses. r must differ from 0 and 1, s > 0, epsilon in (0, 1).
CounterexampleResult theorem22_witness(double r, double s, double epsilon,
                                       const WitnessSearchConfig& cfg = {});

// The symmetric square root of [[1, t], [t, 1]].
ComplexMatrix corollary23_k_tilde(double t);

// Near-identity K~ with ||K~ - I|| < epsilon and M~ = diag(1, k^2); the
// witnesses are the theorem22 ones re-evaluated under (K~, M~).
// Requires 0 < r <= 1/2, 0 < s <= 1/(1+2r) or -1/2 < r < 0, s >= 1/(1+2r).
CounterexampleResult corollary23_witness(double r, double s, double epsilon,
                                         const WitnessSearchConfig& cfg = {});

// s^2 t^2 + s (1/2 - t^2): the limit of the r = 1 midpoint gap over x^2.
double h_st(double s, double t);

enum class Prop33Branch { NonConvex, NonConcave };

// t = 0.5 for NonConcave; min(0.99, sqrt(1/(2(1-s))) + 0.05) for NonConvex.
double prop33_default_t(double s, Prop33Branch branch);

// Lambda_{1,s} midpoint gap at A1 = I, A2 = I + x [[0,1],[1,0]],
// K = diag(1, k), M = [[1, t], [t, 1]].
double prop33_xi(double s, double t, double k, double x);

// NonConvex needs 0 < s < 1/2 and 1 - 1/(2t^2) > s; NonConcave needs s > 0
// and t^2 < 1/2.
CounterexampleResult prop33_witness(double s, Prop33Branch branch, std::optional<double> t = {},
                                    const WitnessSearchConfig& cfg = {});

// Lambda_{1,s}(A1)[I,M1]/2 + Lambda_{1,s}(A2)[I,M2]/2
//   - Lambda_{1,s}((A1+A2)/2)[I,(M1+M2)/2]
// on A1 = diag(1/2, 1), A2 = diag(1, 1/2), M1 = diag(4, 1), M2 = diag(1, 4).
double remark_joint_gap(double s);
double remark_joint_closed_form(double s);

// The same instance as a joint (A, M) witness; its gap is twice
// remark_joint_gap because midpoint_gap is not halved.
Witness remark_joint_witness(double s);

}  // namespace tracelab
