#include "tracelab/theory.hpp"

#include <cmath>
#include <utility>

#include "tracelab/entropy.hpp"

namespace tracelab {

namespace {

constexpr double kSlack = 1e-12;

bool le(double a, double b) { return a <= b + kSlack; }
bool eq(double a, double b) { return std::abs(a - b) <= kSlack; }
bool in(double lo, double x, double hi) { return le(lo, x) && le(x, hi); }

TheoryClaim affine() {
  TheoryClaim c;
  c.convex_proven = c.concave_proven = true;
  return c;
}

}  // namespace

std::string TheoryClaim::label() const {
  if (convex_proven && concave_proven) return "affine";
  if (convex_proven) return "convex";
  if (concave_proven) return "concave";
  if (convex_refuted && concave_refuted) return "neither";
  if (convex_refuted) return "not_convex";
  if (concave_refuted) return "not_concave";
  return "unknown";
}

TheoryClaim classify_gamma(double p, double s) {
  if (eq(s, 0.0) || eq(p, 0.0)) return affine();
  if (s < 0.0) p = -p, s = -s;
  TheoryClaim c;
  c.concave_proven = in(0.0, p, 1.0) && le(s, 1.0 / p);
  c.convex_proven = in(-1.0, p, 0.0) || (in(1.0, p, 2.0) && le(1.0 / p, s));
  c.concave_refuted = !c.concave_proven;
  c.convex_refuted = !c.convex_proven;
  return c;
}

TheoryClaim classify_psi(double p, double q, double s) {
  if (eq(s, 0.0)) return affine();
  if (s < 0.0) p = -p, q = -q, s = -s;
  if (q > p) std::swap(p, q);
  if (eq(p, 0.0) && eq(q, 0.0)) return affine();
  TheoryClaim c;
  c.concave_proven = le(0.0, q) && le(q, p) && le(p, 1.0) && le(s, 1.0 / (p + q));
  const bool excluded = eq(p, 1.0) && eq(q, -1.0);
  c.convex_proven = (le(-1.0, q) && le(p, 0.0)) ||
                    (in(-1.0, q, 0.0) && in(1.0, p, 2.0) && !excluded && le(1.0 / (p + q), s));
  c.concave_refuted = !c.concave_proven;
  c.convex_refuted = !c.convex_proven;
  return c;
}

TheoryClaim classify_lambda(double r, double s) {
  if (eq(s, 0.0) || eq(r, 0.0)) return affine();
  if (s < 0.0) r = -r, s = -s;
  TheoryClaim c;
  c.convex_proven = eq(r, 1.0) && le(0.5, s);
  c.convex_refuted = !c.convex_proven;
  c.concave_refuted = true;
  return c;
}

TheoryClaim classify_lambda_joint(double r, double s) { return classify_psi(1.0, 2.0 * r, s); }

TheoryClaim classify_omega(double p, double q, double r) {
  TheoryClaim c;
  if (eq(p, 0.0) || eq(q, 0.0) || eq(r, 0.0)) return c;
  c.convex_proven = eq(q, 2.0) && p < 0.0 && r < 0.0 && le(-1.0, p + r);
  c.convex_refuted = !c.convex_proven;
  c.concave_refuted = true;
  return c;
}

TheoryClaim classify(const FunctionalSpec& f) {
  switch (f.kind) {
    case FunctionalKind::Gamma: return classify_gamma(f.p, f.s);
    case FunctionalKind::Lambda: return classify_lambda(f.r, f.s);
    case FunctionalKind::PsiJoint: return classify_psi(f.p, f.q, f.s);
    case FunctionalKind::OmegaJoint: return classify_omega(f.p, f.q, f.r);
    case FunctionalKind::LambdaJointAM: return classify_lambda_joint(f.r, f.s);
  }
  return {};
}

std::string alpha_z_class(double alpha, double z) {
  return alpha_z_monotone_region(alpha, z) ? "monotone" : "not_monotone";
}

}  // namespace tracelab
