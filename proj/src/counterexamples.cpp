#include "tracelab/counterexamples.hpp"

#include <cmath>
#include <sstream>

#include "tracelab/errors.hpp"

namespace tracelab {

namespace {

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

ComplexMatrix offdiag_perturbation(double x) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = x;
  m(1, 0) = x;
  return m;
}

PositiveMatrix m_of_t(double t) { return PositiveMatrix::from(offdiag_perturbation(t)); }

FunctionalSpec lambda_spec(double r, double s, double t, double k) {
  FunctionalSpec f;
  f.kind = FunctionalKind::Lambda;
  f.r = r;
  f.s = s;
  f.k = diag2(1.0, k);
  f.m = m_of_t(t);
  return f;
}

void validate(const WitnessSearchConfig& cfg) {
  if (!(cfg.eta > 0.0) || !(cfg.x0 > 0.0 && cfg.x0 < 0.5) || !(cfg.k0 > 0.0) ||
      cfg.max_x_halvings < 1 || cfg.max_k_halvings < 0 || cfg.stable_scales < 1)
    throw DomainError("witness search: invalid schedule");
}

std::string fmt(const char* key, double v) {
  std::ostringstream os;
  os.precision(6);
  os << key << '=' << v;
  return os.str();
}

Witness make_witness(const FunctionalSpec& f, Arguments first, Arguments second, double gap,
                     ViolationKind kind, std::string lineage) {
  Witness w;
  w.functional = f;
  w.first = std::move(first);
  w.second = std::move(second);
  w.gap = gap;
  w.violates = kind;
  w.lineage = std::move(lineage);
  return w;
}

struct Scale {
  double k = 0.0;
  double x = 0.0;
};

// gaps_at(k, x) evaluates the gap(s) at one scale, accept() checks the signs.
// Returns x = 0 when the schedule runs out.
template <class GapsAt, class Accept>
Scale search_schedule(const WitnessSearchConfig& cfg, std::vector<std::string>& trace,
                      GapsAt&& gaps_at, Accept&& accept) {
  double k = cfg.k0;
  for (int kh = 0; kh <= cfg.max_k_halvings; ++kh, k *= 0.5) {
    int streak = 0, best = 0;
    double x = cfg.x0;
    for (int j = 0; j < cfg.max_x_halvings; ++j, x *= 0.5) {
      if (accept(gaps_at(k, x))) {
        if (++streak >= cfg.stable_scales) {
          trace.push_back(fmt("k", k) + " " + fmt("x", x) + " accepted");
          return {k, x};
        }
      } else {
        streak = 0;
      }
      best = std::max(best, streak);
    }
    trace.push_back(fmt("k", k) + " longest stable run " + std::to_string(best));
  }
  return {0.0, 0.0};
}

void require_r_not_degenerate(double r, double s) {
  if (!std::isfinite(r) || r == 0.0 || r == 1.0) throw DomainError("r must differ from 0 and 1");
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("s must be positive");
}

CounterexampleResult theorem22_search(double r, double s, double t, const WitnessSearchConfig& cfg) {
  validate(cfg);
  CounterexampleResult out;
  out.b = best_b(r);
  out.t = t;
  const double g = g_r(out.b, r);
  const double dir = g > 0.0 ? 1.0 : -1.0;
  out.trace.push_back(fmt("b", out.b) + " " + fmt("g_r(b)", g) + " " + fmt("t", t));

  const PositiveMatrix a1 = PositiveMatrix::from(diag2(1.0, out.b));
  struct Gaps {
    double up, down;
  };
  auto gaps_at = [&](double k, double x) {
    const FunctionalSpec f = lambda_spec(r, s, t, k);
    const PositiveMatrix up = PositiveMatrix::from(offdiag_perturbation(dir * x));
    const PositiveMatrix down = PositiveMatrix::from(offdiag_perturbation(-dir * x));
    return Gaps{midpoint_gap(f, {a1}, {up}), midpoint_gap(f, {a1}, {down})};
  };
  auto accept = [&](const Gaps& gp) { return gp.up > cfg.eta && gp.down < -cfg.eta; };
  const Scale found = search_schedule(cfg, out.trace, gaps_at, accept);
  if (found.x == 0.0) {
    std::ostringstream os;
    os << "no sign-stable witness for lambda(r=" << r << ",s=" << s << ") within "
       << cfg.max_x_halvings << " x halvings";
    throw WitnessSearchError(os.str(), out.trace);
  }
  out.k = found.k;
  out.x = found.x;
  out.functional = lambda_spec(r, s, t, found.k);

  const PositiveMatrix up = PositiveMatrix::from(offdiag_perturbation(dir * found.x));
  const PositiveMatrix down = PositiveMatrix::from(offdiag_perturbation(-dir * found.x));
  const std::string lineage = "theorem22 " + fmt("b", out.b) + " " + fmt("t", t) + " " +
                              fmt("k", found.k) + " " + fmt("x", found.x);
  out.concavity_violation = make_witness(out.functional, {a1}, {up}, midpoint_gap(out.functional, {a1}, {up}),
                                         ViolationKind::Concavity, lineage);
  out.convexity_violation = make_witness(out.functional, {a1}, {down},
                                         midpoint_gap(out.functional, {a1}, {down}),
                                         ViolationKind::Convexity, lineage);
  return out;
}

}  // namespace

double g_r(double b, double r) {
  if (!(b >= 0.0 && b < 0.5)) throw DomainError("g_r: b must lie in [0, 1/2)");
  const double c = b - 1.0;
  return r - 2.0 / c * (std::pow(1.0 + c / 2.0, r) - 1.0);
}

double best_b(double r) {
  double best = 0.01, best_abs = -1.0;
  for (int i = 1; i <= 49; ++i) {
    const double b = 0.01 * i;
    const double v = std::abs(g_r(b, r));
    if (v > best_abs) best = b, best_abs = v;
  }
  return best;
}

double theorem22_xi(double r, double s, double b, double t, double k, double x) {
  if (!(b > 0.0 && b < 0.5)) throw DomainError("theorem22_xi: b must lie in (0, 1/2)");
  if (!(std::abs(x) < 0.5)) throw DomainError("theorem22_xi: |x| must be below 1/2");
  if (!(std::abs(t) < 1.0)) throw DomainError("theorem22_xi: |t| must be below 1");
  if (!(k >= 0.0)) throw DomainError("theorem22_xi: k must be nonnegative");
  const FunctionalSpec f = lambda_spec(r, s, t, k);
  const PositiveMatrix a1 = PositiveMatrix::from(diag2(1.0, b));
  const PositiveMatrix a2 = PositiveMatrix::from(offdiag_perturbation(x));
  return midpoint_gap(f, {a1}, {a2});
}

CounterexampleResult theorem22_witness(double r, double s, double epsilon,
                                       const WitnessSearchConfig& cfg) {
  require_r_not_degenerate(r, s);
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  return theorem22_search(r, s, epsilon / 2.0, cfg);
}

ComplexMatrix corollary23_k_tilde(double t) {
  if (!(std::abs(t) < 1.0)) throw DomainError("corollary23_k_tilde: |t| must be below 1");
  const double a = std::sqrt(1.0 + t), b = std::sqrt(1.0 - t);
  ComplexMatrix k(2, 2);
  k << 0.5 * (a + b), 0.5 * (a - b), 0.5 * (a - b), 0.5 * (a + b);
  return k;
}

CounterexampleResult corollary23_witness(double r, double s, double epsilon,
                                         const WitnessSearchConfig& cfg) {
  require_r_not_degenerate(r, s);
  const bool concave_branch = r > 0.0 && r <= 0.5 && s <= 1.0 / (1.0 + 2.0 * r);
  const bool convex_branch = r > -0.5 && r < 0.0 && s >= 1.0 / (1.0 + 2.0 * r);
  if (!concave_branch && !convex_branch)
    throw DomainError(
        "need 0 < r <= 1/2 with s <= 1/(1+2r), or -1/2 < r < 0 with s >= 1/(1+2r)");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in (0, 1]");

  const double t = 0.5 * (2.0 * epsilon - epsilon * epsilon);
  CounterexampleResult base = theorem22_search(r, s, t, cfg);

  CounterexampleResult out = base;
  out.functional.k = corollary23_k_tilde(t);
  out.functional.m = PositiveMatrix::from(diag2(1.0, base.k * base.k));
  for (auto* w : {&out.convexity_violation, &out.concavity_violation}) {
    Witness& wit = **w;
    const double original = wit.gap;
    wit.functional = out.functional;
    wit.gap = replay_gap(wit);
    wit.lineage = "corollary23 via " + wit.lineage;
    if (std::abs(wit.gap - original) > 1e-10) {
      std::ostringstream os;
      os << "corollary23: transported gap " << wit.gap << " differs from " << original;
      throw InvariantError(os.str());
    }
  }
  out.trace.push_back(fmt("||K~ - I||", operator_norm(out.functional.k - ComplexMatrix::Identity(2, 2))));
  return out;
}

double h_st(double s, double t) { return s * s * t * t + s * (0.5 - t * t); }

double prop33_default_t(double s, Prop33Branch branch) {
  if (branch == Prop33Branch::NonConcave) return 0.5;
  return std::min(0.99, std::sqrt(1.0 / (2.0 * (1.0 - s))) + 0.05);
}

double prop33_xi(double s, double t, double k, double x) {
  if (!(std::abs(x) < 0.5)) throw DomainError("prop33_xi: |x| must be below 1/2");
  if (!(std::abs(t) < 1.0)) throw DomainError("prop33_xi: |t| must be below 1");
  if (!(k >= 0.0)) throw DomainError("prop33_xi: k must be nonnegative");
  const FunctionalSpec f = lambda_spec(1.0, s, t, k);
  return midpoint_gap(f, {PositiveMatrix::identity(2)}, {PositiveMatrix::from(offdiag_perturbation(x))});
}

CounterexampleResult prop33_witness(double s, Prop33Branch branch, std::optional<double> t_opt,
                                    const WitnessSearchConfig& cfg) {
  validate(cfg);
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("s must be positive");
  if (branch == Prop33Branch::NonConvex && !(s < 0.5))
    throw DomainError("the non-convex branch needs 0 < s < 1/2");
  const double t = t_opt ? *t_opt : prop33_default_t(s, branch);
  if (!(std::abs(t) < 1.0)) throw DomainError("t must satisfy |t| < 1");
  if (branch == Prop33Branch::NonConvex && !(1.0 - 1.0 / (2.0 * t * t) > s))
    throw DomainError("the non-convex branch needs 1 - 1/(2t^2) > s");
  if (branch == Prop33Branch::NonConcave && !(t * t < 0.5))
    throw DomainError("the non-concave branch needs t^2 < 1/2");

  CounterexampleResult out;
  out.t = t;
  const double h = h_st(s, t);
  out.trace.push_back(fmt("t", t) + " " + fmt("h(s,t)", h));
  const bool want_negative = branch == Prop33Branch::NonConvex;
  auto gaps_at = [&](double k, double x) { return prop33_xi(s, t, k, x); };
  auto accept = [&](double gap) { return want_negative ? gap < -cfg.eta : gap > cfg.eta; };
  const Scale found = search_schedule(cfg, out.trace, gaps_at, accept);
  if (found.x == 0.0) {
    std::ostringstream os;
    os << "no sign-stable " << (want_negative ? "non-convexity" : "non-concavity")
       << " witness for s=" << s << ", t=" << t;
    throw WitnessSearchError(os.str(), out.trace);
  }
  out.k = found.k;
  out.x = found.x;
  out.functional = lambda_spec(1.0, s, t, found.k);
  const Arguments first{PositiveMatrix::identity(2)};
  const Arguments second{PositiveMatrix::from(offdiag_perturbation(found.x))};
  const std::string lineage =
      "prop33 " + fmt("t", t) + " " + fmt("k", found.k) + " " + fmt("x", found.x);
  Witness w = make_witness(out.functional, first, second, midpoint_gap(out.functional, first, second),
                           want_negative ? ViolationKind::Convexity : ViolationKind::Concavity, lineage);
  if (want_negative) out.convexity_violation = std::move(w);
  else out.concavity_violation = std::move(w);
  return out;
}

double remark_joint_gap(double s) {
  if (s == 0.0) return 0.0;
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const PositiveMatrix a1 = PositiveMatrix::from(diag2(0.5, 1.0));
  const PositiveMatrix a2 = PositiveMatrix::from(diag2(1.0, 0.5));
  const PositiveMatrix m1 = PositiveMatrix::from(diag2(4.0, 1.0));
  const PositiveMatrix m2 = PositiveMatrix::from(diag2(1.0, 4.0));
  const LambdaParams params{1.0, s};
  return lambda_rs(a1, id, m1, params) / 2.0 + lambda_rs(a2, id, m2, params) / 2.0 -
         lambda_rs(midpoint(a1, a2), id, midpoint(m1, m2), params);
}

double remark_joint_closed_form(double s) { return 2.0 - 2.0 * std::pow(45.0 / 32.0, s); }

Witness remark_joint_witness(double s) {
  FunctionalSpec f;
  f.kind = FunctionalKind::LambdaJointAM;
  f.r = 1.0;
  f.s = s;
  const Arguments first{PositiveMatrix::from(diag2(0.5, 1.0)), PositiveMatrix::from(diag2(4.0, 1.0))};
  const Arguments second{PositiveMatrix::from(diag2(1.0, 0.5)), PositiveMatrix::from(diag2(1.0, 4.0))};
  const double gap = midpoint_gap(f, first, second);
  return make_witness(f, first, second, gap,
                      gap < 0.0 ? ViolationKind::Convexity : ViolationKind::Concavity,
                      "remark34 " + fmt("s", s));
}

}  // namespace tracelab
