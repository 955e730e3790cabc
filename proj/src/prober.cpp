#include "tracelab/prober.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tracelab/errors.hpp"
#include "tracelab/random.hpp"

namespace tracelab {

namespace {

ComplexMatrix k_or_identity(const ComplexMatrix& k, Eigen::Index dim) {
  return k.size() == 0 ? ComplexMatrix::Identity(dim, dim) : k;
}

Arguments midpoints(const Arguments& x1, const Arguments& x2) {
  Arguments mid;
  mid.reserve(x1.size());
  for (std::size_t i = 0; i < x1.size(); ++i) mid.push_back(midpoint(x1[i], x2[i]));
  return mid;
}

struct TrialPair {
  Arguments first;
  Arguments second;
};

TrialPair draw_pair(int arity, const ProbeConfig& cfg, Rng& rng, bool local) {
  TrialPair pair;
  for (int a = 0; a < arity; ++a) {
    if (!local) {
      pair.first.push_back(random_positive(cfg.dim, rng, cfg.max_condition));
      pair.second.push_back(random_positive(cfg.dim, rng, cfg.max_condition));
      continue;
    }
    const PositiveMatrix x = random_positive(cfg.dim, rng, cfg.max_condition);
    const ComplexMatrix h = random_hermitian(cfg.dim, rng).matrix();
    const double delta = cfg.step_scale * x.min_eigenvalue() / operator_norm(h);
    pair.first.push_back(PositiveMatrix::from(HermitianMatrix::symmetrize(x.matrix() + delta * h)));
    pair.second.push_back(PositiveMatrix::from(HermitianMatrix::symmetrize(x.matrix() - delta * h)));
  }
  return pair;
}

}  // namespace

std::string to_string(FunctionalKind kind) {
  switch (kind) {
    case FunctionalKind::Gamma: return "gamma";
    case FunctionalKind::Lambda: return "lambda";
    case FunctionalKind::PsiJoint: return "psi";
    case FunctionalKind::OmegaJoint: return "omega";
    case FunctionalKind::LambdaJointAM: return "lambda_am";
  }
  return "?";
}

FunctionalKind parse_functional_kind(const std::string& s) {
  if (s == "gamma") return FunctionalKind::Gamma;
  if (s == "lambda") return FunctionalKind::Lambda;
  if (s == "psi") return FunctionalKind::PsiJoint;
  if (s == "omega") return FunctionalKind::OmegaJoint;
  if (s == "lambda_am") return FunctionalKind::LambdaJointAM;
  throw DomainError("unknown functional '" + s + "' (expected gamma, lambda, psi, omega, lambda_am)");
}

int FunctionalSpec::arity() const noexcept {
  switch (kind) {
    case FunctionalKind::Gamma:
    case FunctionalKind::Lambda: return 1;
    case FunctionalKind::PsiJoint:
    case FunctionalKind::LambdaJointAM: return 2;
    case FunctionalKind::OmegaJoint: return 3;
  }
  return 1;
}

double FunctionalSpec::evaluate(std::span<const PositiveMatrix> args) const {
  if (static_cast<int>(args.size()) != arity())
    throw DimensionError(name() + ": wrong number of arguments");
  const Eigen::Index n = args[0].dim();
  switch (kind) {
    case FunctionalKind::Gamma: return gamma_ps(args[0], k_or_identity(k, n), {p, s});
    case FunctionalKind::Lambda:
      return lambda_rs(args[0], k_or_identity(k, n), m ? *m : PositiveMatrix::identity(n), {r, s});
    case FunctionalKind::PsiJoint:
      return psi_pqs(args[0], args[1], k_or_identity(k, n), {p, q, s});
    case FunctionalKind::OmegaJoint: return omega_pqr(args[0], args[1], args[2], {p, q, r});
    case FunctionalKind::LambdaJointAM:
      return lambda_rs(args[0], k_or_identity(k, n), args[1], {r, s});
  }
  throw DomainError("FunctionalSpec: unknown kind");
}

std::string FunctionalSpec::name() const {
  std::ostringstream os;
  os.precision(17);
  os << to_string(kind) << '(';
  switch (kind) {
    case FunctionalKind::Gamma: os << "p=" << p << ",s=" << s; break;
    case FunctionalKind::Lambda:
    case FunctionalKind::LambdaJointAM: os << "r=" << r << ",s=" << s; break;
    case FunctionalKind::PsiJoint: os << "p=" << p << ",q=" << q << ",s=" << s; break;
    case FunctionalKind::OmegaJoint: os << "p=" << p << ",q=" << q << ",r=" << r; break;
  }
  os << ')';
  return os.str();
}

double midpoint_gap(const FunctionalSpec& f, const Arguments& x1, const Arguments& x2) {
  if (x1.size() != x2.size()) throw DimensionError("midpoint_gap: argument tuples differ in length");
  for (std::size_t i = 0; i < x1.size(); ++i)
    if (x1[i].dim() != x2[i].dim()) throw DimensionError("midpoint_gap: argument dimensions differ");
  const Arguments mid = midpoints(x1, x2);
  return f.evaluate(x1) + f.evaluate(x2) - 2.0 * f.evaluate(mid);
}

double midpoint_gap(const std::function<double(const PositiveMatrix&)>& f, const PositiveMatrix& x1,
                    const PositiveMatrix& x2) {
  if (x1.dim() != x2.dim()) throw DimensionError("midpoint_gap: argument dimensions differ");
  return f(x1) + f(x2) - 2.0 * f(midpoint(x1, x2));
}

std::string to_string(ViolationKind kind) {
  return kind == ViolationKind::Convexity ? "convexity_violation" : "concavity_violation";
}

double replay_gap(const Witness& w) { return midpoint_gap(w.functional, w.first, w.second); }

void ProbeConfig::validate() const {
  if (dim < 1) throw DomainError("probe: dim must be at least 1");
  if (trials < 1) throw DomainError("probe: trials must be at least 1");
  if (!(eta > 0.0)) throw DomainError("probe: violation tolerance must be positive");
  if (!(step_scale > 0.0 && step_scale < 1.0)) throw DomainError("probe: step_scale must lie in (0, 1)");
  if (!(max_condition >= 1.0)) throw DomainError("probe: max_condition must be at least 1");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ConsistentConvex: return "ConsistentConvex";
    case Verdict::ConsistentConcave: return "ConsistentConcave";
    case Verdict::NeitherWitnessed: return "NeitherWitnessed";
    case Verdict::AffineWithinTol: return "AffineWithinTol";
  }
  return "?";
}

ProbeVerdict probe(const FunctionalSpec& f, const ProbeConfig& cfg) {
  cfg.validate();
  if (f.k.size() != 0 && (f.k.rows() != cfg.dim || f.k.cols() != cfg.dim))
    throw DimensionError(f.name() + ": K does not match the probe dimension");
  if (f.m && f.m->dim() != cfg.dim)
    throw DimensionError(f.name() + ": M does not match the probe dimension");
  struct Slot {
    TrialPair pair;
    double gap = 0.0;
    bool failed = false;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(cfg.trials));
  const int arity = f.arity();

  for_each_task(slots.size(), cfg.execution, [&](std::size_t i) {
    Slot& slot = slots[i];
    try {
      Rng rng(derive_seed(cfg.seed, i));
      slot.pair = draw_pair(arity, cfg, rng, i % 2 == 1);
      slot.gap = midpoint_gap(f, slot.pair.first, slot.pair.second);
      if (!std::isfinite(slot.gap)) slot.failed = true;
    } catch (const Error&) {
      slot.failed = true;
    }
  });

  ProbeVerdict out;
  out.trials = cfg.trials;
  out.min_gap = std::numeric_limits<double>::infinity();
  out.max_gap = -std::numeric_limits<double>::infinity();
  std::size_t min_at = 0, max_at = 0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].failed) {
      ++out.failures;
      continue;
    }
    if (slots[i].gap < out.min_gap) out.min_gap = slots[i].gap, min_at = i;
    if (slots[i].gap > out.max_gap) out.max_gap = slots[i].gap, max_at = i;
  }
  if (out.failures * 10 > cfg.trials) {
    std::ostringstream os;
    os << "probe " << f.name() << ": " << out.failures << " of " << cfg.trials << " trials failed";
    throw InconclusiveError(os.str());
  }
  if (out.failures == cfg.trials) throw InconclusiveError("probe: every trial failed");

  auto make_witness = [&](std::size_t i, ViolationKind kind) {
    Witness w;
    w.functional = f;
    w.first = slots[i].pair.first;
    w.second = slots[i].pair.second;
    w.gap = slots[i].gap;
    w.violates = kind;
    w.seed = derive_seed(cfg.seed, i);
    std::ostringstream os;
    os << "probe seed=" << cfg.seed << " trial=" << i << (i % 2 ? " local" : " global");
    w.lineage = os.str();
    return w;
  };
  if (out.min_gap < -cfg.eta) out.convexity_violation = make_witness(min_at, ViolationKind::Convexity);
  if (out.max_gap > cfg.eta) out.concavity_violation = make_witness(max_at, ViolationKind::Concavity);

  if (out.convexity_violation && out.concavity_violation) out.verdict = Verdict::NeitherWitnessed;
  else if (out.convexity_violation) out.verdict = Verdict::ConsistentConcave;
  else if (out.concavity_violation) out.verdict = Verdict::ConsistentConvex;
  else out.verdict = Verdict::AffineWithinTol;
  return out;
}

ProbeVerdict probe_gamma(GammaParams params, const ComplexMatrix& k, const ProbeConfig& cfg) {
  FunctionalSpec f;
  f.kind = FunctionalKind::Gamma;
  f.p = params.p;
  f.s = params.s;
  f.k = k;
  return probe(f, cfg);
}

ProbeVerdict probe_lambda(LambdaParams params, const ComplexMatrix& k, const PositiveMatrix& m,
                          const ProbeConfig& cfg) {
  FunctionalSpec f;
  f.kind = FunctionalKind::Lambda;
  f.r = params.r;
  f.s = params.s;
  f.k = k;
  f.m = m;
  return probe(f, cfg);
}

ProbeVerdict probe_psi_joint(PsiParams params, const ComplexMatrix& k, const ProbeConfig& cfg) {
  FunctionalSpec f;
  f.kind = FunctionalKind::PsiJoint;
  f.p = params.p;
  f.q = params.q;
  f.s = params.s;
  f.k = k;
  return probe(f, cfg);
}

ProbeVerdict probe_omega_joint(OmegaParams params, const ProbeConfig& cfg) {
  FunctionalSpec f;
  f.kind = FunctionalKind::OmegaJoint;
  f.p = params.p;
  f.q = params.q;
  f.r = params.r;
  return probe(f, cfg);
}

ProbeVerdict probe_lambda_joint_AM(LambdaParams params, const ComplexMatrix& k,
                                   const ProbeConfig& cfg) {
  FunctionalSpec f;
  f.kind = FunctionalKind::LambdaJointAM;
  f.r = params.r;
  f.s = params.s;
  f.k = k;
  return probe(f, cfg);
}

double second_directional_derivative(const std::function<double(const PositiveMatrix&)>& f,
                                     const PositiveMatrix& x, const HermitianMatrix& h,
                                     double step) {
  if (x.dim() != h.dim()) throw DimensionError("second_directional_derivative: dimensions differ");
  if (!(step > 0.0) || !std::isfinite(step))
    throw DomainError("second_directional_derivative: step must be positive");
  for (int halving = 0; halving <= 60; ++halving, step *= 0.5) {
    const HermitianMatrix plus = HermitianMatrix::symmetrize(x.matrix() + step * h.matrix());
    const HermitianMatrix minus = HermitianMatrix::symmetrize(x.matrix() - step * h.matrix());
    if (!is_positive_definite(plus) || !is_positive_definite(minus)) continue;
    const double fp = f(PositiveMatrix::from(plus));
    const double fm = f(PositiveMatrix::from(minus));
    return (fp - 2.0 * f(x) + fm) / (step * step);
  }
  throw NumericalError("second_directional_derivative: step underflow before X +- hH became positive");
}

}  // namespace tracelab
