// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "tracelab/channel.hpp"
#include "tracelab/counterexamples.hpp"
#include "tracelab/errors.hpp"
#include "tracelab/functionals.hpp"
#include "tracelab/random.hpp"
#include "tracelab/sweep.hpp"

using namespace tracelab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome closed_form_joint_gap() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (double s : {0.1, 0.5, 1.0, 2.0, 5.0})
    worst = std::max(worst, std::abs(remark_joint_gap(s) - (2.0 - 2.0 * std::pow(45.0 / 32.0, s))));
  const double at_one = remark_joint_gap(1.0);
  const double elapsed = seconds_since(t0);
  return {worst <= 1e-12 && std::abs(at_one + 0.8125) <= 1e-12 && elapsed < 1e-3,
          fmt("max deviation %.3g, s=1 value %.17g, %.3g ms", worst, at_one, elapsed * 1e3)};
}

Outcome perturbation_witnesses() {
  const auto t0 = Clock::now();
  int bad = 0, total = 0;
  double worst_replay = 0.0;
  for (double r : {-1.0, -0.5, 0.5, 1.5, 2.0})
    for (double s : {0.5, 1.0, 2.0}) {
      ++total;
      const auto res = theorem22_witness(r, s, 0.05);
      const double det = std::abs(res.functional.k.determinant());
      const double m_dist =
          operator_norm(res.functional.m->matrix() - ComplexMatrix::Identity(2, 2));
      const double g1 = res.convexity_violation->gap, g2 = res.concavity_violation->gap;
      const double replay = std::max(std::abs(replay_gap(*res.convexity_violation) - g1),
                                     std::abs(replay_gap(*res.concavity_violation) - g2));
      worst_replay = std::max(worst_replay, replay);
      const bool ok = det > 0.0 && m_dist < 0.05 && g1 < -1e-9 && g2 > 1e-9 && replay <= 1e-12;
      if (!ok) {
        ++bad;
        std::printf("       r=%g s=%g det=%g |M-I|=%g gaps=(%g, %g) replay=%g\n", r, s, det, m_dist, g1,
                    g2, replay);
      }
    }
  const double elapsed = seconds_since(t0);
  return {bad == 0 && elapsed < 5.0,
          std::to_string(total - bad) + "/" + std::to_string(total) +
              fmt(" parameter pairs, worst replay %.3g, %.3g s", worst_replay, elapsed)};
}

Outcome leading_order_law() {
  std::string detail;
  bool ok = true;
  for (double r : {-1.0, 0.5, 2.0}) {
    const double s = 1.0, t = 0.01;
    const double b = best_b(r);
    const double target = 2.0 * s * t * g_r(b, r);
    double rel = 0.0, first = 0.0;
    for (int j = 0; j <= 10; ++j) {
      const double x = 0.1 * std::pow(2.0, -j);
      rel = std::abs(theorem22_xi(r, s, b, t, 0.0, x) / x - target) / std::abs(target);
      if (j == 0) first = rel;
    }
    ok = ok && rel < 0.05 && rel < first;
    detail += fmt("r=%g rel.err %.3g->%.3g; ", r, first, rel);
  }
  return {ok, detail};
}

Outcome sign_function_witnesses() {
  const auto t0 = Clock::now();
  int found = 0, total = 0;
  for (double s : {0.1, 0.25, 0.4}) {
    ++total;
    const auto res = prop33_witness(s, Prop33Branch::NonConvex);
    const double h = h_st(s, res.t);
    if (res.convexity_violation && 1.0 - 1.0 / (2.0 * res.t * res.t) > s && h < 0.0 &&
        res.convexity_violation->gap < 0.0)
      ++found;
  }
  for (double s : {0.25, 1.0, 2.0}) {
    ++total;
    const auto res = prop33_witness(s, Prop33Branch::NonConcave, 0.5);
    if (res.concavity_violation && h_st(s, 0.5) > 0.0 && res.concavity_violation->gap > 0.0) ++found;
  }
  const double elapsed = seconds_since(t0);
  return {found == total && elapsed < 2.0,
          std::to_string(found) + "/" + std::to_string(total) + fmt(" witnesses, %.3g s", elapsed)};
}

Outcome positive_branch() {
  int violations = 0, probes = 0;
  double worst = INFINITY;
  for (int n : {2, 3})
    for (double s : {0.5, 1.0, 3.0})
      for (std::uint64_t draw = 0; draw < 3; ++draw) {
        Rng rng(derive_seed(0xACCE55, n * 1000 + static_cast<std::uint64_t>(s * 10) * 10 + draw));
        const ComplexMatrix k = random_invertible(n, rng, 10.0);
        const PositiveMatrix m = random_positive(n, rng, 10.0);
        ProbeConfig cfg;
        cfg.dim = n;
        cfg.trials = 500;
        cfg.eta = 1e-9;
        cfg.seed = rng();
        const auto v = probe_lambda({1.0, s}, k, m, cfg);
        ++probes;
        violations += v.convexity_violation.has_value();
        worst = std::min(worst, v.min_gap);
      }
  return {violations == 0,
          std::to_string(violations) + " convexity violations over " + std::to_string(probes) +
              fmt(" probes x 500 trials, smallest gap %.3g", worst)};
}

Outcome region_soundness() {
  const auto t0 = Clock::now();
  struct Cells {
    const char* functional;
    std::vector<const char*> axes;
    std::vector<std::vector<double>> points;
  };
  const std::vector<Cells> cells{
      {"gamma", {"p", "s"}, {{0.3, 1}, {1, 1}, {0.5, 2}, {-1, 1}, {-0.5, 3}, {2, 0.5}, {1.5, 1}}},
      {"psi", {"p", "q", "s"}, {{1, 0, 1}, {0.5, 0.5, 1}, {-0.5, -0.5, 1}, {2, -0.5, 1}}},
  };
  int rows = 0, mismatches = 0, errors = 0;
  for (const char* k : {"identity", "random:11", "random:12"})
    for (const auto& c : cells) {
      SweepSpec spec;
      spec.functional = c.functional;
      for (const char* a : c.axes) spec.axes.push_back(parse_axis(std::string(a) + "=0"));
      spec.points = c.points;
      spec.k = parse_operator_spec(k);
      spec.probe.dim = 2;
      spec.probe.trials = 500;
      for (const auto& r : run_sweep(spec)) {
        ++rows;
        if (!r.error.empty()) ++errors;
        if (r.mismatch) {
          ++mismatches;
          std::printf("       MISMATCH %s K=%s point#%d min_gap=%g max_gap=%g\n", c.functional, k, rows,
                      r.min_gap, r.max_gap);
        }
      }
    }
  const double elapsed = seconds_since(t0);
  return {mismatches == 0 && errors == 0 && elapsed < 60.0,
          std::to_string(mismatches) + " MISMATCH, " + std::to_string(errors) + " errors in " +
              std::to_string(rows) + fmt(" rows, %.3g s", elapsed)};
}

Outcome identity_suite() {
  IdentitySuiteConfig cfg;
  cfg.trials = 200;
  cfg.dims = {2, 3, 4};
  const auto dev = run_identity_suite(cfg);
  double worst = 0.0;
  bool ok = true;
  for (std::size_t i = 0; i < 5; ++i) {
    worst = std::max(worst, dev[i].max_relative_deviation);
    ok = ok && dev[i].instances == 600;
  }
  return {ok && worst <= 1e-10, fmt("worst relative deviation %.3g over 5 identities x 600 instances", worst)};
}

Outcome dpi_suite() {
  const std::vector<EntropySpec> specs{
      {EntropyKind::Umegaki},        {EntropyKind::Renyi, 0.5},     {EntropyKind::Renyi, 2.0},
      {EntropyKind::Sandwiched, 0.5}, {EntropyKind::Sandwiched, 2.0}, {EntropyKind::AlphaZ, 0.5, 0.7},
      {EntropyKind::AlphaZ, 1.5, 1.0}, {EntropyKind::AlphaZ, 3.0, 2.5},
  };
  bool ok = true;
  double worst = INFINITY;
  std::string detail;
  for (const auto& spec : specs) {
    DpiBatchConfig cfg;
    cfg.spec = spec;
    cfg.trials = 500;
    cfg.dims = {2, 3};
    cfg.seed = 0xD91;
    const auto res = run_dpi_batch(cfg);
    const bool this_ok = res.errors == 0 && res.finite_gaps == 500 && res.min_gap >= -1e-8;
    if (!this_ok)
      detail += spec.name() + fmt(" min %.3g errors %g; ", res.min_gap, res.errors);
    ok = ok && this_ok;
    worst = std::min(worst, res.min_gap);
  }
  return {ok, detail + fmt("8 entropies x 500 triples, smallest gap %.3g", worst)};
}

Outcome petz_and_saturation() {
  double petz_worst = 0.0, residual_worst = 0.0, gap_worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    Rng rng(derive_seed(0x9E72, i));
    const int n = 2 + i % 2;
    const auto rho = random_density(n, rng);
    const auto ch = random_channel(n, n, 0, rng);
    const auto back = petz_recover(rho, ch, apply(ch, rho).hermitian());
    petz_worst = std::max(petz_worst, (back.matrix() - rho.matrix()).norm());

    const auto sigma = random_density(n, rng);
    const auto u = unitary_channel(random_unitary(n, rng));
    residual_worst = std::max({residual_worst, sandwiched_equality_residual(u, rho, sigma, 2.0),
                               alpha_z_equality_residual(u, rho, sigma, 1.5, 1.0),
                               chehade_residual(u, rho, sigma, 1.5, 1.2)});
    for (const EntropySpec& spec : {EntropySpec{EntropyKind::Umegaki}, EntropySpec{EntropyKind::Sandwiched, 2.0},
                                    EntropySpec{EntropyKind::AlphaZ, 1.5, 1.0}})
      gap_worst = std::max(gap_worst, std::abs(*dpi_gap(spec, u, rho, sigma).gap));
  }
  return {petz_worst <= 1e-8 && residual_worst <= 1e-8 && gap_worst <= 1e-9,
          fmt("petz error %.3g, unitary residual %.3g, unitary |gap| %.3g", petz_worst, residual_worst,
              gap_worst)};
}

Outcome spectral_numerics() {
  double recon = 0.0, power = 0.0, cyc = 0.0;
  int bad = 0;
  std::uniform_real_distribution<double> exp_dist(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    Rng rng(derive_seed(0x5EC7, i));
    const int n = 1 + i % 16;
    const auto h = random_hermitian(n, rng);
    const double r = (reconstruct(eig_hermitian(h)) - h.matrix()).norm() /
                     std::max(1.0, h.matrix().norm());
    const auto a = random_positive(n, rng);
    const double p = exp_dist(rng), q = exp_dist(rng);
    const double pw =
        (matrix_power(a, p).matrix() * matrix_power(a, q).matrix() - matrix_power(a, p + q).matrix()).norm();
    const ComplexMatrix x = ginibre(n, n, rng), y = ginibre(n, n, rng);
    const double c = std::abs(trace(multiply(x, y)) - trace(multiply(y, x)));
    recon = std::max(recon, r);
    power = std::max(power, pw);
    cyc = std::max(cyc, c);
    bad += r > 1e-10 || pw > 1e-9 || c > 1e-11;
  }
  return {bad == 0, fmt("reconstruction %.3g (rel), power law %.3g, cyclicity %.3g", recon, power, cyc)};
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  report(1, "joint (A,M) midpoint gap matches closed form", closed_form_joint_gap);
  report(2, "near-identity perturbation witnesses", perturbation_witnesses);
  report(3, "midpoint gap leading-order law", leading_order_law);
  report(4, "sign-function witnesses at r=1", sign_function_witnesses);
  report(5, "r=1 convex branch has no convexity violations", positive_branch);
  report(6, "gamma/psi region soundness sweeps", region_soundness);
  report(7, "trace-functional identity suite", identity_suite);
  report(8, "data processing inequality suite", dpi_suite);
  report(9, "Petz recovery and unitary saturation", petz_and_saturation);
  report(10, "spectral-core numerics", spectral_numerics);
  std::printf("%d of 10 criteria failed, %.2f s total\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
