// tracelab: sweeps, single-point probes, counterexample reproduction, DPI
// batches and the identity suite.
//
// Exit codes: 0 ok, 1 usage error, 2 contractual violation (in-range DPI
// violation or MISMATCH), 3 numerical failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tracelab/channel.hpp"
#include "tracelab/config.hpp"
#include "tracelab/counterexamples.hpp"
#include "tracelab/errors.hpp"
#include "tracelab/functionals.hpp"
#include "tracelab/io.hpp"
#include "tracelab/prober.hpp"
#include "tracelab/sweep.hpp"
#include "tracelab/theory.hpp"

using namespace tracelab;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kViolation = 2;
constexpr int kNumerical = 3;

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> dim;
  std::optional<int> trials;
  std::string out;
  std::string config;
  bool no_timestamp = false;
  bool force = false;
};

// Config file (explicit or from the environment) first, then flags.
Settings resolve_settings(const Globals& g) {
  Settings s;
  std::optional<std::string> path = g.config.empty() ? config_path_from_env() : g.config;
  if (path) s = load_settings_file(*path, s);
  if (g.seed) s.seed = *g.seed;
  if (g.tol) s.eta = *g.tol;
  if (g.dim) s.dim = *g.dim;
  if (g.trials) s.trials = *g.trials;
  set_tolerances(s.tol);
  return s;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw DomainError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
};

ProbeConfig probe_config(const Settings& s, int default_trials) {
  ProbeConfig cfg;
  cfg.dim = s.dim.value_or(2);
  cfg.trials = s.trials.value_or(default_trials);
  cfg.eta = s.eta;
  cfg.seed = s.seed;
  cfg.step_scale = s.step_scale;
  cfg.max_condition = s.max_condition;
  return cfg;
}

std::string write_witness(const std::string& dir, const std::string& stem, const Witness& w) {
  std::filesystem::create_directories(dir);
  const std::string path = (std::filesystem::path(dir) / (stem + ".json")).string();
  write_text_file(path, dump_json(witness_to_json(w)));
  return path;
}

void print_witness_row(std::ostream& os, const std::string& label, const Witness& w,
                       const std::string& path) {
  os << "  " << label << "  gap=" << num(w.gap) << "  replay=" << num(replay_gap(w));
  if (!path.empty()) os << "  file=" << path;
  os << '\n';
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string functional;
  std::vector<std::string> axes;
  std::vector<std::string> points;
  std::vector<std::string> fixed;
  std::string k = "identity";
  std::string m = "identity";
  std::string witness_dir;
  bool serial = false;
};

int run_sweep_cmd(const Globals& g, const SweepArgs& a) {
  const Settings s = resolve_settings(g);
  SweepSpec spec;
  spec.functional = a.functional;
  spec.probe = probe_config(s, 500);
  spec.k = parse_operator_spec(a.k);
  spec.m = parse_operator_spec(a.m);
  spec.witness_dir = a.witness_dir;
  spec.execution = a.serial ? Execution::Serial : Execution::Parallel;
  for (const auto& text : a.axes) spec.axes.push_back(parse_axis(text));
  for (const auto& text : a.fixed) {
    const Axis fx = parse_axis(text);
    if (fx.min != fx.max) throw DomainError("--fix takes name=value");
    spec.fixed[fx.name] = fx.min;
  }
  for (const auto& text : a.points) {
    std::map<std::string, double> coords;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) {
      const Axis c = parse_axis(part);
      coords[c.name] = c.min;
    }
    if (spec.axes.empty())
      for (const auto& [name, v] : coords) spec.axes.push_back({name, 0.0, 0.0, 1.0});
    std::vector<double> point;
    for (const auto& axis : spec.axes) {
      const auto it = coords.find(axis.name);
      if (it == coords.end() || coords.size() != spec.axes.size())
        throw DomainError("--point '" + text + "' must give exactly the axis parameters");
      point.push_back(it->second);
    }
    spec.points.push_back(point);
  }

  const auto rows = run_sweep(spec);
  Output out(g.out);
  write_csv(out.stream(), spec, rows, !g.no_timestamp);

  int mismatches = 0, underpowered = 0, errors = 0;
  for (const auto& r : rows) {
    mismatches += r.mismatch;
    underpowered += r.underpowered;
    errors += !r.error.empty();
  }
  std::ostream& summary = out.to_file() ? std::cout : std::cerr;
  summary << "sweep " << spec.functional << ": " << rows.size() << " points, " << mismatches
          << " MISMATCH, " << underpowered << " UNDERPOWERED, " << errors << " errors\n";
  return mismatches > 0 ? kViolation : kOk;
}

// ---------------------------------------------------------------------------

struct ProbeArgs {
  std::string functional;
  double p = 1.0, q = 1.0, r = 1.0, s = 1.0;
  std::string k = "random";
  std::string m = "random";
  std::string preset;
  std::optional<double> t;
  double k_value = 1e-3;
  bool serial = false;
};

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

int run_probe_cmd(const Globals& g, const ProbeArgs& a) {
  const Settings s = resolve_settings(g);
  ProbeConfig cfg = probe_config(s, 500);
  cfg.execution = a.serial ? Execution::Serial : Execution::Parallel;

  FunctionalSpec f;
  f.kind = parse_functional_kind(a.functional);
  f.p = a.p;
  f.q = a.q;
  f.r = a.r;
  f.s = a.s;
  if (!a.preset.empty()) {
    if (f.kind != FunctionalKind::Lambda) throw DomainError("--preset applies to lambda only");
    if (cfg.dim != 2) throw DomainError("--preset needs --dim 2");
    double t = 0.0;
    if (a.preset == "prop33") t = a.t.value_or(0.9);
    else if (a.preset == "thm22") t = a.t.value_or(0.025);
    else throw DomainError("--preset must be prop33 or thm22");
    if (!(std::abs(t) < 1.0)) throw DomainError("--t must satisfy |t| < 1");
    if (!(a.k_value > 0.0)) throw DomainError("--kval must be positive");
    f.k = diag2(1.0, a.k_value);
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(0, 1) = m(1, 0) = t;
    f.m = PositiveMatrix::from(m);
  } else {
    if (f.kind != FunctionalKind::OmegaJoint) f.k = build_k(parse_operator_spec(a.k), cfg.dim);
    if (f.kind == FunctionalKind::Lambda) f.m = build_m(parse_operator_spec(a.m), cfg.dim);
  }

  const TheoryClaim claim = classify(f);
  const ProbeVerdict v = probe(f, cfg);
  const bool mismatch = (v.convexity_violation && claim.convex_proven) ||
                        (v.concavity_violation && claim.concave_proven);

  std::cout << f.name() << '\n'
            << "  verdict        " << to_string(v.verdict) << (mismatch ? " MISMATCH" : "") << '\n'
            << "  theory         " << claim.label() << '\n'
            << "  min_gap        " << num(v.min_gap) << '\n'
            << "  max_gap        " << num(v.max_gap) << '\n'
            << "  trials         " << v.trials << " (" << v.failures << " failed)\n";
  for (const auto* w : {&v.convexity_violation, &v.concavity_violation}) {
    if (!*w) continue;
    const std::string path = g.out.empty() ? "" : write_witness(g.out, "probe_" + to_string((*w)->violates), **w);
    print_witness_row(std::cout, to_string((*w)->violates), **w, path);
  }
  return mismatch ? kViolation : kOk;
}

// ---------------------------------------------------------------------------

struct CounterexampleArgs {
  std::string name;
  std::optional<double> r;
  std::optional<double> s;
  double eps = 0.05;
  std::optional<double> t;
  std::string branch;
};

void report_result(const std::string& tag, const CounterexampleResult& res, const std::string& dir) {
  std::cout << tag << ' ' << res.functional.name() << '\n'
            << "  b=" << short_num(res.b) << "  t=" << short_num(res.t) << "  k=" << short_num(res.k)
            << "  x=" << short_num(res.x) << '\n';
  if (res.functional.k.size()) {
    const ComplexMatrix id = ComplexMatrix::Identity(res.functional.k.rows(), res.functional.k.cols());
    std::cout << "  ||K - I||=" << short_num(operator_norm(res.functional.k - id));
    if (res.functional.m) std::cout << "  ||M - I||=" << short_num(operator_norm(res.functional.m->matrix() - id));
    std::cout << '\n';
  }
  for (const auto* w : {&res.convexity_violation, &res.concavity_violation}) {
    if (!*w) continue;
    const std::string path = write_witness(dir, tag + "_" + to_string((*w)->violates), **w);
    print_witness_row(std::cout, to_string((*w)->violates), **w, path);
  }
}

double required(const std::optional<double>& v, const char* flag) {
  if (!v) throw DomainError(std::string(flag) + " is required");
  return *v;
}

int run_counterexample_cmd(const Globals& g, const CounterexampleArgs& a) {
  const Settings s = resolve_settings(g);
  WitnessSearchConfig cfg;
  cfg.eta = s.eta;
  const std::string dir = g.out.empty() ? "." : g.out;

  if (a.name == "remark34") {
    const double sv = required(a.s, "--s");
    const double value = remark_joint_gap(sv);
    const double closed = remark_joint_closed_form(sv);
    const double deviation = std::abs(value - closed);
    std::cout << "remark34 s=" << num(sv) << '\n'
              << "  value        " << num(value) << '\n'
              << "  closed_form  " << num(closed) << '\n'
              << "  deviation    " << num(deviation) << '\n';
    const Witness w = remark_joint_witness(sv);
    print_witness_row(std::cout, "joint_" + to_string(w.violates), w,
                      write_witness(dir, "remark34_joint", w));
    return deviation <= 1e-12 ? kOk : kNumerical;
  }
  if (a.name == "thm22") {
    report_result("thm22", theorem22_witness(required(a.r, "--r"), required(a.s, "--s"), a.eps, cfg), dir);
    return kOk;
  }
  if (a.name == "cor23") {
    report_result("cor23", corollary23_witness(required(a.r, "--r"), required(a.s, "--s"), a.eps, cfg), dir);
    return kOk;
  }
  if (a.name == "prop33") {
    const double sv = required(a.s, "--s");
    std::vector<Prop33Branch> branches;
    if (a.branch == "nonconvex") branches = {Prop33Branch::NonConvex};
    else if (a.branch == "nonconcave") branches = {Prop33Branch::NonConcave};
    else if (a.branch.empty()) {
      if (sv < 0.5) branches.push_back(Prop33Branch::NonConvex);
      branches.push_back(Prop33Branch::NonConcave);
      if (a.t) throw DomainError("--t needs an explicit --branch");
    } else {
      throw DomainError("--branch must be nonconvex or nonconcave");
    }
    for (const auto b : branches) {
      const auto res = prop33_witness(sv, b, a.t, cfg);
      std::cout << "  h(s,t)=" << num(h_st(sv, res.t)) << '\n';
      report_result(b == Prop33Branch::NonConvex ? "prop33_nonconvex" : "prop33_nonconcave", res, dir);
    }
    return kOk;
  }
  throw DomainError("unknown counterexample '" + a.name + "' (expected thm22, cor23, prop33, remark34)");
}

// ---------------------------------------------------------------------------

struct DpiArgs {
  std::string entropy = "umegaki";
  double alpha = 0.5;
  double z = 1.0;
  std::vector<int> dims;
  bool serial = false;
};

int run_dpi_cmd(const Globals& g, const DpiArgs& a) {
  Settings s = resolve_settings(g);
  if (g.tol) {
    Tolerances t = tolerances();
    t.dpi = *g.tol;
    set_tolerances(t);
  }
  DpiBatchConfig cfg;
  cfg.spec = {parse_entropy_kind(a.entropy), a.alpha, a.z};
  cfg.trials = s.trials.value_or(200);
  cfg.dims = a.dims.empty() ? std::vector<int>{s.dim.value_or(2)} : a.dims;
  cfg.seed = s.seed;
  cfg.force = g.force;
  cfg.execution = a.serial ? Execution::Serial : Execution::Parallel;
  const DpiBatchResult res = run_dpi_batch(cfg);

  Output out(g.out);
  std::ostream& os = out.stream();
  if (!g.no_timestamp) {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# generated " << buf << '\n';
  }
  os << "trial,dim,seed,value_in,value_out,gap,error\n";
  for (const auto& t : res.trials) {
    os << t.trial << ',' << t.dim << ',' << t.seed << ',';
    if (t.error.empty()) {
      os << t.report.value_in.to_string() << ',' << t.report.value_out.to_string() << ','
         << (t.report.gap ? num(*t.report.gap) : std::string("")) << ",\n";
    } else {
      os << ",,,\"" << t.error << "\"\n";
    }
  }
  const bool in_range = cfg.spec.in_dpi_range();
  std::ostream& summary = out.to_file() ? std::cout : std::cerr;
  summary << "dpi " << cfg.spec.name() << (in_range ? "" : " (outside the proven range)") << ": "
          << res.trials.size() << " trials, min_gap=" << num(res.min_gap)
          << ", mean_gap=" << num(res.mean_gap) << ", violations=" << res.violations
          << ", errors=" << res.errors << '\n';
  if (res.errors > 0) return kNumerical;
  return in_range && res.violations > 0 ? kViolation : kOk;
}

// ---------------------------------------------------------------------------

int run_identities_cmd(const Globals& g) {
  const Settings s = resolve_settings(g);
  IdentitySuiteConfig cfg;
  cfg.trials = s.trials.value_or(200);
  cfg.seed = s.seed;
  if (s.dim) cfg.dims = {*s.dim};
  const auto results = run_identity_suite(cfg);
  bool ok = true;
  int width = 8;
  for (const auto& r : results) width = std::max(width, static_cast<int>(r.name.size()));
  std::printf("%-*s  max_rel_dev  instances\n", width, "identity");
  for (const auto& r : results) {
    std::printf("%-*s  %.3e    %d\n", width, r.name.c_str(), r.max_relative_deviation, r.instances);
    ok = ok && r.max_relative_deviation <= 1e-10;
  }
  return ok ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tracelab: trace functional convexity and quantum relative entropy laboratory"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Base RNG seed");
  app.add_option("--tol", g.tol, "Violation threshold (probe eta, DPI tolerance)");
  app.add_option("--dim", g.dim, "Matrix dimension")->check(CLI::PositiveNumber);
  app.add_option("--trials", g.trials, "Random trials")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output file (sweep, dpi) or witness directory (probe, counterexample)");
  app.add_option("--config", g.config, "key=value config file (default: $TRACELAB_CONFIG)");
  app.add_flag("--no-timestamp", g.no_timestamp, "Omit the '# generated' header line");
  app.add_flag("--force", g.force, "Run DPI checks outside the proven parameter range");

  SweepArgs sweep;
  auto* sw = app.add_subcommand("sweep", "Probe every point of a parameter grid, emit CSV");
  sw->fallthrough();
  sw->add_option("--functional", sweep.functional, "gamma|lambda|psi|omega|lambda_am|alpha_z")->required();
  sw->add_option("--axis", sweep.axes, "name=min:max:step (up to 3)");
  sw->add_option("--point", sweep.points, "Explicit point, e.g. p=0.3,s=1 (replaces the grid)");
  sw->add_option("--fix", sweep.fixed, "Fixed parameter name=value");
  sw->add_option("--K", sweep.k, "identity | random[:seed] | file:<path>");
  sw->add_option("--M", sweep.m, "identity | random[:seed] | file:<path>");
  sw->add_option("--witness-dir", sweep.witness_dir, "Write witness files here");
  sw->add_flag("--serial", sweep.serial, "Run the serial reference path");

  ProbeArgs pr;
  auto* pc = app.add_subcommand("probe", "Randomized convexity probe at one parameter point");
  pc->fallthrough();
  pc->add_option("functional", pr.functional, "gamma|lambda|psi|omega|lambda_am")->required();
  pc->add_option("--p", pr.p);
  pc->add_option("--q", pr.q);
  pc->add_option("--r", pr.r);
  pc->add_option("--s", pr.s);
  pc->add_option("--K", pr.k, "identity | random[:seed] | file:<path>");
  pc->add_option("--M", pr.m, "identity | random[:seed] | file:<path>");
  pc->add_option("--preset", pr.preset, "prop33 | thm22: K = diag(1, kval), M = [[1,t],[t,1]]");
  pc->add_option("--t", pr.t, "Off-diagonal of M for --preset");
  pc->add_option("--kval", pr.k_value, "Small diagonal entry of K for --preset");
  pc->add_flag("--serial", pr.serial, "Run the serial reference path");

  CounterexampleArgs cx;
  auto* cc = app.add_subcommand("counterexample", "Reproduce a counterexample construction");
  cc->fallthrough();
  cc->add_option("name", cx.name, "thm22 | cor23 | prop33 | remark34")->required();
  cc->add_option("--r", cx.r);
  cc->add_option("--s", cx.s);
  cc->add_option("--eps", cx.eps, "Distance of M (thm22) or K (cor23) from the identity");
  cc->add_option("--t", cx.t, "prop33: off-diagonal of M");
  cc->add_option("--branch", cx.branch, "prop33: nonconvex | nonconcave");

  DpiArgs dp;
  auto* dc = app.add_subcommand("dpi", "Data-processing inequality over random channels");
  dc->fallthrough();
  dc->add_option("--entropy", dp.entropy, "umegaki | renyi | sandwiched | alpha_z");
  dc->add_option("--alpha", dp.alpha);
  dc->add_option("--z", dp.z);
  dc->add_option("--dims", dp.dims, "Dimensions cycled over trials (default: --dim)");
  dc->add_flag("--serial", dp.serial, "Run the serial reference path");

  auto* ic = app.add_subcommand("identities", "Run the trace-functional identity suite");
  ic->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (sw->parsed()) return run_sweep_cmd(g, sweep);
    if (pc->parsed()) return run_probe_cmd(g, pr);
    if (cc->parsed()) return run_counterexample_cmd(g, cx);
    if (dc->parsed()) return run_dpi_cmd(g, dp);
    if (ic->parsed()) return run_identities_cmd(g);
  } catch (const WitnessSearchError& e) {
    std::cerr << "error: " << e.what() << '\n';
    for (const auto& line : e.trace()) std::cerr << "  " << line << '\n';
    return kNumerical;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DimensionError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
