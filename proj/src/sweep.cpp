#include "tracelab/sweep.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "tracelab/channel.hpp"
#include "tracelab/errors.hpp"
#include "tracelab/io.hpp"
#include "tracelab/random.hpp"
#include "tracelab/theory.hpp"

namespace tracelab {

namespace {

const std::map<std::string, std::set<std::string>>& parameter_names() {
  static const std::map<std::string, std::set<std::string>> names{
      {"gamma", {"p", "s"}},     {"lambda", {"r", "s"}},    {"psi", {"p", "q", "s"}},
      {"omega", {"p", "q", "r"}}, {"lambda_am", {"r", "s"}}, {"alpha_z", {"alpha", "z"}},
  };
  return names;
}

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

double parse_double(const std::string& v, const std::string& what) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw DomainError("bad number '" + v + "' in " + what);
  return out;
}

std::map<std::string, double> point_params(const SweepSpec& spec, const std::vector<double>& point) {
  std::map<std::string, double> params{{"p", 1.0}, {"q", 1.0}, {"r", 1.0}, {"s", 1.0},
                                       {"alpha", 0.5}, {"z", 1.0}};
  for (const auto& [k, v] : spec.fixed) params[k] = v;
  for (std::size_t i = 0; i < spec.axes.size(); ++i) params[spec.axes[i].name] = point[i];
  return params;
}

void fill_from_probe(RegionRecord& rec, const FunctionalSpec& f, const ProbeConfig& cfg) {
  const TheoryClaim claim = classify(f);
  rec.theory_class = claim.label();
  const ProbeVerdict v = probe(f, cfg);
  rec.empirical_verdict = to_string(v.verdict);
  rec.min_gap = v.min_gap;
  rec.max_gap = v.max_gap;
  const bool convexity_seen = v.convexity_violation.has_value();
  const bool concavity_seen = v.concavity_violation.has_value();
  rec.mismatch = (convexity_seen && claim.convex_proven) || (concavity_seen && claim.concave_proven);
  rec.underpowered = !rec.mismatch && ((claim.convex_refuted && !convexity_seen) ||
                                       (claim.concave_refuted && !concavity_seen));
  if (v.convexity_violation) rec.witnesses.push_back(*v.convexity_violation);
  if (v.concavity_violation) rec.witnesses.push_back(*v.concavity_violation);
}

void fill_from_dpi(RegionRecord& rec, double alpha, double z, const ProbeConfig& cfg) {
  rec.theory_class = alpha_z_class(alpha, z);
  DpiBatchConfig batch;
  batch.spec = {EntropyKind::AlphaZ, alpha, z};
  batch.trials = cfg.trials;
  batch.dims = {cfg.dim};
  batch.seed = rec.seed;
  batch.force = true;
  batch.execution = Execution::Serial;
  const DpiBatchResult res = run_dpi_batch(batch);
  if (static_cast<std::size_t>(res.errors) * 10 > res.trials.size() || res.finite_gaps == 0) {
    std::ostringstream os;
    os << res.errors << " of " << res.trials.size() << " DPI trials failed";
    if (!res.trials.empty() && !res.trials.front().error.empty()) os << ": " << res.trials.front().error;
    throw InconclusiveError(os.str());
  }
  rec.min_gap = res.min_gap;
  rec.max_gap = -std::numeric_limits<double>::infinity();
  for (const auto& t : res.trials)
    if (t.error.empty() && t.report.gap) rec.max_gap = std::max(rec.max_gap, *t.report.gap);
  const bool violated = res.violations > 0;
  rec.empirical_verdict = violated ? "DpiViolated" : "DpiHolds";
  const bool monotone = alpha_z_monotone_region(alpha, z);
  rec.mismatch = monotone && violated;
  rec.underpowered = !monotone && !violated;
}

}  // namespace

std::vector<double> Axis::values() const {
  std::vector<double> out;
  const double slack = 1e-9 * step;
  for (long i = 0;; ++i) {
    const double v = min + static_cast<double>(i) * step;
    if (v > max + slack) break;
    out.push_back(std::abs(v) < slack ? 0.0 : v);
  }
  return out;
}

Axis parse_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw DomainError("axis '" + text + "': expected name=min:max:step");
  Axis a;
  a.name = text.substr(0, eq);
  const std::string rest = text.substr(eq + 1);
  std::vector<std::string> parts;
  std::stringstream ss(rest);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() == 1) {
    a.min = a.max = parse_double(parts[0], "axis " + a.name);
    a.step = 1.0;
  } else if (parts.size() == 3) {
    a.min = parse_double(parts[0], "axis " + a.name);
    a.max = parse_double(parts[1], "axis " + a.name);
    a.step = parse_double(parts[2], "axis " + a.name);
  } else {
    throw DomainError("axis '" + text + "': expected name=min:max:step");
  }
  return a;
}

OperatorSpec parse_operator_spec(const std::string& text) {
  OperatorSpec s;
  if (text == "identity") return s;
  if (text == "random") {
    s.source = OperatorSource::Random;
    return s;
  }
  if (text.rfind("random:", 0) == 0) {
    s.source = OperatorSource::Random;
    s.seed = static_cast<std::uint64_t>(parse_double(text.substr(7), "operator seed"));
    return s;
  }
  if (text.rfind("file:", 0) == 0 && text.size() > 5) {
    s.source = OperatorSource::File;
    s.path = text.substr(5);
    return s;
  }
  throw DomainError("operator source '" + text + "': expected identity, random[:seed] or file:<path>");
}

ComplexMatrix build_k(const OperatorSpec& spec, int dim) {
  switch (spec.source) {
    case OperatorSource::Identity: return ComplexMatrix::Identity(dim, dim);
    case OperatorSource::Random: {
      Rng rng(spec.seed);
      return random_invertible(dim, rng, 10.0);
    }
    case OperatorSource::File: {
      ComplexMatrix k = read_matrix_file(spec.path);
      if (k.rows() != dim) throw DimensionError("K from '" + spec.path + "' does not match --dim");
      return k;
    }
  }
  return {};
}

PositiveMatrix build_m(const OperatorSpec& spec, int dim) {
  switch (spec.source) {
    case OperatorSource::Identity: return PositiveMatrix::identity(dim);
    case OperatorSource::Random: return random_positive(dim, derive_seed(spec.seed, 1), 10.0);
    case OperatorSource::File: {
      PositiveMatrix m = PositiveMatrix::from(read_matrix_file(spec.path));
      if (m.dim() != dim) throw DimensionError("M from '" + spec.path + "' does not match --dim");
      return m;
    }
  }
  return PositiveMatrix::identity(dim);
}

void SweepSpec::validate() const {
  const auto it = parameter_names().find(functional);
  if (it == parameter_names().end())
    throw DomainError("unknown functional '" + functional +
                      "' (expected gamma, lambda, psi, omega, lambda_am, alpha_z)");
  if (axes.empty() || axes.size() > 3) throw DomainError("sweep needs between 1 and 3 axes");
  std::set<std::string> seen;
  for (const auto& a : axes) {
    if (!it->second.count(a.name))
      throw DomainError("axis '" + a.name + "' is not a parameter of " + functional);
    if (!seen.insert(a.name).second) throw DomainError("axis '" + a.name + "' given twice");
    if (!(a.step > 0.0)) throw DomainError("axis '" + a.name + "': step must be positive");
    if (!(a.min <= a.max)) throw DomainError("axis '" + a.name + "': min exceeds max");
  }
  for (const auto& [k, v] : fixed)
    if (!it->second.count(k)) throw DomainError("fixed parameter '" + k + "' is not a parameter of " + functional);
  for (const auto& p : points)
    if (p.size() != axes.size()) throw DomainError("explicit point has the wrong number of coordinates");
  probe.validate();
}

std::vector<std::vector<double>> SweepSpec::grid() const {
  if (!points.empty()) return points;
  std::vector<std::vector<double>> out{{}};
  for (const auto& a : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : out)
      for (double v : a.values()) {
        auto p = prefix;
        p.push_back(v);
        next.push_back(std::move(p));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<RegionRecord> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto grid = spec.grid();
  if (grid.empty()) throw DomainError("sweep grid is empty");

  const bool is_dpi = spec.functional == "alpha_z";
  ComplexMatrix k;
  std::optional<PositiveMatrix> m;
  if (!is_dpi && spec.functional != "omega") k = build_k(spec.k, spec.probe.dim);
  if (spec.functional == "lambda") m = build_m(spec.m, spec.probe.dim);

  std::vector<RegionRecord> rows(grid.size());
  for_each_task(rows.size(), spec.execution, [&](std::size_t i) {
    RegionRecord& rec = rows[i];
    rec.point = grid[i];
    rec.seed = derive_seed(spec.probe.seed, i);
    rec.trials = spec.probe.trials;
    const auto params = point_params(spec, rec.point);
    try {
      if (is_dpi) {
        fill_from_dpi(rec, params.at("alpha"), params.at("z"), spec.probe);
        return;
      }
      FunctionalSpec f;
      f.kind = parse_functional_kind(spec.functional);
      f.p = params.at("p");
      f.q = params.at("q");
      f.r = params.at("r");
      f.s = params.at("s");
      f.k = k;
      f.m = m;
      rec.theory_class = classify(f).label();
      ProbeConfig cfg = spec.probe;
      cfg.seed = rec.seed;
      cfg.execution = Execution::Serial;
      fill_from_probe(rec, f, cfg);
    } catch (const Error& e) {
      rec.error = e.what();
      rec.empirical_verdict = "ERROR";
      rec.mismatch = rec.underpowered = false;
      rec.witnesses.clear();
    }
  });

  if (!spec.witness_dir.empty()) {
    std::filesystem::create_directories(spec.witness_dir);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (const auto& w : rows[i].witnesses) {
        const std::string path = (std::filesystem::path(spec.witness_dir) /
                                  (spec.functional + "_point" + std::to_string(i) + "_" +
                                   to_string(w.violates) + ".json"))
                                     .string();
        write_text_file(path, dump_json(witness_to_json(w)));
        if (!rows[i].witness_path.empty()) rows[i].witness_path += ';';
        rows[i].witness_path += path;
      }
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const SweepSpec& spec, const std::vector<RegionRecord>& rows,
               bool timestamp_header) {
  if (timestamp_header) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    out << "# generated " << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ") << '\n';
  }
  for (const auto& a : spec.axes) out << a.name << ',';
  out << "empirical_verdict,theory_class,min_gap,max_gap,trials,seed,witness_path,error\n";
  for (const auto& r : rows) {
    for (double v : r.point) out << shortest(v) << ',';
    std::string verdict = r.empirical_verdict;
    if (r.mismatch) verdict += "/MISMATCH";
    else if (r.underpowered) verdict += "/UNDERPOWERED";
    out << verdict << ',' << r.theory_class << ',';
    if (r.error.empty()) out << shortest(r.min_gap) << ',' << shortest(r.max_gap) << ',';
    else out << ",,";
    out << r.trials << ',' << r.seed << ',' << csv_field(r.witness_path) << ',' << csv_field(r.error)
        << '\n';
  }
}

}  // namespace tracelab
