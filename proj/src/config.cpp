#include "tracelab/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "tracelab/errors.hpp"

namespace tracelab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& v) {
  T out{};
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw DomainError("bad number '" + v + "'");
  return out;
}

using Setter = std::function<void(Settings&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto real = [&t](const std::string& key, double Settings::*field) {
      t[key] = [field](Settings& s, const std::string& v) { s.*field = parse_number<double>(v); };
    };
    auto tol = [&t](const std::string& key, double Tolerances::*field) {
      t[key] = [field](Settings& s, const std::string& v) { s.tol.*field = parse_number<double>(v); };
    };
    t["seed"] = [](Settings& s, const std::string& v) { s.seed = parse_number<std::uint64_t>(v); };
    t["dim"] = [](Settings& s, const std::string& v) { s.dim = parse_number<int>(v); };
    t["trials"] = [](Settings& s, const std::string& v) { s.trials = parse_number<int>(v); };
    t["max_sweeps"] = [](Settings& s, const std::string& v) { s.tol.max_sweeps = parse_number<int>(v); };
    real("eta", &Settings::eta);
    real("tol", &Settings::eta);
    real("max_condition", &Settings::max_condition);
    real("step_scale", &Settings::step_scale);
    tol("psd_rel", &Tolerances::psd_rel);
    tol("hermiticity", &Tolerances::hermiticity);
    tol("reconstruction", &Tolerances::reconstruction);
    tol("unitarity", &Tolerances::unitarity);
    tol("support", &Tolerances::support);
    tol("containment", &Tolerances::containment);
    tol("unit_trace", &Tolerances::unit_trace);
    tol("trace_preservation", &Tolerances::trace_preservation);
    tol("imaginary_trace", &Tolerances::imaginary_trace);
    tol("alpha_one_band", &Tolerances::alpha_one_band);
    tol("dpi", &Tolerances::dpi);
    tol("residual", &Tolerances::residual);
    return t;
  }();
  return table;
}

}  // namespace

Settings parse_settings(const std::string& text, Settings base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end())
      throw DomainError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    try {
      it->second(base, value);
    } catch (const DomainError& e) {
      throw DomainError("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

Settings load_settings_file(const std::string& path, Settings base) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_settings(buf.str(), base);
}

std::optional<std::string> config_path_from_env() {
  const char* v = std::getenv("TRACELAB_CONFIG");
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

}  // namespace tracelab
