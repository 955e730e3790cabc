#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tracelab/tolerances.hpp"

namespace tracelab {

// Run-wide defaults. A config file can override any of them; CLI flags are
// applied on top afterwards.
struct Settings {
  std::uint64_t seed = 20240601;
  double eta = 1e-9;
  std::optional<int> dim;     // unset: each command's own default
  std::optional<int> trials;
  double max_condition = 1e3;
  double step_scale = 0.5;
  Tolerances tol;
};

// Lines of `key = value`; `#` starts a comment. Keys are the Settings field
// names above plus every Tolerances field name. Unknown keys and unparsable
// values raise DomainError naming the line.
Settings parse_settings(const std::string& text, Settings base = {});
Settings load_settings_file(const std::string& path, Settings base = {});

// Value of TRACELAB_CONFIG, if set and non-empty.
std::optional<std::string> config_path_from_env();

}  // namespace tracelab
