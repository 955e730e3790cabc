#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "tracelab/prober.hpp"

namespace tracelab {

struct Axis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  // min + i * step for every i with the value not past max.
  std::vector<double> values() const;
};

// "p=-1:2:0.25", or "p=0.5" for a single value.
Axis parse_axis(const std::string& text);

enum class OperatorSource { Identity, Random, File };

struct OperatorSpec {
  OperatorSource source = OperatorSource::Identity;
  std::uint64_t seed = 1;
  std::string path;
};

// "identity", "random", "random:<seed>" or "file:<path>".
OperatorSpec parse_operator_spec(const std::string& text);

// Random K is conditioned invertible, random M positive, both with condition
// number at most 10. File sources must match dim.
ComplexMatrix build_k(const OperatorSpec& spec, int dim);
PositiveMatrix build_m(const OperatorSpec& spec, int dim);

struct SweepSpec {
  // gamma | lambda | psi | omega | lambda_am | alpha_z
  std::string functional = "gamma";
  std::vector<Axis> axes;  // at most 3
  // When non-empty, these points (one value per axis) replace the grid.
  std::vector<std::vector<double>> points;
  std::map<std::string, double> fixed;  // parameters not on an axis
  OperatorSpec k;
  OperatorSpec m;
  ProbeConfig probe;
  std::string witness_dir;  // empty: no witness files
  Execution execution = Execution::Parallel;

  void validate() const;
  std::vector<std::vector<double>> grid() const;
};

struct RegionRecord {
  std::vector<double> point;
  std::string empirical_verdict;
  std::string theory_class;
  double min_gap = 0.0;
  double max_gap = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string witness_path;
  std::string error;
  bool mismatch = false;
  bool underpowered = false;
  std::vector<Witness> witnesses;
};

// One record per grid point, in grid order. Point i probes with seed
// derive_seed(spec.probe.seed, i); per-point errors land in the error field.
// Witness files are written after all points finish.
std::vector<RegionRecord> run_sweep(const SweepSpec& spec);

void write_csv(std::ostream& out, const SweepSpec& spec, const std::vector<RegionRecord>& rows,
               bool timestamp_header);

}  // namespace tracelab
