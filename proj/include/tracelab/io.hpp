#pragma once

#include <string>

#include <json.hpp>

#include "tracelab/channel.hpp"
#include "tracelab/prober.hpp"

namespace tracelab {

using Json = nlohmann::ordered_json;

// {"dim": n, "entries": [[re, im], ...]} in row-major order. Rectangular
// matrices (Kraus operators) use "dim": [rows, cols].
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

// {"d_in", "d_out", "kraus": [matrix, ...]}
Json channel_to_json(const KrausChannel& n);
KrausChannel channel_from_json(const Json& j);

Json witness_to_json(const Witness& w);
Witness witness_from_json(const Json& j);

// Serializes with every floating-point number written to 17 significant
// digits, so files round-trip exactly.
std::string dump_json(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

ComplexMatrix read_matrix_file(const std::string& path);
KrausChannel read_channel_file(const std::string& path);

}  // namespace tracelab
