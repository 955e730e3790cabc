#include "tracelab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tracelab/errors.hpp"

namespace tracelab {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) throw DomainError("json: cannot serialize a non-finite number");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

void dump_into(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::number_float: out += format_double(j.get<double>()); return;
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(it.key()).dump() + ": ";
        dump_into(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      // Short arrays of scalars (one matrix entry) stay on one line.
      const bool flat = j.size() <= 2 && std::all_of(j.begin(), j.end(), [](const Json& e) {
                          return e.is_primitive();
                        });
      if (j.empty() || flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_into(j[i], out, indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        dump_into(j[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    default: out += j.dump(); return;
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("json: missing field '") + key + "'");
  return j.at(key);
}

Json args_to_json(const Arguments& args) {
  Json a = Json::array();
  for (const auto& x : args) a.push_back(matrix_to_json(x.matrix()));
  return a;
}

Arguments args_from_json(const Json& j) {
  Arguments out;
  for (const auto& e : j) out.push_back(PositiveMatrix::from(matrix_from_json(e)));
  return out;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json j;
  if (m.rows() == m.cols()) j["dim"] = m.rows();
  else j["dim"] = Json::array({m.rows(), m.cols()});
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      entries.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
  j["entries"] = std::move(entries);
  return j;
}

ComplexMatrix matrix_from_json(const Json& j) {
  try {
    const Json& dim = field(j, "dim");
    Eigen::Index rows, cols;
    if (dim.is_array()) {
      if (dim.size() != 2) throw DomainError("json: dim must be n or [rows, cols]");
      rows = dim[0].get<Eigen::Index>();
      cols = dim[1].get<Eigen::Index>();
    } else {
      rows = cols = dim.get<Eigen::Index>();
    }
    if (rows < 1 || cols < 1) throw DimensionError("json: matrix dimensions must be positive");
    const Json& entries = field(j, "entries");
    if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != rows * cols)
      throw DimensionError("json: entries length does not match dim");
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index k = 0; k < cols; ++k) {
        const Json& e = entries[static_cast<std::size_t>(i * cols + k)];
        if (!e.is_array() || e.size() != 2) throw DomainError("json: each entry must be [re, im]");
        m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
      }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("json: malformed matrix: ") + e.what());
  }
}

Json channel_to_json(const KrausChannel& n) {
  Json j;
  j["d_in"] = n.d_in();
  j["d_out"] = n.d_out();
  Json ops = Json::array();
  for (const auto& k : n.kraus()) ops.push_back(matrix_to_json(k));
  j["kraus"] = std::move(ops);
  return j;
}

KrausChannel channel_from_json(const Json& j) {
  try {
    const auto d_in = field(j, "d_in").get<Eigen::Index>();
    const auto d_out = field(j, "d_out").get<Eigen::Index>();
    std::vector<ComplexMatrix> ops;
    for (const auto& e : field(j, "kraus")) ops.push_back(matrix_from_json(e));
    KrausChannel n = KrausChannel::from(std::move(ops));
    if (n.d_in() != d_in || n.d_out() != d_out)
      throw DimensionError("json: Kraus shapes disagree with d_in/d_out");
    return n;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("json: malformed channel: ") + e.what());
  }
}

Json witness_to_json(const Witness& w) {
  const FunctionalSpec& f = w.functional;
  Json j;
  j["functional"] = to_string(f.kind);
  j["name"] = f.name();
  j["params"] = {{"p", f.p}, {"q", f.q}, {"r", f.r}, {"s", f.s}};
  j["K"] = f.k.size() ? matrix_to_json(f.k) : Json(nullptr);
  j["M"] = f.m ? matrix_to_json(f.m->matrix()) : Json(nullptr);
  j["args1"] = args_to_json(w.first);
  j["args2"] = args_to_json(w.second);
  j["gap"] = w.gap;
  j["violates"] = to_string(w.violates);
  j["seed"] = w.seed;
  j["lineage"] = w.lineage;
  return j;
}

Witness witness_from_json(const Json& j) {
  try {
    Witness w;
    FunctionalSpec& f = w.functional;
    f.kind = parse_functional_kind(field(j, "functional").get<std::string>());
    const Json& params = field(j, "params");
    f.p = field(params, "p").get<double>();
    f.q = field(params, "q").get<double>();
    f.r = field(params, "r").get<double>();
    f.s = field(params, "s").get<double>();
    if (!field(j, "K").is_null()) f.k = matrix_from_json(j.at("K"));
    if (!field(j, "M").is_null()) f.m = PositiveMatrix::from(matrix_from_json(j.at("M")));
    w.first = args_from_json(field(j, "args1"));
    w.second = args_from_json(field(j, "args2"));
    w.gap = field(j, "gap").get<double>();
    const std::string v = field(j, "violates").get<std::string>();
    if (v == "convexity_violation") w.violates = ViolationKind::Convexity;
    else if (v == "concavity_violation") w.violates = ViolationKind::Concavity;
    else throw DomainError("json: unknown violation kind '" + v + "'");
    w.seed = field(j, "seed").get<std::uint64_t>();
    w.lineage = field(j, "lineage").get<std::string>();
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("json: malformed witness: ") + e.what());
  }
}

std::string dump_json(const Json& j) {
  std::string out;
  dump_into(j, out, 0);
  out += "\n";
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << text;
  if (!out) throw DomainError("write to '" + path + "' failed");
}

ComplexMatrix read_matrix_file(const std::string& path) { return matrix_from_json(read_json_file(path)); }

KrausChannel read_channel_file(const std::string& path) { return channel_from_json(read_json_file(path)); }

}  // namespace tracelab
