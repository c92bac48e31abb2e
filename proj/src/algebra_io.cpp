#include "gvna/algebra_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gvna/errors.hpp"

namespace gvna {

namespace {

using nlohmann::json;

void append_matrix(std::string& out, const CMatrix& m) {
  out += '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += ',';
    out += '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += '[' + format_double(m(i, j).real()) + ',' + format_double(m(i, j).imag()) + ']';
    }
    out += ']';
  }
  out += ']';
}

[[noreturn]] void malformed(const std::string& what) { throw InputError("malformed document: " + what); }

CMatrix read_matrix(const json& j, std::size_t d, const std::string& where) {
  if (!j.is_array() || j.size() != d) malformed(where + " must have " + std::to_string(d) + " rows");
  CMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != d) malformed(where + " row " + std::to_string(i) + " must have " + std::to_string(d) + " entries");
    for (std::size_t k = 0; k < d; ++k) {
      const auto& entry = row[k];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
        malformed(where + " entry (" + std::to_string(i) + "," + std::to_string(k) + ") must be a [re, im] pair");
      }
      m(i, k) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string serialize_algebra(const GradedAlgebra& g) {
  std::string out = "{\"generators\": [";
  const auto& gens = g.alg().generators();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    out += k ? ",\n  " : "\n  ";
    append_matrix(out, gens[k]);
  }
  out += gens.empty() ? "],\n" : "\n],\n";
  out += "\"grading\": ";
  append_matrix(out, g.gamma());
  out += ",\n\"hilbert_dim\": " + std::to_string(g.hilbert_dim()) + ",\n";
  out += "\"name\": " + json(g.name()).dump() + "}\n";
  return out;
}

GradedAlgebra parse_algebra(std::string_view text, const Tolerances& tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(e.what());
  }
  if (!doc.is_object()) malformed("top level must be an object");
  for (const char* key : {"name", "hilbert_dim", "generators", "grading"}) {
    if (!doc.contains(key)) malformed(std::string("missing field \"") + key + "\"");
  }
  if (!doc["name"].is_string()) malformed("\"name\" must be a string");
  if (!doc["hilbert_dim"].is_number_unsigned() || doc["hilbert_dim"].get<std::size_t>() < 1) {
    malformed("\"hilbert_dim\" must be a positive integer");
  }
  if (!doc["generators"].is_array()) malformed("\"generators\" must be a list of matrices");
  const auto d = doc["hilbert_dim"].get<std::size_t>();
  std::vector<CMatrix> gens;
  for (std::size_t k = 0; k < doc["generators"].size(); ++k) {
    gens.push_back(read_matrix(doc["generators"][k], d, "generator " + std::to_string(k)));
  }
  CMatrix gamma = read_matrix(doc["grading"], d, "grading");
  return make_graded(gens, gamma, doc["name"].get<std::string>(), tol);
}

GradedAlgebra load_algebra_file(const std::filesystem::path& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open algebra file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_algebra(buf.str(), tol);
}

}  // namespace gvna
