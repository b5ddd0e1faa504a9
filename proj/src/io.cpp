#include "mdqec/io.hpp"

#include <fstream>
#include <sstream>

namespace mdqec::io {

ordered_json matrix_to_json(const CMat& m) {
  ordered_json rows = ordered_json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error("matrix: expected a non-empty array of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j.at(0).size());
  CMat m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto& row = j.at(i);
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw Error("matrix: ragged rows");
    for (Index c = 0; c < cols; ++c) {
      const auto& entry = row.at(c);
      if (!entry.is_array() || entry.size() != 2)
        throw Error("matrix: entries must be [re, im] pairs");
      m(i, c) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  if (!m.allFinite()) throw Error("matrix: non-finite entry");
  return m;
}

ordered_json channel_to_json(const Channel& ch, const json& metadata) {
  ordered_json j;
  j["dim"] = ch.dim;
  ordered_json kraus = ordered_json::array();
  for (const CMat& e : ch.kraus) kraus.push_back(matrix_to_json(e));
  j["kraus"] = std::move(kraus);
  if (!metadata.empty()) j["metadata"] = metadata;
  return j;
}

Channel channel_from_json(const json& j, const Tolerance& tol) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("kraus"))
    throw Error("channel: expected an object with \"dim\" and \"kraus\"");
  const Index dim = j.at("dim").get<Index>();
  std::vector<CMat> kraus;
  for (const auto& jk : j.at("kraus")) kraus.push_back(matrix_from_json(jk));
  if (kraus.empty()) throw Error("channel: empty Kraus list");
  for (const CMat& e : kraus)
    if (e.rows() != dim || e.cols() != dim)
      throw ShapeMismatch("channel: Kraus shape does not match \"dim\"");
  return validate(std::move(kraus), tol);
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    const std::size_t upto = std::min(e.byte, text.size());
    for (std::size_t i = 0; i < upto; ++i)
      if (text[i] == '\n') ++line;
    throw ParseError(path + ": " + e.what(), line, e.byte);
  }
}

Channel load_channel(const std::string& path, const Tolerance& tol) {
  return channel_from_json(parse_file(path), tol);
}

CMat load_matrix(const std::string& path) { return matrix_from_json(parse_file(path)); }

void write_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace mdqec::io
