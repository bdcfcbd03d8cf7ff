#include "cld/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cld/errors.hpp"
#include "json_convert.hpp"

namespace cld {

using nlohmann::json;

json element_json(const GradedElement& a) {
  json terms = json::array();
  for (const auto& [w, c] : a.terms)
    terms.push_back({{"m", w.m}, {"n", w.n}, {"re", c.real()}, {"im", c.imag()}});
  return {{"cutoff", a.cutoff}, {"terms", terms}};
}

GradedElement element_of(const json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    fail(Status::parse_error, "element needs a \"terms\" array");
  GradedElement a;
  for (const auto& t : j["terms"]) {
    if (!t.contains("m") || !t.contains("n"))
      fail(Status::parse_error, "term needs integer \"m\" and \"n\"");
    const Weight w{t["m"].get<int>(), t["n"].get<int>()};
    a.add(w, {t.value("re", 0.0), t.value("im", 0.0)});
  }
  if (j.contains("cutoff")) {
    const int c = j["cutoff"].get<int>();
    if (c < 0) fail(Status::parse_error, "cutoff must be >= 0");
    if (c < a.support_radius()) fail(Status::parse_error, "term outside declared cutoff");
    a.cutoff = c;
  }
  return a;
}

json matrix_json(const MatrixGradedElement& a) {
  json rows = json::array();
  for (int i = 0; i < a.dim; ++i) {
    json row = json::array();
    for (int j = 0; j < a.dim; ++j) row.push_back(element_json(a.at(i, j)));
    rows.push_back(row);
  }
  return {{"dim", a.dim}, {"entries", rows}};
}

MatrixGradedElement matrix_of(const json& j) {
  // a bare element is accepted as a 1x1 matrix
  if (j.is_object() && j.contains("terms")) return MatrixGradedElement::scalar(element_of(j));
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
    fail(Status::parse_error, "matrix needs \"dim\" and \"entries\"");
  const int d = j["dim"].get<int>();
  if (d < 1) fail(Status::parse_error, "dim must be >= 1");
  const json& rows = j["entries"];
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(d))
    fail(Status::parse_error, "entries must have dim rows");
  MatrixGradedElement a(d);
  for (int i = 0; i < d; ++i) {
    if (!rows[i].is_array() || rows[i].size() != static_cast<std::size_t>(d))
      fail(Status::parse_error, "row length must equal dim");
    for (int k = 0; k < d; ++k) a.at(i, k) = element_of(rows[i][k]);
  }
  return a;
}

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(Status::parse_error, std::string("invalid JSON: ") + e.what());
  }
}

template <class F>
auto guarded(F f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(Status::parse_error, std::string("malformed document: ") + e.what());
  }
}

}  // namespace

std::string element_to_json(const GradedElement& a) { return element_json(a).dump(); }

GradedElement element_from_json(const std::string& text) {
  return guarded([&] { return element_of(parse(text)); });
}

std::string matrix_to_json(const MatrixGradedElement& a) { return matrix_json(a).dump(); }

MatrixGradedElement matrix_from_json(const std::string& text) {
  return guarded([&] { return matrix_of(parse(text)); });
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Status::io_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(Status::io_error, "cannot write " + path);
  out << text;
  if (!out) fail(Status::io_error, "write failed for " + path);
}

}  // namespace cld
