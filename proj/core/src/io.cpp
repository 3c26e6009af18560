#include "gcyl/io.hpp"

#include <fstream>
#include <sstream>

namespace gcyl::io {

json to_json(const Mat& m) {
  json j = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    j.push_back(row);
  }
  return j;
}

json to_json(const Vec& v) {
  json j = json::array();
  for (int i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CVec& v) {
  json j = json::array();
  for (int i = 0; i < v.size(); ++i) j.push_back(to_json(v[i]));
  return j;
}

json to_json(const CMat& m) {
  json j = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    j.push_back(row);
  }
  return j;
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

namespace {

double number(const json& j, const char* what) {
  if (!j.is_number()) throw SchemaError(std::string(what) + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw SchemaError(std::string(what) + " must be an integer");
  return j.get<int>();
}

}  // namespace

Mat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) throw SchemaError("matrix must be a nested array");
  const auto rows = j.size(), cols = j[0].size();
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw SchemaError("ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = number(j[i][k], "matrix entry");
  }
  return m;
}

Vec vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw SchemaError("vector must be a non-empty array");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = number(j[i], "vector entry");
  return v;
}

cplx complex_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2) return {number(j[0], "real part"), number(j[1], "imaginary part")};
  throw SchemaError("complex number must be a number or [re, im]");
}

CVec spinor_from_json(const json& j) {
  const json& c = j.is_object() ? require(j, "components") : j;
  if (!c.is_array() || c.empty()) throw SchemaError("spinor components must be a non-empty array");
  CVec v(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) v[i] = complex_from_json(c[i]);
  return v;
}

clifford::Signature signature_from_json(const json& j) {
  if (j.is_array() && j.size() == 2) return {integer(j[0], "r"), integer(j[1], "s")};
  if (j.is_object()) return {integer(require(j, "r"), "r"), integer(require(j, "s"), "s")};
  throw SchemaError("signature must be [r, s]");
}

chart::Box box_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw SchemaError("box must be a list of [lo, hi] pairs");
  chart::Box b;
  for (const json& e : j) {
    if (!e.is_array() || e.size() != 2) throw SchemaError("box entries must be [lo, hi]");
    double lo = number(e[0], "box bound"), hi = number(e[1], "box bound");
    if (!(lo < hi)) throw SchemaError("box entries need lo < hi");
    b.bounds.push_back({lo, hi});
  }
  return b;
}

chart::MetricField metric_from_json(const json& j) {
  if (j.is_string()) return catalog::metric(j.get<std::string>());
  if (!j.is_object()) throw SchemaError("metric must be a catalog name or an object");
  if (j.contains("catalog")) {
    const json& name = require(j, "catalog");
    if (!name.is_string()) throw SchemaError("catalog must be a string");
    int n = j.contains("n") ? integer(j["n"], "n") : 2;
    return catalog::metric(name.get<std::string>(), n);
  }
  clifford::Signature sig = signature_from_json(require(j, "signature"));
  chart::Box box = box_from_json(require(j, "box"));
  ExprMatrix g = ExprMatrix::from_json(require(j, "g"));
  if (g.uses_time()) throw SchemaError("a single metric must not depend on t");
  return chart::MetricField(sig, box, g);
}

cylinder::MetricFamily family_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("family must be an object");
  if (j.contains("catalog") || j.contains("family")) {
    const json& name = j.contains("catalog") ? j["catalog"] : j["family"];
    if (!name.is_string()) throw SchemaError("family name must be a string");
    std::string leaf = "flat";
    if (j.contains("leaf")) {
      if (!j["leaf"].is_string()) throw SchemaError("leaf must be a string");
      leaf = j["leaf"].get<std::string>();
    }
    int n = j.contains("n") ? integer(j["n"], "n") : 2;
    return catalog::family(name.get<std::string>(), leaf, n);
  }
  clifford::Signature sig = signature_from_json(require(j, "signature"));
  chart::Box box = box_from_json(require(j, "box"));
  const json& ti = require(j, "t_interval");
  if (!ti.is_array() || ti.size() != 2) throw SchemaError("t_interval must be [lo, hi]");
  std::pair<double, double> interval{number(ti[0], "t_interval"), number(ti[1], "t_interval")};
  ExprMatrix g = ExprMatrix::from_json(require(j, "g"));
  auto mode = cylinder::TimeDerivatives::Exact;
  if (j.contains("mode")) {
    const std::string m = j["mode"].is_string() ? j["mode"].get<std::string>() : "";
    if (m == "fd") mode = cylinder::TimeDerivatives::FiniteDifference;
    else if (m != "exact") throw SchemaError("mode must be \"exact\" or \"fd\"");
  }
  return cylinder::MetricFamily(sig, box, interval, g, mode);
}

embedding::EndoField endo_from_json(const json& j) { return {ExprMatrix::from_json(j)}; }

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

}  // namespace gcyl::io
