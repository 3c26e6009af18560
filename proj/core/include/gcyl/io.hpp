#pragma once

#include <nlohmann/json.hpp>

#include "gcyl/catalog.hpp"
#include "gcyl/clifford.hpp"
#include "gcyl/cylinder.hpp"
#include "gcyl/embedding.hpp"

// JSON conventions: matrices are row-major nested arrays; complex numbers are [re, im];
// expressions are numbers, infix strings ("sin(x0)^2") or {"op": ...} trees.
// Every malformed input raises SchemaError.
namespace gcyl::io {

using json = nlohmann::json;

json to_json(const Mat& m);
json to_json(const Vec& v);
json to_json(cplx z);
json to_json(const CVec& v);
json to_json(const CMat& m);

Mat matrix_from_json(const json& j);
Vec vector_from_json(const json& j);
cplx complex_from_json(const json& j);
// [[re, im], ...] or a bare list of reals; also accepts {"components": [...]}.
CVec spinor_from_json(const json& j);

clifford::Signature signature_from_json(const json& j);  // [r, s] or {"r":..,"s":..}
chart::Box box_from_json(const json& j);                  // [[lo, hi], ...]

// "round_sphere" | {"catalog": name, "n": k} | {"signature": [r,s], "box": [...], "g": [[...]]}
chart::MetricField metric_from_json(const json& j);
// {"catalog": name, "leaf": leaf, "n": k} | {"signature", "box", "t_interval", "g", "mode": "exact"|"fd"}
cylinder::MetricFamily family_from_json(const json& j);
embedding::EndoField endo_from_json(const json& j);

// Field lookup with a schema error naming the missing key.
const json& require(const json& j, const char* key);
json parse_text(const std::string& text);
json read_file(const std::string& path);

}  // namespace gcyl::io
