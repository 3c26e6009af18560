#include <doctest.h>

#include "gcyl/io.hpp"

using namespace gcyl;
using nlohmann::json;

TEST_CASE("matrices round-trip") {
  Mat m(2, 3);
  m << 1, 2, 3, 4, 5, 6.5;
  CHECK(io::matrix_from_json(io::to_json(m)) == m);
  CHECK_THROWS_AS(io::matrix_from_json(json::parse("[[1, 2], [3]]")), SchemaError);
  CHECK_THROWS_AS(io::matrix_from_json(json::parse("[[1, \"a\"]]")), SchemaError);
}

TEST_CASE("spinor and signature forms") {
  CVec a = io::spinor_from_json(json::parse("[[1, 2], 3]"));
  CHECK(a[0] == cplx(1, 2));
  CHECK(a[1] == cplx(3, 0));
  CHECK(io::spinor_from_json(json::parse(R"({"components": [[0, 1]]})"))[0] == cplx(0, 1));
  CHECK(io::signature_from_json(json::parse("[3, 1]")) == clifford::Signature(3, 1));
  CHECK(io::signature_from_json(json::parse(R"({"r": 1, "s": 2})")) == clifford::Signature(1, 2));
  CHECK_THROWS_AS(io::signature_from_json(json::parse("[1]")), SchemaError);
}

TEST_CASE("metrics and families from JSON") {
  auto g = io::metric_from_json(json::parse(R"({"signature": [1, 1], "box": [[-1, 1], [-1, 1]],
                                                 "g": [[1, 0], [0, "-cosh(x0)^2"]]})"));
  Vec p = Vec::Zero(2);
  CHECK(g(p)(1, 1) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(io::metric_from_json(json::parse(R"({"signature": [2, 0], "box": [[-1, 1], [-1, 1]],
                                                        "g": [["1 + t", 0], [0, 1]]})")),
                  SchemaError);
  CHECK(io::metric_from_json("round_sphere").dim() == 2);
  auto fam = io::family_from_json(json::parse(R"({"family": "warped:cos", "leaf": "round_sphere", "n": 3})"));
  CHECK(fam.dim() == 3);
  CHECK_THROWS_AS(io::family_from_json(json::parse(R"({"signature": [2, 0], "box": [[-1, 1], [-1, 1]],
      "t_interval": [0, 1], "g": [[1, 0], [0, 1]], "mode": "spline"})")),
                  SchemaError);
}

TEST_CASE("parse errors become schema errors") {
  CHECK_THROWS_AS(io::parse_text("{\"a\": "), SchemaError);
  CHECK_THROWS_AS(io::read_file("/nonexistent/case.json"), SchemaError);
  CHECK_THROWS_AS(io::require(json::object(), "g0"), SchemaError);
}
