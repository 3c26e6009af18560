// Runs the gcyl binary and checks exit codes and report contents.
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result gcyl(const std::string& args) {
  const std::string cmd = std::string(GCYL_BIN) + " --json " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json body(const Result& r) {
  json j = json::parse(r.out);
  j.erase("timing_ms");
  return j;
}

}  // namespace

TEST_CASE("lorentz example through run") {
  auto r = gcyl(R"(run --spec '{"kind": "lorentz", "g0": [[1, 0], [0, -1]], "g1": [[4, 0], [0, -0.25]]}')");
  CHECK(r.code == 0);
  CHECK(body(r)["data"]["verdict"] == "UniqueTimelike");
}

TEST_CASE("cylinder example through run") {
  auto r = gcyl(R"(run --spec '{"kind": "cylinder", "family": "warped:cos", "leaf": "round_sphere"}')");
  CHECK(r.code == 0);
  for (auto& [name, v] : body(r)["data"]["max_residual_by_identity"].items()) CHECK(v.get<double>() <= 1e-4);
}

TEST_CASE("malformed input exits 2") {
  auto r = gcyl("run --spec '{\"kind\": '");
  CHECK(r.code == 2);
  CHECK(body(r)["error"]["type"] == "SchemaError");
  CHECK(gcyl("run --spec '{\"kind\": \"teapot\"}'").code == 2);
  CHECK(gcyl("clifford table --signature 2").code == 2);
  CHECK(gcyl("lorentz classify --g0 '[[1, 0], [0, 1]]' --g1 '[[1, 0], [0, -1]]'").code == 2);
  CHECK(gcyl("frobnicate").code == 2);
}

TEST_CASE("identity violations exit 1") {
  CHECK(gcyl("embed verify --case flat_control").code == 1);
  CHECK(gcyl("spin killing-check --case non_codazzi").code == 1);
  auto r = gcyl("lorentz classify --g0 '[[1, 0], [0, -1]]' --g1 '[[-2, 0], [0, 0.5]]' --expect UniqueTimelike");
  CHECK(r.code == 1);
  CHECK(body(r)["data"]["verdict"] == "NoGeodesic");
}

TEST_CASE("clifford commands") {
  auto t = gcyl("clifford table --signature 1,1");
  REQUIRE(t.code == 0);
  json j = json::parse(t.out);
  CHECK(j["blades"].size() == 4);
  CHECK(j["products"][1][1]["coef"] == -1);  // e1 e1 = −1
  CHECK(j["products"][2][2]["coef"] == 1);   // e2 e2 = +1
  auto r = gcyl("clifford rep --signature 3,1");
  CHECK(r.code == 0);
  CHECK(body(r)["data"]["gamma"].size() == 4);
}

TEST_CASE("interpolate returns an array of matrices") {
  auto r = gcyl("lorentz interpolate --g0 '[[1, 0], [0, -1]]' --g1 '[[4, 0], [0, -0.25]]' --samples 5");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j.size() == 5);
  CHECK(j[2][0][0].get<double>() == doctest::Approx(2.0));
  CHECK(gcyl("lorentz interpolate --g0 '[[1, 0], [0, -1]]' --g1 '[[-2, 0], [0, 0.5]]'").code == 1);
}

TEST_CASE("suite reports are deterministic given the seed") {
  auto a = gcyl("suite lorentz --seed 3"), b = gcyl("suite lorentz --seed 3");
  CHECK(a.code == 0);
  CHECK(body(a).dump() == body(b).dump());
  CHECK(gcyl("suite nonsense").code == 2);
}

TEST_CASE("catalog listing") {
  auto r = gcyl("--catalog-list");
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["families"].size() >= 5);
}
