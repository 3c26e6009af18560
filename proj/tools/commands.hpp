#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "gcyl/clifford.hpp"

namespace gcyl::cli {

using json = nlohmann::json;

struct Options {
  std::optional<double> tol;
  std::optional<int> samples;
  std::uint64_t seed = 7;
};

// Residual table plus free-form data. Keys come out sorted, so two runs with the same
// inputs serialize identically once the timing field is dropped.
class Report {
 public:
  explicit Report(std::string kind = "") : kind_(std::move(kind)) {}
  void residual(const std::string& name, double value, double tolerance);
  void check(const std::string& name, bool ok);
  void fail(const std::string& message);  // marks the report failed with an explanation
  void merge(const std::string& name, const Report& sub);
  json& data() { return data_; }
  json& inputs() { return inputs_; }
  bool pass() const;
  json to_json() const;

 private:
  std::string kind_;
  json residuals_ = json::object(), checks_ = json::object(), data_ = json::object(), inputs_ = json::object();
  json subreports_ = json::object();
  std::vector<std::string> failures_;
};

json clifford_table(clifford::Signature sig);
Report clifford_rep(clifford::Signature sig, const Options& o = {});
Report cylinder_verify(const json& payload, const Options& o = {});
Report embed_verify(const json& payload, const Options& o = {});
Report spin_variation(const json& payload, const Options& o = {});
Report spin_killing(const json& payload, const Options& o = {});
Report lorentz_classify(const json& payload, const Options& o = {});
json lorentz_interpolate(const json& payload, int samples);

// {kind, payload | inline fields, tolerances?, samples?, seed?}
Report run(const json& spec, Options o = {});
// "all", "clifford", "cylinder", "embed", "spin", "lorentz"
Report suite(const std::string& name, const Options& o = {});

json catalog_listing();

}  // namespace gcyl::cli
