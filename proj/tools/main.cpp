#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "gcyl/io.hpp"

using namespace gcyl;
using cli::json;

namespace {

enum Exit { Pass = 0, Violation = 1, Schema = 2, Conditioning = 3 };

// Inline JSON, a path to a JSON file, or a bare name (returned as a JSON string).
json load(const std::string& arg) {
  if (arg.empty()) throw SchemaError("empty argument");
  const char c = arg.front();
  if (c == '{' || c == '[' || c == '"' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) return io::parse_text(arg);
  if (std::filesystem::exists(arg)) return io::read_file(arg);
  return arg;
}

clifford::Signature parse_signature(const std::string& s) {
  std::stringstream ss(s);
  int r = -1, q = -1;
  char comma = 0;
  if (!(ss >> r >> comma >> q) || comma != ',' || !ss.eof()) throw SchemaError("signature must look like r,s");
  if (r < 0 || q < 0 || r + q < 1) throw SchemaError("signature needs r, s >= 0 and r + s >= 1");
  return {r, q};
}

void emit(const json& j, bool compact) { std::cout << (compact ? j.dump() : j.dump(2)) << "\n"; }

int error_out(const std::string& type, const std::string& msg, int code, bool compact) {
  emit({{"pass", false}, {"error", {{"type", type}, {"message", msg}}}}, compact);
  std::cerr << "gcyl: " << type << ": " << msg << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gcyl: generalized cylinders, spinors and Lorentzian metric geodesics"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  bool compact = false, list = false;
  cli::Options opt;
  double tol = 0.0;
  int samples = 0;
  app.add_flag("--json", compact, "compact single-line JSON output");
  app.add_flag("--catalog-list", list, "list catalog metrics, families and cases");
  auto* tol_opt = app.add_option("--tol", tol, "tolerance override");
  auto* samples_opt = app.add_option("--samples", samples, "number of sample points or pairs");
  app.add_option("--seed", opt.seed, "seed for randomized sweeps");

  std::string signature = "2,0";
  auto* clif = app.add_subcommand("clifford", "Clifford algebra tables and spinor representations");
  clif->require_subcommand(1);
  auto* clif_table = clif->add_subcommand("table", "blade multiplication table");
  auto* clif_rep = clif->add_subcommand("rep", "gamma matrices and their identities");
  for (auto* s : {clif_table, clif_rep}) s->add_option("--signature", signature, "r,s")->required();

  std::string family, leaf, case_name, g_spec, a_spec, spinor_spec, point_spec, spec_file, expect, g0, g1;
  int n = 2;
  double kappa = 0.0, t0 = 0.0, step = 0.01;

  auto* cyl = app.add_subcommand("cylinder", "generalized cylinder curvature identities");
  cyl->require_subcommand(1);
  auto* cyl_verify = cyl->add_subcommand("verify", "check the curvature identities on sample points");
  cyl_verify->add_option("--family", family, "catalog family name or family JSON")->required();
  cyl_verify->add_option("--leaf", leaf, "leaf metric for catalog families");
  cyl_verify->add_option("--n", n, "leaf dimension for catalog families");

  auto* emb = app.add_subcommand("embed", "constant-curvature ambient metrics from hypersurface data");
  emb->require_subcommand(1);
  auto* emb_verify = emb->add_subcommand("verify", "build the ambient metric and check its curvature");
  emb_verify->add_option("--case", case_name, "catalog embedding case");
  emb_verify->add_option("--g", g_spec, "metric JSON");
  emb_verify->add_option("--A", a_spec, "endomorphism JSON");
  emb_verify->add_option("--kappa", kappa, "curvature of the model space");
  bool no_check = false;
  emb_verify->add_flag("--no-check", no_check, "skip the Gauss and Codazzi preconditions");

  auto* spn = app.add_subcommand("spin", "spinor variation formula and generalized Killing spinors");
  spn->require_subcommand(1);
  auto* spn_var = spn->add_subcommand("variation-check", "first variation of the Dirac operator");
  spn_var->add_option("--case", case_name, "conformal_s2 | flat_linear");
  spn_var->add_option("--family", family, "family JSON");
  spn_var->add_option("--spinor", spinor_spec, "spinor JSON {\"components\": [[re, im], ...]}");
  spn_var->add_option("--point", point_spec, "evaluation point as a JSON array");
  spn_var->add_option("--t0", t0, "leaf parameter");
  spn_var->add_option("--step", step, "central-difference step in t");
  auto* spn_kill = spn->add_subcommand("killing-check", "parallel spinors on the cylinder of a Killing spinor");
  spn_kill->add_option("--case", case_name, "sphere_cone | flat | non_codazzi")->required();

  auto* lor = app.add_subcommand("lorentz", "geodesics in the space of Lorentzian metrics");
  lor->require_subcommand(1);
  auto* lor_cls = lor->add_subcommand("classify", "decide whether a geodesic joins g0 and g1");
  auto* lor_int = lor->add_subcommand("interpolate", "sample the connecting geodesic");
  for (auto* s : {lor_cls, lor_int}) {
    s->add_option("--g0", g0, "matrix JSON or file")->required();
    s->add_option("--g1", g1, "matrix JSON or file")->required();
  }
  lor_cls->add_option("--expect", expect, "expected verdict");

  std::string suite_name = "all";
  auto* sui = app.add_subcommand("suite", "deterministic and seeded acceptance sweeps");
  sui->add_option("name", suite_name, "all | clifford | cylinder | embed | spin | lorentz");

  auto* run = app.add_subcommand("run", "run a case spec");
  run->add_option("--spec", spec_file, "case spec JSON or file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return error_out("ParseError", e.what(), Schema, compact);
  }
  if (tol_opt->count()) opt.tol = tol;
  if (samples_opt->count()) opt.samples = samples;

  const auto start = std::chrono::steady_clock::now();
  auto finish = [&](const cli::Report& r) {
    json j = r.to_json();
    j["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(j, compact);
    std::cerr << "gcyl " << j["kind"].get<std::string>() << ": " << (r.pass() ? "PASS" : "FAIL");
    for (const auto& f : j["failures"]) std::cerr << "\n  failed: " << f.get<std::string>();
    std::cerr << "\n";
    return r.pass() ? Pass : Violation;
  };

  try {
    if (list) {
      emit(cli::catalog_listing(), compact);
      return Pass;
    }
    if (clif_table->parsed()) {
      emit(cli::clifford_table(parse_signature(signature)), compact);
      return Pass;
    }
    if (clif_rep->parsed()) return finish(cli::clifford_rep(parse_signature(signature), opt));
    if (cyl_verify->parsed()) {
      json f = load(family);
      if (f.is_string()) {
        f = {{"family", f}, {"n", n}};
        if (!leaf.empty()) f["leaf"] = leaf;
      }
      return finish(cli::cylinder_verify(f, opt));
    }
    if (emb_verify->parsed()) {
      json p;
      if (!case_name.empty()) p["case"] = case_name;
      else {
        if (g_spec.empty() || a_spec.empty()) throw SchemaError("embed verify needs --case or both --g and --A");
        p = {{"g", load(g_spec)}, {"A", load(a_spec)}, {"kappa", kappa}};
      }
      if (no_check) p["check_preconditions"] = false;
      return finish(cli::embed_verify(p, opt));
    }
    if (spn_var->parsed()) {
      json p = {{"t0", t0}, {"step", step}};
      if (!case_name.empty()) p["case"] = case_name;
      else {
        if (family.empty() || spinor_spec.empty()) throw SchemaError("variation-check needs --case or --family and --spinor");
        p["family"] = load(family);
        p["spinor"] = load(spinor_spec);
      }
      if (!point_spec.empty()) p["point"] = load(point_spec);
      return finish(cli::spin_variation(p, opt));
    }
    if (spn_kill->parsed()) return finish(cli::spin_killing({{"case", case_name}}, opt));
    if (lor_cls->parsed()) {
      json p = {{"g0", load(g0)}, {"g1", load(g1)}};
      if (!expect.empty()) p["expect"] = expect;
      return finish(cli::lorentz_classify(p, opt));
    }
    if (lor_int->parsed()) {
      emit(cli::lorentz_interpolate({{"g0", load(g0)}, {"g1", load(g1)}}, opt.samples.value_or(11)), compact);
      return Pass;
    }
    if (sui->parsed()) return finish(cli::suite(suite_name, opt));
    if (run->parsed()) return finish(cli::run(load(spec_file), opt));
    std::cout << app.help() << "\n";
    return Schema;
  } catch (const SchemaError& e) {
    return error_out("SchemaError", e.what(), Schema, compact);
  } catch (const SignatureMismatch& e) {
    return error_out("SignatureMismatch", e.what(), Schema, compact);
  } catch (const DegenerateMetric& e) {
    return error_out("DegenerateMetric", e.what(), Schema, compact);
  } catch (const ConditioningError& e) {
    return error_out("ConditioningError", e.what(), Conditioning, compact);
  } catch (const Error& e) {
    return error_out("Error", e.what(), Violation, compact);
  } catch (const json::exception& e) {
    return error_out("SchemaError", e.what(), Schema, compact);
  }
}
