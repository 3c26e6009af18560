#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "gcyl/catalog.hpp"
#include "gcyl/io.hpp"
#include "gcyl/lorentz.hpp"
#include "gcyl/spin.hpp"

#ifndef GCYL_VERSION
#define GCYL_VERSION "dev"
#endif

namespace gcyl::cli {

using clifford::Blade;
using clifford::Signature;

void Report::residual(const std::string& name, double value, double tolerance) {
  const bool ok = value <= tolerance;  // NaN fails
  residuals_[name] = {{"value", std::isfinite(value) ? json(value) : json(nullptr)}, {"tolerance", tolerance}, {"pass", ok}};
  if (!ok) failures_.push_back(name);
}

void Report::check(const std::string& name, bool ok) {
  checks_[name] = ok;
  if (!ok) failures_.push_back(name);
}

void Report::fail(const std::string& message) { failures_.push_back(message); }

void Report::merge(const std::string& name, const Report& sub) {
  subreports_[name] = sub.to_json();
  if (!sub.pass()) failures_.push_back(name);
}

bool Report::pass() const { return failures_.empty(); }

json Report::to_json() const {
  json j = {{"kind", kind_},     {"pass", pass()},     {"residuals", residuals_}, {"checks", checks_},
            {"data", data_},     {"inputs", inputs_},  {"failures", failures_},   {"version", GCYL_VERSION}};
  if (!subreports_.empty()) j["reports"] = subreports_;
  return j;
}

namespace {

using lorentz::Verdict;

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

int int_field(const json& j, const char* key, int fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) throw SchemaError(std::string(key) + " must be an integer");
  return j[key].get<int>();
}

double num_field(const json& j, const char* key, double fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  if (!j[key].is_number()) throw SchemaError(std::string(key) + " must be a number");
  return j[key].get<double>();
}

std::string str_field(const json& j, const char* key, const std::string& fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  if (!j[key].is_string()) throw SchemaError(std::string(key) + " must be a string");
  return j[key].get<std::string>();
}

std::string blade_name(Blade b, int n) {
  if (b == 0) return "1";
  std::string s = "e";
  bool first = true;
  for (int i : clifford::blade_indices(b)) {
    if (n >= 10 && !first) s += "_";
    s += std::to_string(i);
    first = false;
  }
  return s;
}

}  // namespace

json clifford_table(Signature sig) {
  const int n = sig.n();
  if (n > 8) throw SchemaError("clifford table is limited to n <= 8");
  const Blade count = Blade{1} << n;
  json blades = json::array(), table = json::array();
  for (Blade a = 0; a < count; ++a) blades.push_back(blade_name(a, n));
  for (Blade a = 0; a < count; ++a) {
    json row = json::array();
    for (Blade b = 0; b < count; ++b)
      row.push_back(json{{"blade", blade_name(a ^ b, n)}, {"coef", clifford::blade_sign(sig, a, b)}});
    table.push_back(row);
  }
  return {{"signature", {sig.r, sig.s}}, {"blades", blades}, {"products", table}};
}

Report clifford_rep(Signature sig, const Options& o) {
  using E = clifford::Element<clifford::Rational>;
  Report rep("clifford");
  rep.inputs() = {{"signature", {sig.r, sig.s}}};
  const int n = sig.n();
  int violations = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      E ei = E::generator(sig, i), ej = E::generator(sig, j);
      E lhs = clifford::geometric_product(ei, ej) + clifford::geometric_product(ej, ei);
      if (i == j) lhs = lhs + E::scalar(sig, clifford::Rational(2 * sig.eps(i)));
      if (!lhs.is_zero()) ++violations;
    }
  rep.residual("cliffrel_blade", violations, 0.0);

  clifford::SpinorRep s = clifford::build_spinor_rep(sig);
  const CMat I = CMat::Identity(s.dim, s.dim);
  double mat = 0.0, adj = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CMat d = s.gamma[i] * s.gamma[j] + s.gamma[j] * s.gamma[i];
      if (i == j) d += 2.0 * sig.eps(i) * I;
      mat = std::max(mat, d.cwiseAbs().maxCoeff());
    }
    CMat a = s.gamma[i].adjoint() * s.beta - static_cast<double>(s.vector_adjoint_sign) * s.beta * s.gamma[i];
    adj = std::max(adj, a.cwiseAbs().maxCoeff());
  }
  Eigen::ComplexEigenSolver<CMat> es(s.volume);
  double vol = 0.0;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    cplx ev = es.eigenvalues()[k];
    vol = std::max(vol, std::min(std::abs(ev - s.volume_phase), std::abs(ev + s.volume_phase)));
  }
  rep.residual("cliffrel_matrix", mat, o.tol.value_or(1e-12));
  rep.residual("volume_eigenvalues", vol, 1e-10);
  rep.residual("beta_adjoint", adj, 1e-12);
  json gammas = json::array();
  for (const CMat& g : s.gamma) gammas.push_back(io::to_json(g));
  rep.data() = {{"dim", s.dim},
                {"gamma", gammas},
                {"beta", io::to_json(s.beta)},
                {"volume_phase", io::to_json(s.volume_phase)},
                {"vector_adjoint_sign", s.vector_adjoint_sign},
                {"module_label", s.module_label}};
  return rep;
}

Report cylinder_verify(const json& payload, const Options& o) {
  Report rep("cylinder");
  rep.inputs() = payload;
  cylinder::MetricFamily fam = io::family_from_json(payload);
  const int samples = o.samples.value_or(int_field(payload, "samples", 20));
  const double tol = o.tol.value_or(1e-4);
  const int n = fam.dim();
  chart::MetricField Z = fam.cylinder_metric();
  std::map<std::string, double> worst;
  double geo = 0.0;
  for (int k = 0; k < samples; ++k) {
    Vec z = Z.domain().halton(k, 0.02);
    cylinder::CurvatureReport r = cylinder::cylinder_curvature(fam, z[0], z.tail(n));
    for (auto& [name, v] : r.identities) worst[name] = std::max(worst[name], v.residual);
    geo = std::max(geo, r.geodesic_normal_residual);
  }
  worst["geodesic_normal"] = geo;
  for (auto& [name, v] : worst) rep.residual(name, v, tol);
  rep.data() = {{"samples", samples}, {"dim", n}, {"max_residual_by_identity", worst}};
  return rep;
}

namespace {

struct EmbedInput {
  chart::MetricField g;
  embedding::EndoField A;
  double kappa = 0.0;
};

EmbedInput embed_input(const json& payload) {
  if (payload.contains("case")) {
    catalog::EmbeddingCase c = catalog::embedding_case(str_field(payload, "case", ""));
    return {c.g, c.A, c.kappa};
  }
  return {io::metric_from_json(io::require(payload, payload.contains("g") ? "g" : "metric")),
          io::endo_from_json(io::require(payload, "A")),
          num_field(payload, "kappa", 0.0)};
}

}  // namespace

Report embed_verify(const json& payload, const Options& o) {
  Report rep("embed");
  rep.inputs() = payload;
  EmbedInput in = embed_input(payload);
  const bool check = !payload.contains("check_preconditions") || payload["check_preconditions"].get<bool>();
  const int samples = o.samples.value_or(int_field(payload, "samples", 20));
  const double tol = o.tol.value_or(1e-4);
  embedding::HypersurfaceData hd = embedding::check_hypersurface_data(in.g, in.A, in.kappa);
  rep.data()["codazzi_residual"] = hd.codazzi;
  rep.data()["gauss_residual"] = hd.gauss;
  if (check && (hd.codazzi > embedding::tau_precondition || hd.gauss > embedding::tau_precondition)) {
    rep.data()["rejected"] = true;
    rep.fail("hypersurface data rejected (Gauss or Codazzi residual above " +
             std::to_string(embedding::tau_precondition) + ")");
    return rep;
  }
  embedding::BuildOptions b;
  b.check_preconditions = false;
  cylinder::MetricFamily fam = embedding::constant_curvature_family(in.g, in.A, in.kappa, b);
  embedding::CurvatureCheck cc = embedding::verify_constant_curvature(fam, in.kappa, samples);
  rep.residual("curvature", cc.max_residual, tol);
  rep.residual("ricci", cc.ricci_residual, tol);
  rep.data()["window"] = {fam.t_interval().first, fam.t_interval().second};
  rep.data()["curvature_residual"] = cc.max_residual;
  rep.data()["samples"] = samples;
  rep.data()["rejected"] = false;
  return rep;
}

namespace {

using Components = std::vector<std::pair<Expr, Expr>>;

struct SpinCase {
  cylinder::MetricFamily fam;
  Components components;
};

SpinCase spin_case(const json& payload) {
  const Expr x0 = Expr::coord(0), x1 = Expr::coord(1);
  if (payload.contains("case")) {
    const std::string name = str_field(payload, "case", "");
    if (name == "conformal_s2")
      return {catalog::family("conformal", "round_sphere", 2), {{x1, 1.0}, {exp(0.2 * x0), x0 * x1}}};
    if (name == "flat_linear")
      return {catalog::family("linear", "flat", 2), {{x1 * x0, 1.0}, {exp(0.2 * x0), x0 * x1 * x1}}};
    throw SchemaError("unknown spin case '" + name + "' (conformal_s2, flat_linear)");
  }
  SpinCase c{io::family_from_json(io::require(payload, "family")), {}};
  const json& sp = io::require(payload, "spinor");
  const json& s = sp.is_object() ? io::require(sp, "components") : sp;
  if (!s.is_array()) throw SchemaError("spinor must be a list of [re, im] expressions");
  for (const json& e : s) {
    if (!e.is_array() || e.size() != 2) throw SchemaError("spinor components must be [re, im] expressions");
    c.components.push_back({Expr::from_json(e[0]), Expr::from_json(e[1])});
  }
  return c;
}

}  // namespace

Report spin_variation(const json& payload, const Options& o) {
  Report rep("spin");
  rep.inputs() = payload;
  SpinCase c = spin_case(payload);
  const double t0 = num_field(payload, "t0", 0.0), step = num_field(payload, "step", 0.01);
  const int samples = o.samples.value_or(int_field(payload, "samples", 3));
  const double tol = o.tol.value_or(1e-4);
  chart::MetricField M = c.fam.slice(t0);
  spin::SpinorField psi = spin::field_from_exprs(M, spin::leaf_rep(M.signature()), c.components);
  double var = 0.0, com = 0.0, vol = 0.0, rmin = 1e300, rmax = 0.0;
  json ratios = json::array();
  std::vector<Vec> points;
  if (payload.contains("point")) points.push_back(io::vector_from_json(payload["point"]));
  else
    for (int k = 0; k < samples; ++k) points.push_back(M.domain().halton(k, 0.05));
  for (const Vec& p : points) {
    if (p.size() != M.dim()) throw SchemaError("point has the wrong dimension");
    spin::VariationResult v = spin::variation_check(c.fam, psi, t0, p, step);
    var = std::max(var, v.residual);
    rmin = std::min(rmin, v.ratio);
    rmax = std::max(rmax, v.ratio);
    ratios.push_back(v.ratio);
    com = std::max(com, spin::commutator_check(c.fam, psi, t0, p).residual);
    vol = std::max(vol, spin::volume_derivative_residual(c.fam, t0, p));
  }
  rep.residual("variation", var, tol);
  rep.check("second_order_decay", rmin >= 3.0 && rmax <= 5.0);
  rep.residual("commutator", com, tol);
  rep.residual("volume_derivative", vol, 1e-6);
  rep.data() = {{"step", step}, {"t0", t0}, {"ratios", ratios}, {"samples", static_cast<int>(points.size())}};
  return rep;
}

Report spin_killing(const json& payload, const Options& o) {
  Report rep("spin");
  rep.inputs() = payload;
  const std::string name = str_field(payload, "case", "sphere_cone");
  const int samples = o.samples.value_or(int_field(payload, "samples", 20));
  const double tol = o.tol.value_or(1e-3);
  const double t_max = num_field(payload, "t_max", 0.5);
  CVec s0(2);
  s0 << cplx(1.0, 0.2), cplx(-0.3, 0.5);
  chart::MetricField g;
  embedding::EndoField A;
  spin::SpinorField psi;
  if (name == "sphere_cone") {
    psi = spin::s2_killing_spinor(s0);
    g = psi.g;
    A.A = ExprMatrix::identity(2);
  } else if (name == "flat" || name == "non_codazzi") {
    g = catalog::flat(Signature(2, 0));
    A.A = ExprMatrix(2, 2);
    if (name == "non_codazzi") A.A(0, 0) = Expr::coord(1);
    psi = spin::SpinorField{g, spin::leaf_rep(Signature(2, 0)), [s0](const Vec&) { return s0; }};
  } else {
    throw SchemaError("unknown killing case '" + name + "' (sphere_cone, flat, non_codazzi)");
  }
  try {
    spin::KillingReport k = spin::killing_cylinder_check(g, A, psi, samples, t_max);
    rep.residual("cylinder_parallel", k.max_residual, tol);
    rep.data() = {{"killing_equation", k.killing_equation}, {"codazzi", k.codazzi}, {"window", k.window},
                  {"window_shrunk", k.window_shrunk}, {"samples", k.samples}, {"rejected", false}};
    if (!k.warning.empty()) rep.data()["warning"] = k.warning;
  } catch (const PreconditionError& e) {
    rep.data() = {{"rejected", true}, {"message", e.what()}};
    rep.fail(e.what());
    return rep;
  }
  // Q(X, Y) = ¼ <X, A Y> <ψ, ψ> for generalized Killing spinors
  double q = 0.0;
  for (int k = 0; k < 4; ++k) {
    Vec p = g.domain().halton(k, 0.05);
    Mat Q = spin::energy_momentum(psi, p);
    const double nn = psi.rep.inner(psi(p), psi(p)).real();
    q = std::max(q, max_abs(Q - 0.25 * nn * g(p) * A(p, 0.0)));
  }
  rep.residual("energy_momentum", q, 1e-5);
  return rep;
}

namespace {

json spectral_diagnostics(const lorentz::LorentzSpectralData& d) {
  json delta = json::array(), spaces = json::array(), roots = json::array(), mult = json::array();
  for (int j : d.delta) delta.push_back(j);
  for (const auto& e : d.spaces) spaces.push_back({{"lambda", e.lambda}, {"dim", e.dim()}, {"u_norm", e.u.norm()}});
  for (const auto& r : d.roots) {
    roots.push_back(io::to_json(r.value));
    mult.push_back(r.multiplicity);
  }
  return {{"delta", delta},     {"m", d.m},       {"eigenspaces", spaces},       {"roots", roots},
          {"multiplicities", mult}, {"zero_in_delta", d.zero_in_delta()}, {"car1_residual", d.car1_residual},
          {"P", d.P}};
}

std::pair<Mat, Mat> lorentz_pair(const json& payload) {
  return {io::matrix_from_json(io::require(payload, "g0")), io::matrix_from_json(io::require(payload, "g1"))};
}

}  // namespace

Report lorentz_classify(const json& payload, const Options& o) {
  Report rep("lorentz");
  rep.inputs() = payload;
  auto [G0, G1] = lorentz_pair(payload);
  lorentz::ConnectionVerdict v = lorentz::classify(G0, G1);
  lorentz::LorentzSpectralData d = lorentz::spectral_split(G0, G1);
  json& out = rep.data();
  out["verdict"] = lorentz::to_string(v.kind);
  out["reason"] = v.reason;
  out["warnings"] = v.warnings;
  out["relating_endomorphism"] = io::to_json(v.A);
  json blocks = json::array();
  for (const auto& b : v.blocks) {
    json ev = json::array();
    for (cplx z : b.eigenvalues) ev.push_back(io::to_json(z));
    blocks.push_back({{"kind", b.kind}, {"dim", b.dim}, {"eigenvalues", ev}});
  }
  out["diagnostics"] = spectral_diagnostics(d);
  out["diagnostics"]["blocks"] = blocks;
  rep.residual("car1", d.car1_residual, 1e-8);
  double normv = 0.0;
  for (const auto& r : d.roots)
    if (r.value.imag() == 0.0) {
      lorentz::VmuResult vm = lorentz::eigvec_vmu(d, r.value.real());
      normv = std::max({normv, vm.normv_residual, vm.eigen_residual});
    }
  rep.residual("normv", normv, 1e-8);
  if (v.generator) {
    out["generator"] = io::to_json(*v.generator);
    rep.residual("exp_generator", v.exp_residual, o.tol.value_or(lorentz::tau_generator));
    rep.residual("generator_symmetry", v.generator_symmetry, 1e-10);
    rep.residual("endpoint", max_abs(lorentz::connecting_geodesic(v, 1.0) - G1) / std::max(1.0, max_abs(G1)), 1e-9);
  }
  if (v.kind == Verdict::InfinitelyManySpacelike) {
    out["family"] = {{"plane", io::to_json(v.plane)}, {"log_scale", v.log_scale}, {"a_rest", io::to_json(v.a_rest)},
                     {"member_s0", io::to_json(v.family_member(0.0, 1))}};
    rep.residual("family_member_exp", max_abs(v.family_member(0.0, 1).exp() - v.A) / std::max(1.0, max_abs(v.A)), 1e-9);
  }
  if (v.kind == Verdict::UniqueNilpotentNull) {
    out["k"] = v.k;
    out["x"] = io::to_json(v.x);
    double worst = 0.0;
    for (double t : {0.25, 0.5, 1.0})
      worst = std::max(worst, max_abs(lorentz::nilpotent_polynomial(v, t) - v.G0 * (t * *v.generator).exp()));
    rep.residual("nilpotent_polynomial", worst, 1e-12);
  }
  if (payload.contains("expect")) rep.check("expected_verdict", str_field(payload, "expect", "") == lorentz::to_string(v.kind));
  return rep;
}

json lorentz_interpolate(const json& payload, int samples) {
  auto [G0, G1] = lorentz_pair(payload);
  lorentz::ConnectionVerdict v = lorentz::classify(G0, G1);
  if (!v.generator && v.kind != Verdict::InfinitelyManySpacelike)
    throw PreconditionError("no geodesic joins g0 and g1 (" + lorentz::to_string(v.kind) + ")");
  json out = json::array();
  for (const Mat& g : lorentz::interpolate(v, samples)) out.push_back(io::to_json(g));
  return out;
}

Report run(const json& spec, Options o) {
  if (!spec.is_object()) throw SchemaError("case spec must be a JSON object");
  const std::string kind = str_field(spec, "kind", "");
  json payload = spec.contains("payload") ? spec["payload"] : spec;
  if (!payload.is_object()) throw SchemaError("payload must be an object");
  if (spec.contains("tolerance")) o.tol = num_field(spec, "tolerance", 0.0);
  if (spec.contains("samples")) o.samples = int_field(spec, "samples", 0);
  if (spec.contains("seed")) o.seed = static_cast<std::uint64_t>(int_field(spec, "seed", 7));
  Report r;
  if (kind == "clifford") {
    r = clifford_rep(payload.contains("signature") ? io::signature_from_json(payload["signature"])
                                                   : Signature(int_field(payload, "r", 0), int_field(payload, "s", 0)),
                     o);
  } else if (kind == "cylinder") {
    r = cylinder_verify(payload, o);
  } else if (kind == "embed") {
    r = embed_verify(payload, o);
  } else if (kind == "spin") {
    const std::string check = str_field(payload, "check", "variation");
    if (check == "variation") r = spin_variation(payload, o);
    else if (check == "killing") r = spin_killing(payload, o);
    else throw SchemaError("spin check must be \"variation\" or \"killing\"");
  } else if (kind == "lorentz") {
    r = lorentz_classify(payload, o);
  } else {
    throw SchemaError("unknown kind '" + kind + "' (clifford, cylinder, embed, spin, lorentz)");
  }
  r.inputs() = spec;
  return r;
}

namespace {

Report suite_clifford(const Options& o) {
  Report rep("suite:clifford");
  for (int n = 1; n <= 6; ++n)
    for (int s = 0; s <= n; ++s) rep.merge("cl_" + std::to_string(n - s) + "_" + std::to_string(s), clifford_rep(Signature(n - s, s), o));
  return rep;
}

Report suite_cylinder(const Options& o) {
  Report rep("suite:cylinder");
  const std::vector<json> cases{
      {{"family", "static"}, {"leaf", "round_sphere"}},   {{"family", "warped:exp"}, {"leaf", "round_sphere"}},
      {{"family", "warped:cos"}, {"leaf", "round_sphere"}}, {{"family", "linear"}},
      {{"family", "poly:" + std::to_string(o.seed)}},      {{"family", "conformal"}, {"leaf", "round_sphere"}}};
  for (const json& c : cases) rep.merge(c["family"].get<std::string>(), cylinder_verify(c, o));
  return rep;
}

Report suite_embed(const Options& o) {
  Report rep("suite:embed");
  for (const char* name : {"sphere_cone", "sphere_polar", "hyperbolic"}) rep.merge(name, embed_verify({{"case", name}}, o));
  Report neg = embed_verify({{"case", "flat_control"}, {"check_preconditions", false}}, o);
  json r = neg.to_json();
  rep.check("negative_control_detected", r["residuals"]["curvature"]["value"].get<double>() > 0.1);
  rep.check("negative_control_rejected", !embed_verify({{"case", "flat_control"}}, o).pass());
  return rep;
}

Report suite_spin(const Options& o) {
  Report rep("suite:spin");
  for (const char* name : {"flat_linear", "conformal_s2"}) rep.merge(std::string("variation:") + name, spin_variation({{"case", name}}, o));
  for (const char* name : {"flat", "sphere_cone"}) rep.merge(std::string("killing:") + name, spin_killing({{"case", name}}, o));
  Report bad = spin_killing({{"case", "non_codazzi"}}, o);
  rep.check("non_codazzi_rejected", bad.to_json()["data"]["rejected"].get<bool>());
  return rep;
}

Report suite_lorentz(const Options& o) {
  Report rep("suite:lorentz");
  Rng rng(o.seed);
  const int pairs = o.samples.value_or(200);
  // 2D: trace classification against the n-dimensional case analysis
  int disagree = 0;
  for (int k = 0; k < pairs; ++k) {
    Mat G0 = lorentz::normalize_unimodular(lorentz::random_lorentzian(rng, 2, 3.0));
    Mat G1 = lorentz::normalize_unimodular(lorentz::random_lorentzian(rng, 2, 3.0));
    if (lorentz::classify_2d(G0, G1).kind != lorentz::classify_nd(G0, G1).kind) ++disagree;
  }
  rep.residual("classify_2d_vs_nd", disagree, 0.0);
  double car1 = 0.0, normv = 0.0, expres = 0.0;
  int bad_signature = 0;
  for (int k = 0; k < pairs; ++k) {
    const int n = 2 + k % 5;
    Mat G0 = lorentz::random_lorentzian(rng, n), G1 = lorentz::random_lorentzian(rng, n);
    lorentz::LorentzSpectralData d = lorentz::spectral_split(G0, G1);
    car1 = std::max(car1, d.car1_residual);
    for (const auto& r : d.roots)
      if (r.value.imag() == 0.0) {
        auto vm = lorentz::eigvec_vmu(d, r.value.real());
        normv = std::max({normv, vm.normv_residual, vm.eigen_residual});
      }
    lorentz::ConnectionVerdict v = lorentz::classify_nd(G0, G1);
    if (!v.generator) continue;
    expres = std::max(expres, v.exp_residual);
    chart::Inertia in = chart::inertia(lorentz::connecting_geodesic(v, 0.5));
    if (in.negative != 1 || in.zero != 0) ++bad_signature;
  }
  rep.residual("car1", car1, 1e-8);
  rep.residual("normv", normv, 1e-8);
  rep.residual("exp_generator", expres, lorentz::tau_generator);
  rep.residual("midpoint_signature", bad_signature, 0.0);
  const Mat d2 = Vec(Eigen::Vector2d(1, -1)).asDiagonal();
  json example = {{"g0", io::to_json(d2)}, {"g1", io::to_json(Mat(Vec(Eigen::Vector2d(4, -0.25)).asDiagonal()))},
                  {"expect", "UniqueTimelike"}};
  rep.merge("diag_example", lorentz_classify(example, o));
  // x g0-symmetric with x³ = 0, x² ≠ 0
  const Mat g3 = Vec(Eigen::Vector3d(1, 1, -1)).asDiagonal();
  Vec l = Eigen::Vector3d(1, 0, 1) / std::sqrt(2.0), e = Eigen::Vector3d(0, 1, 0);
  Mat x = e * l.transpose() * g3 + l * e.transpose() * g3;
  Mat g1 = g3 * (2.0 * (Mat::Identity(3, 3) + x));
  rep.merge("nilpotent", lorentz_classify({{"g0", io::to_json(g3)}, {"g1", io::to_json(Mat(0.5 * (g1 + g1.transpose())))},
                                           {"expect", "UniqueNilpotentNull"}},
                                          o));
  return rep;
}

}  // namespace

Report suite(const std::string& name, const Options& o) {
  Report rep("suite");
  rep.inputs() = {{"name", name}, {"seed", o.seed}};
  const bool all = name == "all";
  bool known = all;
  auto run_one = [&](const std::string& key, Report (*fn)(const Options&)) {
    if (all || name == key) {
      rep.merge(key, fn(o));
      known = true;
    }
  };
  run_one("clifford", suite_clifford);
  run_one("cylinder", suite_cylinder);
  run_one("embed", suite_embed);
  run_one("spin", suite_spin);
  run_one("lorentz", suite_lorentz);
  if (!known) throw SchemaError("unknown suite '" + name + "' (all, clifford, cylinder, embed, spin, lorentz)");
  return rep;
}

json catalog_listing() {
  return {{"metrics", catalog::metric_names()},
          {"families", catalog::family_names()},
          {"functions", catalog::function_names()},
          {"embedding_cases", catalog::embedding_case_names()},
          {"spin_cases", {"conformal_s2", "flat_linear"}},
          {"killing_cases", {"flat", "non_codazzi", "sphere_cone"}}};
}

}  // namespace gcyl::cli
