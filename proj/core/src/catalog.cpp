#include "gcyl/catalog.hpp"

#include <cmath>
#include <numbers>

namespace gcyl::catalog {

namespace {

constexpr double kAngleLo = 0.4;

Box cube(int n, double half_width) {
  Box b;
  for (int i = 0; i < n; ++i) b.bounds.push_back({-half_width, half_width});
  return b;
}

std::string suffix(const std::string& name, const std::string& prefix) {
  return name.rfind(prefix, 0) == 0 ? name.substr(prefix.size()) : std::string();
}

}  // namespace

MetricField flat(Signature sig, double half_width) {
  Mat d = Mat::Zero(sig.n(), sig.n());
  for (int i = 0; i < sig.n(); ++i) d(i, i) = sig.eps(i);
  return MetricField(sig, cube(sig.n(), half_width), ExprMatrix::constant(d));
}

MetricField round_sphere(int n, double radius) {
  if (n < 1) throw SchemaError("round_sphere needs n >= 1");
  ExprMatrix g(n, n);
  Expr w = radius * radius;
  Box b;
  for (int i = 0; i < n; ++i) {
    g(i, i) = w;
    w = w * pow(sin(Expr::coord(i)), 2.0);
    if (i + 1 < n) b.bounds.push_back({kAngleLo, std::numbers::pi - kAngleLo});
    else b.bounds.push_back({-1.5, 1.5});
  }
  return MetricField(Signature(n, 0), b, g);
}

MetricField de_sitter_2d() {
  ExprMatrix g(2, 2);
  g(0, 0) = 1.0;
  g(1, 1) = -pow(cosh(Expr::coord(0)), 2.0);
  return MetricField(Signature(1, 1), cube(2, 1.0), g);
}

Expr function(const std::string& name) {
  Expr t = Expr::time();
  if (name == "exp") return exp(t);
  if (name == "cos") return cos(t);
  if (name == "cosh") return cosh(t);
  if (name == "one") return Expr(1.0);
  throw SchemaError("unknown function '" + name + "'");
}

std::vector<std::string> function_names() { return {"cos", "cosh", "exp", "one"}; }

namespace {

std::pair<double, double> function_interval(const std::string& f) {
  if (f == "cos") return {-1.0, 1.0};
  return {-0.5, 0.5};
}

}  // namespace

MetricField warped_metric(const std::string& f_name, int n) {
  if (n < 2) throw SchemaError("warped metric needs n >= 2");
  Expr f = function(f_name).remap([](int i) { return Expr::coord(i); }, Expr::coord(0));
  ExprMatrix g = ExprMatrix::identity(n);
  for (int i = 1; i < n; ++i) g(i, i) = f * f;
  Box b = cube(n, 1.0);
  b.bounds[0] = function_interval(f_name);
  return MetricField(Signature(n, 0), b, g);
}

MetricField metric(const std::string& name, int n) {
  if (name == "flat") return flat(Signature(n, 0));
  if (name == "round_sphere") return round_sphere(n);
  if (name == "de_sitter_2d") return de_sitter_2d();
  if (std::string f = suffix(name, "warped:"); !f.empty()) return warped_metric(f, n);
  throw SchemaError("unknown catalog metric '" + name + "'");
}

std::vector<std::string> metric_names() {
  return {"de_sitter_2d", "flat", "round_sphere", "warped:cos", "warped:cosh", "warped:exp", "warped:one"};
}

MetricFamily linear_family(const Mat& g0, const Mat& k, std::pair<double, double> t_interval) {
  const int n = static_cast<int>(g0.rows());
  chart::Inertia in = chart::inertia(g0);
  ExprMatrix G = ExprMatrix::constant(g0) + ExprMatrix::constant(k).scaled(Expr::time());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) G(i, j) = G(j, i);
  return MetricFamily(Signature(in.positive, in.negative), cube(n, 1.0), t_interval, G);
}

MetricFamily polynomial_family(std::uint64_t seed, int n) {
  Rng rng(seed);
  std::vector<Expr> mono{Expr(1.0), Expr::time()};
  for (int i = 0; i < n; ++i) mono.push_back(Expr::coord(i));
  const std::size_t linear = mono.size();
  for (std::size_t a = 1; a < linear; ++a)
    for (std::size_t b = a; b < linear; ++b) mono.push_back(mono[a] * mono[b]);
  ExprMatrix G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Expr e = i == j ? Expr(1.0) : Expr(0.0);
      for (const Expr& m : mono) e = e + 0.05 * rng.normal() * m;
      G(i, j) = e;
      G(j, i) = e;
    }
  return MetricFamily(Signature(n, 0), cube(n, 1.0), {-0.5, 0.5}, G, cylinder::TimeDerivatives::Exact);
}

MetricFamily family(const std::string& name, const std::string& leaf, int n) {
  if (name == "linear") {
    Mat k = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) k(i, j) = i == j ? 0.5 - 0.3 * i : 0.2 / (1 + i + j);
    return linear_family(Mat::Identity(n, n), k);
  }
  if (std::string s = suffix(name, "poly:"); !s.empty()) {
    try {
      return polynomial_family(std::stoull(s), n);
    } catch (const std::logic_error&) {
      throw SchemaError("poly family needs an integer seed, got '" + s + "'");
    }
  }
  if (leaf != "flat" && leaf != "round_sphere") throw SchemaError("unknown leaf '" + leaf + "'");
  MetricField M = metric(leaf, n);
  if (name == "static") return cylinder::warped_family(Expr(1.0), M, {-0.5, 0.5});
  if (name == "conformal") return cylinder::warped_family(exp(Expr::time()), M, {-0.5, 0.5});
  if (std::string f = suffix(name, "warped:"); !f.empty())
    return cylinder::warped_family(function(f), M, function_interval(f));
  throw SchemaError("unknown catalog family '" + name + "'");
}

std::vector<std::string> family_names() {
  return {"conformal", "linear", "poly:<seed>", "static", "warped:cos", "warped:cosh", "warped:exp", "warped:one"};
}

EmbeddingCase embedding_case(const std::string& name) {
  EmbeddingCase c;
  c.name = name;
  if (name == "sphere_cone") {
    c.g = round_sphere(2);
    c.A.A = ExprMatrix::identity(2);
    c.kappa = 0.0;
  } else if (name == "sphere_polar") {
    c.g = round_sphere(2);
    c.A.A = ExprMatrix(2, 2);
    c.kappa = 1.0;
  } else if (name == "hyperbolic") {
    // geodesic sphere of radius r0 = 1 in H³
    c.g = round_sphere(2, std::sinh(1.0));
    c.A.A = ExprMatrix::identity(2).scaled(Expr(1.0 / std::tanh(1.0)));
    c.kappa = -1.0;
  } else if (name == "flat_control") {
    c.g = flat(Signature(2, 0));
    c.A.A = ExprMatrix(2, 2);
    c.kappa = 1.0;
  } else {
    throw SchemaError("unknown embedding case '" + name + "'");
  }
  return c;
}

std::vector<std::string> embedding_case_names() { return {"flat_control", "hyperbolic", "sphere_cone", "sphere_polar"}; }

}  // namespace gcyl::catalog
