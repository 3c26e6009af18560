#pragma once

#include <string>
#include <vector>

#include "gcyl/cylinder.hpp"
#include "gcyl/embedding.hpp"

namespace gcyl::catalog {

using chart::Box;
using chart::MetricField;
using clifford::Signature;
using cylinder::MetricFamily;

// Metrics. Angles of round spheres live in [0.4, π−0.4] (last one in [−1.5, 1.5]).
MetricField flat(Signature sig, double half_width = 1.0);
MetricField round_sphere(int n, double radius = 1.0);
MetricField de_sitter_2d();  // dt² − cosh²t dφ² on [−1,1]²
// dx0² + f(x0)² (dx1² + ... ), coordinate 0 plays the role of t. n = total dimension.
MetricField warped_metric(const std::string& f_name, int n);

// Warping functions of t.
Expr function(const std::string& name);  // exp, cos, cosh, one
std::vector<std::string> function_names();

// "flat", "round_sphere", "de_sitter_2d", "warped:<f>".
MetricField metric(const std::string& name, int n = 2);
std::vector<std::string> metric_names();

// Families: "static", "warped:<f>", "linear", "conformal", "poly:<seed>".
// leaf: "flat" or "round_sphere" (ignored by linear and poly, which are flat-based).
MetricFamily family(const std::string& name, const std::string& leaf = "flat", int n = 2);
std::vector<std::string> family_names();

// Random polynomial family of degree ≤ 2 in (t, x) on [−1,1]^n × [−0.5,0.5], close to the
// identity so the slices stay Riemannian; deterministic in the seed.
MetricFamily polynomial_family(std::uint64_t seed, int n = 2);
// g0 + t k with constant k on flat space, signature of g0.
MetricFamily linear_family(const Mat& g0, const Mat& k, std::pair<double, double> t_interval = {-0.4, 0.4});

// Embedding data.
struct EmbeddingCase {
  std::string name;
  MetricField g;
  embedding::EndoField A;
  double kappa = 0.0;
};
EmbeddingCase embedding_case(const std::string& name);  // sphere_cone, sphere_polar, hyperbolic, flat_control
std::vector<std::string> embedding_case_names();

}  // namespace gcyl::catalog
