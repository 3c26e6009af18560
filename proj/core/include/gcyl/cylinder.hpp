#pragma once

#include <map>
#include <string>
#include <utility>

#include "gcyl/chart.hpp"
#include "gcyl/ode.hpp"

namespace gcyl::cylinder {

using chart::Box;
using chart::FdOptions;
using chart::MetricField;
using clifford::Signature;

enum class TimeDerivatives { Exact, FiniteDifference };

// t ↦ g_t on a fixed chart; the generalized cylinder is I × M with dt² + g_t.
class MetricFamily {
 public:
  MetricFamily() = default;
  MetricFamily(Signature sig, Box domain, std::pair<double, double> t_interval, ExprMatrix g,
               TimeDerivatives mode = TimeDerivatives::Exact, bool validate = true);

  int dim() const { return sig_.n(); }
  const Signature& signature() const { return sig_; }
  const Box& domain() const { return domain_; }
  std::pair<double, double> t_interval() const { return t_interval_; }
  const ExprMatrix& coefficients() const { return g_; }
  TimeDerivatives mode() const { return mode_; }

  Mat g(double t, const Vec& x) const { return g_.eval(x.data(), t); }
  Mat dg(double t, const Vec& x) const;   // ġ
  Mat ddg(double t, const Vec& x) const;  // g̈

  MetricField slice(double t) const;
  // dt² + g_t on I × box, coordinates (t, x0, x1, ...), signature (r+1, s).
  MetricField cylinder_metric() const;
  // Interior test for the (n+1)-dim oracle: distance to the faces of I × box.
  double margin_of(double t, const Vec& x) const;

 private:
  Signature sig_;
  Box domain_;
  std::pair<double, double> t_interval_{0.0, 0.0};
  ExprMatrix g_, dg_, ddg_;
  TimeDerivatives mode_ = TimeDerivatives::Exact;
  double fd_h_ = 1e-3;
};

Mat weingarten(const MetricFamily& fam, double t, const Vec& p);

struct IdentityValues {
  std::vector<double> formula, oracle;
  double residual = 0.0;
};

struct CurvatureReport {
  double t = 0.0;
  Vec p;
  Mat W;
  double H = 0.0;
  // Keys: weingarten, gauss, codazzi, riccati, ric_nn, ric_xn, ric_xy, scal.
  std::map<std::string, IdentityValues> identities;
  double geodesic_normal_residual = 0.0;  // max |Γ^a_{tt}| of dt² + g_t
  double max_residual() const;
};

inline const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names{"weingarten", "gauss",  "codazzi", "riccati",
                                              "ric_nn",     "ric_xn", "ric_xy",  "scal"};
  return names;
}

// Leafwise right-hand sides, compared with the direct curvature of dt² + g_t.
CurvatureReport cylinder_curvature(const MetricFamily& fam, double t, const Vec& p, const FdOptions& o = {});

// f(t)² g with a t-independent leaf metric g.
MetricFamily warped_family(const Expr& f, const MetricField& leaf, std::pair<double, double> t_interval);

// Closed forms of the warped product against the same oracle.
CurvatureReport warped_closed_forms(const Expr& f, const MetricField& leaf, double t, const Vec& p,
                                    const FdOptions& o = {});

// ξ' = −½ g⁻¹ ġ ξ along t ↦ (t, x).
Vec transport_vector(const MetricFamily& fam, const Vec& x, double t0, double t1, const Vec& v,
                     const OdeOptions& o = {});

}  // namespace gcyl::cylinder
