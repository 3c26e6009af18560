#include "gcyl/cylinder.hpp"

#include <algorithm>
#include <cmath>

namespace gcyl::cylinder {

using chart::Curvature;

MetricFamily::MetricFamily(Signature sig, Box domain, std::pair<double, double> t_interval, ExprMatrix g,
                           TimeDerivatives mode, bool validate)
    : sig_(sig), domain_(std::move(domain)), t_interval_(t_interval), g_(std::move(g)), mode_(mode) {
  if (!(t_interval_.first < t_interval_.second)) throw SchemaError("t_interval needs a < b");
  const int n = sig_.n();
  if (g_.rows() != n || g_.cols() != n) throw SchemaError("family coefficient matrix must be n x n");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (g_(j, i).str() != g_(i, j).str()) throw SchemaError("family coefficients must be symmetric");
      g_(j, i) = g_(i, j);
    }
  if (mode_ == TimeDerivatives::Exact) {
    dg_ = g_.diff_time();
    ddg_ = dg_.diff_time();
  }
  if (validate) {
    auto [a, b] = t_interval_;
    for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) slice(a + s * (b - a)).validate_signature();
  }
}

Mat MetricFamily::dg(double t, const Vec& x) const {
  if (mode_ == TimeDerivatives::Exact) return dg_.eval(x.data(), t);
  auto d = [&](double h) { return Mat((g(t + h, x) - g(t - h, x)) / (2 * h)); };
  return (4.0 * d(0.5 * fd_h_) - d(fd_h_)) / 3.0;
}

Mat MetricFamily::ddg(double t, const Vec& x) const {
  if (mode_ == TimeDerivatives::Exact) return ddg_.eval(x.data(), t);
  Mat g0 = g(t, x);
  auto d = [&](double h) { return Mat((g(t + h, x) - 2.0 * g0 + g(t - h, x)) / (h * h)); };
  return (4.0 * d(0.5 * fd_h_) - d(fd_h_)) / 3.0;
}

MetricField MetricFamily::slice(double t) const { return MetricField(sig_, domain_, g_, false).at_time(t); }

MetricField MetricFamily::cylinder_metric() const {
  const int n = dim();
  ExprMatrix z(n + 1, n + 1);
  z(0, 0) = Expr(1.0);
  ExprMatrix shifted = g_.remap([](int i) { return Expr::coord(i + 1); }, Expr::coord(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i + 1, j + 1) = shifted(i, j);
  Box box;
  box.bounds.push_back(t_interval_);
  for (auto& b : domain_.bounds) box.bounds.push_back(b);
  return MetricField(Signature(sig_.r + 1, sig_.s), box, z, false);
}

double MetricFamily::margin_of(double t, const Vec& x) const {
  return std::min({domain_.margin_of(x), t - t_interval_.first, t_interval_.second - t});
}

Mat weingarten(const MetricFamily& fam, double t, const Vec& p) {
  Mat g = fam.g(t, p);
  Eigen::FullPivLU<Mat> lu(g);
  if (!lu.isInvertible()) throw DegenerateMetric("weingarten: degenerate g_t");
  return -0.5 * lu.solve(fam.dg(t, p));
}

double CurvatureReport::max_residual() const {
  double m = 0.0;
  for (auto& [k, v] : identities) m = std::max(m, v.residual);
  return m;
}

namespace {

Vec point_zt(double t, const Vec& p) {
  Vec z(p.size() + 1);
  z[0] = t;
  z.tail(p.size()) = p;
  return z;
}

void finish(IdentityValues& v) {
  v.residual = 0.0;
  for (std::size_t k = 0; k < v.formula.size(); ++k)
    v.residual = std::max(v.residual, std::abs(v.formula[k] - v.oracle[k]));
}

// Oracle side: every component read off the (n+1)-dim curvature of dt² + g_t.
void fill_oracle(CurvatureReport& rep, const Curvature& Z, int n) {
  const Mat g = Z.jet.g.bottomRightCorner(n, n);
  Mat Wor(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) Wor(a, b) = -Z.gamma(a + 1, b + 1, 0);
  Mat wl = Wor.transpose() * g;
  auto& w = rep.identities["weingarten"].oracle;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) w.push_back(wl(x, y));
  auto& ga = rep.identities["gauss"].oracle;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) ga.push_back(Z.rm.lowered(u + 1, v + 1, x + 1, y + 1));
  auto& co = rep.identities["codazzi"].oracle;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int u = 0; u < n; ++u) co.push_back(Z.rm.lowered(x + 1, y + 1, u + 1, 0));
  auto& ri = rep.identities["riccati"].oracle;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) ri.push_back(Z.rm.lowered(x + 1, 0, 0, y + 1));
  rep.identities["ric_nn"].oracle.push_back(Z.ric(0, 0));
  auto& xn = rep.identities["ric_xn"].oracle;
  for (int x = 0; x < n; ++x) xn.push_back(Z.ric(x + 1, 0));
  auto& xy = rep.identities["ric_xy"].oracle;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) xy.push_back(Z.ric(x + 1, y + 1));
  rep.identities["scal"].oracle.push_back(Z.scal);
  double gn = 0.0;
  for (int a = 0; a <= n; ++a) gn = std::max(gn, std::abs(Z.gamma(a, 0, 0)));
  rep.geodesic_normal_residual = gn;
}

Curvature cylinder_oracle(const MetricFamily& fam, double t, const Vec& p, const FdOptions& o) {
  if (fam.margin_of(t, p) < 4 * o.h) throw DomainError("cylinder_curvature: (t,p) too close to the boundary");
  return chart::curvature(fam.cylinder_metric(), point_zt(t, p), o);
}

}  // namespace

CurvatureReport cylinder_curvature(const MetricFamily& fam, double t, const Vec& p, const FdOptions& o) {
  const int n = fam.dim();
  CurvatureReport rep;
  rep.t = t;
  rep.p = p;
  Curvature Z = cylinder_oracle(fam, t, p, o);
  MetricField leaf = fam.slice(t);
  Curvature L = chart::curvature(leaf, p, o);
  const Mat& g = L.jet.g;
  const Mat& ginv = L.jet.ginv;
  const Mat gd = fam.dg(t, p), gdd = fam.ddg(t, p);
  const Mat W = -0.5 * ginv * gd;
  rep.W = W;
  rep.H = W.trace() / n;

  // Spatial derivatives of ġ and W.
  auto gd_at = [&](const Vec& x) { return fam.dg(t, x); };
  auto W_at = [&](const Vec& x) { return Mat(-0.5 * fam.g(t, x).lu().solve(fam.dg(t, x))); };
  std::vector<Mat> dgd, dW;
  for (int a = 0; a < n; ++a) {
    dgd.push_back(chart::fd_partial(gd_at, p, a, o));
    dW.push_back(chart::fd_partial(W_at, p, a, o));
  }
  // (∇_a ġ)_{bc}
  auto nabla_gd = [&](int a, int b, int c) {
    double v = dgd[a](b, c);
    for (int d = 0; d < n; ++d) v -= L.gamma(d, a, b) * gd(d, c) + L.gamma(d, a, c) * gd(b, d);
    return v;
  };
  // (∇_a W)^b_c
  auto nabla_W = [&](int a, int b, int c) {
    double v = dW[a](b, c);
    for (int d = 0; d < n; ++d) v += L.gamma(b, a, d) * W(d, c) - W(b, d) * L.gamma(d, a, c);
    return v;
  };

  auto& w = rep.identities["weingarten"].formula;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) w.push_back(-0.5 * gd(x, y));

  auto& ga = rep.identities["gauss"].formula;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          ga.push_back(L.rm.lowered(u, v, x, y) + 0.25 * (gd(u, x) * gd(v, y) - gd(u, y) * gd(v, x)));

  auto& co = rep.identities["codazzi"].formula;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int u = 0; u < n; ++u) co.push_back(0.5 * (nabla_gd(y, x, u) - nabla_gd(x, y, u)));

  const Mat gdW = W.transpose() * gd;  // ġ(W ∂x, ∂y)
  auto& ri = rep.identities["riccati"].formula;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) ri.push_back(-0.5 * (gdd(x, y) + gdW(x, y)));

  const double trW = W.trace(), trW2 = (W * W).trace(), tr_gdd = (ginv * gdd).trace();
  rep.identities["ric_nn"].formula.push_back(trW2 - 0.5 * tr_gdd);

  Vec divW = Vec::Zero(n);  // (div W)^b = g^{ac} (∇_a W)^b_c
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) divW[b] += ginv(a, c) * nabla_W(a, b, c);
  Vec divW_low = g * divW;
  auto& xn = rep.identities["ric_xn"].formula;
  for (int x = 0; x < n; ++x) xn.push_back(dW[x].trace() - divW_low[x]);

  const Mat WgW = W.transpose() * g * W, Wg = W.transpose() * g;
  auto& xy = rep.identities["ric_xy"].formula;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) xy.push_back(L.ric(x, y) + 2 * WgW(x, y) - trW * Wg(x, y) - 0.5 * gdd(x, y));

  rep.identities["scal"].formula.push_back(L.scal + 3 * trW2 - trW * trW - tr_gdd);

  fill_oracle(rep, Z, n);
  for (auto& [k, v] : rep.identities) finish(v);
  return rep;
}

MetricFamily warped_family(const Expr& f, const MetricField& leaf, std::pair<double, double> t_interval) {
  if (leaf.coefficients().uses_time()) throw PreconditionError("warped leaf metric must not depend on t");
  return MetricFamily(leaf.signature(), leaf.domain(), t_interval, leaf.coefficients().scaled(f * f),
                      TimeDerivatives::Exact);
}

CurvatureReport warped_closed_forms(const Expr& f, const MetricField& leaf, double t, const Vec& p,
                                    const FdOptions& o) {
  const int n = leaf.dim();
  const double fv = f.eval(p, t), f1 = f.diff_time().eval(p, t), f2 = f.diff_time().diff_time().eval(p, t);
  if (!(fv > 0)) throw PreconditionError("warped_closed_forms needs f > 0");
  // The oracle needs a t-window; any interval around t with room for the stencils.
  MetricFamily fam = warped_family(f, leaf, {t - 0.5, t + 0.5});
  CurvatureReport rep;
  rep.t = t;
  rep.p = p;
  Curvature Z = cylinder_oracle(fam, t, p, o);
  Curvature L = chart::curvature(leaf, p, o);  // the leaf metric g; g_t = f² g
  const Mat g = L.jet.g, gt = fv * fv * g;
  const double k1 = f1 / fv, k2 = f2 / fv;
  rep.W = -k1 * Mat::Identity(n, n);
  rep.H = -k1;

  auto& w = rep.identities["weingarten"].formula;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) w.push_back(-k1 * gt(x, y));
  // <R(U,V)X,Y> with R(U,V)X = R^M(U,V)X + k1²(<U,X>V − <V,X>U), inner products in g_t;
  // the (1,3) tensor R^M is scale invariant, so <R^M(U,V)X,Y>_{g_t} = f² <R^M(U,V)X,Y>_g.
  auto& ga = rep.identities["gauss"].formula;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          ga.push_back(fv * fv * L.rm.lowered(u, v, x, y) + k1 * k1 * (gt(u, x) * gt(v, y) - gt(v, x) * gt(u, y)));
  auto& co = rep.identities["codazzi"].formula;
  co.assign(static_cast<std::size_t>(n * n * n), 0.0);
  auto& ri = rep.identities["riccati"].formula;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) ri.push_back(-k2 * gt(x, y));
  rep.identities["ric_nn"].formula.push_back(-n * k2);
  rep.identities["ric_xn"].formula.assign(static_cast<std::size_t>(n), 0.0);
  auto& xy = rep.identities["ric_xy"].formula;
  const double c = ((n - 1) * f1 * f1 + fv * f2) / (fv * fv);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) xy.push_back(L.ric(x, y) - c * gt(x, y));
  rep.identities["scal"].formula.push_back(L.scal / (fv * fv) - n * ((n - 1) * f1 * f1 + 2 * fv * f2) / (fv * fv));

  fill_oracle(rep, Z, n);
  for (auto& [k, v] : rep.identities) finish(v);
  return rep;
}

Vec transport_vector(const MetricFamily& fam, const Vec& x, double t0, double t1, const Vec& v, const OdeOptions& o) {
  auto [a, b] = fam.t_interval();
  if (std::min(t0, t1) < a || std::max(t0, t1) > b) throw DomainError("transport_vector: times outside the family interval");
  auto rhs = [&](double t, const Vec& xi) -> Vec { return -0.5 * fam.g(t, x).lu().solve(fam.dg(t, x) * xi); };
  return integrate<Vec>(rhs, t0, t1, v, o);
}

}  // namespace gcyl::cylinder
