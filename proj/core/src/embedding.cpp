#include "gcyl/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gcyl::embedding {

double sn(double kappa, double t) {
  if (kappa > 0) return std::sin(std::sqrt(kappa) * t) / std::sqrt(kappa);
  if (kappa < 0) return std::sinh(std::sqrt(-kappa) * t) / std::sqrt(-kappa);
  return t;
}

double cs(double kappa, double t) {
  if (kappa > 0) return std::cos(std::sqrt(kappa) * t);
  if (kappa < 0) return std::cosh(std::sqrt(-kappa) * t);
  return 1.0;
}

Expr sn(double kappa, const Expr& t) {
  if (kappa > 0) return sin(std::sqrt(kappa) * t) / std::sqrt(kappa);
  if (kappa < 0) return sinh(std::sqrt(-kappa) * t) / std::sqrt(-kappa);
  return t;
}

Expr cs(double kappa, const Expr& t) {
  if (kappa > 0) return cos(std::sqrt(kappa) * t);
  if (kappa < 0) return cosh(std::sqrt(-kappa) * t);
  return Expr(1.0);
}

double symmetry_defect(const MetricField& g, const EndoField& A) {
  double worst = 0.0;
  for (int k = 0; k < 32; ++k) {
    Vec x = g.domain().halton(k);
    Mat gA = g(x) * A(x, g.time());
    worst = std::max(worst, (gA - gA.transpose()).cwiseAbs().maxCoeff() / std::max(1.0, gA.cwiseAbs().maxCoeff()));
  }
  return worst;
}

namespace {

void check_shapes(const MetricField& g, const EndoField& A) {
  if (A.A.rows() != g.dim() || A.A.cols() != g.dim()) throw SchemaError("endomorphism field must be n x n");
}

}  // namespace

double codazzi_residual(const MetricField& g, const EndoField& A, const Vec& p, const FdOptions& o) {
  check_shapes(g, A);
  chart::require_margin(g, p, 2 * o.h, "codazzi_residual");
  const int n = g.dim();
  chart::Christoffel G = chart::christoffel(g, p, o);
  const double t = g.time();
  Mat A0 = A(p, t);
  auto f = [&](const Vec& x) { return A(x, t); };
  // nab[a](b,c) = (∇_a A)^b_c
  std::vector<Mat> nab;
  for (int a = 0; a < n; ++a) {
    Mat m = chart::fd_partial(f, p, a, o);
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) m(b, c) += G(b, a, d) * A0(d, c) - A0(b, d) * G(d, a, c);
    nab.push_back(m);
  }
  auto nabla_along = [&](const Vec& X) {
    Mat m = Mat::Zero(n, n);
    for (int a = 0; a < n; ++a) m += X[a] * nab[a];
    return m;
  };
  Mat gp = g(p);
  chart::Frame fr = chart::orthonormal_frame(gp, p);
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec X = fr.E.col(i), Y = fr.E.col(j);
      Vec d = nabla_along(X) * Y - nabla_along(Y) * X;
      worst = std::max(worst, fr.components(gp, d).cwiseAbs().maxCoeff());
    }
  return worst;
}

double gauss_residual(const MetricField& g, const EndoField& A, double kappa, const Vec& p, const FdOptions& o) {
  check_shapes(g, A);
  const int n = g.dim();
  chart::Riemann R = chart::riemann(g, p, o);
  Mat gp = g(p);
  Mat A0 = A(p, g.time());
  chart::Frame fr = chart::orthonormal_frame(gp, p);
  auto ip = [&](const Vec& a, const Vec& b) { return a.dot(gp * b); };
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vec X = fr.E.col(i), Y = fr.E.col(j), Z = fr.E.col(k);
        Vec AX = A0 * X, AY = A0 * Y;
        Vec d = R.apply(X, Y, Z) - ip(AY, Z) * AX + ip(AX, Z) * AY - kappa * (ip(Y, Z) * X - ip(X, Z) * Y);
        worst = std::max(worst, fr.components(gp, d).cwiseAbs().maxCoeff());
      }
  return worst;
}

HypersurfaceData check_hypersurface_data(const MetricField& g, const EndoField& A, double kappa, int points,
                                         const FdOptions& o) {
  HypersurfaceData d;
  const double margin = 4 * o.h + 1e-9;
  for (int k = 0; k < points; ++k) {
    Vec x = g.domain().halton(k, margin);
    d.codazzi = std::max(d.codazzi, codazzi_residual(g, A, x, o));
    d.gauss = std::max(d.gauss, gauss_residual(g, A, kappa, x, o));
  }
  d.points = points;
  return d;
}

namespace {

// First t > 0 with cs_κ(t) − a sn_κ(t) = 0, or +inf.
double first_positive_root(double kappa, double a) {
  const double inf = std::numeric_limits<double>::infinity();
  if (kappa > 0) {
    const double k = std::sqrt(kappa);
    return (std::numbers::pi / 2 - std::atan(a / k)) / k;
  }
  if (kappa < 0) {
    const double k = std::sqrt(-kappa);
    return a > k ? std::atanh(k / a) / k : inf;
  }
  return a > 0 ? 1.0 / a : inf;
}

}  // namespace

Window invertibility_window(const MetricField& g, const EndoField& A, double kappa, double max_half_width) {
  double nearest = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 32; ++k) {
    Vec x = g.domain().halton(k);
    Eigen::EigenSolver<Mat> es(A(x, g.time()), false);
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      cplx lam = es.eigenvalues()[i];
      if (std::abs(lam.imag()) > 1e-12 * std::max(1.0, std::abs(lam))) continue;
      nearest = std::min({nearest, first_positive_root(kappa, lam.real()), first_positive_root(kappa, -lam.real())});
    }
  }
  Window w;
  w.half_width = 0.9 * nearest;
  if (!(w.half_width < max_half_width)) {
    w.half_width = max_half_width;
    w.capped = true;
  }
  return w;
}

namespace {

std::string residual_report(const HypersurfaceData& d, bool with_gauss) {
  std::ostringstream os;
  os << "hypersurface data rejected: codazzi_residual=" << d.codazzi;
  if (with_gauss) os << " gauss_residual=" << d.gauss;
  os << " (tolerance " << tau_precondition << ", " << d.points << " points)";
  return os.str();
}

// g((c id − s A)² ·,·) as (cI − sA)ᵀ g (cI − sA), upper triangle mirrored.
MetricFamily squared_family(const MetricField& g, const EndoField& A, const Expr& c, const Expr& s, double w) {
  const int n = g.dim();
  ExprMatrix M = ExprMatrix::identity(n).scaled(c) - A.A.scaled(s);
  ExprMatrix G = M.transpose() * g.coefficients() * M;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) G(i, j) = G(j, i);
  return MetricFamily(g.signature(), g.domain(), {-w, w}, G, cylinder::TimeDerivatives::Exact);
}

}  // namespace

MetricFamily constant_curvature_family(const MetricField& g, const EndoField& A, double kappa, const BuildOptions& b) {
  check_shapes(g, A);
  if (g.coefficients().uses_time() || A.A.uses_time()) throw PreconditionError("g and A must not depend on t");
  if (symmetry_defect(g, A) > 1e-10) throw PreconditionError("A is not g-symmetric");
  if (b.check_preconditions) {
    HypersurfaceData d = check_hypersurface_data(g, A, kappa, b.validation_points);
    if (d.codazzi > tau_precondition || d.gauss > tau_precondition) throw PreconditionError(residual_report(d, true));
  }
  Window w = invertibility_window(g, A, kappa, b.max_half_width);
  Expr t = Expr::time();
  return squared_family(g, A, cs(kappa, t), sn(kappa, t), w.half_width);
}

MetricFamily killing_family(const MetricField& g, const EndoField& A, const BuildOptions& b) {
  check_shapes(g, A);
  if (g.coefficients().uses_time() || A.A.uses_time()) throw PreconditionError("g and A must not depend on t");
  if (symmetry_defect(g, A) > 1e-10) throw PreconditionError("A is not g-symmetric");
  if (b.check_preconditions) {
    HypersurfaceData d;
    for (int k = 0; k < b.validation_points; ++k)
      d.codazzi = std::max(d.codazzi, codazzi_residual(g, A, g.domain().halton(k, 2e-3 + 1e-9)));
    d.points = b.validation_points;
    if (d.codazzi > tau_precondition) throw PreconditionError(residual_report(d, false));
  }
  Window w = invertibility_window(g, A, 0.0, b.max_half_width);
  return squared_family(g, A, Expr(1.0), Expr::time(), w.half_width);
}

CurvatureCheck verify_constant_curvature(const MetricFamily& fam, double kappa, int samples, const FdOptions& o) {
  MetricField Z = fam.cylinder_metric();
  const int N = Z.dim();
  CurvatureCheck c;
  const double margin = 4 * o.h + 1e-9;
  for (int k = 0; k < samples; ++k) {
    Vec z = Z.domain().halton(k, margin);
    chart::Curvature cv = chart::curvature(Z, z, o);
    const Mat& g = cv.jet.g;
    chart::Frame fr = chart::orthonormal_frame(g, z);
    std::vector<Vec> e;
    for (int i = 0; i < N; ++i) e.push_back(fr.E.col(i));
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int l = 0; l < N; ++l)
          for (int m = 0; m < N; ++m) {
            // <R(e_i,e_j)e_l, e_m> = κ(<e_j,e_l><e_i,e_m> − <e_i,e_l><e_j,e_m>)
            double model = kappa * ((j == l && i == m ? fr.eps[j] * fr.eps[i] : 0.0) -
                                    (i == l && j == m ? fr.eps[i] * fr.eps[j] : 0.0));
            c.max_residual = std::max(c.max_residual, std::abs(cv.rm.apply(e[i], e[j], e[l], e[m]) - model));
          }
    Mat ric_frame = fr.E.transpose() * cv.ric * fr.E;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        double model = i == j ? (N - 1) * kappa * fr.eps[i] : 0.0;
        c.ricci_residual = std::max(c.ricci_residual, std::abs(ric_frame(i, j) - model));
      }
  }
  c.samples = samples;
  return c;
}

}  // namespace gcyl::embedding
