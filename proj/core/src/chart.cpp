#include "gcyl/chart.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gcyl::chart {

Inertia inertia(const Mat& sym, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
  Inertia in;
  const double scale = std::max(1e-300, es.eigenvalues().cwiseAbs().maxCoeff());
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double l = es.eigenvalues()[i];
    if (std::abs(l) <= rel_tol * scale) ++in.zero;
    else if (l > 0) ++in.positive;
    else ++in.negative;
  }
  return in;
}

double Box::margin_of(const Vec& p) const {
  double m = 1e300;
  for (int i = 0; i < dim(); ++i) m = std::min({m, p[i] - bounds[i].first, bounds[i].second - p[i]});
  return m;
}

Vec Box::halton(int k, double margin) const {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  Vec p(dim());
  for (int i = 0; i < dim(); ++i) {
    double f = 1.0, r = 0.0;
    for (int idx = k + 1; idx > 0; idx /= primes[i % 16]) {
      f /= primes[i % 16];
      r += f * (idx % primes[i % 16]);
    }
    double lo = bounds[i].first + margin, hi = bounds[i].second - margin;
    p[i] = lo + (hi - lo) * r;
  }
  return p;
}

Vec Box::random(Rng& rng, double margin) const {
  Vec p(dim());
  for (int i = 0; i < dim(); ++i) p[i] = rng.uniform(bounds[i].first + margin, bounds[i].second - margin);
  return p;
}

Vec Box::center() const {
  Vec p(dim());
  for (int i = 0; i < dim(); ++i) p[i] = 0.5 * (bounds[i].first + bounds[i].second);
  return p;
}

MetricField::MetricField(Signature sig, Box domain, ExprMatrix g, bool validate)
    : sig_(sig), domain_(std::move(domain)), g_(std::move(g)) {
  const int n = sig_.n();
  if (g_.rows() != n || g_.cols() != n) throw SchemaError("metric coefficient matrix must be n x n");
  if (domain_.dim() != n) throw SchemaError("domain box dimension must equal the metric dimension");
  for (auto& [lo, hi] : domain_.bounds)
    if (!(lo < hi)) throw SchemaError("domain box needs lo < hi");
  if (g_.max_coord() >= n) throw SchemaError("metric expression references a coordinate beyond the chart");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (g_(j, i).str() != g_(i, j).str()) throw SchemaError("metric coefficients must be symmetric");
      g_(j, i) = g_(i, j);
    }
  if (validate) validate_signature();
}

MetricField MetricField::at_time(double t) const {
  MetricField out = *this;
  out.t_ = t;
  return out;
}

void MetricField::validate_signature() const {
  for (int k = 0; k < 32; ++k) {
    Vec p = domain_.halton(k);
    Mat m = (*this)(p);
    if (!m.allFinite()) throw DegenerateMetric("metric not finite at a sample point");
    Inertia in = inertia(m, 1e-10);
    if (in.zero > 0) throw DegenerateMetric("metric degenerate at a sample point");
    if (in.positive != sig_.r || in.negative != sig_.s)
      throw DegenerateMetric("metric signature (" + std::to_string(in.positive) + "," + std::to_string(in.negative) +
                             ") at a sample point differs from the declared one");
  }
}

void require_margin(const MetricField& g, const Vec& p, double margin, const char* what) {
  if (p.size() != g.dim()) throw PreconditionError(std::string(what) + ": point dimension mismatch");
  if (g.domain().margin_of(p) < margin)
    throw DomainError(std::string(what) + ": point closer than " + std::to_string(margin) + " to the chart boundary");
}

MetricJet metric_jet(const MetricField& g, const Vec& p, int order, const FdOptions& o) {
  const int n = g.dim();
  MetricJet j;
  j.g = g(p);
  Eigen::FullPivLU<Mat> lu(j.g);
  if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-14 * std::pow(j.g.norm(), n))
    throw DegenerateMetric("singular metric matrix");
  j.ginv = lu.inverse();
  auto f = [&](const Vec& x) { return g(x); };
  for (int a = 0; a < n; ++a) j.dg.push_back(fd_partial(f, p, a, o));
  if (order >= 2) {
    j.ddg.assign(n, std::vector<Mat>(n));
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        j.ddg[a][b] = fd_second(f, j.g, p, a, b, o);
        j.ddg[b][a] = j.ddg[a][b];
      }
  }
  return j;
}

Christoffel christoffel_from_jet(const MetricJet& j) {
  const int n = static_cast<int>(j.g.rows());
  Christoffel G{n, std::vector<double>(static_cast<std::size_t>(n * n * n), 0.0)};
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k)
      for (int a = 0; a < n; ++a) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) acc += j.ginv(a, l) * (j.dg[i](l, k) + j.dg[k](l, i) - j.dg[l](i, k));
        G(a, i, k) = G(a, k, i) = 0.5 * acc;
      }
  return G;
}

Riemann riemann_from_jet(const MetricJet& j) {
  if (j.ddg.empty()) throw PreconditionError("riemann needs a second-order jet");
  const int n = static_cast<int>(j.g.rows());
  Christoffel G = christoffel_from_jet(j);
  // dG[c](a,d,b) = ∂_c Γ^a_{db}
  std::vector<Christoffel> dG(n, Christoffel{n, std::vector<double>(static_cast<std::size_t>(n * n * n), 0.0)});
  for (int c = 0; c < n; ++c) {
    Mat dginv = -j.ginv * j.dg[c] * j.ginv;
    for (int d = 0; d < n; ++d)
      for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) {
          double acc = 0.0;
          for (int e = 0; e < n; ++e) {
            double low = 0.5 * (j.dg[d](e, b) + j.dg[b](e, d) - j.dg[e](d, b));
            double dlow = 0.5 * (j.ddg[c][d](e, b) + j.ddg[c][b](e, d) - j.ddg[c][e](d, b));
            acc += dginv(a, e) * low + j.ginv(a, e) * dlow;
          }
          dG[c](a, d, b) = acc;
        }
  }
  Riemann rm{n, std::vector<double>(static_cast<std::size_t>(n * n * n * n), 0.0), j.g};
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d)
      for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) {
          double v = dG[c](a, d, b) - dG[d](a, c, b);
          for (int e = 0; e < n; ++e) v += G(a, c, e) * G(e, d, b) - G(a, d, e) * G(e, c, b);
          rm(c, d, b, a) = v;
        }
  return rm;
}

double Riemann::lowered(int a, int b, int c, int d) const {
  double acc = 0.0;
  for (int e = 0; e < n; ++e) acc += (*this)(a, b, c, e) * g(e, d);
  return acc;
}

Vec Riemann::apply(const Vec& X, const Vec& Y, const Vec& Z) const {
  Vec out = Vec::Zero(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double xy = X[a] * Y[b];
      if (xy == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        double w = xy * Z[c];
        if (w == 0.0) continue;
        for (int d = 0; d < n; ++d) out[d] += w * (*this)(a, b, c, d);
      }
    }
  return out;
}

double Riemann::apply(const Vec& X, const Vec& Y, const Vec& Z, const Vec& T) const {
  return apply(X, Y, Z).dot(g * T);
}

Mat ricci_from_riemann(const Riemann& rm) {
  const int n = rm.n;
  Mat ric = Mat::Zero(n, n);
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a) ric(b, c) += rm(a, b, c, a);
  return ric;
}

double scalar_from_ricci(const Mat& ric, const Mat& ginv) { return (ginv * ric).trace(); }

Christoffel christoffel(const MetricField& g, const Vec& p, const FdOptions& o) {
  require_margin(g, p, 2 * o.h, "christoffel");
  return christoffel_from_jet(metric_jet(g, p, 1, o));
}

Riemann riemann(const MetricField& g, const Vec& p, const FdOptions& o) {
  require_margin(g, p, 4 * o.h, "riemann");
  return riemann_from_jet(metric_jet(g, p, 2, o));
}

Mat ricci(const MetricField& g, const Vec& p, const FdOptions& o) { return ricci_from_riemann(riemann(g, p, o)); }

double scalar(const MetricField& g, const Vec& p, const FdOptions& o) {
  require_margin(g, p, 4 * o.h, "scalar");
  MetricJet j = metric_jet(g, p, 2, o);
  return scalar_from_ricci(ricci_from_riemann(riemann_from_jet(j)), j.ginv);
}

Curvature curvature(const MetricField& g, const Vec& p, const FdOptions& o) {
  require_margin(g, p, 4 * o.h, "curvature");
  Curvature c;
  c.jet = metric_jet(g, p, 2, o);
  c.gamma = christoffel_from_jet(c.jet);
  c.rm = riemann_from_jet(c.jet);
  c.ric = ricci_from_riemann(c.rm);
  c.scal = scalar_from_ricci(c.ric, c.jet.ginv);
  return c;
}

Vec Frame::components(const Mat& g, const Vec& X) const {
  Vec c(E.cols());
  Vec gX = g * X;
  for (int i = 0; i < E.cols(); ++i) c[i] = eps[i] * E.col(i).dot(gX);
  return c;
}

Frame orthonormal_frame(const Mat& g, const Vec& point) {
  const int n = static_cast<int>(g.rows());
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  std::vector<Vec> vs;
  std::vector<int> sg;
  for (int j = 0; j < n; ++j) {
    Vec v = Vec::Unit(n, j);
    for (int k = 0; k < j; ++k) v -= sg[k] * vs[k].dot(g * Vec::Unit(n, j)) * vs[k];
    double q = v.dot(g * v);
    if (std::abs(q) < 1e-10 * scale * std::max(1.0, v.squaredNorm()))
      throw GaugeFailure("Gram-Schmidt met a null vector at pivot " + std::to_string(j));
    vs.push_back(v / std::sqrt(std::abs(q)));
    sg.push_back(q > 0 ? 1 : -1);
  }
  Frame f;
  f.point = point;
  f.E.resize(n, n);
  int col = 0;
  for (int pass : {1, -1})
    for (int j = 0; j < n; ++j)
      if (sg[j] == pass) {
        f.E.col(col++) = vs[j];
        f.eps.push_back(pass);
      }
  Mat check = f.E.transpose() * g * f.E;
  for (int i = 0; i < n; ++i) check(i, i) -= f.eps[i];
  if (check.cwiseAbs().maxCoeff() > tau_frame * scale) throw GaugeFailure("frame not orthonormal within tolerance");
  return f;
}

Frame orthonormal_frame(const MetricField& g, const Vec& p) { return orthonormal_frame(g(p), p); }

double FrameConnection::frame_gamma(int k, int i, int j) const {
  Mat c = along(frame.E.col(i));
  return c(k, j);
}

Mat FrameConnection::along(const Vec& X) const {
  Mat out = Mat::Zero(frame.E.cols(), frame.E.cols());
  for (int a = 0; a < X.size(); ++a)
    if (X[a] != 0.0) out += X[a] * conn[a];
  return out;
}

FrameConnection frame_connection(const MetricField& g, const Vec& p, const FdOptions& o) {
  require_margin(g, p, 2 * o.h, "frame_connection");
  const int n = g.dim();
  FrameConnection fc;
  MetricJet j = metric_jet(g, p, 1, o);
  fc.g = j.g;
  fc.coord = christoffel_from_jet(j);
  fc.frame = orthonormal_frame(j.g, p);
  const Frame& base = fc.frame;
  auto frame_at = [&](const Vec& x) -> Mat {
    Frame f = orthonormal_frame(g(x), x);
    if (f.eps != base.eps) throw GaugeFailure("frame sign pattern changes near the point");
    return f.E;
  };
  for (int a = 0; a < n; ++a) fc.dE.push_back(fd_partial(frame_at, p, a, o));
  for (int a = 0; a < n; ++a) {
    // ∇_{∂a} e_j = ∂_a e_j + Γ^·_{a c} e_j^c
    Mat nab = fc.dE[a];
    for (int jj = 0; jj < n; ++jj)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) nab(b, jj) += fc.coord(b, a, c) * base.E(c, jj);
    Mat m = base.E.transpose() * j.g * nab;  // m(k,j) = <e_k, ∇ e_j>
    for (int k = 0; k < n; ++k) m.row(k) *= base.eps[k];
    fc.conn.push_back(m);
  }
  return fc;
}

}  // namespace gcyl::chart
