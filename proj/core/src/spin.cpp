#include "gcyl/spin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gcyl/catalog.hpp"

namespace gcyl::spin {

using chart::Frame;
using chart::FrameConnection;
using clifford::Signature;

CVec SpinorField::operator()(const Vec& x) const {
  CVec v = value(x);
  if (v.size() != rep.dim) throw PreconditionError("spinor field value has the wrong dimension");
  return v;
}

SpinorField field_from_exprs(const MetricField& g, const SpinorRep& rep,
                             const std::vector<std::pair<Expr, Expr>>& components) {
  if (static_cast<int>(components.size()) != rep.dim)
    throw SchemaError("spinor needs " + std::to_string(rep.dim) + " components");
  if (!(rep.sig == g.signature())) throw SignatureMismatch("spinor representation and metric signatures differ");
  const double t = g.time();
  return SpinorField{g, rep, [components, t](const Vec& x) {
                       CVec v(static_cast<Eigen::Index>(components.size()));
                       for (std::size_t i = 0; i < components.size(); ++i)
                         v[static_cast<Eigen::Index>(i)] = cplx(components[i].first.eval(x, t), components[i].second.eval(x, t));
                       return v;
                     }};
}

SpinorRep leaf_rep(Signature sig) {
  return clifford::hypersurface_restriction(clifford::build_spinor_rep(Signature(sig.r + 1, sig.s)));
}

SpinorRep bullet_rep(const SpinorRep& ambient) {
  if (ambient.sig.r < 1) throw PreconditionError("bullet_rep needs a spacelike e_0");
  SpinorRep rep;
  rep.sig = Signature(ambient.sig.r - 1, ambient.sig.s);
  rep.dim = ambient.dim;
  for (int i = 1; i < ambient.sig.n(); ++i) rep.gamma.push_back(ambient.gamma[0] * ambient.gamma[i]);
  rep.beta = ambient.beta;
  rep.vector_adjoint_sign = -1;  // <γ0γ_i a, b> = <a, γ_iγ0 b> = −<a, γ0γ_i b> for either sign of the ambient form
  rep.embedding = CMat::Identity(ambient.dim, ambient.dim);
  return rep;
}

CMat clifford_matrix(const SpinorRep& rep, const Frame& f, const Mat& g, const Vec& X) {
  Vec c = f.components(g, X);
  CMat m = CMat::Zero(rep.dim, rep.dim);
  for (int i = 0; i < c.size(); ++i)
    if (c[i] != 0.0) m += c[i] * rep.gamma[i];
  return m;
}

namespace {

// ½ Σ_{j<k} ε_j C(k,j) γ_j γ_k with C(k,j) = ε_k <∇ e_j, e_k>
CMat omega_from(const SpinorRep& rep, const Mat& C, const std::vector<int>& eps) {
  const int n = static_cast<int>(C.rows());
  CMat m = CMat::Zero(rep.dim, rep.dim);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (C(k, j) != 0.0) m += (0.5 * eps[j] * C(k, j)) * (rep.gamma[j] * rep.gamma[k]);
  return m;
}

void check_field(const SpinorField& psi) {
  if (!(psi.rep.sig == psi.g.signature())) throw SignatureMismatch("spinor representation and metric signatures differ");
}

double opnorm(const CMat& m) { return m.norm(); }

}  // namespace

CMat connection_matrix(const SpinorRep& rep, const FrameConnection& fc, const Vec& X) {
  return omega_from(rep, fc.along(X), fc.frame.eps);
}

CVec SpinorJet::along(const Vec& X) const {
  CVec out = CVec::Zero(value.size());
  for (int a = 0; a < X.size(); ++a)
    if (X[a] != 0.0) out += X[a] * (partial[a] + omega[a] * value);
  return out;
}

SpinorJet spinor_jet(const SpinorField& psi, const Vec& p, const FdOptions& o) {
  check_field(psi);
  const int n = psi.g.dim();
  SpinorJet j;
  j.fc = chart::frame_connection(psi.g, p, o);
  j.value = psi(p);
  auto f = [&](const Vec& x) { return psi(x); };
  for (int a = 0; a < n; ++a) {
    j.partial.push_back(chart::fd_partial(f, p, a, o));
    j.omega.push_back(connection_matrix(psi.rep, j.fc, Vec::Unit(n, a)));
  }
  for (int i = 0; i < n; ++i) j.nabla.push_back(j.along(j.fc.frame.E.col(i)));
  return j;
}

CVec covariant_derivative(const SpinorField& psi, const Vec& X, const Vec& p, const FdOptions& o) {
  check_field(psi);
  FrameConnection fc = chart::frame_connection(psi.g, p, o);
  auto central = [&](double h) { return CVec((psi(p + h * X) - psi(p - h * X)) / (2 * h)); };
  CVec d = o.richardson ? CVec((4.0 * central(0.5 * o.h) - central(o.h)) / 3.0) : central(o.h);
  return d + connection_matrix(psi.rep, fc, X) * psi(p);
}

CVec dirac(const SpinorRep& rep, const SpinorJet& jet) {
  CVec out = CVec::Zero(jet.value.size());
  for (std::size_t i = 0; i < jet.nabla.size(); ++i)
    out += static_cast<double>(jet.fc.frame.eps[i]) * (rep.gamma[i] * jet.nabla[i]);
  return out;
}

CVec dirac(const SpinorField& psi, const Vec& p, const FdOptions& o) { return dirac(psi.rep, spinor_jet(psi, p, o)); }

double leibniz_residual(const SpinorField& psi, const std::function<Vec(const Vec&)>& Y, const Vec& X, const Vec& p,
                        const FdOptions& o) {
  SpinorField ypsi{psi.g, psi.rep, [&](const Vec& x) {
                     Mat gx = psi.g(x);
                     return CVec(clifford_matrix(psi.rep, chart::orthonormal_frame(gx, x), gx, Y(x)) * psi(x));
                   }};
  CVec lhs = covariant_derivative(ypsi, X, p, o);
  FrameConnection fc = chart::frame_connection(psi.g, p, o);
  const int n = psi.g.dim();
  Vec nabY = Vec::Zero(n);  // ∇_X Y
  for (int a = 0; a < n; ++a) nabY += X[a] * chart::fd_partial(Y, p, a, o);
  Vec Y0 = Y(p);
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) nabY[k] += fc.coord(k, a, b) * X[a] * Y0[b];
  CVec rhs = clifford_matrix(psi.rep, fc.frame, fc.g, nabY) * psi(p) +
             clifford_matrix(psi.rep, fc.frame, fc.g, Y0) * covariant_derivative(psi, X, p, o);
  return (lhs - rhs).norm();
}

double metric_compatibility_residual(const SpinorField& phi, const SpinorField& psi, const Vec& X, const Vec& p,
                                     const FdOptions& o) {
  auto ip = [&](const Vec& x) { return phi.rep.inner(phi(x), psi(x)); };
  auto central = [&](double h) { return (ip(p + h * X) - ip(p - h * X)) / (2 * h); };
  cplx d = o.richardson ? (4.0 * central(0.5 * o.h) - central(o.h)) / 3.0 : central(o.h);
  cplx rhs = phi.rep.inner(covariant_derivative(phi, X, p, o), psi(p)) +
             phi.rep.inner(phi(p), covariant_derivative(psi, X, p, o));
  return std::abs(d - rhs);
}

CMat spinor_curvature(const MetricField& g, const SpinorRep& rep, const Vec& p, int a, int b, const FdOptions& o) {
  chart::require_margin(g, p, 4 * o.h, "spinor_curvature");
  const int n = g.dim();
  auto omega_at = [&](const Vec& x, int c) {
    return connection_matrix(rep, chart::frame_connection(g, x, o), Vec::Unit(n, c));
  };
  CMat da_ob = chart::fd_partial([&](const Vec& x) { return omega_at(x, b); }, p, a, o);
  CMat db_oa = chart::fd_partial([&](const Vec& x) { return omega_at(x, a); }, p, b, o);
  CMat oa = omega_at(p, a), ob = omega_at(p, b);
  return da_ob - db_oa + oa * ob - ob * oa;
}

double ricci_identity_residual(const MetricField& g, const SpinorRep& rep, const Vec& p, const FdOptions& o) {
  if (!(rep.sig == g.signature())) throw SignatureMismatch("ricci_identity_residual: signatures differ");
  const int n = g.dim();
  std::vector<std::vector<CMat>> R(n, std::vector<CMat>(n));
  for (int a = 0; a < n; ++a) {
    R[a][a] = CMat::Zero(rep.dim, rep.dim);
    for (int b = a + 1; b < n; ++b) {
      R[a][b] = spinor_curvature(g, rep, p, a, b, o);
      R[b][a] = -R[a][b];
    }
  }
  auto RX = [&](const Vec& X, const Vec& Y) {
    CMat m = CMat::Zero(rep.dim, rep.dim);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (X[a] * Y[b] != 0.0) m += X[a] * Y[b] * R[a][b];
    return m;
  };
  chart::Curvature cv = chart::curvature(g, p, o);
  Frame fr = chart::orthonormal_frame(cv.jet.g, p);
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    Vec Y = fr.E.col(j);
    CMat lhs = CMat::Zero(rep.dim, rep.dim);
    for (int i = 0; i < n; ++i) lhs += static_cast<double>(fr.eps[i]) * rep.gamma[i] * RX(fr.E.col(i), Y);
    Vec ricY = cv.jet.ginv * cv.ric * Y;
    CMat rhs = 0.5 * clifford_matrix(rep, fr, cv.jet.g, ricY);
    worst = std::max(worst, opnorm(lhs - rhs));
  }
  return worst;
}

double self_adjointness_residual(const SpinorField& phi, const SpinorField& psi, const Vec& p, const FdOptions& o) {
  chart::require_margin(phi.g, p, 4 * o.h, "self_adjointness_residual");
  const int n = phi.g.dim();
  // √|g| Y^a as a complex vector field
  auto densY = [&](const Vec& x) {
    Mat gx = phi.g(x);
    Frame fr = chart::orthonormal_frame(gx, x);
    CVec a = phi(x), b = psi(x);
    Eigen::VectorXcd low(n);
    for (int c = 0; c < n; ++c) low[c] = phi.rep.inner(clifford_matrix(phi.rep, fr, gx, Vec::Unit(n, c)) * a, b);
    Eigen::VectorXcd up = gx.inverse().cast<cplx>() * low;
    return Eigen::VectorXcd(std::sqrt(std::abs(gx.determinant())) * up);
  };
  cplx div = 0.0;
  for (int a = 0; a < n; ++a) div += chart::fd_partial(densY, p, a, o)[a];
  div /= std::sqrt(std::abs(phi.g(p).determinant()));
  CVec Dphi = dirac(phi, p, o), Dpsi = dirac(psi, p, o);
  cplx rhs = phi.rep.inner(Dphi, psi(p)) + static_cast<double>(phi.rep.vector_adjoint_sign) * phi.rep.inner(phi(p), Dpsi);
  return std::abs(div - rhs);
}

namespace {

// Pivot position of each frame column: the last coordinate it involves.
std::vector<int> pivot_order(const Mat& E) {
  std::vector<int> piv(E.cols());
  for (int c = 0; c < E.cols(); ++c) {
    int last = 0;
    for (int i = 0; i < E.rows(); ++i)
      if (E(i, c) != 0.0) last = i;
    piv[c] = last;
  }
  return piv;
}

}  // namespace

CVec transport_spinor(const MetricFamily& fam, const SpinorRep& rep, const Vec& x, double t0, double t1,
                      const CVec& sigma, const OdeOptions& o) {
  if (!(rep.sig == fam.signature())) throw SignatureMismatch("transport_spinor: representation signature differs");
  auto [a, b] = fam.t_interval();
  if (std::min(t0, t1) < a || std::max(t0, t1) > b)
    throw DomainError("transport_spinor: times outside the family interval");
  const std::vector<int> eps0 = chart::orthonormal_frame(fam.g(t0, x)).eps;
  const int n = fam.dim();
  // The Gram-Schmidt frame is triangular in the coordinate basis, so with S = Eᵀ ġ E
  // <∇_t e_j, e_k> = ½ sign(piv_k − piv_j) S(k,j), and ∂_t σ = −Ω(∂_t) σ.
  auto rhs = [&](double t, const CVec& s) -> CVec {
    Frame fr = chart::orthonormal_frame(fam.g(t, x));
    if (fr.eps != eps0) throw GaugeFailure("frame sign pattern changes along the transport");
    Mat S = fr.E.transpose() * fam.dg(t, x) * fr.E;
    std::vector<int> piv = pivot_order(fr.E);
    Mat C = Mat::Zero(n, n);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        if (piv[k] != piv[j]) C(k, j) = fr.eps[k] * 0.5 * (piv[k] > piv[j] ? 1.0 : -1.0) * S(k, j);
    return -(omega_from(rep, C, fr.eps) * s);
  };
  return integrate<CVec>(rhs, t0, t1, sigma, o);
}

SpinorField transported_field(const MetricFamily& fam, const SpinorField& psi, double t0, double t1,
                              const OdeOptions& o) {
  SpinorRep rep = psi.rep;
  SpinorFn base = psi.value;
  return SpinorField{fam.slice(t1), rep, [fam, rep, base, t0, t1, o](const Vec& x) {
                       return transport_spinor(fam, rep, x, t0, t1, base(x), o);
                     }};
}

CylinderSpinor cylinder_spinor(const MetricFamily& fam, std::function<CVec(double, const Vec&)> value) {
  const Signature& s = fam.signature();
  return CylinderSpinor{fam, clifford::build_spinor_rep(Signature(s.r + 1, s.s)), std::move(value)};
}

namespace {

struct GaussJets {
  SpinorJet z, m;
  SpinorRep bullet;
  Mat W;
};

GaussJets gauss_jets(const CylinderSpinor& phi, double t, const Vec& p, const FdOptions& o) {
  const int n = phi.fam.dim();
  MetricField Z = phi.fam.cylinder_metric();
  Vec z(n + 1);
  z[0] = t;
  z.tail(n) = p;
  auto val = phi.value;
  SpinorField zf{Z, phi.ambient, [val, n](const Vec& zz) { return val(zz[0], zz.tail(n)); }};
  GaussJets g;
  g.z = spinor_jet(zf, z, o);
  g.bullet = bullet_rep(phi.ambient);
  SpinorField mf{phi.fam.slice(t), g.bullet, [val, t](const Vec& x) { return val(t, x); }};
  g.m = spinor_jet(mf, p, o);
  // The cylinder frame must be (∂_t, leaf frame).
  const Mat& EZ = g.z.fc.frame.E;
  const Mat& EM = g.m.fc.frame.E;
  if ((EZ.col(0) - Vec::Unit(n + 1, 0)).norm() > 1e-8 || (EZ.bottomRightCorner(n, n) - EM).norm() > 1e-8 ||
      EZ.block(0, 1, 1, n).norm() > 1e-8)
    throw GaugeFailure("cylinder frame is not adapted to the leaf frame");
  g.W = cylinder::weingarten(phi.fam, t, p);
  return g;
}

}  // namespace

double hypersurface_gauss_residual(const CylinderSpinor& phi, double t, const Vec& p, const FdOptions& o) {
  GaussJets j = gauss_jets(phi, t, p, o);
  const int n = phi.fam.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    Vec X = j.m.fc.frame.E.col(i);
    CVec bullet_WX = clifford_matrix(j.bullet, j.m.fc.frame, j.m.fc.g, j.W * X) * j.m.value;
    worst = std::max(worst, (j.z.nabla[i + 1] - j.m.nabla[i] + 0.5 * bullet_WX).norm());
  }
  return worst;
}

double dirac_gauss_residual(const CylinderSpinor& phi, double t, const Vec& p, const FdOptions& o) {
  GaussJets j = gauss_jets(phi, t, p, o);
  const int n = phi.fam.dim();
  CVec lhs = phi.ambient.gamma[0] * dirac(phi.ambient, j.z);
  CVec rhs = dirac(j.bullet, j.m) + 0.5 * j.W.trace() * j.z.value - j.z.nabla[0];
  (void)n;
  return (lhs - rhs).norm();
}

namespace {

SpinorField on_slice(const MetricFamily& fam, const SpinorField& psi, double t0) {
  if (psi.g.dim() != fam.dim()) throw PreconditionError("spinor field and family dimensions differ");
  return SpinorField{fam.slice(t0), psi.rep, psi.value};
}

// D^{M_t}(τ_{t0}^t ψ) at p, transported back to t0.
CVec conjugated_dirac(const MetricFamily& fam, const SpinorField& psi0, double t0, double t, const Vec& p,
                      const FdOptions& o) {
  if (t == t0) return dirac(psi0, p, o);
  CVec d = dirac(transported_field(fam, psi0, t0, t), p, o);
  return transport_spinor(fam, psi0.rep, p, t, t0, d);
}

Vec gradient(const std::function<double(const Vec&)>& f, const Mat& ginv, const Vec& p, const FdOptions& o) {
  Vec d(p.size());
  for (int a = 0; a < p.size(); ++a) d[a] = chart::fd_partial(f, p, a, o);
  return ginv * d;
}

}  // namespace

CVec variation_rhs(const MetricFamily& fam, const SpinorField& psi, double t0, const Vec& p, const FdOptions& o) {
  SpinorField psi0 = on_slice(fam, psi, t0);
  const int n = fam.dim();
  SpinorJet jet = spinor_jet(psi0, p, o);
  const Frame& fr = jet.fc.frame;
  const Mat& g = jet.fc.g;
  const Mat ginv = g.inverse();
  const Mat k = fam.dg(t0, p);
  const Mat kf = fr.E.transpose() * k * fr.E;
  CVec Dk = CVec::Zero(psi0.rep.dim);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Dk += (fr.eps[i] * fr.eps[j] * kf(i, j)) * (psi0.rep.gamma[i] * jet.nabla[j]);
  Vec grad_tr = gradient([&](const Vec& x) { return (fam.g(t0, x).inverse() * fam.dg(t0, x)).trace(); }, ginv, p, o);
  std::vector<Mat> dk;
  for (int a = 0; a < n; ++a) dk.push_back(chart::fd_partial([&](const Vec& x) { return fam.dg(t0, x); }, p, a, o));
  const chart::Christoffel& G = jet.fc.coord;
  Vec divk = Vec::Zero(n);  // (div k)_c = g^{ab} (∇_a k)_{bc}
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double v = dk[a](b, c);
        for (int d = 0; d < n; ++d) v -= G(d, a, b) * k(d, c) + G(d, a, c) * k(b, d);
        divk[c] += ginv(a, b) * v;
      }
  Vec divk_sharp = ginv * divk;
  return -0.5 * Dk + 0.25 * (clifford_matrix(psi0.rep, fr, g, grad_tr) * jet.value) -
         0.25 * (clifford_matrix(psi0.rep, fr, g, divk_sharp) * jet.value);
}

VariationResult variation_check(const MetricFamily& fam, const SpinorField& psi, double t0, const Vec& p, double step,
                                const FdOptions& o) {
  SpinorField psi0 = on_slice(fam, psi, t0);
  auto [a, b] = fam.t_interval();
  if (t0 - step < a || t0 + step > b) throw DomainError("variation_check: t0 ± step leaves the family interval");
  auto lhs_at = [&](double h) {
    return CVec((conjugated_dirac(fam, psi0, t0, t0 + h, p, o) - conjugated_dirac(fam, psi0, t0, t0 - h, p, o)) /
                (2 * h));
  };
  VariationResult r;
  r.step = step;
  r.rhs = variation_rhs(fam, psi0, t0, p, o);
  r.lhs = lhs_at(step);
  r.residual = (r.lhs - r.rhs).norm();
  r.residual_half = (lhs_at(0.5 * step) - r.rhs).norm();
  r.ratio = r.residual_half > 0 ? r.residual / r.residual_half : 0.0;
  return r;
}

CommutatorResult commutator_check(const MetricFamily& fam, const SpinorField& psi, double t0, const Vec& p,
                                  const FdOptions& o) {
  SpinorField psi0 = on_slice(fam, psi, t0);
  const int n = fam.dim();
  const Signature& sig = fam.signature();
  SpinorRep ambient = clifford::build_spinor_rep(Signature(sig.r + 1, sig.s));
  const CMat& P = psi0.rep.embedding;
  if (P.rows() != ambient.dim || P.cols() != psi0.rep.dim)
    throw PreconditionError("commutator_check needs a spinor in leaf_rep(signature)");
  for (int i = 0; i < n; ++i)
    if ((P.adjoint() * ambient.gamma[0] * ambient.gamma[i + 1] * P - psi0.rep.gamma[i]).norm() > 1e-10)
      throw PreconditionError("commutator_check needs a spinor in leaf_rep(signature)");

  // Ambient field F(t,x) = D^{M_t}(τ_{t0}^t ψ)(x), differentiated by ∇^Z along ∂_t.
  MetricField Z = fam.cylinder_metric();
  SpinorField F{Z, ambient, [&](const Vec& z) {
                  const double t = z[0];
                  Vec x = z.tail(n);
                  SpinorField moved = t == t0 ? psi0 : transported_field(fam, psi0, t0, t);
                  return CVec(P * dirac(moved, x, o));
                }};
  Vec z(n + 1);
  z[0] = t0;
  z.tail(n) = p;
  CommutatorResult r;
  r.lhs = covariant_derivative(F, Vec::Unit(n + 1, 0), z, o);

  SpinorJet jet = spinor_jet(psi0, p, o);
  const Frame& fr = jet.fc.frame;
  const Mat& g = jet.fc.g;
  const Mat ginv = g.inverse();
  const Mat W = cylinder::weingarten(fam, t0, p);
  CVec DW = CVec::Zero(psi0.rep.dim);
  for (int i = 0; i < n; ++i)
    DW += static_cast<double>(fr.eps[i]) * (psi0.rep.gamma[i] * jet.along(W * fr.E.col(i)));
  auto W_at = [&](const Vec& x) { return Mat(cylinder::weingarten(fam, t0, x)); };
  Vec gradH = gradient([&](const Vec& x) { return W_at(x).trace() / n; }, ginv, p, o);
  std::vector<Mat> dW;
  for (int a = 0; a < n; ++a) dW.push_back(chart::fd_partial(W_at, p, a, o));
  const chart::Christoffel& G = jet.fc.coord;
  Vec divW = Vec::Zero(n);  // (div W)^b = g^{ac} (∇_a W)^b_c
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        double v = dW[a](b, c);
        for (int d = 0; d < n; ++d) v += G(b, a, d) * W(d, c) - W(b, d) * G(d, a, c);
        divW[b] += ginv(a, c) * v;
      }
  CVec rhs = DW - 0.5 * n * (clifford_matrix(psi0.rep, fr, g, gradH) * jet.value) +
             0.5 * (clifford_matrix(psi0.rep, fr, g, divW) * jet.value);
  r.rhs = P * rhs;
  r.residual = (r.lhs - r.rhs).norm();
  return r;
}

Mat energy_momentum(const SpinorField& psi, const Vec& p, const FdOptions& o) {
  SpinorJet jet = spinor_jet(psi, p, o);
  const int n = psi.g.dim();
  std::vector<CVec> nab;
  std::vector<CMat> cl;
  for (int a = 0; a < n; ++a) {
    nab.push_back(jet.along(Vec::Unit(n, a)));
    cl.push_back(clifford_matrix(psi.rep, jet.fc.frame, jet.fc.g, Vec::Unit(n, a)));
  }
  Mat Q(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      Q(a, b) = -0.25 * (psi.rep.inner(jet.value, cl[a] * nab[b]) + psi.rep.inner(jet.value, cl[b] * nab[a])).real();
  return Q;
}

Mat energy_momentum_full(const SpinorField& psi, double lambda, const Vec& p, const FdOptions& o) {
  CVec v = psi(p);
  CVec Dv = dirac(psi, p, o);
  return energy_momentum(psi, p, o) + 0.5 * psi.rep.inner(v, Dv - lambda * v).real() * psi.g(p);
}

double volume_derivative_residual(const MetricFamily& fam, double t0, const Vec& p) {
  const double v0 = std::sqrt(std::abs(fam.g(t0, p).determinant()));
  auto ratio = [&](double t) { return std::sqrt(std::abs(fam.g(t, p).determinant())) / v0; };
  auto central = [&](double h) { return (ratio(t0 + h) - ratio(t0 - h)) / (2 * h); };
  const double h = 1e-3;
  const double d = (4.0 * central(0.5 * h) - central(h)) / 3.0;
  return std::abs(d - 0.5 * (fam.g(t0, p).inverse() * fam.dg(t0, p)).trace());
}

double killing_equation_residual(const SpinorField& psi, const embedding::EndoField& A, const Vec& p,
                                 const FdOptions& o) {
  SpinorJet jet = spinor_jet(psi, p, o);
  Mat Ap = A(p, psi.g.time());
  double worst = 0.0;
  for (int i = 0; i < psi.g.dim(); ++i) {
    CVec r = jet.nabla[i] -
             0.5 * (clifford_matrix(psi.rep, jet.fc.frame, jet.fc.g, Ap * jet.fc.frame.E.col(i)) * jet.value);
    worst = std::max(worst, r.norm());
  }
  return worst;
}

SpinorField s2_killing_spinor(const CVec& sigma0) {
  SpinorRep rep = leaf_rep(Signature(2, 0));
  if (sigma0.size() != rep.dim) throw PreconditionError("s2_killing_spinor: sigma0 has the wrong dimension");
  // In the frame (∂θ, ∂φ/sinθ): ∂θσ = ½γ1σ and ∂φσ = M(θ)σ with M = ½ sinθ γ2 − ½ cosθ γ1γ2.
  // γ1² = −1 and M² = −¼, so both flows are explicit rotations.
  const CMat g1 = rep.gamma[0], g2 = rep.gamma[1];
  const CMat I = CMat::Identity(rep.dim, rep.dim);
  return SpinorField{catalog::round_sphere(2), rep, [=](const Vec& x) {
                       const double th = x[0], ph = x[1];
                       const double a = 0.5 * (th - std::numbers::pi / 2);
                       CVec s = (std::cos(a) * I + std::sin(a) * g1) * sigma0;
                       CMat M = 0.5 * std::sin(th) * g2 - 0.5 * std::cos(th) * (g1 * g2);
                       return CVec((std::cos(0.5 * ph) * I + 2.0 * std::sin(0.5 * ph) * M) * s);
                     }};
}

KillingReport killing_cylinder_check(const MetricField& g, const embedding::EndoField& A, const SpinorField& psi,
                                     int samples, double t_max, const FdOptions& o) {
  KillingReport rep;
  const double margin = 2 * o.h + 1e-9;
  for (int k = 0; k < 8; ++k) {
    Vec x = g.domain().halton(k, margin);
    SpinorField onM{g, psi.rep, psi.value};
    rep.killing_equation = std::max(rep.killing_equation, killing_equation_residual(onM, A, x, o));
    rep.codazzi = std::max(rep.codazzi, embedding::codazzi_residual(g, A, x, o));
  }
  if (rep.killing_equation > embedding::tau_precondition || rep.codazzi > embedding::tau_precondition) {
    std::ostringstream os;
    os << "generalized Killing data rejected: killing_equation_residual=" << rep.killing_equation
       << " codazzi_residual=" << rep.codazzi << " (tolerance " << embedding::tau_precondition << ")";
    throw PreconditionError(os.str());
  }
  embedding::Window w = embedding::invertibility_window(g, A, 0.0, t_max);
  rep.window = w.half_width;
  if (w.half_width < t_max) {
    rep.window_shrunk = true;
    std::ostringstream os;
    os << "id - tA degenerates inside |t| < " << t_max << "; window shrunk to " << w.half_width;
    rep.warning = os.str();
  }
  embedding::BuildOptions bo;
  bo.check_preconditions = false;
  bo.max_half_width = rep.window;
  MetricFamily fam = embedding::killing_family(g, A, bo);

  const int n = g.dim();
  const Signature& sig = g.signature();
  SpinorRep ambient = clifford::build_spinor_rep(Signature(sig.r + 1, sig.s));
  const CMat P = psi.rep.embedding;
  if (P.rows() != ambient.dim) throw PreconditionError("killing_cylinder_check needs a spinor in leaf_rep(signature)");
  SpinorRep leaf = psi.rep;
  SpinorFn base = psi.value;
  SpinorField Psi{fam.cylinder_metric(), ambient, [&](const Vec& z) {
                    Vec x = z.tail(n);
                    return CVec(P * transport_spinor(fam, leaf, x, 0.0, z[0], base(x)));
                  }};
  const double zmargin = 4 * o.h + 1e-9;
  for (int k = 0; k < samples; ++k) {
    Vec z = Psi.g.domain().halton(k, zmargin);
    SpinorJet jet = spinor_jet(Psi, z, o);
    for (int i = 1; i <= n; ++i) rep.max_residual = std::max(rep.max_residual, jet.nabla[i].norm());
  }
  rep.samples = samples;
  return rep;
}

}  // namespace gcyl::spin
