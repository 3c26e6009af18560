#include "gcyl/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace gcyl::lorentz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double tau_root = 1e-8;

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Mat sym(const Mat& m) { return 0.5 * (m + m.transpose()); }

Mat reflection(int n) {
  Mat J = Mat::Identity(n, n);
  J(n - 1, n - 1) = -1.0;
  return J;
}

// Ascending-coefficient polynomial helpers.
using Poly = std::vector<double>;

Poly poly_mul_linear(const Poly& p, double root) {  // p · (t − root)
  Poly r(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    r[i + 1] += p[i];
    r[i] -= root * p[i];
  }
  return r;
}

double poly_scale(const Poly& p, double t) {
  double s = 0.0, x = 1.0;
  for (double c : p) {
    s += std::abs(c) * x;
    x *= std::max(1.0, std::abs(t));
  }
  return s;
}

void fill_exp_check(ConnectionVerdict& v) {
  if (!v.generator) return;
  const Mat& a = *v.generator;
  Mat e = a.exp();
  v.exp_residual = max_abs(e - v.A) / std::max(1.0, max_abs(v.A));
  Mat ga = v.G0 * a;
  v.generator_symmetry = max_abs(ga - ga.transpose()) / std::max(1.0, max_abs(ga));
}

// Operator with matrix X in the g0-orthonormal basis E (spacelike column first).
Mat plane_operator(const Mat& E, const Mat& G0, const Mat& X) {
  Mat eta = Mat::Identity(2, 2);
  eta(1, 1) = -1.0;
  return E * X * eta * E.transpose() * G0;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::UniqueTimelike: return "UniqueTimelike";
    case Verdict::UniqueNull: return "UniqueNull";
    case Verdict::UniqueSpacelike: return "UniqueSpacelike";
    case Verdict::UniqueNilpotentNull: return "UniqueNilpotentNull";
    case Verdict::NoGeodesic: return "NoGeodesic";
    case Verdict::InfinitelyManySpacelike: return "InfinitelyManySpacelike";
  }
  return "?";
}

bool is_unique(Verdict v) {
  return v == Verdict::UniqueTimelike || v == Verdict::UniqueNull || v == Verdict::UniqueSpacelike ||
         v == Verdict::UniqueNilpotentNull;
}

void check_lorentzian(const Mat& G, const std::string& what) {
  if (G.rows() != G.cols() || G.rows() < 2) throw SignatureMismatch(what + " must be a square matrix of size >= 2");
  if (!G.allFinite()) throw SignatureMismatch(what + " has non-finite entries");
  if (max_abs(G - G.transpose()) > 1e-12 * std::max(1.0, max_abs(G)))
    throw SignatureMismatch(what + " is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(sym(G), Eigen::EigenvaluesOnly);
  const Vec& ev = es.eigenvalues();
  const double tol = 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  int neg = 0, zero = 0;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= tol) ++zero;
    else if (ev[i] < 0) ++neg;
  }
  if (zero || neg != 1) {
    std::ostringstream os;
    os << what << " must have signature (" << G.rows() - 1 << ",1), found " << G.rows() - neg - zero << " positive, "
       << neg << " negative, " << zero << " zero eigenvalues";
    throw SignatureMismatch(os.str());
  }
}

Mat normalize_unimodular(const Mat& G) {
  const double d = std::abs(G.determinant());
  if (!(d > 0)) throw DegenerateMetric("cannot normalize a degenerate form");
  return G / std::pow(d, 1.0 / static_cast<double>(G.rows()));
}

Mat relating_endomorphism(const Mat& G0, const Mat& G1) {
  if (G0.rows() != G1.rows()) throw SignatureMismatch("metrics have different dimensions");
  check_lorentzian(G0, "g0");
  check_lorentzian(G1, "g1");
  Mat A = G0.partialPivLu().solve(G1);
  if (!(A.determinant() > 0)) throw ConditioningError("relating endomorphism has non-positive determinant");
  return A;
}

double symmetry_residual(const Mat& G, const Mat& A) {
  Mat ga = G * A;
  return max_abs(ga - ga.transpose()) / std::max(1.0, max_abs(ga));
}

DeSitterPoint to_de_sitter(const Mat& G, double omega_scale) {
  if (G.rows() != 2) throw SchemaError("the de Sitter picture is two-dimensional");
  check_lorentzian(G);
  if (std::abs(std::abs(G.determinant()) - omega_scale * omega_scale) > 1e-12 * omega_scale * omega_scale)
    throw PreconditionError("volume mismatch: |det g| differs from the squared area form");
  Mat J(2, 2);
  J << 0, 1, -1, 0;
  DeSitterPoint p;
  // g(x, y) = ω(x, I y) = xᵀ (sJ) I y, and J⁻¹ = −J
  p.I = -J * G / omega_scale;
  p.omega_scale = omega_scale;
  return p;
}

double de_sitter_product(const DeSitterPoint& a, const DeSitterPoint& b) { return 0.5 * (a.I * b.I).trace(); }

Mat ConnectionVerdict::family_member(double s, int sign) const {
  if (kind != Verdict::InfinitelyManySpacelike) throw SchemaError("not an antipodal verdict");
  const double sg = sign >= 0 ? 1.0 : -1.0;
  Mat K(2, 2);
  K << std::sinh(s), sg * std::cosh(s), -sg * std::cosh(s), -std::sinh(s);
  Mat X = log_scale * Mat::Identity(2, 2) + kPi * K;
  return a_rest + plane_operator(plane, G0, X);
}

ConnectionVerdict classify_2d(const Mat& G0, const Mat& G1) {
  if (G0.rows() != 2 || G1.rows() != 2) throw SchemaError("classify_2d needs 2x2 metrics");
  ConnectionVerdict v;
  v.G0 = G0;
  v.G1 = G1;
  v.A = relating_endomorphism(G0, G1);
  for (const Mat* G : {&G0, &G1})
    if (std::abs(std::abs(G->determinant()) - 1.0) > 1e-9)
      throw PreconditionError("classify_2d needs unimodular input (|det g| = 1); normalize first");
  const Mat& A = v.A;
  const Mat I = Mat::Identity(2, 2);
  const double tr = A.trace();
  Eigen::EigenSolver<Mat> es(A, false);
  Block b;
  b.dim = 2;
  for (int i = 0; i < 2; ++i) b.eigenvalues.push_back(es.eigenvalues()[i]);
  const double scale = std::max(1.0, max_abs(A));

  if (tr > 2 + tau_tr) {
    v.kind = Verdict::UniqueTimelike;
    const double L = std::acosh(tr / 2);
    v.generator = L * (A - 0.5 * tr * I) / std::sqrt(tr * tr / 4 - 1);
    v.reason = "tr A > 2";
    b.kind = "timelike";
  } else if (std::abs(tr - 2) <= tau_tr) {
    Mat N = A - I;
    if (max_abs(N) <= tau_tr * scale) {
      v.kind = Verdict::UniqueTimelike;
      v.generator = Mat::Zero(2, 2);
      v.reason = "g1 = g0";
      b.kind = "timelike";
    } else {
      if (max_abs(N * N) > 1e-8 * scale * scale)
        throw ConditioningError("tr A = 2 within tolerance but (A - Id)^2 is not small");
      v.kind = Verdict::UniqueNull;
      v.generator = N - 0.5 * N * N;
      v.reason = "tr A = 2, A != Id";
      b.kind = "null";
    }
  } else if (tr > -2 + tau_tr) {
    v.kind = Verdict::UniqueSpacelike;
    const double theta = std::acos(tr / 2);
    v.generator = theta * (A - 0.5 * tr * I) / std::sin(theta);
    v.reason = "-2 < tr A < 2";
    b.kind = "spacelike";
  } else if (tr < -2 - tau_tr) {
    v.kind = Verdict::NoGeodesic;
    v.reason = "tr A < -2";
    b.kind = "negative";
  } else if (max_abs(A + I) <= tau_tr * scale) {
    v.kind = Verdict::InfinitelyManySpacelike;
    v.reason = "g1 = -g0: every spacelike geodesic from g0 passes through g1";
    v.plane = euclidean_gauge(G0);
    v.a_rest = Mat::Zero(2, 2);
    v.log_scale = 0.0;
    b.kind = "antipodal";
  } else {
    v.kind = Verdict::NoGeodesic;
    v.reason = "tr A = -2, g1 != -g0";
    b.kind = "negative";
  }
  v.blocks.push_back(b);
  fill_exp_check(v);
  return v;
}

std::vector<double> characteristic_polynomial(const Mat& M) {
  const int m = static_cast<int>(M.rows());
  if (m == 0) return {1.0};
  // La Budde's recurrence on the Hessenberg form, p_i = det(t − H[0..i, 0..i])
  Mat H = Eigen::HessenbergDecomposition<Mat>(M).matrixH();
  std::vector<Poly> p{{1.0}};
  for (int i = 0; i < m; ++i) {
    Poly next = poly_mul_linear(p[i], H(i, i));
    double beta = 1.0;
    for (int k = 1; k <= i; ++k) {
      beta *= H(i - k + 1, i - k);
      const double c = H(i - k, i) * beta;
      for (std::size_t j = 0; j < p[i - k].size(); ++j) next[j] -= c * p[i - k][j];
    }
    p.push_back(next);
  }
  return p[m];
}

std::vector<cplx> polynomial_roots(const std::vector<double>& p) {
  const int m = static_cast<int>(p.size()) - 1;
  if (m < 1) return {};
  if (p[m] == 0.0) throw ConditioningError("polynomial has a vanishing leading coefficient");
  Mat C = Mat::Zero(m, m);
  for (int i = 1; i < m; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < m; ++i) C(i, m - 1) = -p[i] / p[m];
  Eigen::EigenSolver<Mat> es(C, false);
  if (es.info() != Eigen::Success) throw ConditioningError("eigen-solver failure on the companion matrix");
  std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + m);
  std::sort(r.begin(), r.end(), [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  return r;
}

double polyval(const std::vector<double>& p, double t) {
  double s = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * t + *it;
  return s;
}

bool LorentzSpectralData::zero_in_delta() const { return spaces.front().in_delta; }
// P, P' and Q straight from the product form; expanded coefficients cancel badly near the λ_j.
namespace {

double product_except(const LorentzSpectralData& d, double t, int skip1, int skip2) {
  double p = 1.0;
  for (int k : d.delta)
    if (k != skip1 && k != skip2) p *= t - d.lambda(k);
  return p;
}

double weight(const LorentzSpectralData& d, int j) { return 2.0 * d.lambda(j) * d.spaces[j].u.squaredNorm(); }

}  // namespace

double LorentzSpectralData::P_at(double t) const {
  double s = product_except(*this, t, -1, -1);
  for (int j : delta) s += weight(*this, j) * product_except(*this, t, j, -1);
  return s;
}

double LorentzSpectralData::P_prime_at(double t) const {
  double s = 0.0;
  for (int i : delta) s += product_except(*this, t, i, -1);
  for (int j : delta)
    for (int i : delta)
      if (i != j) s += weight(*this, j) * product_except(*this, t, i, j);
  return s;
}

double LorentzSpectralData::Q_at(double t) const { return product_except(*this, t, -1, -1); }

Mat euclidean_gauge(const Mat& G0) {
  check_lorentzian(G0, "g0");
  const int n = static_cast<int>(G0.rows());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym(G0));
  Mat P(n, n);
  // eigenvalues ascending: the negative one comes first and goes last
  for (int i = 1; i < n; ++i) P.col(i - 1) = es.eigenvectors().col(i) / std::sqrt(es.eigenvalues()[i]);
  P.col(n - 1) = es.eigenvectors().col(0) / std::sqrt(-es.eigenvalues()[0]);
  return P;
}

namespace {

std::vector<Root> cluster_roots(const std::vector<cplx>& raw, std::vector<std::string>& warnings) {
  // single linkage at the triple radius, then decide what each group is
  const int m = static_cast<int>(raw.size());
  std::vector<int> group(m);
  for (int i = 0; i < m; ++i) group[i] = i;
  auto find = [&](int i) {
    while (group[i] != i) i = group[i];
    return i;
  };
  auto close = [&](cplx a, cplx b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (close(raw[i], raw[j], tau_triple)) group[find(j)] = find(i);
  std::vector<Root> out;
  for (int g = 0; g < m; ++g) {
    std::vector<cplx> members;
    for (int i = 0; i < m; ++i)
      if (find(i) == g) members.push_back(raw[i]);
    if (members.empty()) continue;
    auto merge = [&](const std::vector<cplx>& ms) {
      cplx mean = 0.0;
      for (cplx c : ms) mean += c;
      mean /= static_cast<double>(ms.size());
      if (std::abs(mean.imag()) <= tau_cluster * std::max(1.0, std::abs(mean))) mean = mean.real();
      out.push_back({mean, static_cast<int>(ms.size())});
    };
    if (members.size() == 2 && !close(members[0], members[1], tau_cluster)) {
      std::ostringstream os;
      os << "roots " << members[0] << " and " << members[1] << " are close but kept apart";
      warnings.push_back(os.str());
      for (cplx c : members) out.push_back({c, 1});
    } else {
      merge(members);
    }
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    return a.value.real() != b.value.real() ? a.value.real() < b.value.real() : a.value.imag() < b.value.imag();
  });
  return out;
}

}  // namespace

LorentzSpectralData spectral_split(const Mat& G0, const Mat& G1) {
  LorentzSpectralData d;
  d.G0 = G0;
  d.G1 = G1;
  relating_endomorphism(G0, G1);  // shape and signature checks
  const int n = static_cast<int>(G0.rows());
  d.gauge = euclidean_gauge(G0);
  d.u = Vec::Unit(n, n - 1);
  d.S = sym(d.gauge.transpose() * G1 * d.gauge);
  d.A = reflection(n) * d.S;

  Eigen::SelfAdjointEigenSolver<Mat> es(d.S);
  if (es.info() != Eigen::Success) throw ConditioningError("eigen-solver failure on S");
  const Vec& ev = es.eigenvalues();
  for (int i = 0; i < n;) {
    int j = i + 1;
    while (j < n && ev[j] - ev[j - 1] <= tau_eigen * std::max(1.0, std::abs(ev[j]))) ++j;
    Eigenspace e;
    e.lambda = ev.segment(i, j - i).mean();
    e.Q = es.eigenvectors().middleCols(i, j - i);
    e.u = e.Q * (e.Q.transpose() * d.u);
    d.spaces.push_back(e);
    i = j;
  }
  if (!(d.spaces.front().lambda < 0) || d.spaces.front().dim() != 1 || d.spaces.size() < 2 ||
      !(d.spaces[1].lambda > 0))
    throw ConditioningError("S does not have exactly one simple negative eigenvalue");

  for (int j = 0; j < static_cast<int>(d.spaces.size()); ++j) {
    Eigenspace& e = d.spaces[j];
    const double nu = e.u.norm();
    e.in_delta = nu > tau_u;
    if (nu >= tau_u / 10 && nu <= tau_u) {
      std::ostringstream os;
      os << "ambiguous membership in Delta: |u_" << j << "| = " << nu;
      d.warnings.push_back(os.str());
    }
    if (e.in_delta) d.delta.push_back(j);
  }
  d.m = static_cast<int>(d.delta.size());

  d.W = Mat(n, d.m);
  std::vector<Vec> etilde;
  for (int idx = 0; idx < d.m; ++idx) {
    const Eigenspace& e = d.spaces[d.delta[idx]];
    d.W.col(idx) = e.u.normalized();
  }
  for (const Eigenspace& e : d.spaces) {
    if (!e.in_delta) {
      for (int c = 0; c < e.dim(); ++c) etilde.push_back(e.Q.col(c));
    } else if (e.dim() > 1) {
      // orthogonal complement of u_j inside E_j
      Vec c = e.Q.transpose() * e.u;
      Eigen::HouseholderQR<Mat> qr(c);
      Mat H = qr.householderQ();
      for (int k = 1; k < e.dim(); ++k) etilde.push_back(e.Q * H.col(k));
    }
  }
  d.Etilde = Mat(n, static_cast<int>(etilde.size()));
  for (std::size_t k = 0; k < etilde.size(); ++k) d.Etilde.col(static_cast<int>(k)) = etilde[k];
  d.AW = d.W.transpose() * d.A * d.W;

  // P(t) = Π (t − λ_j) + 2 Σ_j λ_j |u_j|² Π_{k≠j} (t − λ_k) over j ∈ Δ
  d.Q = {1.0};
  for (int j : d.delta) d.Q = poly_mul_linear(d.Q, d.lambda(j));
  d.P = d.Q;
  for (int j : d.delta) {
    Poly term = {2.0 * d.lambda(j) * d.spaces[j].u.squaredNorm()};
    for (int k : d.delta)
      if (k != j) term = poly_mul_linear(term, d.lambda(k));
    for (std::size_t i = 0; i < term.size(); ++i) d.P[i] += term[i];
  }
  d.P_brute = characteristic_polynomial(d.AW);
  for (std::size_t i = 0; i < d.P.size(); ++i)
    d.car1_residual =
        std::max(d.car1_residual, std::abs(d.P[i] - d.P_brute[i]) / std::max(1.0, std::abs(d.P_brute[i])));

  d.raw_roots = polynomial_roots(d.P);
  d.roots = cluster_roots(d.raw_roots, d.warnings);
  // Newton polish of simple real roots; the companion eigenvalues lose digits near the λ_j
  for (Root& r : d.roots) {
    if (r.multiplicity != 1 || r.value.imag() != 0.0) continue;
    double x = r.value.real();
    for (int it = 0; it < 3; ++it) {
      const double step = d.P_at(x) / d.P_prime_at(x);
      if (!std::isfinite(step) || std::abs(step) > 1e-6 * std::max(1.0, std::abs(x))) break;
      x -= step;
    }
    r.value = x;
  }
  return d;
}

namespace {

CVec vmu_complex(const LorentzSpectralData& d, cplx mu) {
  CVec v = CVec::Zero(d.u.size());
  for (int j : d.delta) v += d.spaces[j].u.cast<cplx>() / (mu - d.lambda(j));
  return v;
}

// μ − λ_k for all k in Δ, written as (λ_j − λ_k) + δ around the nearest λ_j. δ is re-solved from
// the secular equation δ(1 + Σ_{i≠j} w_i/(λ_j − λ_i + δ)) + w_j = 0, so it keeps its relative
// accuracy even when μ sits within a few ulps of λ_j.
std::map<int, double> shifted_offsets(const LorentzSpectralData& d, double mu) {
  int j = d.delta.front();
  for (int k : d.delta)
    if (std::abs(mu - d.lambda(k)) < std::abs(mu - d.lambda(j))) j = k;
  double delta = mu - d.lambda(j);
  const double w_j = weight(d, j);
  for (int it = 0; it < 30 && w_j != 0.0; ++it) {
    double R = 0.0, dR = 0.0;
    for (int i : d.delta)
      if (i != j) {
        const double den = d.lambda(j) - d.lambda(i) + delta;
        R += weight(d, i) / den;
        dR -= weight(d, i) / (den * den);
      }
    const double h = delta * (1.0 + R) + w_j, dh = 1.0 + R + delta * dR;
    const double next = delta - h / dh;
    if (!std::isfinite(next) || std::abs(next - (mu - d.lambda(j))) > 1e-6 * std::max(1.0, std::abs(mu))) break;
    const bool done = std::abs(next - delta) <= 1e-16 * std::abs(next);
    delta = next;
    if (done) break;
  }
  std::map<int, double> off;
  for (int k : d.delta) off[k] = k == j ? delta : (d.lambda(j) - d.lambda(k)) + delta;
  return off;
}

}  // namespace

VmuResult eigvec_vmu(const LorentzSpectralData& d, double mu) {
  if (std::abs(d.P_at(mu)) > tau_root * poly_scale(d.P, mu)) {
    std::ostringstream os;
    os << "mu = " << mu << " is not a root of P (|P(mu)| = " << std::abs(d.P_at(mu)) << ")";
    throw DomainError(os.str());
  }
  const std::map<int, double> off = shifted_offsets(d, mu);
  VmuResult r;
  r.v = Vec::Zero(d.u.size());
  for (int j : d.delta) r.v += d.spaces[j].u / off.at(j);
  const Mat J = reflection(static_cast<int>(d.u.size()));
  r.g_norm = r.v.dot(d.S * r.v);
  r.g0_norm = r.v.dot(J * r.v);
  // P' and Q from the same shifted factors
  double pp = 0.0;
  for (int i : d.delta) {
    double term = 1.0;
    for (int k : d.delta)
      if (k != i) term *= off.at(k);
    pp += term;
  }
  for (int j : d.delta)
    for (int i : d.delta)
      if (i != j) {
        double term = weight(d, j);
        for (int k : d.delta)
          if (k != i && k != j) term *= off.at(k);
        pp += term;
      }
  double q = 1.0;
  for (int k : d.delta) q *= off.at(k);
  r.formula = -0.5 * pp / q;
  const double vn = r.v.norm();
  r.eigen_residual = (d.A * r.v - mu * r.v).norm() / vn;
  r.normv_residual = std::max(std::abs(r.g_norm - r.formula), std::abs(r.g_norm - mu * r.g0_norm)) /
                     std::max(1.0, vn * vn);
  return r;
}

namespace {

// Accumulates an invariant splitting in gauge coordinates: columns of B and the generator
// block-diagonal in that basis.
struct Assembly {
  int n;
  Mat B, L;
  int used = 0;
  explicit Assembly(int n_) : n(n_), B(Mat::Zero(n_, n_)), L(Mat::Zero(n_, n_)) {}
  int add(const Mat& cols, const Mat& log_block) {
    const int k = static_cast<int>(cols.cols());
    if (used + k > n) throw ConditioningError("invariant blocks overflow the space");
    B.middleCols(used, k) = cols;
    L.block(used, used, k, k) = log_block;
    used += k;
    return used - k;
  }
  Mat op(const Mat& Lsel) const { return B * Lsel * B.inverse(); }
};

Mat generalized_eigenspace(const Mat& M, cplx mu, int k) {
  const int m = static_cast<int>(M.rows());
  Mat N = M - mu.real() * Mat::Identity(m, m);
  Mat Nk = Mat::Identity(m, m);
  for (int i = 0; i < k; ++i) Nk = Nk * N;
  Eigen::JacobiSVD<Mat> svd(Nk, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(k);
}

std::string fmt_roots(const std::vector<Root>& roots) {
  std::ostringstream os;
  for (const Root& r : roots) os << " " << r.value << "^" << r.multiplicity;
  return os.str();
}

}  // namespace

ConnectionVerdict classify_nd(const Mat& G0, const Mat& G1) {
  LorentzSpectralData d = spectral_split(G0, G1);
  const int n = static_cast<int>(G0.rows());
  ConnectionVerdict v;
  v.G0 = G0;
  v.G1 = G1;
  v.A = G0.partialPivLu().solve(G1);
  v.warnings = d.warnings;
  const Mat Pinv = d.gauge.inverse();
  auto to_original = [&](const Mat& op) { return Mat(d.gauge * op * Pinv); };

  Assembly as(n);
  // Ẽ: A acts as S there, with eigenvalues λ_j
  int negative_tilde = -1;
  {
    Block eb;
    eb.kind = "euclidean";
    for (const Eigenspace& e : d.spaces) {
      Mat cols;
      if (!e.in_delta) {
        cols = e.Q;
      } else if (e.dim() > 1) {
        Vec c = e.Q.transpose() * e.u;
        Eigen::HouseholderQR<Mat> qr(c);
        Mat H = qr.householderQ();
        cols = e.Q * H.rightCols(e.dim() - 1);
      } else {
        continue;
      }
      if (e.lambda < 0) {
        negative_tilde = as.add(cols, Mat::Zero(1, 1));
        continue;
      }
      as.add(cols, std::log(e.lambda) * Mat::Identity(cols.cols(), cols.cols()));
      eb.dim += static_cast<int>(cols.cols());
      for (int c = 0; c < cols.cols(); ++c) eb.eigenvalues.push_back(e.lambda);
    }
    if (eb.dim) v.blocks.push_back(eb);
  }

  // W: one invariant block per root cluster
  const Mat& M = d.AW;
  int n_complex = 0, n_negative = 0, n_double = 0, n_triple = 0, n_higher = 0, n_positive_simple = 0;
  int negative_root_col = -1, triple_col = -1;
  double mu0 = 0.0;
  Mat nil_N;
  for (const Root& r : d.roots) {
    const cplx mu = r.value;
    Block b;
    b.dim = mu.imag() != 0.0 ? 2 : r.multiplicity;
    for (int i = 0; i < r.multiplicity; ++i) b.eigenvalues.push_back(mu);
    if (mu.imag() < 0) continue;  // handled with its conjugate
    if (mu.imag() > 0) {
      ++n_complex;
      CVec vc = vmu_complex(d, mu);
      Mat cols(n, 2);
      cols.col(0) = vc.real();
      cols.col(1) = vc.imag();
      Mat K(2, 2);
      K << 0, 1, -1, 0;
      as.add(cols, std::log(std::abs(mu)) * Mat::Identity(2, 2) + std::arg(mu) * K);
      b.kind = "spacelike";
      b.eigenvalues.push_back(std::conj(mu));
    } else if (r.multiplicity == 1) {
      const double x = mu.real();
      Mat col = vmu_complex(d, x).real();
      if (x > 0) {
        ++n_positive_simple;
        as.add(col, std::log(x) * Mat::Identity(1, 1));
        b.kind = col.col(0).dot(reflection(n) * col.col(0)) < 0 ? "timelike" : "euclidean";
      } else {
        ++n_negative;
        mu0 = x;
        negative_root_col = as.add(col, Mat::Zero(1, 1));
        b.kind = "negative";
      }
    } else if (r.multiplicity <= 3) {
      (r.multiplicity == 2 ? n_double : n_triple) += 1;
      const double x = mu.real();
      Mat cols = d.W * generalized_eigenspace(M, mu, r.multiplicity);
      Mat C = cols.colPivHouseholderQr().solve(d.A * cols);
      const double kk = C.trace() / r.multiplicity;
      if (x > 0) {
        Mat N = C / kk - Mat::Identity(r.multiplicity, r.multiplicity);
        int at = as.add(cols, std::log(kk) * Mat::Identity(r.multiplicity, r.multiplicity) + N - 0.5 * N * N);
        b.kind = r.multiplicity == 2 ? "null" : "nilpotent";
        if (r.multiplicity == 3) {
          triple_col = at;
          nil_N = N;
          v.k = kk;
        }
      } else {
        n_negative += r.multiplicity;
        as.add(cols, Mat::Zero(r.multiplicity, r.multiplicity));
        b.kind = "negative";
      }
    } else {
      ++n_higher;
      b.kind = "degenerate";
    }
    v.blocks.push_back(b);
  }

  auto fail = [&](const std::string& why) {
    throw ConditioningError(why + "; roots of P:" + fmt_roots(d.roots));
  };
  if (n_higher || n_double + n_triple > 1) fail("root multiplicities inconsistent with a Lorentzian pair");
  if (as.used != n) fail("invariant blocks do not span the space");

  auto finish_unique = [&](Verdict kind, const std::string& why) {
    v.kind = kind;
    v.reason = why;
    v.generator = to_original(as.op(as.L));
    fill_exp_check(v);
    if (v.exp_residual > tau_generator) {
      std::ostringstream os;
      os << "generator check failed (|exp(a) - A| = " << v.exp_residual << ")";
      fail(os.str());
    }
  };

  if (!d.zero_in_delta()) {
    // Case 1: λ₀ sits in Ẽ and P has one negative root μ₀
    if (n_complex || n_double || n_triple || n_negative != 1 || negative_tilde < 0)
      fail("expected m distinct real roots with exactly one negative");
    const double l0 = d.lambda(0);
    Block e11;
    e11.kind = "negative";
    e11.dim = 2;
    e11.eigenvalues = {l0, mu0};
    v.blocks.push_back(e11);
    const double gap = std::abs(mu0 - l0) / std::max(1.0, std::abs(l0));
    if (gap <= tau_cluster) {
      v.kind = Verdict::InfinitelyManySpacelike;
      v.reason = "A is a negative multiple of the identity on a (1,1) block";
      Mat plane(n, 2);
      plane.col(0) = as.B.col(negative_tilde);
      Vec t = as.B.col(negative_root_col);
      plane.col(1) = t / std::sqrt(-t.dot(reflection(n) * t));
      plane.col(0) /= std::sqrt(plane.col(0).dot(reflection(n) * plane.col(0)));
      v.plane = d.gauge * plane;
      v.log_scale = std::log(-l0);
      v.a_rest = to_original(as.op(as.L));
      v.blocks.back().kind = "antipodal";
    } else {
      if (gap <= 1e3 * tau_cluster) v.warnings.push_back("negative eigenvalues nearly equal on the (1,1) block");
      v.kind = Verdict::NoGeodesic;
      v.reason = "distinct negative eigenvalues on a (1,1) block";
    }
    return v;
  }

  // Case 2
  if (d.m >= 2 && n_positive_simple + n_double + n_triple < d.m - 2)
    fail("fewer than m-2 positive roots");
  if (n_triple) {
    if (n_complex || n_negative) fail("triple root alongside other non-simple structure");
    Mat sel = Mat::Zero(n, n);
    sel.block(triple_col, triple_col, 3, 3) = Mat::Identity(3, 3);
    Mat xsel = Mat::Zero(n, n);
    xsel.block(triple_col, triple_col, 3, 3) = nil_N;
    Mat Lrest = as.L;
    Lrest.block(triple_col, triple_col, 3, 3).setZero();
    v.projector = to_original(as.op(sel));
    v.x = to_original(as.op(xsel));
    v.a_rest = to_original(as.op(Lrest));
    finish_unique(Verdict::UniqueNilpotentNull, "triple root of P: A = k(Id + x) on a (2,1) block");
    return v;
  }
  if (n_complex) {
    if (n_complex != 1 || n_negative || n_double) fail("complex roots alongside other non-simple structure");
    finish_unique(Verdict::UniqueSpacelike, "complex pair of roots");
    return v;
  }
  if (n_negative) {
    if (n_negative != 2) fail("expected two negative roots");
    if (n_double) v.warnings.push_back("equal negative roots: treated as a Jordan block, not as -Id");
    v.kind = Verdict::NoGeodesic;
    v.reason = "two negative roots on a (1,1) block";
    return v;
  }
  if (n_double) {
    finish_unique(Verdict::UniqueNull, "double positive root of P");
    return v;
  }
  finish_unique(Verdict::UniqueTimelike, d.m >= 2 ? "simple positive roots" : "single root, A diagonalizable");
  return v;
}

ConnectionVerdict classify(const Mat& G0, const Mat& G1) {
  if (G0.rows() == 2 && G1.rows() == 2 && std::abs(std::abs(G0.determinant()) - 1.0) <= 1e-9 &&
      std::abs(std::abs(G1.determinant()) - 1.0) <= 1e-9)
    return classify_2d(G0, G1);
  return classify_nd(G0, G1);
}

Mat nilpotent_polynomial(const ConnectionVerdict& v, double t) {
  if (v.kind != Verdict::UniqueNilpotentNull) throw SchemaError("not a nilpotent verdict");
  const int n = static_cast<int>(v.G0.rows());
  Mat I = Mat::Identity(n, n);
  Mat B = (t * v.a_rest).exp() * (I - v.projector) +
          std::pow(v.k, t) * (v.projector + t * v.x + 0.5 * t * (t - 1) * v.x * v.x);
  return sym(v.G0 * B);
}

Mat connecting_geodesic(const ConnectionVerdict& v, double t) {
  if (v.kind == Verdict::UniqueNilpotentNull) return nilpotent_polynomial(v, t);
  Mat a;
  if (v.generator) a = *v.generator;
  else if (v.kind == Verdict::InfinitelyManySpacelike) a = v.family_member(0.0, 1);
  else throw SchemaError("verdict " + to_string(v.kind) + " carries no generator");
  return sym(v.G0 * (t * a).exp());
}

std::vector<Mat> interpolate(const ConnectionVerdict& v, int samples) {
  if (samples < 2) throw SchemaError("interpolate needs at least 2 samples");
  std::vector<Mat> out;
  for (int i = 0; i < samples; ++i) out.push_back(connecting_geodesic(v, static_cast<double>(i) / (samples - 1)));
  return out;
}

Mat random_lorentzian(Rng& rng, int n, double spread) {
  Mat Z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Z(i, j) = rng.normal();
  Mat R = Eigen::HouseholderQR<Mat>(Z).householderQ();
  Vec d(n);
  const double lo = std::log(1.0 / spread), hi = std::log(spread);
  for (int i = 0; i < n; ++i) d[i] = std::exp(rng.uniform(lo, hi));
  d[n - 1] = -d[n - 1];
  return sym(R * d.asDiagonal() * R.transpose());
}

Mat random_unimodular(Rng& rng, int n) {
  Mat g(n, n);
  do {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = (i == j ? 1.0 : 0.0) + 0.5 * rng.normal();
  } while (std::abs(g.determinant()) < 0.1);
  return g / std::pow(std::abs(g.determinant()), 1.0 / n);
}

Mat act(const Mat& gamma, const Mat& G) {
  Mat gi = gamma.inverse();
  return sym(gi.transpose() * G * gi);
}

}  // namespace gcyl::lorentz
