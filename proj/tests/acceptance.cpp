// One line per acceptance criterion. Exit status is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "gcyl/catalog.hpp"
#include "gcyl/clifford.hpp"
#include "gcyl/cylinder.hpp"
#include "gcyl/embedding.hpp"
#include "gcyl/lorentz.hpp"
#include "gcyl/spin.hpp"

using namespace gcyl;
using clifford::Signature;
using lorentz::Verdict;

namespace {

// Pinned tolerances and budgets.
constexpr double tol_matrix = 1e-12, tol_volume = 1e-10;
constexpr double tol_cylinder = 1e-4, tol_embed = 1e-4, tol_negative = 1e-1;
constexpr double tol_variation = 1e-4, ratio_lo = 3.0, ratio_hi = 5.0, tol_commutator = 1e-4;
constexpr double tol_killing = 1e-3;
constexpr double tol_car1 = 1e-8, tol_normv = 1e-8, tol_exp = 1e-9, tol_nilpotent = 1e-12;
constexpr double tol_energy = 1e-5, tol_volume_derivative = 1e-6;

int failures = 0;

struct Line {
  std::string detail;
  bool ok = true;
  void need(bool c, const std::string& why) {
    if (!c) {
      ok = false;
      detail += " [" + why + "]";
    }
  }
};

void criterion(int k, const char* name, double budget_s, const std::function<Line()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Line l;
  try {
    l = body();
  } catch (const std::exception& e) {
    l.ok = false;
    l.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    l.ok = false;
    l.detail += " [over time budget]";
  }
  if (!l.ok) ++failures;
  std::printf("criterion %d %-28s %s  %s (%.2fs)\n", k, name, l.ok ? "PASS" : "FAIL", l.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* key, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s=%.2e ", key, v);
  return buf;
}

double rel(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff()); }

Line clifford_identities() {
  using E = clifford::Element<clifford::Rational>;
  Line l;
  int exact_bad = 0;
  double mat = 0.0, vol = 0.0;
  for (int n = 1; n <= 6; ++n)
    for (int s = 0; s <= n; ++s) {
      Signature sig(n - s, s);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          E x = clifford::geometric_product(E::generator(sig, i), E::generator(sig, j)) +
                clifford::geometric_product(E::generator(sig, j), E::generator(sig, i));
          if (i == j) x = x + E::scalar(sig, clifford::Rational(2 * (i < n - s ? 1 : -1)));
          if (!x.is_zero()) ++exact_bad;
        }
      clifford::SpinorRep rep = clifford::build_spinor_rep(sig);
      const CMat I = CMat::Identity(rep.dim, rep.dim);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          CMat d = rep.gamma[i] * rep.gamma[j] + rep.gamma[j] * rep.gamma[i];
          if (i == j) d += 2.0 * (i < n - s ? 1.0 : -1.0) * I;
          mat = std::max(mat, d.cwiseAbs().maxCoeff());
        }
      // volume element from the generators, eigenvalues against ±i^{s+n(n+1)/2}
      CMat w = I;
      for (int i = 0; i < n; ++i) w = w * rep.gamma[i];
      const std::complex<double> phase = std::pow(std::complex<double>(0, 1), s + n * (n + 1) / 2);
      Eigen::ComplexEigenSolver<CMat> es(w);
      for (int k = 0; k < rep.dim; ++k) {
        auto ev = es.eigenvalues()[k];
        vol = std::max(vol, std::min(std::abs(ev - phase), std::abs(ev + phase)));
      }
    }
  l.detail = "exact_violations=" + std::to_string(exact_bad) + " " + fmt("matrix", mat) + fmt("volume", vol);
  l.need(exact_bad == 0, "blade relation");
  l.need(mat <= tol_matrix, "matrix relation");
  l.need(vol <= tol_volume, "volume eigenvalues");
  return l;
}

Line cylinder_oracle() {
  Line l;
  struct Case {
    std::string family, leaf;
    int n;
  };
  const std::vector<Case> cases{{"static", "round_sphere", 2},     {"warped:exp", "round_sphere", 2},
                                {"warped:cos", "round_sphere", 2}, {"warped:cos", "round_sphere", 3},
                                {"linear", "flat", 2},             {"poly:7", "flat", 2},
                                {"poly:11", "flat", 3}};
  double worst = 0.0, scal_cross = 0.0;
  int identities = 0;
  for (const Case& c : cases) {
    cylinder::MetricFamily fam = catalog::family(c.family, c.leaf, c.n);
    chart::MetricField Z = fam.cylinder_metric();
    for (int k = 0; k < 20; ++k) {
      Vec z = Z.domain().halton(k, 0.02);
      cylinder::CurvatureReport r = cylinder::cylinder_curvature(fam, z[0], z.tail(c.n));
      identities = static_cast<int>(r.identities.size());
      for (auto& [name, v] : r.identities) worst = std::max(worst, v.residual);
      // the oracle side of the scalar identity against a fresh evaluation of the (n+1)-dim chart
      scal_cross = std::max(scal_cross, std::abs(r.identities.at("scal").oracle.at(0) - chart::scalar(Z, z)));
    }
  }
  l.detail = "families=" + std::to_string(cases.size()) + " identities=" + std::to_string(identities) + " " +
             fmt("max", worst) + fmt("scal_cross", scal_cross);
  l.need(identities == 8, "identity count");
  l.need(worst <= tol_cylinder, "identity residual");
  l.need(scal_cross <= 1e-8, "oracle cross-check");
  return l;
}

Line embedding_cases() {
  Line l;
  double worst = 0.0;
  for (const char* name : {"sphere_cone", "sphere_polar", "hyperbolic"}) {
    catalog::EmbeddingCase c = catalog::embedding_case(name);
    auto fam = embedding::constant_curvature_family(c.g, c.A, c.kappa);
    auto cc = embedding::verify_constant_curvature(fam, c.kappa, 20);
    worst = std::max({worst, cc.max_residual, cc.ricci_residual});
  }
  catalog::EmbeddingCase neg = catalog::embedding_case("flat_control");
  embedding::BuildOptions b;
  b.check_preconditions = false;
  auto nfam = embedding::constant_curvature_family(neg.g, neg.A, neg.kappa, b);
  double control = embedding::verify_constant_curvature(nfam, neg.kappa, 20).max_residual;
  l.detail = fmt("max", worst) + fmt("negative_control", control);
  l.need(worst <= tol_embed, "curvature residual");
  l.need(control > tol_negative, "negative control not detected");
  return l;
}

struct SpinCase {
  cylinder::MetricFamily fam;
  std::vector<std::pair<Expr, Expr>> comps;
};

std::vector<SpinCase> spin_cases() {
  const Expr x0 = Expr::coord(0), x1 = Expr::coord(1);
  return {{catalog::family("linear", "flat", 2), {{x1 * x0, 1.0}, {exp(0.2 * x0), x0 * x1 * x1}}},
          {catalog::family("conformal", "round_sphere", 2), {{x1, 1.0}, {exp(0.2 * x0), x0 * x1}}}};
}

Line variation_formula() {
  Line l;
  double worst = 0.0, rmin = 1e300, rmax = 0.0;
  for (const SpinCase& c : spin_cases()) {
    chart::MetricField M = c.fam.slice(0.0);
    auto psi = spin::field_from_exprs(M, spin::leaf_rep(M.signature()), c.comps);
    for (int k = 0; k < 3; ++k) {
      auto v = spin::variation_check(c.fam, psi, 0.0, M.domain().halton(k, 0.05), 0.01);
      worst = std::max(worst, v.residual);
      rmin = std::min(rmin, v.ratio);
      rmax = std::max(rmax, v.ratio);
    }
  }
  l.detail = fmt("max", worst) + fmt("ratio_min", rmin) + fmt("ratio_max", rmax);
  l.need(worst <= tol_variation, "residual");
  l.need(rmin >= ratio_lo && rmax <= ratio_hi, "decay order");
  return l;
}

Line commutator() {
  Line l;
  double worst = 0.0;
  for (const SpinCase& c : spin_cases()) {
    chart::MetricField M = c.fam.slice(0.0);
    auto psi = spin::field_from_exprs(M, spin::leaf_rep(M.signature()), c.comps);
    for (int k = 0; k < 3; ++k)
      worst = std::max(worst, spin::commutator_check(c.fam, psi, 0.0, M.domain().halton(k, 0.05)).residual);
  }
  l.detail = fmt("max", worst);
  l.need(worst <= tol_commutator, "residual");
  return l;
}

Line killing() {
  Line l;
  CVec s0(2);
  s0 << cplx(1.0, 0.2), cplx(-0.3, 0.5);
  chart::MetricField flat = catalog::flat(Signature(2, 0));
  spin::SpinorField constant{flat, spin::leaf_rep(Signature(2, 0)), [s0](const Vec&) { return s0; }};
  embedding::EndoField zero{ExprMatrix(2, 2)};
  auto kf = spin::killing_cylinder_check(flat, zero, constant, 20);
  spin::SpinorField ks = spin::s2_killing_spinor(s0);
  auto kc = spin::killing_cylinder_check(ks.g, {ExprMatrix::identity(2)}, ks, 20);
  embedding::EndoField bad{ExprMatrix(2, 2)};
  bad.A(0, 0) = Expr::coord(1);
  std::string message;
  try {
    spin::killing_cylinder_check(flat, bad, constant, 20);
  } catch (const PreconditionError& e) {
    message = e.what();
  }
  l.detail = fmt("flat", kf.max_residual) + fmt("sphere_cone", kc.max_residual) +
             (message.empty() ? "non_codazzi=accepted" : "non_codazzi=rejected");
  l.need(kf.max_residual <= tol_killing && kc.max_residual <= tol_killing, "residual");
  l.need(message.find("codazzi_residual") != std::string::npos, "non-Codazzi input not rejected with residuals");
  return l;
}

// Independent 2D oracle: eigenvalues of A and an explicit matrix logarithm.
Verdict oracle_2d(const Mat& G0, const Mat& G1, bool& log_ok) {
  Mat A = G0.inverse() * G1;
  Eigen::EigenSolver<Mat> es(A);
  auto ev = es.eigenvalues();
  const double scale = A.cwiseAbs().maxCoeff();
  log_ok = true;
  auto check_log = [&](const Mat& a) {
    log_ok = rel(a.exp(), A) < 1e-9 && (G0 * a - (G0 * a).transpose()).cwiseAbs().maxCoeff() < 1e-8 * std::max(1.0, scale);
  };
  if (std::abs(ev[0].imag()) > 1e-12 * scale) {
    check_log(A.log());
    return Verdict::UniqueSpacelike;
  }
  double l1 = ev[0].real(), l2 = ev[1].real();
  const bool equal = std::abs(l1 - l2) <= 1e-6 * scale;
  if (l1 > 0 && l2 > 0) {
    if (!equal) {
      check_log(A.log());
      return Verdict::UniqueTimelike;
    }
    const bool identity = (A - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9;
    Mat N = A - Mat::Identity(2, 2);
    check_log(identity ? Mat::Zero(2, 2) : Mat(N - 0.5 * N * N));
    return identity ? Verdict::UniqueTimelike : Verdict::UniqueNull;
  }
  // both negative: a real logarithm needs paired Jordan blocks, i.e. A = −λ I
  if (equal && (A + Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9) return Verdict::InfinitelyManySpacelike;
  return Verdict::NoGeodesic;
}

Line lorentz_2d() {
  Line l;
  Rng rng(7);
  int disagree = 0, bad_log = 0;
  for (int k = 0; k < 1000; ++k) {
    auto draw = [&] {
      const double th = rng.uniform(0, 2 * M_PI), d1 = std::exp(rng.uniform(-1, 1)), d2 = std::exp(rng.uniform(-1, 1));
      Mat R(2, 2);
      R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
      Mat D = Vec(Eigen::Vector2d(d1, -d2)).asDiagonal();
      Mat G = R * D * R.transpose() / std::sqrt(d1 * d2);
      return Mat(0.5 * (G + G.transpose()));
    };
    Mat G0 = draw(), G1 = draw();
    bool log_ok = true;
    Verdict want = oracle_2d(G0, G1, log_ok);
    if (lorentz::classify_2d(G0, G1).kind != want) ++disagree;
    if (!log_ok) ++bad_log;
  }
  // constructed branches around g0 = diag(1, −1)
  const Mat g0 = Vec(Eigen::Vector2d(1, -1)).asDiagonal();
  Mat N(2, 2), K(2, 2), I = Mat::Identity(2, 2);
  N << 1, 1, -1, -1;
  K << 0, 1, -1, 0;
  const std::vector<std::pair<Mat, Verdict>> built{
      {g0 * Mat(Vec(Eigen::Vector2d(4, 0.25)).asDiagonal()), Verdict::UniqueTimelike},
      {g0, Verdict::UniqueTimelike},
      {g0 * (I + N), Verdict::UniqueNull},
      {g0 * (std::cos(1.0) * I + std::sin(1.0) * K), Verdict::UniqueSpacelike},
      {g0 * Mat(Vec(Eigen::Vector2d(-2, -0.5)).asDiagonal()), Verdict::NoGeodesic},
      {-g0, Verdict::InfinitelyManySpacelike},
      {-g0 * (I + N), Verdict::NoGeodesic}};
  int branch_bad = 0;
  for (auto& [G1, want] : built) {
    bool ok = true;
    Mat g1 = 0.5 * (G1 + G1.transpose());
    if (lorentz::classify_2d(g0, g1).kind != want || oracle_2d(g0, g1, ok) != want || !ok) ++branch_bad;
  }
  l.detail = "random_disagreements=" + std::to_string(disagree) + " log_failures=" + std::to_string(bad_log) +
             " branch_failures=" + std::to_string(branch_bad);
  l.need(disagree == 0 && bad_log == 0, "random pairs");
  l.need(branch_bad == 0, "constructed branches");
  return l;
}

// Π(t − μ_i) from the eigenvalues of A|_W, ascending coefficients.
std::vector<double> poly_from_eigenvalues(const Mat& M) {
  std::vector<std::complex<double>> c{1.0};
  if (M.rows() > 0) {
    Eigen::EigenSolver<Mat> es(M);
    for (int i = 0; i < M.rows(); ++i) {
      std::vector<std::complex<double>> next(c.size() + 1, 0.0);
      for (std::size_t k = 0; k < c.size(); ++k) {
        next[k + 1] += c[k];
        next[k] -= es.eigenvalues()[i] * c[k];
      }
      c = next;
    }
  }
  std::vector<double> out;
  for (auto z : c) out.push_back(z.real());
  return out;
}

bool lorentzian_signature(const Mat& G) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (G + G.transpose()));
  const auto& ev = es.eigenvalues();
  const double s = ev.cwiseAbs().maxCoeff();
  int neg = 0, zero = 0;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= 1e-12 * s) ++zero;
    else if (ev[i] < 0) ++neg;
  }
  return neg == 1 && zero == 0;
}

Line lorentz_nd() {
  Line l;
  Rng rng(7);
  double car1 = 0.0, normv = 0.0, expres = 0.0;
  int unique = 0, bad_signature = 0;
  for (int k = 0; k < 500; ++k) {
    const int n = 2 + k % 5;
    Mat G0 = lorentz::random_lorentzian(rng, n), G1 = lorentz::random_lorentzian(rng, n);
    auto d = lorentz::spectral_split(G0, G1);
    auto brute = poly_from_eigenvalues(d.AW);
    for (std::size_t i = 0; i < brute.size(); ++i)
      car1 = std::max(car1, std::abs(d.P.at(i) - brute[i]) / std::max(1.0, std::abs(brute[i])));
    for (auto& r : d.roots)
      if (r.value.imag() == 0.0) normv = std::max(normv, lorentz::eigvec_vmu(d, r.value.real()).normv_residual);
    auto v = lorentz::classify_nd(G0, G1);
    if (!lorentz::is_unique(v.kind)) continue;
    ++unique;
    expres = std::max(expres, rel(v.generator->exp(), v.A));
    for (double t : {0.25, 0.5, 0.75, 1.0})
      if (!lorentzian_signature(lorentz::connecting_geodesic(v, t))) ++bad_signature;
  }
  // nilpotent triple root: A = 2(I + x) on a (2,1) block, 3 on the remaining spacelike line
  const Mat g0 = Vec(Eigen::Vector4d(1, 1, 1, -1)).asDiagonal();
  Vec nl = Eigen::Vector4d(0, 1, 0, 1) / std::sqrt(2.0), e = Eigen::Vector4d(0, 0, 1, 0), e1 = Eigen::Vector4d(1, 0, 0, 0);
  Mat x = e * nl.transpose() * g0 + nl * e.transpose() * g0;
  Mat A = 2.0 * (Mat::Identity(4, 4) + x) + e1 * e1.transpose();
  Mat g1 = g0 * A;
  auto nv = lorentz::classify_nd(g0, 0.5 * (g1 + g1.transpose()));
  double poly = 1e300;
  if (nv.kind == Verdict::UniqueNilpotentNull) {
    poly = 0.0;
    for (double t : {-0.5, 0.25, 0.5, 1.0, 1.5}) poly = std::max(poly, rel(lorentz::nilpotent_polynomial(nv, t), g0 * (t * *nv.generator).exp()));
  }
  l.detail = fmt("car1", car1) + fmt("normv", normv) + fmt("exp", expres) + "unique=" + std::to_string(unique) +
             " bad_signature=" + std::to_string(bad_signature) + " nilpotent=" + lorentz::to_string(nv.kind) + " " +
             fmt("polynomial", poly);
  l.need(car1 <= tol_car1, "car1");
  l.need(normv <= tol_normv, "normv");
  l.need(expres <= tol_exp, "exp");
  l.need(bad_signature == 0, "signature along geodesic");
  l.need(poly <= tol_nilpotent, "nilpotent branch");
  return l;
}

Line energy_momentum() {
  Line l;
  double q = 0.0, vol = 0.0;
  for (const CVec& s0 : {CVec(Eigen::Vector2cd(cplx(1, 0.2), cplx(-0.3, 0.5))), CVec(Eigen::Vector2cd(cplx(0, 1), cplx(2, 0)))}) {
    spin::SpinorField psi = spin::s2_killing_spinor(s0);
    for (int k = 0; k < 8; ++k) {
      Vec p = psi.g.domain().halton(k, 0.05);
      const double nn = psi.rep.inner(psi(p), psi(p)).real();
      // A = id, so ¼<X, A Y><ψ,ψ> = ¼ g(X, Y) <ψ,ψ>
      q = std::max(q, (spin::energy_momentum(psi, p) - 0.25 * nn * psi.g(p)).cwiseAbs().maxCoeff());
    }
  }
  for (const char* f : {"static", "warped:exp", "warped:cos", "linear", "poly:7", "conformal"}) {
    auto fam = catalog::family(f, "round_sphere", 2);
    for (int k = 0; k < 4; ++k) {
      Vec z = fam.cylinder_metric().domain().halton(k, 0.05);
      vol = std::max(vol, spin::volume_derivative_residual(fam, z[0], z.tail(2)));
    }
  }
  l.detail = fmt("energy_momentum", q) + fmt("volume_derivative", vol);
  l.need(q <= tol_energy, "energy-momentum");
  l.need(vol <= tol_volume_derivative, "volume derivative");
  return l;
}

}  // namespace

int main() {
  criterion(1, "clifford identities", 10, clifford_identities);
  criterion(2, "cylinder curvature oracle", 120, cylinder_oracle);
  criterion(3, "constant-curvature embedding", 60, embedding_cases);
  criterion(4, "dirac variation formula", 60, variation_formula);
  criterion(5, "normal commutator", 60, commutator);
  criterion(6, "killing spinor cylinders", 60, killing);
  criterion(7, "lorentz 2d classification", 10, lorentz_2d);
  criterion(8, "lorentz nd classification", 60, lorentz_nd);
  criterion(9, "energy-momentum", 60, energy_momentum);
  std::printf("%d criteria failed\n", failures);
  return failures;
}
