#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "gcyl/lorentz.hpp"

using namespace gcyl;
using namespace gcyl::lorentz;

namespace {

Mat diag(std::initializer_list<double> d) {
  Vec v(static_cast<int>(d.size()));
  int i = 0;
  for (double x : d) v[i++] = x;
  return v.asDiagonal();
}

double maxabs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("de Sitter picture of diag(1, -1)") {
  DeSitterPoint p = to_de_sitter(diag({1, -1}));
  Mat want(2, 2);
  want << 0, 1, 1, 0;
  CHECK(maxabs(p.I - want) < 1e-15);
  CHECK(de_sitter_product(p, p) == doctest::Approx(1.0));
  // ½ tr(I I') is half the trace of the relating endomorphism
  Mat g1 = diag({4, -0.25});
  CHECK(de_sitter_product(p, to_de_sitter(g1)) == doctest::Approx(0.5 * relating_endomorphism(diag({1, -1}), g1).trace()));
}

TEST_CASE("2D verdicts on hand-built pairs") {
  const Mat g0 = diag({1, -1}), I = Mat::Identity(2, 2);
  Mat N(2, 2), K(2, 2);
  N << 1, 1, -1, -1;  // g0-symmetric, N² = 0
  K << 0, 1, -1, 0;   // g0-symmetric, K² = −1
  auto v = classify_2d(g0, diag({4, -0.25}));
  CHECK(v.kind == Verdict::UniqueTimelike);
  CHECK(maxabs(*v.generator - diag({std::log(4.0), -std::log(4.0)})) < 1e-14);
  CHECK(classify_2d(g0, g0).kind == Verdict::UniqueTimelike);
  CHECK(maxabs(*classify_2d(g0, g0).generator) == 0.0);
  v = classify_2d(g0, g0 * (I + N));
  CHECK(v.kind == Verdict::UniqueNull);
  CHECK(maxabs(*v.generator - N) < 1e-14);
  v = classify_2d(g0, g0 * (std::cos(1.0) * I + std::sin(1.0) * K));
  CHECK(v.kind == Verdict::UniqueSpacelike);
  CHECK(maxabs(*v.generator - K) < 1e-12);
  CHECK(classify_2d(g0, diag({-2, 0.5})).kind == Verdict::NoGeodesic);
  v = classify_2d(g0, -g0);
  CHECK(v.kind == Verdict::InfinitelyManySpacelike);
  for (double s : {-1.0, 0.0, 0.7})
    for (int sign : {1, -1}) CHECK(maxabs(v.family_member(s, sign).exp() + I) < 1e-12);
  CHECK(classify_2d(g0, -g0 * (I + N)).kind == Verdict::NoGeodesic);
}

TEST_CASE("2D input must be unimodular and Lorentzian") {
  CHECK_THROWS_AS(classify_2d(diag({1, -1}), diag({2, -1})), PreconditionError);
  CHECK_THROWS_AS(classify(diag({1, 1}), diag({1, -1})), SignatureMismatch);
}

TEST_CASE("characteristic polynomials and roots") {
  auto p = characteristic_polynomial(diag({1, 2, 3}));
  REQUIRE(p.size() == 4);
  CHECK(p[0] == doctest::Approx(-6));
  CHECK(p[1] == doctest::Approx(11));
  CHECK(p[2] == doctest::Approx(-6));
  CHECK(p[3] == doctest::Approx(1));
  Mat m(3, 3);
  m << 2, -1, 0.5, 3, 0, 1, -1, 4, 2;
  auto q = characteristic_polynomial(m);
  // t³ − tr t² + (sum of principal 2-minors) t − det
  const double minors = (2 * 0 - (-1) * 3) + (2 * 2 - 0.5 * -1) + (0 * 2 - 1 * 4);
  CHECK(q[2] == doctest::Approx(-m.trace()));
  CHECK(q[1] == doctest::Approx(minors));
  CHECK(q[0] == doctest::Approx(-m.determinant()));
  auto r = polynomial_roots({2, -3, 1});
  CHECK(r[0].real() == doctest::Approx(1));
  CHECK(r[1].real() == doctest::Approx(2));
  CHECK(polyval({2, -3, 1}, 3.0) == doctest::Approx(2));
}

TEST_CASE("eigenvectors from the secular equation") {
  Rng rng(2);
  for (int k = 0; k < 40; ++k) {
    const int n = 3 + k % 3;
    auto d = spectral_split(random_lorentzian(rng, n), random_lorentzian(rng, n));
    CHECK(d.car1_residual < 1e-10);
    for (auto& r : d.roots)
      if (r.value.imag() == 0.0) {
        auto v = eigvec_vmu(d, r.value.real());
        CHECK(v.eigen_residual < 1e-9);
        CHECK(v.normv_residual < 1e-9);
      }
  }
}

TEST_CASE("eigvec_vmu refuses non-roots") {
  auto d = spectral_split(diag({1, 1, -1}), diag({3, 2, -0.5}));
  CHECK_THROWS_AS(eigvec_vmu(d, 17.0), DomainError);
}

TEST_CASE("0 outside delta, one negative root: the sign of P at the negative eigenvalue") {
  // A = diag(3, −1/2, −2): u has no component in the λ₀ = −1/2 eigenspace of S
  const Mat g0 = diag({1, 1, -1}), g1 = g0 * diag({3, -0.5, -2});
  auto d = spectral_split(g0, g1);
  CHECK_FALSE(d.zero_in_delta());
  CHECK(d.m == 1);
  CHECK(d.P_at(d.lambda(0)) == doctest::Approx(1.5));  // positive, not negative
  auto v = classify_nd(g0, g1);
  CHECK(v.kind == Verdict::NoGeodesic);
}

TEST_CASE("a repeated negative eigenvalue across the timelike direction gives a family") {
  const Mat g0 = diag({1, 1, -1}), A = diag({3, -2, -2});
  auto v = classify_nd(g0, g0 * A);
  REQUIRE(v.kind == Verdict::InfinitelyManySpacelike);
  for (double s : {0.0, 0.4, -1.2})
    for (int sign : {1, -1}) {
      Mat a = v.family_member(s, sign);
      CHECK(maxabs(a.exp() - A) < 1e-12);
      CHECK(maxabs(g0 * a - (g0 * a).transpose()) < 1e-12);
    }
}

TEST_CASE("nilpotent triple root") {
  const Mat g0 = diag({1, 1, -1});
  Vec l = Eigen::Vector3d(1, 0, 1) / std::sqrt(2.0), e = Eigen::Vector3d(0, 1, 0);
  Mat x = e * l.transpose() * g0 + l * e.transpose() * g0;
  REQUIRE(maxabs(x * x * x) < 1e-15);
  Mat g1 = g0 * (2.0 * (Mat::Identity(3, 3) + x));
  auto v = classify_nd(g0, 0.5 * (g1 + g1.transpose()));
  REQUIRE(v.kind == Verdict::UniqueNilpotentNull);
  CHECK(v.k == doctest::Approx(2.0));
  CHECK(maxabs(v.x - x) < 1e-9);
  for (double t : {0.0, 0.3, 1.0, 2.0})
    CHECK(maxabs(nilpotent_polynomial(v, t) - g0 * (t * *v.generator).exp()) < 1e-12);
  // the curve is null: g0-trace of a² vanishes after removing the scale part
  Mat a = *v.generator - std::log(2.0) * Mat::Identity(3, 3);
  CHECK(std::abs((a * a).trace()) < 1e-12);
}

TEST_CASE("verdicts are equivariant under simultaneous change of frame") {
  Rng rng(9);
  for (int k = 0; k < 60; ++k) {
    const int n = 2 + k % 4;
    Mat G0 = random_lorentzian(rng, n), G1 = random_lorentzian(rng, n), gamma = random_unimodular(rng, n);
    auto v = classify_nd(G0, G1), w = classify_nd(act(gamma, G0), act(gamma, G1));
    CHECK(v.kind == w.kind);
    if (v.generator && w.generator) {
      Mat moved = gamma * *v.generator * gamma.inverse();
      CHECK(maxabs(moved - *w.generator) < 1e-7 * std::max(1.0, maxabs(moved)));
    }
  }
}

TEST_CASE("2D and n-dimensional paths agree") {
  Rng rng(4);
  for (int k = 0; k < 200; ++k) {
    Mat G0 = normalize_unimodular(random_lorentzian(rng, 2, 3.0)), G1 = normalize_unimodular(random_lorentzian(rng, 2, 3.0));
    auto a = classify_2d(G0, G1), b = classify_nd(G0, G1);
    CHECK(a.kind == b.kind);
    if (a.generator && b.generator) CHECK(maxabs(*a.generator - *b.generator) < 1e-8);
  }
}

TEST_CASE("interpolation hits both ends and stays Lorentzian") {
  Rng rng(12);
  int checked = 0;
  for (int k = 0; k < 40 && checked < 10; ++k) {
    Mat G0 = random_lorentzian(rng, 4), G1 = random_lorentzian(rng, 4);
    auto v = classify(G0, G1);
    if (!v.generator) continue;
    ++checked;
    auto path = interpolate(v, 7);
    REQUIRE(path.size() == 7);
    CHECK(maxabs(path.front() - G0) < 1e-12);
    CHECK(maxabs(path.back() - G1) < 1e-9 * std::max(1.0, maxabs(G1)));
    for (const Mat& g : path) CHECK_NOTHROW(check_lorentzian(g));
  }
  CHECK(checked > 0);
}
