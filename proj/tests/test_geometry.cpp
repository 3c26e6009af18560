#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gcyl/catalog.hpp"
#include "gcyl/cylinder.hpp"
#include "gcyl/embedding.hpp"
#include "gcyl/spin.hpp"

using namespace gcyl;
using clifford::Signature;

TEST_CASE("round spheres have scalar curvature n(n-1)") {
  for (int n : {2, 3, 4}) {
    chart::MetricField g = catalog::round_sphere(n);
    Vec p = g.domain().center();
    CHECK(chart::scalar(g, p) == doctest::Approx(n * (n - 1)).epsilon(1e-7));
    // Einstein: ric = (n-1) g
    CHECK((chart::ricci(g, p) - (n - 1) * g(p)).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("flat space in polar coordinates") {
  // dr² + r² dφ²: Γ^r_φφ = −r, Γ^φ_rφ = 1/r
  chart::MetricField g(Signature(2, 0), chart::Box{{{0.5, 2.0}, {-1.0, 1.0}}},
                       ExprMatrix::from_json(nlohmann::json::parse(R"([[1, 0], [0, "x0^2"]])")));
  Vec p(2);
  p << 1.3, 0.2;
  chart::Christoffel c = chart::christoffel(g, p);
  CHECK(c(0, 1, 1) == doctest::Approx(-1.3).epsilon(1e-8));
  CHECK(c(1, 0, 1) == doctest::Approx(1 / 1.3).epsilon(1e-8));
  CHECK(std::abs(chart::scalar(g, p)) < 1e-7);
}

TEST_CASE("inertia counts") {
  Mat m = Vec(Eigen::Vector3d(2, -1, 0)).asDiagonal();
  chart::Inertia in = chart::inertia(m);
  CHECK(in.positive == 1);
  CHECK(in.negative == 1);
  CHECK(in.zero == 1);
}

TEST_CASE("dt² + cos²t g_S² is the unit 3-sphere") {
  // closed forms of the warped product: W = tan t Id, scal = n(n+1)
  cylinder::MetricFamily fam = catalog::family("warped:cos", "round_sphere", 2);
  Vec p = fam.domain().center();
  for (double t : {-0.3, 0.1, 0.4}) {
    Mat W = cylinder::weingarten(fam, t, p);
    CHECK((W - std::tan(t) * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    cylinder::CurvatureReport r = cylinder::cylinder_curvature(fam, t, p);
    CHECK(r.identities.at("scal").formula.at(0) == doctest::Approx(6.0).epsilon(1e-7));
    CHECK(r.identities.at("scal").oracle.at(0) == doctest::Approx(6.0).epsilon(1e-6));
    CHECK(r.max_residual() < 1e-6);
  }
}

TEST_CASE("every catalog family satisfies the eight identities") {
  for (const char* f : {"static", "warped:exp", "warped:cosh", "linear", "conformal", "poly:3"}) {
    cylinder::MetricFamily fam = catalog::family(f, "round_sphere", 2);
    chart::MetricField Z = fam.cylinder_metric();
    for (int k = 0; k < 5; ++k) {
      Vec z = Z.domain().halton(k, 0.02);
      cylinder::CurvatureReport r = cylinder::cylinder_curvature(fam, z[0], z.tail(2));
      CHECK(r.identities.size() == 8);
      CHECK(r.max_residual() < 1e-4);
    }
  }
}

TEST_CASE("finite-difference time derivatives track the exact ones") {
  nlohmann::json j = nlohmann::json::parse(R"j({"g": [["1 + t*x0^2", "0.1*t"], ["0.1*t", "exp(t)"]]})j");
  chart::Box b{{{-1, 1}, {-1, 1}}};
  ExprMatrix g = ExprMatrix::from_json(j["g"]);
  cylinder::MetricFamily exact(Signature(2, 0), b, {-0.3, 0.3}, g), fd(Signature(2, 0), b, {-0.3, 0.3}, g,
                                                                        cylinder::TimeDerivatives::FiniteDifference);
  Vec p(2);
  p << 0.3, -0.2;
  CHECK((exact.dg(0.1, p) - fd.dg(0.1, p)).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((exact.ddg(0.1, p) - fd.ddg(0.1, p)).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("generalized sine and cosine") {
  CHECK(embedding::sn(1.0, 0.4) == doctest::Approx(std::sin(0.4)));
  CHECK(embedding::cs(1.0, 0.4) == doctest::Approx(std::cos(0.4)));
  CHECK(embedding::sn(-1.0, 0.4) == doctest::Approx(std::sinh(0.4)));
  CHECK(embedding::cs(-1.0, 0.4) == doctest::Approx(std::cosh(0.4)));
  CHECK(embedding::sn(0.0, 0.4) == doctest::Approx(0.4));
  CHECK(embedding::cs(0.0, 0.4) == doctest::Approx(1.0));
  // sn_κ(t) = sin(√κ t)/√κ
  CHECK(embedding::sn(4.0, 0.3) == doctest::Approx(std::sin(0.6) / 2));
}

TEST_CASE("Codazzi residual of diagonal test endomorphisms on flat space") {
  chart::MetricField g = catalog::flat(Signature(2, 0));
  Vec p(2);
  p << 0.2, 0.3;
  embedding::EndoField a{ExprMatrix(2, 2)}, b{ExprMatrix(2, 2)};
  a.A(0, 0) = Expr::coord(1);  // ∂₁A₀₀ ≠ 0 breaks the symmetry of ∇A
  b.A(0, 0) = Expr::coord(0);
  CHECK(embedding::codazzi_residual(g, a, p) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(embedding::codazzi_residual(g, b, p) < 1e-10);
}

TEST_CASE("invertibility windows") {
  catalog::EmbeddingCase cone = catalog::embedding_case("sphere_cone");
  embedding::Window w = embedding::invertibility_window(cone.g, cone.A, cone.kappa);
  // 1 − t vanishes at t = 1; the window stays a tenth inside
  CHECK(w.half_width == doctest::Approx(0.9));
  catalog::EmbeddingCase flat = catalog::embedding_case("flat_control");
  CHECK(embedding::invertibility_window(flat.g, flat.A, 0.0).capped);
}

TEST_CASE("constant-curvature families and the precondition") {
  catalog::EmbeddingCase c = catalog::embedding_case("hyperbolic");
  auto fam = embedding::constant_curvature_family(c.g, c.A, c.kappa);
  CHECK(embedding::verify_constant_curvature(fam, c.kappa, 6).max_residual < 1e-4);
  catalog::EmbeddingCase neg = catalog::embedding_case("flat_control");
  CHECK_THROWS_AS(embedding::constant_curvature_family(neg.g, neg.A, neg.kappa), PreconditionError);
}

TEST_CASE("the S² Killing spinor") {
  CVec s0(2);
  s0 << cplx(1, 0.2), cplx(-0.3, 0.5);
  spin::SpinorField psi = spin::s2_killing_spinor(s0);
  embedding::EndoField id{ExprMatrix::identity(2)};
  for (int k = 0; k < 4; ++k) {
    Vec p = psi.g.domain().halton(k, 0.05);
    CHECK(spin::killing_equation_residual(psi, id, p) < 1e-8);
    // D ψ = Σ e_i•½e_i•ψ = −ψ in dimension 2
    CHECK((spin::dirac(psi, p) + psi(p)).norm() < 1e-7);
  }
  Vec q(2);
  q << std::numbers::pi / 2, 0.0;
  CHECK((psi(q) - s0).norm() < 1e-14);
}

TEST_CASE("spinor curvature matches the Ricci identity on the sphere") {
  chart::MetricField g = catalog::round_sphere(2);
  CHECK(spin::ricci_identity_residual(g, spin::leaf_rep(Signature(2, 0)), g.domain().center()) < 1e-6);
}

TEST_CASE("the Dirac operator is formally self-adjoint pointwise up to a divergence") {
  chart::MetricField g = catalog::round_sphere(2);
  const Expr x0 = Expr::coord(0), x1 = Expr::coord(1);
  auto rep = spin::leaf_rep(Signature(2, 0));
  auto phi = spin::field_from_exprs(g, rep, {{x1, 0.3}, {sin(x0), x1 * x1}});
  auto psi = spin::field_from_exprs(g, rep, {{cos(x1), x0}, {1.0, x0 * x1}});
  CHECK(spin::self_adjointness_residual(phi, psi, g.domain().center()) < 1e-6);
}

TEST_CASE("the variation step is second order") {
  cylinder::MetricFamily fam = catalog::family("linear", "flat", 2);
  const Expr x0 = Expr::coord(0), x1 = Expr::coord(1);
  chart::MetricField M = fam.slice(0.0);
  auto psi = spin::field_from_exprs(M, spin::leaf_rep(M.signature()), {{x1 * x0, 1.0}, {exp(0.2 * x0), x0 * x1 * x1}});
  Vec p(2);
  p << 0.2, -0.1;
  auto v = spin::variation_check(fam, psi, 0.0, p);
  CHECK(v.residual < 1e-4);
  CHECK(v.ratio == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("non-Codazzi data is rejected before any transport") {
  chart::MetricField g = catalog::flat(Signature(2, 0));
  embedding::EndoField a{ExprMatrix(2, 2)};
  a.A(0, 0) = Expr::coord(1);
  CVec s0 = CVec::Ones(2);
  spin::SpinorField psi{g, spin::leaf_rep(Signature(2, 0)), [s0](const Vec&) { return s0; }};
  CHECK_THROWS_AS(spin::killing_cylinder_check(g, a, psi), PreconditionError);
}
