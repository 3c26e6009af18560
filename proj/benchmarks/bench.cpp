#include <benchmark/benchmark.h>

#include "gcyl/catalog.hpp"
#include "gcyl/clifford.hpp"
#include "gcyl/cylinder.hpp"
#include "gcyl/lorentz.hpp"
#include "gcyl/spin.hpp"

using namespace gcyl;

static void BM_BladeProduct(benchmark::State& st) {
  using E = clifford::Element<clifford::Rational>;
  clifford::Signature sig(static_cast<int>(st.range(0)) - 1, 1);
  E a = E::scalar(sig, 1), b = E::scalar(sig, 2);
  for (int i = 0; i < sig.n(); ++i) {
    a = a + E::generator(sig, i);
    b = geometric_product(b, E::generator(sig, i)) + E::generator(sig, i);
  }
  for (auto _ : st) benchmark::DoNotOptimize(geometric_product(a, b));
}
BENCHMARK(BM_BladeProduct)->Arg(3)->Arg(6);

static void BM_SpinorRep(benchmark::State& st) {
  clifford::Signature sig(static_cast<int>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(clifford::build_spinor_rep(sig));
}
BENCHMARK(BM_SpinorRep)->Arg(3)->Arg(5);

static void BM_CylinderCurvature(benchmark::State& st) {
  auto fam = catalog::family("warped:cos", "round_sphere", static_cast<int>(st.range(0)));
  Vec z = fam.cylinder_metric().domain().center();
  for (auto _ : st) benchmark::DoNotOptimize(cylinder::cylinder_curvature(fam, z[0], z.tail(fam.dim())));
}
BENCHMARK(BM_CylinderCurvature)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

static void BM_VariationCheck(benchmark::State& st) {
  auto fam = catalog::family("conformal", "round_sphere", 2);
  auto M = fam.slice(0.0);
  const Expr x0 = Expr::coord(0), x1 = Expr::coord(1);
  auto psi = spin::field_from_exprs(M, spin::leaf_rep(M.signature()), {{x1, 1.0}, {exp(0.2 * x0), x0 * x1}});
  Vec p = M.domain().center();
  for (auto _ : st) benchmark::DoNotOptimize(spin::variation_check(fam, psi, 0.0, p));
}
BENCHMARK(BM_VariationCheck)->Unit(benchmark::kMillisecond);

static void BM_ClassifyND(benchmark::State& st) {
  Rng rng(7);
  const int n = static_cast<int>(st.range(0));
  std::vector<std::pair<Mat, Mat>> pairs;
  for (int k = 0; k < 64; ++k) pairs.push_back({lorentz::random_lorentzian(rng, n), lorentz::random_lorentzian(rng, n)});
  std::size_t i = 0;
  for (auto _ : st) {
    auto& [a, b] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(lorentz::classify_nd(a, b));
  }
}
BENCHMARK(BM_ClassifyND)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
