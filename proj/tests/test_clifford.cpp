#include <doctest.h>

#include <map>

#include "gcyl/clifford.hpp"

using namespace gcyl;
using namespace gcyl::clifford;

namespace {

using E = Element<Rational>;

// Product of two blades by moving generators one at a time: the left factor's generators
// are appended to a word, and adjacent equal generators cancel against their square.
std::pair<int, Blade> reduce(Signature sig, Blade a, Blade b) {
  std::vector<int> word;
  for (int i = 0; i < sig.n(); ++i)
    if (a >> i & 1) word.push_back(i);
  for (int i = 0; i < sig.n(); ++i)
    if (b >> i & 1) word.push_back(i);
  int sign = 1;
  // bubble sort, each swap of distinct generators anticommutes
  for (std::size_t pass = 0; pass < word.size(); ++pass)
    for (std::size_t k = 0; k + 1 < word.size(); ++k)
      if (word[k] > word[k + 1]) {
        std::swap(word[k], word[k + 1]);
        sign = -sign;
      }
  Blade out = 0;
  for (std::size_t k = 0; k < word.size();) {
    if (k + 1 < word.size() && word[k] == word[k + 1]) {
      sign *= -sig.eps(word[k]);  // e_i e_i = −ε_i
      k += 2;
    } else {
      out |= Blade{1} << word[k];
      ++k;
    }
  }
  return {sign, out};
}

E random_element(Signature sig, Rng& rng) {
  E e(sig);
  for (Blade b = 0; b < (Blade{1} << sig.n()); ++b)
    if (rng.index(2)) e = e + E::blade(sig, b, Rational(rng.index(7) - 3, 1 + rng.index(3)));
  return e;
}

}  // namespace

TEST_CASE("blade products agree with generator-by-generator reduction") {
  for (int n = 1; n <= 5; ++n)
    for (int s = 0; s <= n; ++s) {
      Signature sig(n - s, s);
      for (Blade a = 0; a < (Blade{1} << n); ++a)
        for (Blade b = 0; b < (Blade{1} << n); ++b) {
          auto [sign, blade] = reduce(sig, a, b);
          E p = geometric_product(E::blade(sig, a), E::blade(sig, b));
          REQUIRE(p.coef(blade) == Rational(sign));
          REQUIRE(blade_sign(sig, a, b) == sign);
        }
    }
}

TEST_CASE("geometric product is associative on random rational elements") {
  Rng rng(3);
  for (Signature sig : {Signature(4, 0), Signature(2, 2), Signature(1, 3)})
    for (int k = 0; k < 10; ++k) {
      E a = random_element(sig, rng), b = random_element(sig, rng), c = random_element(sig, rng);
      CHECK((geometric_product(geometric_product(a, b), c) - geometric_product(a, geometric_product(b, c))).is_zero());
    }
}

TEST_CASE("reflections preserve the inner product") {
  Rng rng(5);
  Signature sig(2, 1);
  for (int k = 0; k < 20; ++k) {
    std::vector<Rational> v(3), w(3);
    for (int i = 0; i < 3; ++i) {
      v[i] = Rational(rng.index(9) - 4);
      w[i] = Rational(rng.index(9) - 4);
    }
    E ve = E::vector(sig, v), we = E::vector(sig, w);
    if (vector_inner(ve, ve) == Rational(0)) {
      CHECK_THROWS_AS(adjoint_action(ve, we), NullVectorError);
      continue;
    }
    E r = adjoint_action(ve, we);
    CHECK(r.is_vector());
    CHECK(vector_inner(r, r) == vector_inner(we, we));
  }
}

TEST_CASE("mixed signatures refuse to multiply") {
  CHECK_THROWS_AS(geometric_product(E::generator(Signature(2, 0), 0), E::generator(Signature(1, 1), 0)), SignatureMismatch);
}

TEST_CASE("spinor module dimensions and volume phases") {
  // i^{s+n(n+1)/2}
  const std::map<std::pair<int, int>, cplx> phase{{{2, 0}, cplx(0, -1)}, {{3, 0}, -1.0},        {{1, 1}, 1.0},
                                                  {{4, 0}, -1.0},        {{3, 1}, cplx(0, -1)}, {{0, 1}, -1.0}};
  for (auto& [rs, ph] : phase) {
    SpinorRep rep = build_spinor_rep(Signature(rs.first, rs.second));
    const int n = rs.first + rs.second;
    CHECK(rep.dim == (1 << (n / 2)));
    CHECK(std::abs(rep.volume_phase - ph) < 1e-15);
  }
}

TEST_CASE("odd dimensions: the volume element acts as the phase on the built module") {
  for (Signature sig : {Signature(3, 0), Signature(2, 1), Signature(4, 1), Signature(1, 4)}) {
    SpinorRep rep = build_spinor_rep(sig);
    CHECK((rep.volume - rep.volume_phase * CMat::Identity(rep.dim, rep.dim)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(rep.module_label == 0);
  }
}

TEST_CASE("chirality projectors commute with even elements and swap under vectors") {
  for (Signature sig : {Signature(2, 0), Signature(4, 0), Signature(3, 1), Signature(2, 2)}) {
    SpinorRep rep = build_spinor_rep(sig);
    const CMat& P = rep.chirality_plus;
    CHECK((P * P - P).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((P + rep.chirality_minus - CMat::Identity(rep.dim, rep.dim)).cwiseAbs().maxCoeff() < 1e-13);
    for (int i = 0; i < sig.n(); ++i) {
      CHECK((rep.gamma[i] * P - rep.chirality_minus * rep.gamma[i]).cwiseAbs().maxCoeff() < 1e-13);
      for (int j = 0; j < sig.n(); ++j) {
        CMat even = rep.gamma[i] * rep.gamma[j];
        CHECK((even * P - P * even).cwiseAbs().maxCoeff() < 1e-13);
      }
    }
  }
}

TEST_CASE("vectors are skew for the invariant form") {
  Rng rng(11);
  for (int n = 1; n <= 6; ++n)
    for (int s = 0; s <= n; ++s) {
      Signature sig(n - s, s);
      SpinorRep rep = build_spinor_rep(sig);
      // no skew form exists for n odd, r even, s odd
      const bool exception = n % 2 == 1 && (n - s) % 2 == 0 && s % 2 == 1;
      CHECK(rep.vector_adjoint_sign == (exception ? 1 : -1));
      CMat b = rep.beta;
      CHECK((b - b.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
      for (int k = 0; k < 3; ++k) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = rng.normal();
        CVec a(rep.dim), c(rep.dim);
        for (int i = 0; i < rep.dim; ++i) {
          a[i] = cplx(rng.normal(), rng.normal());
          c[i] = cplx(rng.normal(), rng.normal());
        }
        const CMat g = rep.gamma_of(v);
        const cplx lhs = rep.inner(g * a, c), rhs = rep.inner(a, g * c);
        CHECK(std::abs(lhs - static_cast<double>(rep.vector_adjoint_sign) * rhs) < 1e-12 * (1 + std::abs(lhs)));
      }
    }
}

TEST_CASE("restriction to a hypersurface satisfies the smaller Clifford relations") {
  for (Signature big : {Signature(3, 0), Signature(4, 0), Signature(3, 1), Signature(6, 0), Signature(2, 2)}) {
    SpinorRep res = hypersurface_restriction(build_spinor_rep(big));
    const Signature& sig = res.sig;
    CHECK(sig.n() == big.n() - 1);
    for (int i = 0; i < sig.n(); ++i)
      for (int j = 0; j < sig.n(); ++j) {
        CMat d = res.gamma[i] * res.gamma[j] + res.gamma[j] * res.gamma[i];
        if (i == j) d += 2.0 * sig.eps(i) * CMat::Identity(res.dim, res.dim);
        CHECK(d.cwiseAbs().maxCoeff() < 1e-12);
      }
    if (sig.n() % 4 == 1) CHECK(res.module_label == 1);  // the restriction is the other odd module here
  }
}
