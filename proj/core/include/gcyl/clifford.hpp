#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include <boost/rational.hpp>

#include "gcyl/common.hpp"

namespace gcyl::clifford {

struct Signature {
  int r = 0;
  int s = 0;

  Signature() = default;
  Signature(int r_, int s_);
  int n() const { return r + s; }
  // 0-based generator index: the first r generators are spacelike.
  int eps(int i) const { return i < r ? 1 : -1; }
  bool operator==(const Signature&) const = default;
};

using Blade = std::uint32_t;
using Rational = boost::rational<std::int64_t>;

// Sign of e_A e_B = sign * e_{A xor B}, including the factors e_i e_i = -eps_i.
inline int blade_sign(const Signature& sig, Blade a, Blade b) {
  int swaps = 0;
  for (Blade rest = a >> 1; rest != 0; rest >>= 1) swaps += std::popcount(rest & b);
  int sign = (swaps & 1) ? -1 : 1;
  Blade common = a & b;
  // e_i e_i = -1 for spacelike i, +1 for timelike i.
  Blade spacelike = sig.r >= 32 ? ~Blade{0} : ((Blade{1} << sig.r) - 1);
  if (std::popcount(common & spacelike) & 1) sign = -sign;
  return sign;
}

inline int grade(Blade b) { return std::popcount(b); }

// Finite linear combination of basis blades; bit i of a blade is generator e_{i+1}.
template <class S>
class Element {
 public:
  explicit Element(Signature sig) : sig_(sig) {}

  static Element scalar(Signature sig, S c) {
    Element e(sig);
    e.add(0, c);
    return e;
  }
  static Element generator(Signature sig, int i) {
    Element e(sig);
    e.add(Blade{1} << i, S(1));
    return e;
  }
  static Element blade(Signature sig, Blade b, S c = S(1)) {
    Element e(sig);
    e.add(b, c);
    return e;
  }
  static Element vector(Signature sig, const std::vector<S>& comps) {
    Element e(sig);
    for (std::size_t i = 0; i < comps.size(); ++i) e.add(Blade{1} << i, comps[i]);
    return e;
  }

  const Signature& signature() const { return sig_; }
  const std::map<Blade, S>& terms() const { return terms_; }
  S coef(Blade b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? S(0) : it->second;
  }
  void add(Blade b, S c) {
    if (c == S(0)) return;
    auto [it, fresh] = terms_.emplace(b, c);
    if (!fresh) {
      it->second += c;
      if (it->second == S(0)) terms_.erase(it);
    }
  }
  bool is_zero() const { return terms_.empty(); }
  bool is_even() const {
    for (auto& [b, c] : terms_)
      if (grade(b) & 1) return false;
    return true;
  }
  bool is_vector() const {
    for (auto& [b, c] : terms_)
      if (grade(b) != 1) return false;
    return true;
  }
  std::vector<S> vector_components() const {
    std::vector<S> v(sig_.n(), S(0));
    for (auto& [b, c] : terms_)
      if (grade(b) == 1) v[std::countr_zero(b)] = c;
    return v;
  }

  Element operator+(const Element& o) const {
    check(o);
    Element out = *this;
    for (auto& [b, c] : o.terms_) out.add(b, c);
    return out;
  }
  Element operator-(const Element& o) const { return *this + o * S(-1); }
  Element operator*(S c) const {
    Element out(sig_);
    for (auto& [b, v] : terms_) out.add(b, v * c);
    return out;
  }
  bool operator==(const Element& o) const { return sig_ == o.sig_ && terms_ == o.terms_; }

  void check(const Element& o) const {
    if (!(sig_ == o.sig_)) throw SignatureMismatch("clifford elements of different signatures");
  }

 private:
  Signature sig_;
  std::map<Blade, S> terms_;
};

template <class S>
Element<S> geometric_product(const Element<S>& a, const Element<S>& b) {
  a.check(b);
  Element<S> out(a.signature());
  for (auto& [ba, ca] : a.terms())
    for (auto& [bb, cb] : b.terms()) {
      S c = ca * cb;
      out.add(ba ^ bb, blade_sign(a.signature(), ba, bb) < 0 ? -c : c);
    }
  return out;
}

template <class S>
S vector_inner(const Element<S>& v, const Element<S>& w) {
  v.check(w);
  auto a = v.vector_components(), b = w.vector_components();
  S acc(0);
  for (int i = 0; i < v.signature().n(); ++i) acc += S(v.signature().eps(i)) * a[i] * b[i];
  return acc;
}

// v^{-1} w v for a non-null vector v, evaluated as a triple product.
template <class S>
Element<S> adjoint_action(const Element<S>& v, const Element<S>& w) {
  if (!v.is_vector() || !w.is_vector()) throw PreconditionError("adjoint_action expects grade-1 arguments");
  S q = vector_inner(v, v);
  if (q == S(0)) throw NullVectorError("adjoint_action: v is null");
  Element<S> vinv = v * (S(-1) / q);
  return geometric_product(geometric_product(vinv, w), v);
}

template <class S>
Element<S> volume_element(Signature sig) {
  return Element<S>::blade(sig, sig.n() >= 32 ? ~Blade{0} : ((Blade{1} << sig.n()) - 1));
}

// Indices of a blade, 1-based, increasing.
std::vector<int> blade_indices(Blade b);

// Matrix spinor module.
struct SpinorRep {
  Signature sig;
  int dim = 0;
  std::vector<CMat> gamma;  // gamma[i] = γ(e_{i+1})
  CMat volume;
  cplx volume_phase;        // i^{s+n(n+1)/2}
  CMat chirality_plus;      // n even only
  CMat chirality_minus;
  int module_label = -1;    // n odd: 0 or 1 according to the volume eigenvalue
  CMat beta;
  // -1 when <γ(v)a,b> = -<a,γ(v)b>. A few odd signatures (r even, s odd) admit no
  // such form; there the symmetric one is used and this is +1.
  int vector_adjoint_sign = -1;
  CMat embedding;  // ambient spinor space <- this space; identity unless restricted

  CMat gamma_of(const Vec& v) const;  // Σ v_i γ_i, v in frame components
  cplx inner(const CVec& a, const CVec& b) const { return (a.adjoint() * beta * b)(0, 0); }
};

SpinorRep build_spinor_rep(Signature sig);

// Cl_{r,s} acting through γ_res(v) = γ(e_0)γ(v) on the spinors of Cl_{r+1,s}
// (positive chirality half when the ambient dimension is even).
SpinorRep hypersurface_restriction(const SpinorRep& big);

cplx i_power(int k);

template <class S>
CMat represent(const SpinorRep& rep, const Element<S>& a) {
  CMat out = CMat::Zero(rep.dim, rep.dim);
  for (auto& [b, c] : a.terms()) {
    CMat m = CMat::Identity(rep.dim, rep.dim);
    for (int idx : blade_indices(b)) m = m * rep.gamma[idx - 1];
    out += static_cast<double>(c) * m;
  }
  return out;
}

template <>
inline CMat represent(const SpinorRep& rep, const Element<Rational>& a) {
  CMat out = CMat::Zero(rep.dim, rep.dim);
  for (auto& [b, c] : a.terms()) {
    CMat m = CMat::Identity(rep.dim, rep.dim);
    for (int idx : blade_indices(b)) m = m * rep.gamma[idx - 1];
    out += boost::rational_cast<double>(c) * m;
  }
  return out;
}

template <class S>
CVec act(const SpinorRep& rep, const Element<S>& a, const CVec& sigma) {
  if (!(a.signature() == rep.sig)) throw SignatureMismatch("act: element and representation signatures differ");
  if (sigma.size() != rep.dim) throw PreconditionError("act: spinor dimension mismatch");
  return represent(rep, a) * sigma;
}

}  // namespace gcyl::clifford
