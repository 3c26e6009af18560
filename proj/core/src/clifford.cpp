#include "gcyl/clifford.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace gcyl::clifford {

Signature::Signature(int r_, int s_) : r(r_), s(s_) {
  if (r < 0 || s < 0 || r + s < 1) throw PreconditionError("signature needs r,s >= 0 and r+s >= 1");
  if (r + s > 31) throw PreconditionError("signature dimension above 31 is not supported");
}

std::vector<int> blade_indices(Blade b) {
  std::vector<int> out;
  for (int i = 0; b != 0; ++i, b >>= 1)
    if (b & 1) out.push_back(i + 1);
  return out;
}

cplx i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

namespace {

const cplx I1{0, 1};

CMat pauli(int k) {
  CMat m(2, 2);
  if (k == 1) m << 0, 1, 1, 0;
  else if (k == 2) m << 0, -I1, I1, 0;
  else m << 1, 0, 0, -1;
  return m;
}

// n pairwise anticommuting Hermitian matrices squaring to Id, dimension 2^{n/2}.
std::vector<CMat> hermitian_generators(int n) {
  if (n == 1) return {CMat::Identity(1, 1)};
  if (n == 2) return {pauli(1), pauli(2)};
  if (n % 2 == 1) {
    auto h = hermitian_generators(n - 1);
    CMat p = CMat::Identity(h[0].rows(), h[0].cols());
    for (auto& g : h) p = p * g;
    CMat sq = p * p;
    if (sq.isApprox(-CMat::Identity(p.rows(), p.cols()))) p *= I1;
    h.push_back(p);
    return h;
  }
  auto lower = hermitian_generators(n - 2);
  const int d = static_cast<int>(lower[0].rows());
  std::vector<CMat> h;
  for (auto& g : lower) h.push_back(Eigen::kroneckerProduct(g, pauli(1)).eval());
  CMat id = CMat::Identity(d, d);
  h.push_back(Eigen::kroneckerProduct(id, pauli(2)).eval());
  h.push_back(Eigen::kroneckerProduct(id, pauli(3)).eval());
  return h;
}

CMat product(const std::vector<CMat>& g, int from, int to, int dim) {
  CMat p = CMat::Identity(dim, dim);
  for (int i = from; i < to; ++i) p = p * g[i];
  return p;
}

double adjoint_defect(const std::vector<CMat>& g, const CMat& beta, int sign) {
  double worst = 0;
  for (auto& gi : g) worst = std::max(worst, (gi.adjoint() * beta - sign * beta * gi).norm());
  return worst;
}

// Hermitian beta with γ^† beta = -beta γ when possible: product of the timelike
// gammas (s even) or of the spacelike ones (r odd), phase fixed for self-adjointness.
void attach_beta(SpinorRep& rep) {
  const int r = rep.sig.r, n = rep.sig.n(), d = rep.dim;
  std::vector<CMat> candidates{product(rep.gamma, r, n, d), product(rep.gamma, 0, r, d)};
  for (int sign : {-1, 1}) {
    for (auto& c : candidates) {
      for (cplx ph : {cplx(1, 0), I1}) {
        CMat b = ph * c;
        if ((b - b.adjoint()).norm() > 1e-12) continue;
        if (adjoint_defect(rep.gamma, b, sign) < 1e-12) {
          rep.beta = b;
          rep.vector_adjoint_sign = sign;
          return;
        }
      }
    }
  }
  throw Error("no invariant form found for the constructed spinor module");
}

void attach_volume(SpinorRep& rep) {
  const int n = rep.sig.n();
  rep.volume = product(rep.gamma, 0, n, rep.dim);
  rep.volume_phase = i_power(rep.sig.s + n * (n + 1) / 2);
  CMat id = CMat::Identity(rep.dim, rep.dim);
  if (n % 2 == 0) {
    CMat chi = rep.volume / rep.volume_phase;
    rep.chirality_plus = 0.5 * (id + chi);
    rep.chirality_minus = 0.5 * (id - chi);
    rep.module_label = -1;
  } else {
    rep.module_label = (rep.volume - rep.volume_phase * id).norm() < 1e-9 ? 0 : 1;
  }
}

// Orthonormal basis of the range of a Hermitian projector, columns in pivot order.
CMat range_basis(const CMat& proj) {
  std::vector<CVec> basis;
  for (int j = 0; j < proj.cols(); ++j) {
    CVec v = proj.col(j);
    for (auto& b : basis) v -= b * (b.adjoint() * v)(0, 0);
    double nv = v.norm();
    if (nv > 1e-8) basis.push_back(v / nv);
  }
  CMat out(proj.rows(), static_cast<int>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) out.col(static_cast<int>(j)) = basis[j];
  return out;
}

}  // namespace

CMat SpinorRep::gamma_of(const Vec& v) const {
  CMat out = CMat::Zero(dim, dim);
  for (int i = 0; i < v.size(); ++i) out += v[i] * gamma[i];
  return out;
}

SpinorRep build_spinor_rep(Signature sig) {
  const int n = sig.n();
  SpinorRep rep;
  rep.sig = sig;
  auto h = hermitian_generators(n);
  rep.dim = static_cast<int>(h[0].rows());
  for (int i = 0; i < n; ++i) {
    CMat spacelike = I1 * h[i];                      // squares to -Id
    rep.gamma.push_back(i < sig.r ? spacelike : CMat(I1 * spacelike));  // timelike: squares to +Id
  }
  attach_volume(rep);
  if (n % 2 == 1 && rep.module_label == 1) {
    for (auto& g : rep.gamma) g = -g;
    attach_volume(rep);
  }
  attach_beta(rep);
  rep.embedding = CMat::Identity(rep.dim, rep.dim);
  return rep;
}

SpinorRep hypersurface_restriction(const SpinorRep& big) {
  if (big.sig.r < 1) throw PreconditionError("hypersurface_restriction needs a spacelike e_0");
  if (big.sig.n() < 2) throw PreconditionError("hypersurface_restriction needs ambient dimension >= 2");
  SpinorRep rep;
  rep.sig = Signature(big.sig.r - 1, big.sig.s);
  const int n = rep.sig.n();
  CMat emb = big.sig.n() % 2 == 0 ? range_basis(big.chirality_plus) : CMat::Identity(big.dim, big.dim);
  rep.dim = static_cast<int>(emb.cols());
  for (int i = 1; i <= n; ++i) rep.gamma.push_back(emb.adjoint() * big.gamma[0] * big.gamma[i] * emb);
  attach_volume(rep);
  attach_beta(rep);
  rep.embedding = big.embedding * emb;
  return rep;
}

}  // namespace gcyl::clifford
