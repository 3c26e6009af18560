#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcyl/common.hpp"

namespace gcyl::lorentz {

inline constexpr double tau_tr = 1e-9;       // trace equalities in the 2D picture
inline constexpr double tau_u = 1e-9;        // |u_j| threshold for membership in Δ
inline constexpr double tau_cluster = 1e-7;  // relative radius for merging a pair of roots
inline constexpr double tau_triple = 1e-4;   // triple roots split like ε^{1/3}, so they need a wider radius
inline constexpr double tau_eigen = 1e-9;    // relative gap below which eigenvalues of S are one eigenspace
inline constexpr double tau_generator = 1e-9;

// Symmetric with exactly one negative eigenvalue; throws SignatureMismatch otherwise.
void check_lorentzian(const Mat& G, const std::string& what = "metric");
// G / sqrt|det G|
Mat normalize_unimodular(const Mat& G);

// g1 = g0(A·,·), i.e. A = G0⁻¹ G1.
Mat relating_endomorphism(const Mat& G0, const Mat& G1);
// max of the g0- and g1-symmetry defects of A, relative to the size of the products
double symmetry_residual(const Mat& G, const Mat& A);

// ω(x, y) = scale · det[x y]; g = ω(·, I_g ·).
struct DeSitterPoint {
  Mat I;
  double omega_scale = 1.0;
};
DeSitterPoint to_de_sitter(const Mat& G, double omega_scale = 1.0);
// <I, I'> = ½ tr(I I'), the Lorentzian product on trace-free 2×2 matrices
double de_sitter_product(const DeSitterPoint& a, const DeSitterPoint& b);

enum class Verdict { UniqueTimelike, UniqueNull, UniqueSpacelike, UniqueNilpotentNull, NoGeodesic, InfinitelyManySpacelike };
std::string to_string(Verdict v);
bool is_unique(Verdict v);

struct Block {
  std::string kind;  // "euclidean", "timelike", "null", "spacelike", "nilpotent", "negative", "antipodal"
  int dim = 0;
  std::vector<cplx> eigenvalues;
};

struct ConnectionVerdict {
  Verdict kind = Verdict::NoGeodesic;
  Mat G0, G1, A;
  std::optional<Mat> generator;  // g0-symmetric a with exp(a) = A
  std::string reason;
  std::vector<Block> blocks;
  std::vector<std::string> warnings;
  double exp_residual = 0.0;       // |exp(a) − A| / max(1, |A|), max norm
  double generator_symmetry = 0.0; // g0-symmetry defect of a

  // Antipodal family: a(s, ±) = a_rest + log(scale) Π + π K±(s) on the plane spanned by
  // the g0-orthonormal pair (plane.col(0) spacelike, plane.col(1) timelike).
  Mat plane, a_rest;
  double log_scale = 0.0;
  Mat family_member(double s, int sign = 1) const;

  // Nilpotent branch: A = k(Π + x) on the (2,1) block, x³ = 0, x² ≠ 0; a_rest lives on the complement.
  double k = 0.0;
  Mat x, projector;
};

// 2D classification by the trace of A; inputs must be unimodular.
ConnectionVerdict classify_2d(const Mat& G0, const Mat& G1);

struct Eigenspace {
  double lambda = 0.0;
  Mat Q;      // Euclidean-orthonormal basis, gauge coordinates
  Vec u;      // Π_j u
  bool in_delta = false;
  int dim() const { return static_cast<int>(Q.cols()); }
};

struct Root {
  cplx value;
  int multiplicity = 1;
};

// Everything below is in gauge coordinates y = gauge⁻¹ x, in which g0 = diag(1, …, 1, −1) and
// the Euclidean product is the standard one, so u = e_n and I = diag(1, …, 1, −1).
struct LorentzSpectralData {
  Mat G0, G1;
  Mat gauge;
  Vec u;
  Mat S, A;
  std::vector<Eigenspace> spaces;  // ascending, spaces[0] is λ₀ < 0
  std::vector<int> delta;          // indices into spaces
  int m = 0;
  Mat W;       // n×m, columns u_j/|u_j|
  Mat Etilde;  // n×(n−m)
  Mat AW;      // A|_W in the basis W
  std::vector<double> P, Q, P_brute;  // ascending coefficients
  double car1_residual = 0.0;         // coefficientwise, relative with floor 1
  std::vector<cplx> raw_roots;
  std::vector<Root> roots;            // clustered
  std::vector<std::string> warnings;

  bool zero_in_delta() const;
  double lambda(int j) const { return spaces[j].lambda; }
  double P_at(double t) const;
  double P_prime_at(double t) const;
  double Q_at(double t) const;
};

// Congruence P with Pᵀ G0 P = diag(1, …, 1, −1).
Mat euclidean_gauge(const Mat& G0);
LorentzSpectralData spectral_split(const Mat& G0, const Mat& G1);

// Coefficients of det(t − M), ascending, via the Hessenberg form.
std::vector<double> characteristic_polynomial(const Mat& M);
std::vector<cplx> polynomial_roots(const std::vector<double>& ascending);
double polyval(const std::vector<double>& ascending, double t);

struct VmuResult {
  Vec v;  // gauge coordinates
  double g_norm = 0.0;           // g(v, v)
  double g0_norm = 0.0;          // g0(v, v)
  double formula = 0.0;          // −½ P'(μ)/Q(μ)
  double eigen_residual = 0.0;   // |A v − μ v| / |v|
  double normv_residual = 0.0;   // max(|g − formula|, |g − μ g0|) / max(1, |v|²)
};
VmuResult eigvec_vmu(const LorentzSpectralData& d, double mu);

ConnectionVerdict classify_nd(const Mat& G0, const Mat& G1);
// Dispatches to classify_2d for unimodular 2D input, classify_nd otherwise.
ConnectionVerdict classify(const Mat& G0, const Mat& G1);

// g_t = g0(exp(t a)·,·); the nilpotent branch uses k^t(Π + t x + ½t(t−1)x²) on its block.
// The antipodal family uses its s = 0, + member.
Mat connecting_geodesic(const ConnectionVerdict& v, double t);
Mat nilpotent_polynomial(const ConnectionVerdict& v, double t);
std::vector<Mat> interpolate(const ConnectionVerdict& v, int samples);

// R diag(d) Rᵀ with R Haar-orthogonal, |d_i| in [1/spread, spread], last one negative.
Mat random_lorentzian(Rng& rng, int n, double spread = 2.0);
// Random γ with det γ = ±1 and entries of order one.
Mat random_unimodular(Rng& rng, int n);
// (γ·g)(u, v) = g(γ⁻¹u, γ⁻¹v)
Mat act(const Mat& gamma, const Mat& G);

}  // namespace gcyl::lorentz
