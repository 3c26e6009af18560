#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gcyl/cylinder.hpp"

namespace gcyl::embedding {

using chart::FdOptions;
using chart::MetricField;
using cylinder::MetricFamily;

double sn(double kappa, double t);
double cs(double kappa, double t);
Expr sn(double kappa, const Expr& t);
Expr cs(double kappa, const Expr& t);

// Endomorphism field A^b_c in coordinates (acts on column vectors).
struct EndoField {
  ExprMatrix A;
  Mat operator()(const Vec& x, double t = 0.0) const { return A.eval(x, t); }
};

// max |g A − (g A)ᵀ| over the 32 validation points, relative to max(1, |gA|).
double symmetry_defect(const MetricField& g, const EndoField& A);

// max over frame pairs of |(∇_X A)Y − (∇_Y A)X|, frame components.
double codazzi_residual(const MetricField& g, const EndoField& A, const Vec& p, const FdOptions& o = {});
// max over frame triples of |R(X,Y)Z − <AY,Z>AX + <AX,Z>AY − κ(<Y,Z>X − <X,Z>Y)|.
double gauss_residual(const MetricField& g, const EndoField& A, double kappa, const Vec& p,
                      const FdOptions& o = {});

struct HypersurfaceData {
  double codazzi = 0.0, gauss = 0.0;  // maxima over the validation points
  int points = 0;
};
HypersurfaceData check_hypersurface_data(const MetricField& g, const EndoField& A, double kappa, int points = 8,
                                         const FdOptions& o = {});

inline constexpr double tau_precondition = 1e-6;

// Symmetric window (−w, w) on which cs_κ(t) Id − sn_κ(t) A stays invertible, from the real
// eigenvalues of A at 32 Halton points of the chart, shrunk by 10%. Capped at max_half_width.
struct Window {
  double half_width = 0.0;
  bool capped = false;
};
Window invertibility_window(const MetricField& g, const EndoField& A, double kappa, double max_half_width = 2.0);

struct BuildOptions {
  bool check_preconditions = true;
  double max_half_width = 2.0;
  int validation_points = 8;
};

// g_t(X,Y) = g((cs_κ(t) id − sn_κ(t) A)² X, Y).
MetricFamily constant_curvature_family(const MetricField& g, const EndoField& A, double kappa,
                                       const BuildOptions& b = {});
// g_t(X,Y) = g((id − tA)² X, Y); only the Codazzi precondition applies.
MetricFamily killing_family(const MetricField& g, const EndoField& A, const BuildOptions& b = {});

struct CurvatureCheck {
  double max_residual = 0.0;  // frame components of R^Z against κ(...)
  double ricci_residual = 0.0;  // ric^Z − nκ g^Z
  int samples = 0;
};
// Samples are Halton points of I × box, pulled inside by the finite-difference margin.
CurvatureCheck verify_constant_curvature(const MetricFamily& fam, double kappa, int samples = 20,
                                         const FdOptions& o = {});

}  // namespace gcyl::embedding
