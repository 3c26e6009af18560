#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gcyl/clifford.hpp"
#include "gcyl/cylinder.hpp"
#include "gcyl/embedding.hpp"

namespace gcyl::spin {

using chart::FdOptions;
using chart::MetricField;
using clifford::SpinorRep;
using cylinder::MetricFamily;

using SpinorFn = std::function<CVec(const Vec&)>;

// Spinor field on a chart, components relative to the Gram-Schmidt frame section.
struct SpinorField {
  MetricField g;
  SpinorRep rep;
  SpinorFn value;
  CVec operator()(const Vec& x) const;
};

// Components given as (re, im) expression pairs in the chart coordinates.
SpinorField field_from_exprs(const MetricField& g, const SpinorRep& rep,
                             const std::vector<std::pair<Expr, Expr>>& components);

// Cl_{r,s} acting through Cl⁰_{r+1,s} on Σ_{r+1,s}, or on Σ⁺_{r+1,s} when r+s+1 is even.
// This is the spinor module used for the leaves of a cylinder.
SpinorRep leaf_rep(clifford::Signature sig);
// Same Clifford action X• = γ(e_0)γ(X) but on the whole ambient spinor space.
SpinorRep bullet_rep(const SpinorRep& ambient);

// γ(X) for a coordinate vector X at the given frame.
CMat clifford_matrix(const SpinorRep& rep, const chart::Frame& f, const Mat& g, const Vec& X);
// Ω(X) = ½ Σ_{j<k} ε_j <∇_X e_j, e_k> ε_k γ_j γ_k, so ∇_X σ = d_X σ + Ω(X) σ.
CMat connection_matrix(const SpinorRep& rep, const chart::FrameConnection& fc, const Vec& X);

struct SpinorJet {
  chart::FrameConnection fc;
  CVec value;
  std::vector<CVec> partial;  // ∂_a σ
  std::vector<CMat> omega;    // Ω(∂_a)
  std::vector<CVec> nabla;    // ∇_{e_i} σ
  CVec along(const Vec& X) const;  // ∇_X σ for a coordinate vector X
};
SpinorJet spinor_jet(const SpinorField& psi, const Vec& p, const FdOptions& o = {});

CVec covariant_derivative(const SpinorField& psi, const Vec& X, const Vec& p, const FdOptions& o = {});
CVec dirac(const SpinorField& psi, const Vec& p, const FdOptions& o = {});
CVec dirac(const SpinorRep& rep, const SpinorJet& jet);

// Pointwise checks on a single chart.
double leibniz_residual(const SpinorField& psi, const std::function<Vec(const Vec&)>& Y, const Vec& X, const Vec& p,
                        const FdOptions& o = {});
double metric_compatibility_residual(const SpinorField& phi, const SpinorField& psi, const Vec& X, const Vec& p,
                                     const FdOptions& o = {});
// R^Σ(∂a,∂b) = ∂_a Ω_b − ∂_b Ω_a + [Ω_a, Ω_b]
CMat spinor_curvature(const MetricField& g, const SpinorRep& rep, const Vec& p, int a, int b, const FdOptions& o = {});
// max_j |Σ_i ε_i e_i · R^Σ(e_i, e_j) − ½ Ric(e_j)·|, operator norm.
double ricci_identity_residual(const MetricField& g, const SpinorRep& rep, const Vec& p, const FdOptions& o = {});
// |div Y − <Dφ,ψ> − s<φ,Dψ>| with <Y,Z> = <Z·φ,ψ> and s the vector adjoint sign of the form.
double self_adjointness_residual(const SpinorField& phi, const SpinorField& psi, const Vec& p, const FdOptions& o = {});

// Parallel transport along t ↦ (t,x) in dt² + g_t, leaf components in the frame section of g_t.
CVec transport_spinor(const MetricFamily& fam, const SpinorRep& rep, const Vec& x, double t0, double t1,
                      const CVec& sigma, const OdeOptions& o = {});
// x ↦ τ_{t0}^{t1} ψ(x) as a field on (M, g_{t1}).
SpinorField transported_field(const MetricFamily& fam, const SpinorField& psi, double t0, double t1,
                              const OdeOptions& o = {});

// Ambient spinor field on the cylinder, (t, x) ↦ components in Σ_{r+1,s}.
struct CylinderSpinor {
  MetricFamily fam;
  SpinorRep ambient;
  std::function<CVec(double, const Vec&)> value;
};
CylinderSpinor cylinder_spinor(const MetricFamily& fam, std::function<CVec(double, const Vec&)> value);

// max_i |∇^Z_{e_i} Φ − ∇^M_{e_i} Φ + ½ ν·W(e_i)·Φ|
double hypersurface_gauss_residual(const CylinderSpinor& phi, double t, const Vec& p, const FdOptions& o = {});
// |ν·D^Z Φ − (D̃^M Φ + (n/2) H Φ − ∇^Z_ν Φ)|
double dirac_gauss_residual(const CylinderSpinor& phi, double t, const Vec& p, const FdOptions& o = {});

struct VariationResult {
  CVec lhs, rhs;
  double step = 0.0;
  double residual = 0.0;       // at step
  double residual_half = 0.0;  // at step/2
  double ratio = 0.0;          // residual / residual_half
};
// d/dt τ_t^{t0} D^{M_t} τ_{t0}^t ψ at t0 (central difference with the given step) against
// −½ 𝔇^ġ ψ + ¼ grad(tr ġ)•ψ − ¼ (div ġ)^♯•ψ. ψ lives on M_{t0} in the rep of the field.
VariationResult variation_check(const MetricFamily& fam, const SpinorField& psi, double t0, const Vec& p,
                                double step = 0.01, const FdOptions& o = {});
CVec variation_rhs(const MetricFamily& fam, const SpinorField& psi, double t0, const Vec& p, const FdOptions& o = {});

struct CommutatorResult {
  CVec lhs, rhs;
  double residual = 0.0;
};
// [∇_ν, D^M] Φ for Φ = τψ, the normal derivative taken with the cylinder's own spin connection,
// against 𝔇^W ψ − (n/2) grad H•ψ + ½ div W•ψ.
CommutatorResult commutator_check(const MetricFamily& fam, const SpinorField& psi, double t0, const Vec& p,
                                  const FdOptions& o = {});

// Q(∂a,∂b) = −¼ Re(<ψ, ∂a•∇_b ψ> + <ψ, ∂b•∇_a ψ>); the full form adds ½ Re<ψ,(D−λ)ψ> g.
Mat energy_momentum(const SpinorField& psi, const Vec& p, const FdOptions& o = {});
Mat energy_momentum_full(const SpinorField& psi, double lambda, const Vec& p, const FdOptions& o = {});
// |d/dt (dV_{g_t}/dV_{g_t0}) − ½ tr_{g_t0} ġ| at t0.
double volume_derivative_residual(const MetricFamily& fam, double t0, const Vec& p);

// max_i |∇_{e_i} ψ − ½ A(e_i)•ψ|
double killing_equation_residual(const SpinorField& psi, const embedding::EndoField& A, const Vec& p,
                                 const FdOptions& o = {});

// Killing spinor of the unit S² (round_sphere(2) chart, leaf_rep(2,0)): ∇_X ψ = ½ X•ψ,
// with ψ = sigma0 at (π/2, 0).
SpinorField s2_killing_spinor(const CVec& sigma0);

struct KillingReport {
  double killing_equation = 0.0;  // precondition, max over validation points
  double codazzi = 0.0;
  double window = 0.0;
  bool window_shrunk = false;
  std::string warning;
  double max_residual = 0.0;  // max |∇^Z_{e_i} Ψ| over spatial frame directions and samples
  int samples = 0;
};
// g_t = g((id − tA)²), Ψ = τ_0^t ψ; samples are Halton points of (−w,w) × box.
KillingReport killing_cylinder_check(const MetricField& g, const embedding::EndoField& A, const SpinorField& psi,
                                     int samples = 20, double t_max = 0.5, const FdOptions& o = {});

}  // namespace gcyl::spin
