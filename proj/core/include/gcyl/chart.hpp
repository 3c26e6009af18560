#pragma once

#include <functional>
#include <type_traits>
#include <utility>
#include <vector>

#include "gcyl/clifford.hpp"
#include "gcyl/common.hpp"
#include "gcyl/expr.hpp"

namespace gcyl::chart {

using clifford::Signature;

struct Inertia {
  int positive = 0, negative = 0, zero = 0;
};
Inertia inertia(const Mat& sym, double rel_tol = 1e-12);

struct Box {
  std::vector<std::pair<double, double>> bounds;

  int dim() const { return static_cast<int>(bounds.size()); }
  double margin_of(const Vec& p) const;  // distance to the nearest face (negative outside)
  // Deterministic Halton point k, shrunk by `margin` from every face.
  Vec halton(int k, double margin = 0.0) const;
  Vec random(Rng& rng, double margin = 0.0) const;
  Vec center() const;
};

struct FdOptions {
  double h = 1e-3;
  bool richardson = true;
};

namespace detail {
template <class T>
auto ev(T&& x) {
  if constexpr (std::is_arithmetic_v<std::decay_t<T>>) return x;
  else return x.eval();
}
}  // namespace detail

// ∂_a f(p) by central differences, optionally with one Richardson level.
template <class F>
auto fd_partial(const F& f, const Vec& p, int a, const FdOptions& o) {
  auto central = [&](double h) {
    Vec pp = p, pm = p;
    pp[a] += h;
    pm[a] -= h;
    return detail::ev((f(pp) - f(pm)) / (2.0 * h));
  };
  if (!o.richardson) return central(o.h);
  auto coarse = central(o.h);
  auto fine = central(0.5 * o.h);
  return detail::ev((4.0 * fine - coarse) / 3.0);
}

// ∂_a ∂_b f(p); f0 = f(p) is passed in to share it across the diagonal stencils.
template <class F, class V>
auto fd_second(const F& f, const V& f0, const Vec& p, int a, int b, const FdOptions& o) {
  auto central = [&](double h) {
    if (a == b) {
      Vec pp = p, pm = p;
      pp[a] += h;
      pm[a] -= h;
      return detail::ev((f(pp) - 2.0 * f0 + f(pm)) / (h * h));
    }
    Vec ppp = p, ppm = p, pmp = p, pmm = p;
    ppp[a] += h, ppp[b] += h;
    ppm[a] += h, ppm[b] -= h;
    pmp[a] -= h, pmp[b] += h;
    pmm[a] -= h, pmm[b] -= h;
    return detail::ev((f(ppp) - f(ppm) - f(pmp) + f(pmm)) / (4.0 * h * h));
  };
  if (!o.richardson) return central(o.h);
  auto coarse = central(o.h);
  auto fine = central(0.5 * o.h);
  return detail::ev((4.0 * fine - coarse) / 3.0);
}

// Semi-Riemannian metric on a coordinate box, given by expressions. Expressions may
// mention the family parameter t; it is frozen at time().
class MetricField {
 public:
  MetricField() = default;
  MetricField(Signature sig, Box domain, ExprMatrix g, bool validate = true);

  int dim() const { return sig_.n(); }
  const Signature& signature() const { return sig_; }
  const Box& domain() const { return domain_; }
  const ExprMatrix& coefficients() const { return g_; }
  double time() const { return t_; }
  MetricField at_time(double t) const;

  Mat operator()(const Vec& x) const { return g_.eval(x.data(), t_); }
  void validate_signature() const;  // 32 Halton points

 private:
  Signature sig_;
  Box domain_;
  ExprMatrix g_;
  double t_ = 0.0;
};

struct MetricJet {
  Mat g, ginv;
  std::vector<Mat> dg;                // dg[a] = ∂_a g
  std::vector<std::vector<Mat>> ddg;  // ddg[a][b]; empty for first-order jets
};

MetricJet metric_jet(const MetricField& g, const Vec& p, int order, const FdOptions& o = {});

// Γ^k_{ij} with ∇_{∂i}∂j = Γ^k_{ij} ∂k.
struct Christoffel {
  int n = 0;
  std::vector<double> data;
  double& operator()(int k, int i, int j) { return data[static_cast<std::size_t>((k * n + i) * n + j)]; }
  double operator()(int k, int i, int j) const { return data[static_cast<std::size_t>((k * n + i) * n + j)]; }
};

// rm(a,b,c,d) = d-th coordinate component of R(∂a,∂b)∂c, R(X,Y) = ∇X∇Y − ∇Y∇X − ∇[X,Y].
struct Riemann {
  int n = 0;
  std::vector<double> data;
  Mat g;
  double& operator()(int a, int b, int c, int d) { return data[idx(a, b, c, d)]; }
  double operator()(int a, int b, int c, int d) const { return data[idx(a, b, c, d)]; }
  double lowered(int a, int b, int c, int d) const;  // <R(∂a,∂b)∂c, ∂d>
  // <R(X,Y)Z, T> for coordinate vectors.
  double apply(const Vec& X, const Vec& Y, const Vec& Z, const Vec& T) const;
  Vec apply(const Vec& X, const Vec& Y, const Vec& Z) const;  // R(X,Y)Z

 private:
  std::size_t idx(int a, int b, int c, int d) const {
    return static_cast<std::size_t>(((a * n + b) * n + c) * n + d);
  }
};

Christoffel christoffel_from_jet(const MetricJet& j);
Riemann riemann_from_jet(const MetricJet& j);
Mat ricci_from_riemann(const Riemann& rm);          // ric(∂b,∂c) = Σ_a (R(∂a,∂b)∂c)^a
double scalar_from_ricci(const Mat& ric, const Mat& ginv);

Christoffel christoffel(const MetricField& g, const Vec& p, const FdOptions& o = {});
Riemann riemann(const MetricField& g, const Vec& p, const FdOptions& o = {});
Mat ricci(const MetricField& g, const Vec& p, const FdOptions& o = {});
double scalar(const MetricField& g, const Vec& p, const FdOptions& o = {});

struct Curvature {
  MetricJet jet;
  Christoffel gamma;
  Riemann rm;
  Mat ric;
  double scal = 0.0;
};
Curvature curvature(const MetricField& g, const Vec& p, const FdOptions& o = {});

// Throws DomainError unless every coordinate of p is at least `margin` inside.
void require_margin(const MetricField& g, const Vec& p, double margin, const char* what);

struct Frame {
  Vec point;
  Mat E;                 // column i = e_i in coordinates
  std::vector<int> eps;  // spacelike first
  // Frame components c with X = Σ c_i e_i.
  Vec components(const Mat& g, const Vec& X) const;
};

inline constexpr double tau_frame = 1e-10;

// Gram-Schmidt over ∂_0, ∂_1, ... in order; spacelike vectors are then moved to
// the front, keeping relative order.
Frame orthonormal_frame(const Mat& g, const Vec& point = Vec());
Frame orthonormal_frame(const MetricField& g, const Vec& p);

// Frame and its connection coefficients at p:
// conn[a](k,j) = ε_k <∇_{∂a} e_j, e_k>, so ∇_X e_j = Σ_k (Σ_a X^a conn[a](k,j)) e_k.
struct FrameConnection {
  Frame frame;
  Mat g;
  Christoffel coord;
  std::vector<Mat> dE;    // ∂_a E
  std::vector<Mat> conn;  // per coordinate direction
  // Γ^k_{ij} = ε_k <∇_{e_i} e_j, e_k>
  double frame_gamma(int k, int i, int j) const;
  Mat along(const Vec& X) const;  // Σ_a X^a conn[a]
};
FrameConnection frame_connection(const MetricField& g, const Vec& p, const FdOptions& o = {});

}  // namespace gcyl::chart
