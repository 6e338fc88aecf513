#pragma once

#include <memory>
#include <vector>

#include "lworld/diffeo.hpp"
#include "lworld/jet.hpp"
#include "lworld/metric.hpp"
#include "lworld/projective.hpp"
#include "lworld/schwarzian.hpp"

namespace lworld {

// Scalar component τ ↦ x(τ) of a worldline, differentiable three times.
class CurveComponent {
public:
  enum class Kind { Identity, Linear, Exponential, Power, Mobius, SinPerturbed };

  static CurveComponent identity();                      // τ
  static CurveComponent linear(double p, double q);      // p·τ + q
  static CurveComponent exponential();                   // e^τ
  static CurveComponent power(int n);                    // τⁿ
  static CurveComponent mobius(const MobiusMap& m);      // (ατ+β)/(γτ+δ)
  static CurveComponent sin_perturbed(double amp, double freq);  // τ + amp·sin(freq·τ)

  Kind kind() const { return kind_; }
  Jet3d jet(double tau) const;

private:
  CurveComponent() = default;

  Kind kind_ = Kind::Identity;
  double p_ = 1.0;
  double q_ = 0.0;
  int n_ = 1;
  MobiusMap m_;
};

// Timelike curve τ ↦ (x(τ), y(τ)) in the affine chart of RP¹ × RP¹.
class Worldline {
public:
  enum class Kind { Graph, GraphAngle, Explicit, Reparam };

  // (τ, f(τ)): the graph of f over the x axis.
  static Worldline graph(const CurveComponent& f);

  // Closed curve (tan θ, tan φ(θ)) parametrized by the angle θ; the graph of
  // an orientation-preserving circle map in angle charts.
  static Worldline graph_angle(const CircleDiffeo& f);

  static Worldline explicit_xy(const CurveComponent& x, const CurveComponent& y);

  // Time change: inner curve traversed as τ ↦ inner(h(τ)).
  static Worldline reparam(const Worldline& inner, const CurveComponent& h);

  Kind kind() const { return kind_; }
  const CircleDiffeo& angle_map() const;

  // Component jets in the plain affine chart (no pole-avoiding rotation).
  Jet3d x_jet(double tau) const;
  Jet3d y_jet(double tau) const;

private:
  Worldline() = default;

  Kind kind_ = Kind::Graph;
  CurveComponent cx_ = CurveComponent::identity();
  CurveComponent cy_ = CurveComponent::identity();
  std::shared_ptr<CircleDiffeo> phi_;
  std::shared_ptr<Worldline> inner_;
};

// g(v, v) = g(x,y)·x'·y' at τ. Throws TimelikeError when the squared speed
// falls below 1e-8.
double velocity_norm(const Worldline& w, const ConformalMetric& m, double tau);

// ∫ √g(v,v) dτ over [tau0, tau1]. Failures inside the integrand surface as
// IntegrationError carrying the parameter value.
double proper_time(const Worldline& w, const ConformalMetric& m, double tau0, double tau1,
                   double abs_tol = 1e-10);

// Lorentz curvature of the worldline at τ, closed-form route:
// ρ = (x'y'' − x''y')·g^{-1/2}(x'y')^{-3/2} − (gx·x' − gy·y')·g^{-3/2}(x'y')^{-1/2}.
double curvature_formula(const Worldline& w, const ConformalMetric& m, double tau);

// Same quantity from first principles: covariant acceleration through the
// Levi-Civita symbols and the area form ω = g·dx∧dy,
// ρ = ω(v, ∇_v v)·g(v,v)^{-3/2}. Kept independent of the closed form.
double curvature_oracle(const Worldline& w, const ConformalMetric& m, double tau);

// √g(v,v)·ρ'(τ) with ρ' from a five-point central difference.
double rho_prime_lhs(const Worldline& w, const ConformalMetric& m, double tau, double h = 1e-4);

// S(y)(τ) − S(x)(τ) for the component jets of w, in the frame used by the
// curvature routines.
double relative_schwarzian_along(const Worldline& w, const ConformalMetric& m, double tau);

// Right side of the curvature identity for a general conformal factor:
// S(y) − S(x) + y'²·E_y − x'²·E_x with the chart defects E of the metric.
// The defect terms vanish identically on the quadratic family.
double eq7_rhs(const Worldline& w, const ConformalMetric& m, double tau);

struct ResidualPoint {
  double tau;
  double lhs;
  double rhs;
  double residual;
};

// Pointwise defect of √g(v,v)·ρ' = S(y) − S(x) sampled on [tau0, tau1].
struct ResidualReport {
  int n_requested = 0;
  int n_points = 0;  // points that evaluated without throwing
  double max_abs = 0;
  double rms = 0;
  double worst_tau = 0;
  std::vector<ResidualPoint> details;
};

// Samples the identity defect at the given parameter values. Points where
// evaluation throws are skipped; fewer than 80% usable points is an error.
ResidualReport theorem_residual(const Worldline& w, const ConformalMetric& m,
                                const std::vector<double>& tau_samples);

// Convenience overload sampling n_points midpoints of [tau0, tau1].
ResidualReport theorem_residual(const Worldline& w, const ConformalMetric& m, double tau0,
                                double tau1, int n_points);

// Zero census of ρ' over one period of a closed angle-graph worldline.
// Requires the angle-graph kind and a metric in the quadratic family.
ZeroReport vertices(const Worldline& w, const ConformalMetric& m, int n_grid = 2048);

}  // namespace lworld
