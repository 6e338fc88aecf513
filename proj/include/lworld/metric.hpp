#pragma once

#include <string>

#include "lworld/projective.hpp"
#include "lworld/types.hpp"

namespace lworld {

// Conformal factor and its partials up to second order at a point.
struct MetricDerivs {
  double g;
  double gx;
  double gy;
  double gxx;
  double gxy;
  double gyy;
};

// Lorentz metric g = dx dy / D(x,y)² with quadratic denominator
// D(x,y) = a·xy + b·x + c·y + d, packed as the matrix ((a, b), (c, d)) so that
// D = (x, 1)·M·(y, 1)ᵀ.
class MetricQuad {
public:
  explicit MetricQuad(const Mat2d& m);

  const Mat2d& matrix() const { return m_; }
  double a() const { return m_(0, 0); }
  double b() const { return m_(0, 1); }
  double c() const { return m_(1, 0); }
  double d() const { return m_(1, 1); }

  double denominator(double x, double y) const;

  // Conformal factor 1/D² with partials; throws SingularityError when
  // |D| ≤ 1e-8.
  MetricDerivs eval(double x, double y) const;

private:
  Mat2d m_;
};

// Conformal Lorentz metric g(x,y)·dx dy on a domain of the (x, y) plane.
class ConformalMetric {
public:
  enum class Kind { Flat, Quad, Custom };

  static ConformalMetric flat();
  static ConformalMetric quad(const Mat2d& m);
  static ConformalMetric quad(const MetricQuad& q);
  // Catalog of non-quadratic factors: "exp_xy" (g = e^{xy}) and
  // "bump" (g = (1 + x² + y²)⁻²).
  static ConformalMetric custom(const std::string& name);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool in_quad_family() const { return kind_ != Kind::Custom; }

  // Matrix of the denominator form; flat reports ((0,0),(0,1)). Throws for
  // custom metrics.
  Mat2d quad_matrix() const;
  const MetricQuad& quad_form() const;

  MetricDerivs eval(double x, double y) const;

private:
  enum class CustomId { ExpXY, Bump };

  ConformalMetric() : q_(Mat2d::Identity()) {}

  Kind kind_ = Kind::Flat;
  std::string name_ = "flat";
  MetricQuad q_;
  CustomId custom_ = CustomId::ExpXY;
};

// Chart defect pair E_x = gxx/g − (3/2)(gx/g)², E_y = gyy/g − (3/2)(gy/g)².
// Both vanish identically on the quadratic family.
struct ExtraTerm {
  double ex;
  double ey;
};

ExtraTerm extra_term(const ConformalMetric& m, double x, double y);

// Levi-Civita symbols of g·dx dy in closed form. The symbols are symmetric in
// the lower indices; the metric's off-diagonal null form leaves only
// Γ^x_{xx} = gx/g and Γ^y_{yy} = gy/g nonzero.
struct Christoffel {
  double x_xx;
  double x_xy = 0.0;
  double x_yy = 0.0;
  double y_xx = 0.0;
  double y_xy = 0.0;
  double y_yy;
};

Christoffel christoffel(const ConformalMetric& m, double x, double y);

// Scalar curvature computed through the full tensor pipeline (metric
// components, generic Levi-Civita symbols, Riemann tensor, double
// contraction). Constant and equal to 8(ad − bc) on the quadratic family.
double scalar_curvature(const ConformalMetric& m, double x, double y);

// Zero locus of the denominator D inside RP¹ × RP¹.
struct SingularSet {
  enum class Type { Graph, Cross };

  Type type = Type::Graph;

  // Graph case: {(x, N·x)} for the projective map with matrix graph_matrix,
  // normalized to |det| = 1. The map reverses orientation when det(M) < 0.
  Mat2d graph_matrix = Mat2d::Identity();
  bool orientation_preserving = true;

  // Cross case: {x0} × RP¹ ∪ RP¹ × {y0}.
  RP1Point vertical_x = RP1Point::infinity();
  RP1Point horizontal_y = RP1Point::infinity();

  // True when both cross components sit over the point at infinity, so the
  // affine chart never meets the singular set.
  bool empty_in_affine_chart = false;

  // The graph map as a projective transformation; requires the
  // orientation-preserving graph case.
  MobiusMap mobius() const;
};

SingularSet singular_set(const MetricQuad& q);

// Denominator matrix of the pullback of g_M under (u, v) ↦ (A(u), B(v)):
// AᵀMB, where A, B act with unit-determinant matrices. Satisfies
// g_new(u,v) = g_M(A(u), B(v))·A'(u)·B'(v).
MetricQuad transform_quad(const MetricQuad& q, const PairMobius& p);

// Normal form of a quadratic denominator under the pair action.
struct NormalFormResult {
  enum class Form { ConstCurv, Flat };

  PairMobius pair;       // transform_quad(q, pair) == canonical
  Form form = Form::ConstCurv;
  double curvature = 0;  // scalar curvature of the metric, 8·det(M)
  Mat2d canonical = Mat2d::Identity();
  double residual = 0;   // max pullback-identity defect over a sample grid
};

NormalFormResult normal_form(const MetricQuad& q);

}  // namespace lworld
