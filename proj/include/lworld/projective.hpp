#pragma once

#include "lworld/jet.hpp"
#include "lworld/types.hpp"

namespace lworld {

// Orientation-preserving projective transformation of RP^1, stored as the
// determinant-1 representative of its PSL(2,R) class.
class MobiusMap {
public:
  MobiusMap();  // identity
  MobiusMap(double alpha, double beta, double gamma, double delta);
  explicit MobiusMap(const Mat2d& m);

  // acts on angles as θ ↦ θ + angle
  static MobiusMap rotation(double angle);

  const Mat2d& matrix() const { return m_; }

  // Affine action (α·x + β)/(γ·x + δ); throws near the pole of the chart.
  double operator()(double x) const;

private:
  Mat2d m_;
};

// Point of RP^1 in homogeneous coordinates (p, q), normalized to p²+q² = 1
// with the sign fixed so q > 0, or q == 0 and p > 0. Affine value is p/q.
struct RP1Point {
  Vec2d h;

  static RP1Point from_homogeneous(double p, double q);
  static RP1Point from_affine(double x);
  static RP1Point from_angle(double theta);
  static RP1Point infinity();

  double p() const { return h(0); }
  double q() const { return h(1); }
  bool at_infinity(double eps = 1e-12) const { return std::abs(q()) <= eps; }
  double affine() const;  // throws DomainError on chart overflow
  double angle() const;   // representative in [0, π)
};

// Independent PSL(2,R) actions on the two factors of RP^1 × RP^1.
struct PairMobius {
  MobiusMap a;
  MobiusMap b;
};

RP1Point mobius_apply(const MobiusMap& m, const RP1Point& pt);
MobiusMap mobius_compose(const MobiusMap& m1, const MobiusMap& m2);  // m1 after m2
MobiusMap mobius_inverse(const MobiusMap& m);
PairMobius pair_compose(const PairMobius& p, const PairMobius& q);
PairMobius pair_inverse(const PairMobius& p);

// Jet of the affine action at x; pole excluded within eps.
Jet3d mobius_jet(const MobiusMap& m, double x, double eps = 1e-12);

// Continuous angle lift φ of the action on RP^1, with φ(θ+π) = φ(θ)+π and
// φ(0) placed in (−π/2, π/2].
double mobius_angle_lift(const MobiusMap& m, double theta);

// Jet of the lift. With (P,Q)(θ) = M·(sin θ, cos θ) and N = P²+Q²:
//   φ' = 1/N,  φ'' = −N'/N²,  φ''' = −N''/N² + 2N'²/N³.
Jet3d mobius_angle_jet(const MobiusMap& m, double theta);

// Jets of the chart transition x = tan θ and its inverse.
enum class ChartDir { ToAffine, ToAngle };
Jet3d angle_chart_jet(ChartDir dir, double value);

}  // namespace lworld
