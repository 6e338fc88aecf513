#include "lworld/projective.hpp"

#include <cmath>
#include <numbers>

namespace lworld {

namespace {

constexpr double pi = std::numbers::pi;

// (P, Q) = M · (sin θ, cos θ)
Vec2d action_vec(const Mat2d& m, double theta) {
  const double s = std::sin(theta), c = std::cos(theta);
  return {m(0, 0) * s + m(0, 1) * c, m(1, 0) * s + m(1, 1) * c};
}

// Continuous angle swept by θ ↦ atan2(P, Q) between t0 and t1. The action is
// monotone (det = 1 > 0), so over any interval of length ≤ π/2 the true
// increment lies in (−π, π); bisection resolves the atan2 branch.
double angle_increment(const Mat2d& m, double t0, double t1, int depth = 0) {
  const Vec2d u = action_vec(m, t0);
  const Vec2d w = action_vec(m, t1);
  const double dot = u(0) * w(0) + u(1) * w(1);
  const double cross = u(1) * w(0) - u(0) * w(1);
  const double delta = std::atan2(cross, dot);
  if (std::abs(delta) <= pi / 2 || depth >= 60) return delta;
  const double tm = 0.5 * (t0 + t1);
  return angle_increment(m, t0, tm, depth + 1) + angle_increment(m, tm, t1, depth + 1);
}

}  // namespace

MobiusMap::MobiusMap() : m_(Mat2d::Identity()) {}

MobiusMap::MobiusMap(double alpha, double beta, double gamma, double delta)
    : MobiusMap(Mat2d{{alpha, beta}, {gamma, delta}}) {}

MobiusMap::MobiusMap(const Mat2d& m) {
  const double det = m.determinant();
  if (!std::isfinite(det) || det <= 0.0)
    throw DomainError("Mobius map requires a finite matrix with positive determinant");
  m_ = m / std::sqrt(det);
}

MobiusMap MobiusMap::rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return MobiusMap(Mat2d{{c, s}, {-s, c}});
}

double MobiusMap::operator()(double x) const {
  const double w = m_(1, 0) * x + m_(1, 1);
  if (std::abs(w) <= 1e-12) throw DomainError("Mobius affine action at the chart pole");
  return (m_(0, 0) * x + m_(0, 1)) / w;
}

RP1Point RP1Point::from_homogeneous(double p, double q) {
  const double n = std::hypot(p, q);
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("RP1 point requires a nonzero pair");
  p /= n;
  q /= n;
  if (q < 0.0 || (q == 0.0 && p < 0.0)) {
    p = -p;
    q = -q;
  }
  return RP1Point{Vec2d{p, q}};
}

RP1Point RP1Point::from_affine(double x) { return from_homogeneous(x, 1.0); }

RP1Point RP1Point::from_angle(double theta) {
  return from_homogeneous(std::sin(theta), std::cos(theta));
}

RP1Point RP1Point::infinity() { return RP1Point{Vec2d{1.0, 0.0}}; }

double RP1Point::affine() const {
  if (at_infinity()) throw DomainError("affine chart overflow at infinity");
  return p() / q();
}

double RP1Point::angle() const {
  double t = std::atan2(p(), q());
  if (t < 0.0) t += pi;
  if (t >= pi) t -= pi;
  return t;
}

RP1Point mobius_apply(const MobiusMap& m, const RP1Point& pt) {
  const Vec2d w = m.matrix() * pt.h;
  return RP1Point::from_homogeneous(w(0), w(1));
}

MobiusMap mobius_compose(const MobiusMap& m1, const MobiusMap& m2) {
  return MobiusMap(Mat2d(m1.matrix() * m2.matrix()));
}

MobiusMap mobius_inverse(const MobiusMap& m) {
  const Mat2d& a = m.matrix();
  // det-1 inverse: (α β; γ δ)⁻¹ = (δ −β; −γ α)
  return MobiusMap(Mat2d{{a(1, 1), -a(0, 1)}, {-a(1, 0), a(0, 0)}});
}

PairMobius pair_compose(const PairMobius& p, const PairMobius& q) {
  return {mobius_compose(p.a, q.a), mobius_compose(p.b, q.b)};
}

PairMobius pair_inverse(const PairMobius& p) {
  return {mobius_inverse(p.a), mobius_inverse(p.b)};
}

Jet3d mobius_jet(const MobiusMap& m, double x, double eps) {
  const Mat2d& a = m.matrix();
  const double w = a(1, 0) * x + a(1, 1);
  if (std::abs(w) <= eps) throw DomainError("Mobius jet at the chart pole");
  const double g = a(1, 0);
  Jet3d j{(a(0, 0) * x + a(0, 1)) / w,
          1.0 / (w * w),
          -2.0 * g / (w * w * w),
          6.0 * g * g / (w * w * w * w)};
  if (!jet_finite(j)) throw DomainError("Mobius jet overflow near the chart pole");
  return j;
}

double mobius_angle_lift(const MobiusMap& m, double theta) {
  const Mat2d& a = m.matrix();
  double base = std::atan2(a(0, 1), a(1, 1));
  while (base > pi / 2) base -= pi;
  while (base <= -pi / 2) base += pi;
  if (theta == 0.0) return base;
  const int n = std::max(1, static_cast<int>(std::ceil(std::abs(theta) / (pi / 2))));
  double acc = 0.0, prev = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double t = theta * static_cast<double>(i) / static_cast<double>(n);
    acc += angle_increment(a, prev, t);
    prev = t;
  }
  return base + acc;
}

Jet3d mobius_angle_jet(const MobiusMap& m, double theta) {
  const Mat2d& a = m.matrix();
  const double s = std::sin(theta), c = std::cos(theta);
  const double P = a(0, 0) * s + a(0, 1) * c;
  const double Q = a(1, 0) * s + a(1, 1) * c;
  const double Pd = a(0, 0) * c - a(0, 1) * s;
  const double Qd = a(1, 0) * c - a(1, 1) * s;
  const double N = P * P + Q * Q;
  const double Nd = 2.0 * (P * Pd + Q * Qd);
  // P'' = −P and Q'' = −Q, so N'' = 2(P'² + Q'²) − 2N.
  const double Ndd = 2.0 * (Pd * Pd + Qd * Qd) - 2.0 * N;
  return {mobius_angle_lift(m, theta),
          1.0 / N,
          -Nd / (N * N),
          -Ndd / (N * N) + 2.0 * Nd * Nd / (N * N * N)};
}

Jet3d angle_chart_jet(ChartDir dir, double value) {
  return dir == ChartDir::ToAffine ? tan_jet(value) : atan_jet(value);
}

}  // namespace lworld
