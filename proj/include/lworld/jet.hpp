#pragma once

#include <cmath>
#include <numbers>
#include <ostream>

#include "lworld/errors.hpp"

namespace lworld {

// Value and first three derivatives of a scalar function at a point.
// Fields hold derivatives, not Taylor coefficients.
template <class Scalar>
struct Jet3 {
  Scalar v{};
  Scalar d1{};
  Scalar d2{};
  Scalar d3{};

  static constexpr Jet3 constant(Scalar c) { return {c, Scalar(0), Scalar(0), Scalar(0)}; }
  static constexpr Jet3 variable(Scalar x) { return {x, Scalar(1), Scalar(0), Scalar(0)}; }

  friend constexpr Jet3 operator+(const Jet3& a, const Jet3& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
  }
  friend constexpr Jet3 operator-(const Jet3& a, const Jet3& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
  }
  friend constexpr Jet3 operator-(const Jet3& a) { return {-a.v, -a.d1, -a.d2, -a.d3}; }

  // Leibniz rule up to order 3: (fg)''' = f'''g + 3f''g' + 3f'g'' + fg'''.
  friend constexpr Jet3 operator*(const Jet3& a, const Jet3& b) {
    return {a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + Scalar(2) * a.d1 * b.d1 + a.v * b.d2,
            a.d3 * b.v + Scalar(3) * a.d2 * b.d1 + Scalar(3) * a.d1 * b.d2 + a.v * b.d3};
  }

  friend constexpr Jet3 operator*(const Jet3& a, Scalar s) {
    return {a.v * s, a.d1 * s, a.d2 * s, a.d3 * s};
  }
  friend constexpr Jet3 operator*(Scalar s, const Jet3& a) { return a * s; }

  friend std::ostream& operator<<(std::ostream& os, const Jet3& j) {
    return os << "(" << j.v << ", " << j.d1 << ", " << j.d2 << ", " << j.d3 << ")";
  }
};

using Jet3d = Jet3<double>;

template <class Scalar>
bool jet_finite(const Jet3<Scalar>& j) {
  return std::isfinite(j.v) && std::isfinite(j.d1) && std::isfinite(j.d2) && std::isfinite(j.d3);
}

// Quotient h = a/b, solved order by order from h*b = a.
template <class Scalar>
Jet3<Scalar> operator/(const Jet3<Scalar>& a, const Jet3<Scalar>& b) {
  if (b.v == Scalar(0)) throw DomainError("jet division by zero value");
  Jet3<Scalar> h;
  h.v = a.v / b.v;
  h.d1 = (a.d1 - h.v * b.d1) / b.v;
  h.d2 = (a.d2 - Scalar(2) * h.d1 * b.d1 - h.v * b.d2) / b.v;
  h.d3 = (a.d3 - Scalar(3) * h.d2 * b.d1 - Scalar(3) * h.d1 * b.d2 - h.v * b.d3) / b.v;
  if (!jet_finite(h)) throw DomainError("jet division produced a non-finite value");
  return h;
}

template <class Scalar>
Jet3<Scalar> operator/(const Jet3<Scalar>& a, Scalar s) {
  return a / Jet3<Scalar>::constant(s);
}

// Composition (outer ∘ inner) by Faà di Bruno; outer must be the jet of the
// outer function at inner.v:
//   (g∘f)''  = g''·f'² + g'·f''
//   (g∘f)''' = g'''·f'³ + 3·g''·f'·f'' + g'·f'''
template <class Scalar>
constexpr Jet3<Scalar> jet_compose(const Jet3<Scalar>& outer, const Jet3<Scalar>& inner) {
  Jet3<Scalar> r;
  r.v = outer.v;
  r.d1 = outer.d1 * inner.d1;
  r.d2 = outer.d2 * inner.d1 * inner.d1 + outer.d1 * inner.d2;
  r.d3 = outer.d3 * inner.d1 * inner.d1 * inner.d1 +
         Scalar(3) * outer.d2 * inner.d1 * inner.d2 + outer.d1 * inner.d3;
  return r;
}

// Elementary function jets. Each returns (f, f', f'', f''') at x.

inline Jet3d exp_jet(double x) {
  const double e = std::exp(x);
  return {e, e, e, e};
}

inline Jet3d sin_jet(double x) {
  const double s = std::sin(x), c = std::cos(x);
  return {s, c, -s, -c};
}

inline Jet3d cos_jet(double x) {
  const double s = std::sin(x), c = std::cos(x);
  return {c, -s, -c, s};
}

// tan' = 1+t², tan'' = 2t(1+t²), tan''' = (1+t²)(2+6t²)
inline Jet3d tan_jet(double x) {
  if (std::abs(std::cos(x)) < 1e-12) throw DomainError("tan jet at a chart pole");
  const double t = std::tan(x);
  const double s = 1.0 + t * t;
  Jet3d j{t, s, 2.0 * t * s, s * (2.0 + 6.0 * t * t)};
  if (!jet_finite(j)) throw DomainError("tan jet overflow near a chart pole");
  return j;
}

// atan' = 1/(1+x²), atan'' = -2x/(1+x²)², atan''' = (6x²-2)/(1+x²)³
inline Jet3d atan_jet(double x) {
  const double u = 1.0 + x * x;
  return {std::atan(x), 1.0 / u, -2.0 * x / (u * u), (6.0 * x * x - 2.0) / (u * u * u)};
}

// Monomial x^n with integer n; negative n requires x != 0.
inline Jet3d power_jet(int n, double x) {
  if (n < 0 && x == 0.0) throw DomainError("negative power of zero");
  const double dn = static_cast<double>(n);
  Jet3d j{std::pow(x, dn),
          dn * std::pow(x, dn - 1.0),
          dn * (dn - 1.0) * std::pow(x, dn - 2.0),
          dn * (dn - 1.0) * (dn - 2.0) * std::pow(x, dn - 3.0)};
  if (n >= 0) {
    // kill 0^negative artifacts for low-degree monomials at x = 0
    if (n < 1) j.d1 = 0.0;
    if (n < 2) j.d2 = 0.0;
    if (n < 3) j.d3 = 0.0;
  }
  if (!jet_finite(j)) throw DomainError("power jet produced a non-finite value");
  return j;
}

inline Jet3d affine_jet(double p, double q, double x) { return {p * x + q, p, 0.0, 0.0}; }

}  // namespace lworld
