#include "lworld/quadrature.hpp"

#include <cmath>

#include "lworld/errors.hpp"

namespace lworld {

namespace {

// 15-point Kronrod nodes on [0, 1] side of the symmetric rule; even indices
// are Kronrod-only points, odd indices carry the embedded 7-point Gauss rule.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct GkEstimate {
  double value;
  double error;
};

GkEstimate gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = wg[3] * fc;
  double resk = wgk[7] * fc;
  for (int j = 0; j < 7; ++j) {
    const double f1 = f(center - half * xgk[j]);
    const double f2 = f(center + half * xgk[j]);
    resk += wgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
  }
  return GkEstimate{resk * half, std::abs((resk - resg) * half)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth) {
  if (depth > 50) {
    throw IntegrationError("adaptive quadrature exceeded maximum bisection depth",
                           0.5 * (a + b));
  }
  const GkEstimate e = gk15(f, a, b);
  if (!std::isfinite(e.value)) {
    throw IntegrationError("integrand produced a non-finite value", 0.5 * (a + b));
  }
  if (e.error <= tol) return e.value;
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * tol, depth + 1) + adapt(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  if (!(abs_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (!(a <= b)) throw DomainError("quadrature interval must satisfy a <= b");
  if (a == b) return 0.0;
  return adapt(f, a, b, abs_tol, 0);
}

}  // namespace lworld
