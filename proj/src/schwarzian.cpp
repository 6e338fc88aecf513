#include "lworld/schwarzian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lworld/errors.hpp"

namespace lworld {

namespace {

constexpr double pi = std::numbers::pi;

// Bisection zero refinement on [a, b] with f(a)·f(b) < 0.
double bisect(const std::function<double(double)>& f, double a, double b, double fa) {
  for (int it = 0; it < 100 && b - a > 1e-12; ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (std::abs(fm) < 1e-10) return mid;
    if (fa * fm < 0.0) {
      b = mid;
    } else {
      a = mid;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

double wrap_period(double theta) {
  double t = std::fmod(theta, pi);
  if (t < 0.0) t += pi;
  return t;
}

}  // namespace

double schwarzian(const Jet3d& j) {
  if (!(std::abs(j.d1) > 1e-12)) {
    throw DomainError("schwarzian needs a jet with nonvanishing first derivative");
  }
  const double r = j.d2 / j.d1;
  return j.d3 / j.d1 - 1.5 * r * r;
}

double relative_schwarzian_value(const Jet3d& jx, const Jet3d& jy) {
  if (!(jx.d1 > 0.0) || !(jy.d1 > 0.0)) {
    throw DomainError("relative schwarzian needs strictly increasing component jets");
  }
  return schwarzian(jy) - schwarzian(jx);
}

QuadDiffSample relative_schwarzian(const Jet3d& jx, const Jet3d& jy, double tau) {
  return QuadDiffSample{Coord::ParamTau, tau, relative_schwarzian_value(jx, jy)};
}

double schwarzian_cocycle_residual(const CircleDiffeo& f, const CircleDiffeo& g, double theta) {
  const Jet3d jg = diffeo_jet_angle(g, theta);
  const Jet3d jf = diffeo_jet_angle(f, jg.v);
  const Jet3d jfg = jet_compose(jf, jg);
  return schwarzian(jfg) - (schwarzian(jf) * jg.d1 * jg.d1 + schwarzian(jg));
}

QuadDiffSample projective_schwarzian(const CircleDiffeo& f, double theta) {
  const Jet3d j = diffeo_jet_angle(f, theta);
  const double value = schwarzian(j) + 2.0 * (j.d1 * j.d1 - 1.0);
  return QuadDiffSample{Coord::AngleTheta, theta, value};
}

double projective_schwarzian_value(const CircleDiffeo& f, double theta) {
  return projective_schwarzian(f, theta).value;
}

ZeroReport count_zeros_periodic(const std::function<double(double)>& f, int n_grid,
                                double refine_tol) {
  const int n = std::max(n_grid, 256);
  if (!(refine_tol > 0.0)) throw DomainError("zero refinement tolerance must be positive");

  std::vector<double> val(static_cast<std::size_t>(n));
  double peak = 0.0;
  for (int i = 0; i < n; ++i) {
    val[static_cast<std::size_t>(i)] = f(pi * static_cast<double>(i) / n);
    peak = std::max(peak, std::abs(val[static_cast<std::size_t>(i)]));
  }

  ZeroReport report;
  if (peak < 1e-9) {
    report.degenerate = true;
    report.min_separation = pi;
    return report;
  }

  auto at = [&](int i) { return val[static_cast<std::size_t>(((i % n) + n) % n)]; };

  std::vector<double> zeros;
  std::vector<double> touches;
  for (int i = 0; i < n; ++i) {
    const double a = pi * static_cast<double>(i) / n;
    const double b = pi * static_cast<double>(i + 1) / n;
    const double fa = at(i);
    const double fb = at(i + 1);

    if (fa == 0.0) {
      // Exact grid-point zero: transverse when the neighbors straddle.
      if (at(i - 1) * fb < 0.0) {
        zeros.push_back(a);
      } else {
        touches.push_back(a);
      }
      continue;
    }
    if (fa * fb < 0.0) {
      zeros.push_back(wrap_period(bisect(f, a, b, fa)));
      continue;
    }
    // Tangential touch: tiny local minimum of |f| without a surrounding sign change.
    if (std::abs(fa) < 1e-9 && std::abs(fa) <= std::abs(at(i - 1)) &&
        std::abs(fa) <= std::abs(fb) && at(i - 1) * fb > 0.0) {
      touches.push_back(a);
    }
  }

  std::sort(zeros.begin(), zeros.end());
  // Circular merge of refinements that landed on the same root.
  std::vector<double> merged;
  for (double z : zeros) {
    if (!merged.empty() && z - merged.back() < 2.0 * refine_tol) continue;
    merged.push_back(z);
  }
  if (merged.size() > 1 && (pi - (merged.back() - merged.front())) < 2.0 * refine_tol) {
    merged.pop_back();
  }

  report.count = static_cast<int>(merged.size());
  report.locations = std::move(merged);
  report.tangential = std::move(touches);
  report.all_simple = report.tangential.empty();
  if (report.count < 2) {
    report.min_separation = pi;
  } else {
    double gap = pi - (report.locations.back() - report.locations.front());
    for (std::size_t i = 1; i < report.locations.size(); ++i) {
      gap = std::min(gap, report.locations[i] - report.locations[i - 1]);
    }
    report.min_separation = gap;
  }
  return report;
}

}  // namespace lworld
