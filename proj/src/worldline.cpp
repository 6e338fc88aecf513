#include "lworld/worldline.hpp"

#include <cmath>
#include <numbers>

#include "lworld/errors.hpp"
#include "lworld/quadrature.hpp"

namespace lworld {

namespace {

constexpr double pi = std::numbers::pi;

// Chart rotation for closed curves: when the angle sits within π/8 of a tan
// pole (π/2 + πZ), work in the chart rotated by π/4, where the distance to
// the nearest pole is at least π/8 and |tan| stays below cot(π/8).
double chart_shift(double angle) {
  const double dist = std::abs(std::remainder(angle - 0.5 * pi, pi));
  return dist < pi / 8.0 ? pi / 4.0 : 0.0;
}

// Worldline data localized at one parameter value: component jets and metric
// derivatives in a common chart. For closed angle graphs over a quadratic
// metric the chart is rotated away from tan poles; all downstream quantities
// are invariant under that rotation.
struct Frame {
  Jet3d xj;
  Jet3d yj;
  ConformalMetric eff;
  MetricDerivs md;
};

Frame make_frame(const Worldline& w, const ConformalMetric& m, double tau) {
  if (w.kind() == Worldline::Kind::GraphAngle && m.in_quad_family()) {
    const Jet3d phi = diffeo_jet_angle(w.angle_map(), tau);
    const double dx = chart_shift(tau);
    const double dy = chart_shift(phi.v);
    Jet3d shifted = phi;
    shifted.v -= dy;
    const PairMobius rot{MobiusMap::rotation(dx), MobiusMap::rotation(dy)};
    Frame f{tan_jet(tau - dx), jet_compose(tan_jet(shifted.v), shifted),
            ConformalMetric::quad(transform_quad(MetricQuad(m.quad_matrix()), rot)),
            MetricDerivs{}};
    f.md = f.eff.eval(f.xj.v, f.yj.v);
    return f;
  }
  Frame f{w.x_jet(tau), w.y_jet(tau), m, MetricDerivs{}};
  f.md = f.eff.eval(f.xj.v, f.yj.v);
  return f;
}

double speed_squared(const Frame& f, double tau) {
  const double v = f.md.g * f.xj.d1 * f.yj.d1;
  if (!(v > 1e-8)) throw TimelikeError("worldline velocity is not timelike", v, tau);
  return v;
}

double rho_from_frame(const Frame& f, double tau) {
  speed_squared(f, tau);  // timelike guard
  const double xp = f.xj.d1;
  const double yp = f.yj.d1;
  const double first = (xp * f.yj.d2 - f.xj.d2 * yp) / (std::sqrt(f.md.g) * std::pow(xp * yp, 1.5));
  const double second = (f.md.gx * xp - f.md.gy * yp) / (std::pow(f.md.g, 1.5) * std::sqrt(xp * yp));
  return first - second;
}

}  // namespace

CurveComponent CurveComponent::identity() {
  return CurveComponent();
}

CurveComponent CurveComponent::linear(double p, double q) {
  if (!(p > 0.0)) throw DomainError("linear component needs positive slope");
  CurveComponent c;
  c.kind_ = Kind::Linear;
  c.p_ = p;
  c.q_ = q;
  return c;
}

CurveComponent CurveComponent::exponential() {
  CurveComponent c;
  c.kind_ = Kind::Exponential;
  return c;
}

CurveComponent CurveComponent::power(int n) {
  if (n == 0) throw DomainError("power component needs a nonzero exponent");
  CurveComponent c;
  c.kind_ = Kind::Power;
  c.n_ = n;
  return c;
}

CurveComponent CurveComponent::mobius(const MobiusMap& m) {
  CurveComponent c;
  c.kind_ = Kind::Mobius;
  c.m_ = m;
  return c;
}

CurveComponent CurveComponent::sin_perturbed(double amp, double freq) {
  if (!(freq > 0.0)) throw DomainError("sin perturbation needs positive frequency");
  CurveComponent c;
  c.kind_ = Kind::SinPerturbed;
  c.p_ = amp;
  c.q_ = freq;
  return c;
}

Jet3d CurveComponent::jet(double tau) const {
  switch (kind_) {
    case Kind::Identity:
      return Jet3d::variable(tau);
    case Kind::Linear:
      return affine_jet(p_, q_, tau);
    case Kind::Exponential:
      return exp_jet(tau);
    case Kind::Power:
      return power_jet(n_, tau);
    case Kind::Mobius:
      return mobius_jet(m_, tau);
    case Kind::SinPerturbed: {
      const double a = p_;
      const double w = q_;
      const double s = std::sin(w * tau);
      const double c = std::cos(w * tau);
      return Jet3d{tau + a * s, 1.0 + a * w * c, -a * w * w * s, -a * w * w * w * c};
    }
  }
  throw Error("unreachable curve component kind");
}

Worldline Worldline::graph(const CurveComponent& f) {
  Worldline w;
  w.kind_ = Kind::Graph;
  w.cy_ = f;
  return w;
}

Worldline Worldline::graph_angle(const CircleDiffeo& f) {
  Worldline w;
  w.kind_ = Kind::GraphAngle;
  w.phi_ = std::make_shared<CircleDiffeo>(f);
  return w;
}

Worldline Worldline::explicit_xy(const CurveComponent& x, const CurveComponent& y) {
  Worldline w;
  w.kind_ = Kind::Explicit;
  w.cx_ = x;
  w.cy_ = y;
  return w;
}

Worldline Worldline::reparam(const Worldline& inner, const CurveComponent& h) {
  Worldline w;
  w.kind_ = Kind::Reparam;
  w.inner_ = std::make_shared<Worldline>(inner);
  w.cx_ = h;
  return w;
}

const CircleDiffeo& Worldline::angle_map() const {
  if (kind_ != Kind::GraphAngle || !phi_) {
    throw DomainError("worldline is not an angle graph");
  }
  return *phi_;
}

Jet3d Worldline::x_jet(double tau) const {
  switch (kind_) {
    case Kind::Graph:
    case Kind::Explicit:
      return cx_.jet(tau);
    case Kind::GraphAngle:
      return tan_jet(tau);
    case Kind::Reparam: {
      const Jet3d h = cx_.jet(tau);
      return jet_compose(inner_->x_jet(h.v), h);
    }
  }
  throw Error("unreachable worldline kind");
}

Jet3d Worldline::y_jet(double tau) const {
  switch (kind_) {
    case Kind::Graph:
    case Kind::Explicit:
      return cy_.jet(tau);
    case Kind::GraphAngle: {
      const Jet3d phi = diffeo_jet_angle(*phi_, tau);
      return jet_compose(tan_jet(phi.v), phi);
    }
    case Kind::Reparam: {
      const Jet3d h = cx_.jet(tau);
      return jet_compose(inner_->y_jet(h.v), h);
    }
  }
  throw Error("unreachable worldline kind");
}

double velocity_norm(const Worldline& w, const ConformalMetric& m, double tau) {
  return speed_squared(make_frame(w, m, tau), tau);
}

double proper_time(const Worldline& w, const ConformalMetric& m, double tau0, double tau1,
                   double abs_tol) {
  if (!(tau1 >= tau0)) throw DomainError("proper time interval must be oriented forward");
  auto integrand = [&](double t) -> double {
    try {
      return std::sqrt(velocity_norm(w, m, t));
    } catch (const IntegrationError&) {
      throw;
    } catch (const Error& e) {
      throw IntegrationError(std::string("proper time integrand failed: ") + e.what(), t);
    }
  };
  return integrate(integrand, tau0, tau1, abs_tol);
}

double curvature_formula(const Worldline& w, const ConformalMetric& m, double tau) {
  return rho_from_frame(make_frame(w, m, tau), tau);
}

double curvature_oracle(const Worldline& w, const ConformalMetric& m, double tau) {
  const Frame f = make_frame(w, m, tau);
  const double L = speed_squared(f, tau);
  const Christoffel ch = christoffel(f.eff, f.xj.v, f.yj.v);
  const double xp = f.xj.d1;
  const double yp = f.yj.d1;
  const double ax = f.xj.d2 + ch.x_xx * xp * xp + 2.0 * ch.x_xy * xp * yp + ch.x_yy * yp * yp;
  const double ay = f.yj.d2 + ch.y_xx * xp * xp + 2.0 * ch.y_xy * xp * yp + ch.y_yy * yp * yp;
  const double omega_va = f.md.g * (f.xj.d1 * ay - f.yj.d1 * ax);
  return omega_va / std::pow(L, 1.5);
}

double rho_prime_lhs(const Worldline& w, const ConformalMetric& m, double tau, double h) {
  if (!(h > 0.0)) throw DomainError("finite difference step must be positive");
  auto rho = [&](double t) { return curvature_formula(w, m, t); };
  const double d1 = (8.0 * (rho(tau + h) - rho(tau - h)) - (rho(tau + 2.0 * h) - rho(tau - 2.0 * h))) /
                    (12.0 * h);
  return std::sqrt(velocity_norm(w, m, tau)) * d1;
}

double relative_schwarzian_along(const Worldline& w, const ConformalMetric& m, double tau) {
  const Frame f = make_frame(w, m, tau);
  return relative_schwarzian(f.xj, f.yj, tau).value;
}

double eq7_rhs(const Worldline& w, const ConformalMetric& m, double tau) {
  const Frame f = make_frame(w, m, tau);
  const double rel = relative_schwarzian_value(f.xj, f.yj);
  const double rx = f.md.gx / f.md.g;
  const double ry = f.md.gy / f.md.g;
  const double ex = f.md.gxx / f.md.g - 1.5 * rx * rx;
  const double ey = f.md.gyy / f.md.g - 1.5 * ry * ry;
  return rel + f.yj.d1 * f.yj.d1 * ey - f.xj.d1 * f.xj.d1 * ex;
}

ResidualReport theorem_residual(const Worldline& w, const ConformalMetric& m,
                                const std::vector<double>& tau_samples) {
  if (tau_samples.empty()) throw DomainError("residual scan needs at least one point");
  ResidualReport report;
  report.n_requested = static_cast<int>(tau_samples.size());
  double sumsq = 0.0;
  for (const double tau : tau_samples) {
    try {
      const double lhs = rho_prime_lhs(w, m, tau);
      const double rhs = relative_schwarzian_along(w, m, tau);
      const double r = lhs - rhs;
      report.details.push_back(ResidualPoint{tau, lhs, rhs, r});
      sumsq += r * r;
      if (std::abs(r) >= report.max_abs) {
        report.max_abs = std::abs(r);
        report.worst_tau = tau;
      }
    } catch (const Error&) {
      // point hits a pole, the singular set, or a non-timelike stretch
    }
  }
  report.n_points = static_cast<int>(report.details.size());
  if (report.n_points < 0.8 * report.n_requested) {
    throw DomainError("residual scan lost more than 20% of its sample points");
  }
  report.rms = std::sqrt(sumsq / report.n_points);
  return report;
}

ResidualReport theorem_residual(const Worldline& w, const ConformalMetric& m, double tau0,
                                double tau1, int n_points) {
  if (n_points < 1) throw DomainError("residual scan needs at least one point");
  if (!(tau1 > tau0)) throw DomainError("residual scan interval must be oriented forward");
  std::vector<double> taus;
  taus.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    taus.push_back(tau0 + (i + 0.5) * (tau1 - tau0) / n_points);
  }
  return theorem_residual(w, m, taus);
}

ZeroReport vertices(const Worldline& w, const ConformalMetric& m, int n_grid) {
  if (w.kind() != Worldline::Kind::GraphAngle) {
    throw DomainError("vertex census needs a closed angle-graph worldline");
  }
  if (!m.in_quad_family()) {
    throw DomainError("vertex census needs a metric in the quadratic family");
  }
  auto f = [&](double theta) { return rho_prime_lhs(w, m, theta); };
  return count_zeros_periodic(f, n_grid);
}

}  // namespace lworld
