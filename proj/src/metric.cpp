#include "lworld/metric.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "lworld/errors.hpp"

namespace lworld {

namespace {

bool finite2x2(const Mat2d& m) {
  return m.allFinite();
}

// Rank split of the denominator matrix via singular values; the pair (u, v)
// spans the factorization M = σ₁·u·vᵀ in the rank-one case, sign-pinned so
// the dominant entry of u is positive.
struct SvdSplit {
  double s1;
  double s2;
  Vec2d u;
  Vec2d v;
};

SvdSplit svd_split(const Mat2d& m) {
  Eigen::JacobiSVD<Mat2d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdSplit out;
  out.s1 = svd.singularValues()(0);
  out.s2 = svd.singularValues()(1);
  out.u = svd.matrixU().col(0);
  out.v = svd.matrixV().col(0);
  const int idx = std::abs(out.u(0)) >= std::abs(out.u(1)) ? 0 : 1;
  if (out.u(idx) < 0.0) {
    out.u = -out.u;
    out.v = -out.v;
  }
  return out;
}

bool rank_one(const SvdSplit& s) {
  return s.s2 <= 1e-10 * s.s1;
}

// Rotation sending the unit vector û to (0, 1).
Mat2d align_to_e2(const Vec2d& u_hat) {
  Mat2d g;
  g << u_hat(1), -u_hat(0), u_hat(0), u_hat(1);
  return g;
}

}  // namespace

MetricQuad::MetricQuad(const Mat2d& m) : m_(m) {
  if (!finite2x2(m)) throw DomainError("metric matrix must have finite entries");
  if (!(m.norm() > 0.0)) throw DomainError("metric matrix must be nonzero");
}

double MetricQuad::denominator(double x, double y) const {
  return a() * x * y + b() * x + c() * y + d();
}

MetricDerivs MetricQuad::eval(double x, double y) const {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError("metric evaluation needs finite coordinates");
  }
  const double D = denominator(x, y);
  if (std::abs(D) <= 1e-8) {
    throw SingularityError("metric denominator vanishes", std::abs(D), x, y);
  }
  const double dx = a() * y + b();
  const double dy = a() * x + c();
  const double i2 = 1.0 / (D * D);
  const double i3 = i2 / D;
  const double i4 = i2 * i2;
  MetricDerivs out;
  out.g = i2;
  out.gx = -2.0 * dx * i3;
  out.gy = -2.0 * dy * i3;
  out.gxx = 6.0 * dx * dx * i4;
  out.gyy = 6.0 * dy * dy * i4;
  out.gxy = -2.0 * a() * i3 + 6.0 * dx * dy * i4;
  return out;
}

ConformalMetric ConformalMetric::flat() {
  ConformalMetric m;
  m.kind_ = Kind::Flat;
  m.name_ = "flat";
  return m;
}

ConformalMetric ConformalMetric::quad(const Mat2d& m) {
  return quad(MetricQuad(m));
}

ConformalMetric ConformalMetric::quad(const MetricQuad& q) {
  ConformalMetric m;
  m.kind_ = Kind::Quad;
  m.name_ = "quad";
  m.q_ = q;
  return m;
}

ConformalMetric ConformalMetric::custom(const std::string& name) {
  ConformalMetric m;
  m.kind_ = Kind::Custom;
  m.name_ = name;
  if (name == "exp_xy") {
    m.custom_ = CustomId::ExpXY;
  } else if (name == "bump") {
    m.custom_ = CustomId::Bump;
  } else {
    throw DomainError("unknown custom metric: " + name);
  }
  return m;
}

Mat2d ConformalMetric::quad_matrix() const {
  switch (kind_) {
    case Kind::Flat: {
      Mat2d m;
      m << 0, 0, 0, 1;
      return m;
    }
    case Kind::Quad:
      return q_.matrix();
    case Kind::Custom:
      break;
  }
  throw DomainError("metric '" + name_ + "' has no quadratic denominator");
}

const MetricQuad& ConformalMetric::quad_form() const {
  if (kind_ != Kind::Quad) throw DomainError("metric '" + name_ + "' is not stored as a quad form");
  return q_;
}

MetricDerivs ConformalMetric::eval(double x, double y) const {
  switch (kind_) {
    case Kind::Flat:
      if (!std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("metric evaluation needs finite coordinates");
      }
      return MetricDerivs{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    case Kind::Quad:
      return q_.eval(x, y);
    case Kind::Custom:
      break;
  }
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError("metric evaluation needs finite coordinates");
  }
  if (custom_ == CustomId::ExpXY) {
    const double g = std::exp(x * y);
    return MetricDerivs{g, y * g, x * g, y * y * g, (1.0 + x * y) * g, x * x * g};
  }
  // bump: g = u⁻² with u = 1 + x² + y²
  const double u = 1.0 + x * x + y * y;
  const double i3 = 1.0 / (u * u * u);
  const double i4 = i3 / u;
  MetricDerivs out;
  out.g = 1.0 / (u * u);
  out.gx = -4.0 * x * i3;
  out.gy = -4.0 * y * i3;
  out.gxx = -4.0 * i3 + 24.0 * x * x * i4;
  out.gyy = -4.0 * i3 + 24.0 * y * y * i4;
  out.gxy = 24.0 * x * y * i4;
  return out;
}

ExtraTerm extra_term(const ConformalMetric& m, double x, double y) {
  const MetricDerivs d = m.eval(x, y);
  const double rx = d.gx / d.g;
  const double ry = d.gy / d.g;
  return ExtraTerm{d.gxx / d.g - 1.5 * rx * rx, d.gyy / d.g - 1.5 * ry * ry};
}

Christoffel christoffel(const ConformalMetric& m, double x, double y) {
  const MetricDerivs d = m.eval(x, y);
  return Christoffel{.x_xx = d.gx / d.g, .y_yy = d.gy / d.g};
}

double scalar_curvature(const ConformalMetric& m, double x, double y) {
  const MetricDerivs d = m.eval(x, y);

  // Metric components in the (x, y) chart: ds² = g·dx dy.
  double lower[2][2] = {{0.0, 0.5 * d.g}, {0.5 * d.g, 0.0}};
  double dL[2][2][2];   // dL[k][i][j] = ∂_k g_{ij}
  double ddL[2][2][2][2];
  const double dg[2] = {d.gx, d.gy};
  const double ddg[2][2] = {{d.gxx, d.gxy}, {d.gxy, d.gyy}};
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        dL[k][i][j] = (i != j) ? 0.5 * dg[k] : 0.0;
        for (int l = 0; l < 2; ++l) ddL[k][l][i][j] = (i != j) ? 0.5 * ddg[k][l] : 0.0;
      }
    }
  }

  const double det = lower[0][0] * lower[1][1] - lower[0][1] * lower[1][0];
  double inv[2][2] = {{lower[1][1] / det, -lower[0][1] / det},
                      {-lower[1][0] / det, lower[0][0] / det}};

  // ∂_k g^{ab} = −g^{ai} (∂_k g_{ij}) g^{jb}
  double dInv[2][2][2];
  for (int k = 0; k < 2; ++k) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        double s = 0.0;
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) s += inv[a][i] * dL[k][i][j] * inv[j][b];
        }
        dInv[k][a][b] = -s;
      }
    }
  }

  double gam[2][2][2];   // gam[r][m][n] = Γ^r_{mn}
  double dGam[2][2][2][2];
  for (int r = 0; r < 2; ++r) {
    for (int mu = 0; mu < 2; ++mu) {
      for (int nu = 0; nu < 2; ++nu) {
        double s = 0.0;
        for (int sg = 0; sg < 2; ++sg) {
          s += inv[r][sg] * (dL[mu][nu][sg] + dL[nu][mu][sg] - dL[sg][mu][nu]);
        }
        gam[r][mu][nu] = 0.5 * s;
        for (int k = 0; k < 2; ++k) {
          double t = 0.0;
          for (int sg = 0; sg < 2; ++sg) {
            t += dInv[k][r][sg] * (dL[mu][nu][sg] + dL[nu][mu][sg] - dL[sg][mu][nu]);
            t += inv[r][sg] * (ddL[k][mu][nu][sg] + ddL[k][nu][mu][sg] - ddL[k][sg][mu][nu]);
          }
          dGam[k][r][mu][nu] = 0.5 * t;
        }
      }
    }
  }

  // R^r_{s mu nu} = ∂_mu Γ^r_{nu s} − ∂_nu Γ^r_{mu s} + Γ^r_{mu l}Γ^l_{nu s} − Γ^r_{nu l}Γ^l_{mu s}
  double ricci[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  for (int s = 0; s < 2; ++s) {
    for (int nu = 0; nu < 2; ++nu) {
      double acc = 0.0;
      for (int r = 0; r < 2; ++r) {
        const int mu = r;
        double rie = dGam[mu][r][nu][s] - dGam[nu][r][mu][s];
        for (int l = 0; l < 2; ++l) {
          rie += gam[r][mu][l] * gam[l][nu][s] - gam[r][nu][l] * gam[l][mu][s];
        }
        acc += rie;
      }
      ricci[s][nu] = acc;
    }
  }

  double scal = 0.0;
  for (int s = 0; s < 2; ++s) {
    for (int nu = 0; nu < 2; ++nu) scal += inv[s][nu] * ricci[s][nu];
  }
  return scal;
}

MobiusMap SingularSet::mobius() const {
  if (type != Type::Graph) throw DomainError("singular set is a cross, not a graph");
  if (!orientation_preserving) {
    throw DomainError("singular graph reverses orientation and is not projective");
  }
  return MobiusMap(graph_matrix);
}

SingularSet singular_set(const MetricQuad& q) {
  const SvdSplit s = svd_split(q.matrix());
  SingularSet out;
  if (rank_one(s)) {
    // D = (u₀x + u₁)(v₀y + v₁) up to scale
    out.type = SingularSet::Type::Cross;
    out.vertical_x = RP1Point::from_homogeneous(-s.u(1), s.u(0));
    out.horizontal_y = RP1Point::from_homogeneous(-s.v(1), s.v(0));
    out.empty_in_affine_chart = out.vertical_x.at_infinity() && out.horizontal_y.at_infinity();
    return out;
  }
  // Solving D = 0 for y: y = −(bx + d)/(ax + c), the projective map with
  // matrix ((−b, −d), (a, c)); its determinant equals det(M).
  Mat2d n;
  n << -q.b(), -q.d(), q.a(), q.c();
  const double det = n.determinant();
  out.type = SingularSet::Type::Graph;
  out.graph_matrix = n / std::sqrt(std::abs(det));
  out.orientation_preserving = det > 0.0;
  return out;
}

MetricQuad transform_quad(const MetricQuad& q, const PairMobius& p) {
  return MetricQuad(p.a.matrix().transpose() * q.matrix() * p.b.matrix());
}

NormalFormResult normal_form(const MetricQuad& q) {
  const Mat2d& m = q.matrix();
  const SvdSplit s = svd_split(m);
  NormalFormResult out;

  Mat2d a_t;  // matrix of the left action, transposed
  Mat2d b;
  if (rank_one(s)) {
    out.form = NormalFormResult::Form::Flat;
    out.curvature = 0.0;
    const double scale = s.s1;  // ‖σ₁·u‖ for unit u
    Mat2d du;
    du << scale, 0, 0, 1.0 / scale;
    a_t = du * align_to_e2(s.u);
    b = align_to_e2(s.v).transpose();
    out.canonical << 0, 0, 0, 1;
  } else {
    const double det = m.determinant();
    out.form = NormalFormResult::Form::ConstCurv;
    out.curvature = 8.0 * det;
    const double root = std::sqrt(std::abs(det));
    Mat2d c;
    if (det > 0.0) {
      c << 0, 1, -1, 0;
    } else {
      c << 0, 1, 1, 0;
    }
    a_t = root * c * m.inverse();
    b = Mat2d::Identity();
    out.canonical = root * c;
  }

  out.pair = PairMobius{MobiusMap(a_t.transpose()), MobiusMap(b)};

  // Defect of the construction: entrywise distance of the transformed matrix
  // to the canonical one, plus the pullback identity sampled on a grid.
  const Mat2d got = transform_quad(q, out.pair).matrix();
  double resid = (got - out.canonical).cwiseAbs().maxCoeff();
  const MetricQuad canon(out.canonical);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const double u = -2.0 + i;
      const double v = -2.0 + j;
      try {
        const double lhs = canon.eval(u, v).g;
        const double au = out.pair.a(u);
        const double bv = out.pair.b(v);
        const double rhs =
            q.eval(au, bv).g * mobius_jet(out.pair.a, u).d1 * mobius_jet(out.pair.b, v).d1;
        resid = std::max(resid, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
      } catch (const Error&) {
        // grid point hits a pole or the singular set; skip it
      }
    }
  }
  out.residual = resid;
  return out;
}

}  // namespace lworld
