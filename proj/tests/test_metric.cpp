#include <cmath>
#include <doctest.h>
#include <random>

#include "lworld/errors.hpp"
#include "lworld/metric.hpp"

using namespace lworld;

namespace {

Mat2d canonical_matrix() {
  Mat2d m;
  m << 0, 1, -1, 0;
  return m;
}

Mat2d random_matrix(std::mt19937_64& eng, double lo = -2.0, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Mat2d m;
  m << u(eng), u(eng), u(eng), u(eng);
  return m;
}

// Regular sample point for a quad denominator: |D| bounded away from zero.
bool regular_at(const MetricQuad& q, double x, double y) {
  return std::abs(q.denominator(x, y)) > 0.05 * q.matrix().norm();
}

// Independent Levi-Civita computation from the generic formula
// Γ^ρ_{μν} = ½ g^{ρσ}(∂μ g_{νσ} + ∂ν g_{μσ} − ∂σ g_{μν}) with
// components g_xy = g_yx = g/2.
struct FullChristoffel {
  double gam[2][2][2];
};

FullChristoffel christoffel_oracle(const MetricDerivs& d) {
  const double lower[2][2] = {{0.0, 0.5 * d.g}, {0.5 * d.g, 0.0}};
  const double dg[2] = {d.gx, d.gy};
  double dL[2][2][2];
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) dL[k][i][j] = (i != j) ? 0.5 * dg[k] : 0.0;
    }
  }
  const double det = lower[0][1] * lower[1][0] * -1.0 + lower[0][0] * lower[1][1];
  const double inv[2][2] = {{lower[1][1] / det, -lower[0][1] / det},
                            {-lower[1][0] / det, lower[0][0] / det}};
  FullChristoffel out{};
  for (int r = 0; r < 2; ++r) {
    for (int mu = 0; mu < 2; ++mu) {
      for (int nu = 0; nu < 2; ++nu) {
        double s = 0.0;
        for (int sg = 0; sg < 2; ++sg) {
          s += inv[r][sg] * (dL[mu][nu][sg] + dL[nu][mu][sg] - dL[sg][mu][nu]);
        }
        out.gam[r][mu][nu] = 0.5 * s;
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("canonical denominator derivatives at a frozen point") {
  const MetricQuad q(canonical_matrix());
  const MetricDerivs d = q.eval(1.0, 0.0);
  CHECK(d.g == doctest::Approx(1.0));
  CHECK(d.gx == doctest::Approx(-2.0));
  CHECK(d.gy == doctest::Approx(2.0));
  CHECK(d.gxx == doctest::Approx(6.0));
  CHECK(d.gyy == doctest::Approx(6.0));
  CHECK(d.gxy == doctest::Approx(-6.0));
}

TEST_CASE("evaluating on the singular set throws with context") {
  const MetricQuad q(canonical_matrix());
  CHECK_THROWS_AS(q.eval(1.0, 1.0), SingularityError);
  try {
    q.eval(2.0, 2.0);
    CHECK(false);
  } catch (const SingularityError& e) {
    CHECK(e.abs_denominator() == doctest::Approx(0.0));
    CHECK(e.x() == doctest::Approx(2.0));
    CHECK(e.y() == doctest::Approx(2.0));
  }
  CHECK_THROWS_AS(MetricQuad{Mat2d::Zero()}, DomainError);
}

TEST_CASE("chart defects vanish across the quadratic family") {
  std::mt19937_64 eng(53);
  std::uniform_real_distribution<double> pts(-3.0, 3.0);
  int checked = 0;
  while (checked < 100) {
    const Mat2d m = random_matrix(eng);
    if (m.norm() < 0.1) continue;
    const MetricQuad q(m);
    const double x = pts(eng);
    const double y = pts(eng);
    if (!regular_at(q, x, y)) continue;
    const ExtraTerm e = extra_term(ConformalMetric::quad(q), x, y);
    CHECK(std::abs(e.ex) < 1e-9);
    CHECK(std::abs(e.ey) < 1e-9);
    ++checked;
  }
  const ExtraTerm flat = extra_term(ConformalMetric::flat(), 0.3, -0.8);
  CHECK(flat.ex == 0.0);
  CHECK(flat.ey == 0.0);
}

TEST_CASE("chart defects of the catalog metrics") {
  const ExtraTerm e = extra_term(ConformalMetric::custom("exp_xy"), 1.0, 2.0);
  CHECK(e.ex == doctest::Approx(-2.0));
  CHECK(e.ey == doctest::Approx(-0.5));
  const ExtraTerm b = extra_term(ConformalMetric::custom("bump"), 1.0, 1.0);
  CHECK(b.ex == doctest::Approx(-4.0 / 3.0));
  CHECK(b.ey == doctest::Approx(-4.0 / 3.0));
  CHECK_THROWS_AS(ConformalMetric::custom("nope"), DomainError);
}

TEST_CASE("scalar curvature is constant on the quadratic family") {
  CHECK(scalar_curvature(ConformalMetric::flat(), 0.2, -1.4) == doctest::Approx(0.0));
  const ConformalMetric canon = ConformalMetric::quad(canonical_matrix());
  for (double x : {-1.0, 0.0, 2.0}) {
    for (double y : {-2.5, 0.4, 1.3}) {
      if (std::abs(x - y) < 0.1) continue;
      CHECK(scalar_curvature(canon, x, y) == doctest::Approx(8.0).epsilon(1e-9));
    }
  }
  Mat2d ident;
  ident << 1, 0, 0, 1;
  CHECK(scalar_curvature(ConformalMetric::quad(ident), 1.0, 1.0) == doctest::Approx(8.0));
  Mat2d anti;
  anti << 0, 1, 1, 0;
  CHECK(scalar_curvature(ConformalMetric::quad(anti), 1.0, 1.0) == doctest::Approx(-8.0));
}

TEST_CASE("scalar curvature equals eight times the determinant") {
  std::mt19937_64 eng(59);
  std::uniform_real_distribution<double> pts(-2.0, 2.0);
  int checked = 0;
  while (checked < 50) {
    const Mat2d m = random_matrix(eng);
    if (m.norm() < 0.1) continue;
    const MetricQuad q(m);
    const double x = pts(eng);
    const double y = pts(eng);
    if (!regular_at(q, x, y)) continue;
    const double want = 8.0 * m.determinant();
    const double got = scalar_curvature(ConformalMetric::quad(q), x, y);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
    ++checked;
  }
}

TEST_CASE("scalar curvature of the catalog metrics varies") {
  const ConformalMetric e = ConformalMetric::custom("exp_xy");
  CHECK(scalar_curvature(e, 0.0, 0.0) == doctest::Approx(-4.0));
  CHECK(scalar_curvature(e, 1.0, 1.0) == doctest::Approx(-4.0 * std::exp(-1.0)));
  const ConformalMetric b = ConformalMetric::custom("bump");
  CHECK(scalar_curvature(b, 0.0, 0.0) == doctest::Approx(0.0));
  CHECK(scalar_curvature(b, 1.0, 1.0) == doctest::Approx(-32.0));
}

TEST_CASE("closed-form symbols match the generic formula") {
  const Christoffel c = christoffel(ConformalMetric::quad(canonical_matrix()), 1.0, 0.0);
  CHECK(c.x_xx == doctest::Approx(-2.0));
  CHECK(c.y_yy == doctest::Approx(2.0));

  std::mt19937_64 eng(61);
  std::uniform_real_distribution<double> pts(-2.0, 2.0);
  int checked = 0;
  while (checked < 30) {
    const Mat2d m = random_matrix(eng);
    if (m.norm() < 0.1) continue;
    const MetricQuad q(m);
    const double x = pts(eng);
    const double y = pts(eng);
    if (!regular_at(q, x, y)) continue;
    const ConformalMetric cm = ConformalMetric::quad(q);
    const Christoffel got = christoffel(cm, x, y);
    const FullChristoffel want = christoffel_oracle(cm.eval(x, y));
    CHECK(got.x_xx == doctest::Approx(want.gam[0][0][0]).epsilon(1e-10));
    CHECK(got.y_yy == doctest::Approx(want.gam[1][1][1]).epsilon(1e-10));
    CHECK(got.x_xy == doctest::Approx(want.gam[0][0][1]).epsilon(1e-12));
    CHECK(got.x_yy == doctest::Approx(want.gam[0][1][1]).epsilon(1e-12));
    CHECK(got.y_xx == doctest::Approx(want.gam[1][0][0]).epsilon(1e-12));
    CHECK(got.y_xy == doctest::Approx(want.gam[1][0][1]).epsilon(1e-12));
    CHECK(std::abs(want.gam[0][0][1]) < 1e-12);
    CHECK(std::abs(want.gam[0][1][1]) < 1e-12);
    CHECK(std::abs(want.gam[1][0][0]) < 1e-12);
    CHECK(std::abs(want.gam[1][0][1]) < 1e-12);
    ++checked;
  }
}

TEST_CASE("singular set of the canonical form is the diagonal") {
  const SingularSet s = singular_set(MetricQuad(canonical_matrix()));
  CHECK(s.type == SingularSet::Type::Graph);
  CHECK(s.orientation_preserving);
  const MobiusMap m = s.mobius();
  for (double x : {-1.7, 0.0, 0.6, 3.2}) {
    CHECK(m(x) == doctest::Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("singular set of the identity form is minus reciprocal") {
  const SingularSet s = singular_set(MetricQuad(Mat2d::Identity()));
  CHECK(s.type == SingularSet::Type::Graph);
  CHECK(s.orientation_preserving);
  const MobiusMap m = s.mobius();
  CHECK(m(2.0) == doctest::Approx(-0.5));
  CHECK(m(0.5) == doctest::Approx(-2.0));
}

TEST_CASE("orientation-reversing singular graphs refuse a projective map") {
  Mat2d anti;
  anti << 0, 1, 1, 0;
  const SingularSet s = singular_set(MetricQuad(anti));
  CHECK(s.type == SingularSet::Type::Graph);
  CHECK(!s.orientation_preserving);
  CHECK_THROWS_AS(s.mobius(), DomainError);
}

TEST_CASE("rank-one denominators split into a cross") {
  Mat2d outer;
  outer << 1, 2, 2, 4;  // (x + 2)(y + 2)
  const SingularSet s = singular_set(MetricQuad(outer));
  CHECK(s.type == SingularSet::Type::Cross);
  CHECK(!s.empty_in_affine_chart);
  CHECK(s.vertical_x.affine() == doctest::Approx(-2.0));
  CHECK(s.horizontal_y.affine() == doctest::Approx(-2.0));
  CHECK_THROWS_AS(s.mobius(), DomainError);

  Mat2d flat;
  flat << 0, 0, 0, 1;
  const SingularSet sf = singular_set(MetricQuad(flat));
  CHECK(sf.type == SingularSet::Type::Cross);
  CHECK(sf.empty_in_affine_chart);
  CHECK(sf.vertical_x.at_infinity());
  CHECK(sf.horizontal_y.at_infinity());
}

TEST_CASE("pair action pulls the conformal factor back") {
  std::mt19937_64 eng(67);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  int checked = 0;
  while (checked < 30) {
    Mat2d ma = random_matrix(eng);
    Mat2d mb = random_matrix(eng);
    if (ma.determinant() < 0.05 || mb.determinant() < 0.05) continue;
    const Mat2d mq = random_matrix(eng);
    if (mq.norm() < 0.1) continue;
    const PairMobius p{MobiusMap(ma), MobiusMap(mb)};
    const MetricQuad q(mq);
    const MetricQuad qt = transform_quad(q, p);
    const double x = u(eng);
    const double y = u(eng);
    try {
      const double lhs = qt.eval(x, y).g;
      const double rhs =
          q.eval(p.a(x), p.b(y)).g * mobius_jet(p.a, x).d1 * mobius_jet(p.b, y).d1;
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
      ++checked;
    } catch (const DomainError&) {
      // singular point or pole; resample
    }
  }
}

TEST_CASE("pair action composes contravariantly") {
  std::mt19937_64 eng(71);
  for (int rep = 0; rep < 20; ++rep) {
    Mat2d ma = random_matrix(eng);
    Mat2d mb = random_matrix(eng);
    Mat2d mc = random_matrix(eng);
    Mat2d md = random_matrix(eng);
    if (ma.determinant() < 0.05 || mb.determinant() < 0.05 || mc.determinant() < 0.05 ||
        md.determinant() < 0.05) {
      continue;
    }
    const Mat2d mq = random_matrix(eng);
    if (mq.norm() < 0.1) continue;
    const PairMobius p{MobiusMap(ma), MobiusMap(mb)};
    const PairMobius q{MobiusMap(mc), MobiusMap(md)};
    const Mat2d two_step = transform_quad(transform_quad(MetricQuad(mq), p), q).matrix();
    const Mat2d one_step = transform_quad(MetricQuad(mq), pair_compose(p, q)).matrix();
    CHECK((two_step - one_step).norm() < 1e-12 * (1.0 + one_step.norm()));
  }
}

TEST_CASE("normal form fixes the canonical representative") {
  const NormalFormResult nf = normal_form(MetricQuad(canonical_matrix()));
  CHECK(nf.form == NormalFormResult::Form::ConstCurv);
  CHECK(nf.curvature == doctest::Approx(8.0));
  CHECK((nf.canonical - canonical_matrix()).norm() < 1e-14);
  CHECK((nf.pair.a.matrix() - Mat2d::Identity()).norm() < 1e-14);
  CHECK((nf.pair.b.matrix() - Mat2d::Identity()).norm() < 1e-14);
  CHECK(nf.residual < 1e-12);
}

TEST_CASE("normal form handles every rank and sign") {
  std::mt19937_64 eng(73);
  int full_rank = 0;
  int neg_det = 0;
  while (full_rank < 40 || neg_det < 5) {
    const Mat2d m = random_matrix(eng);
    if (m.norm() < 0.1 || std::abs(m.determinant()) < 0.05) continue;
    const MetricQuad q(m);
    const NormalFormResult nf = normal_form(q);
    const double det = m.determinant();
    CHECK(nf.form == NormalFormResult::Form::ConstCurv);
    CHECK(nf.curvature == doctest::Approx(8.0 * det).epsilon(1e-12));
    CHECK(std::abs(nf.pair.a.matrix().determinant() - 1.0) < 1e-12);
    CHECK(std::abs(nf.pair.b.matrix().determinant() - 1.0) < 1e-12);
    CHECK(std::abs(nf.canonical.determinant() - det) < 1e-10 * (1.0 + std::abs(det)));
    CHECK(nf.residual < 1e-9);
    const Mat2d got = transform_quad(q, nf.pair).matrix();
    CHECK((got - nf.canonical).norm() < 1e-10 * (1.0 + nf.canonical.norm()));
    if (det > 0) {
      CHECK(nf.canonical(0, 1) == doctest::Approx(std::sqrt(det)));
      CHECK(nf.canonical(1, 0) == doctest::Approx(-std::sqrt(det)));
      ++full_rank;
    } else {
      CHECK(nf.canonical(0, 1) == doctest::Approx(std::sqrt(-det)));
      CHECK(nf.canonical(1, 0) == doctest::Approx(std::sqrt(-det)));
      ++neg_det;
    }
    CHECK(nf.canonical(0, 0) == doctest::Approx(0.0));
    CHECK(nf.canonical(1, 1) == doctest::Approx(0.0));
  }
}

TEST_CASE("normal form flattens rank-one denominators") {
  std::mt19937_64 eng(79);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    Vec2d a, b;
    a << u(eng), u(eng);
    b << u(eng), u(eng);
    if (a.norm() < 0.3 || b.norm() < 0.3) continue;
    const Mat2d m = a * b.transpose();
    const NormalFormResult nf = normal_form(MetricQuad(m));
    CHECK(nf.form == NormalFormResult::Form::Flat);
    CHECK(nf.curvature == 0.0);
    Mat2d flat;
    flat << 0, 0, 0, 1;
    CHECK((nf.canonical - flat).norm() < 1e-14);
    CHECK(std::abs(nf.pair.a.matrix().determinant() - 1.0) < 1e-12);
    CHECK(std::abs(nf.pair.b.matrix().determinant() - 1.0) < 1e-12);
    const Mat2d got = transform_quad(MetricQuad(m), nf.pair).matrix();
    CHECK((got - flat).norm() < 1e-10);
  }
}
