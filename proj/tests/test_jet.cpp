#include <cmath>
#include <doctest.h>
#include <random>
#include <vector>

#include "lworld/errors.hpp"
#include "lworld/jet.hpp"
#include "test_util.hpp"

using namespace lworld;

namespace {

// Dense polynomial with exact derivative jets, an arithmetic oracle that
// shares no code with Jet3.
struct Poly {
  std::vector<double> c;  // c[i]·x^i

  double eval(double x) const {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  }

  Poly deriv() const {
    Poly d;
    for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * static_cast<double>(i));
    return d;
  }

  Jet3d jet(double x) const {
    const Poly d1 = deriv();
    const Poly d2 = d1.deriv();
    const Poly d3 = d2.deriv();
    return Jet3d{eval(x), d1.eval(x), d2.eval(x), d3.eval(x)};
  }

  static Poly mul(const Poly& a, const Poly& b) {
    Poly out;
    out.c.assign(a.c.size() + b.c.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
    }
    return out;
  }

  static Poly compose(const Poly& a, const Poly& b) {
    Poly out;
    out.c = {0.0};
    for (std::size_t i = a.c.size(); i-- > 0;) {
      out = mul(out, b);
      if (out.c.empty()) out.c = {0.0};
      out.c[0] += a.c[i];
    }
    return out;
  }
};

Poly random_poly(std::mt19937_64& eng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Poly p;
  for (int i = 0; i <= degree; ++i) p.c.push_back(u(eng));
  return p;
}

void check_close(const Jet3d& got, const Jet3d& want, double tol) {
  CHECK(got.v == doctest::Approx(want.v).epsilon(tol));
  CHECK(got.d1 == doctest::Approx(want.d1).epsilon(tol));
  CHECK(got.d2 == doctest::Approx(want.d2).epsilon(tol));
  CHECK(got.d3 == doctest::Approx(want.d3).epsilon(tol));
}

void check_fd(const std::function<Jet3d(double)>& jet, double x, double tol) {
  auto f = [&](double t) { return jet(t).v; };
  const Jet3d j = jet(x);
  CHECK(j.d1 == doctest::Approx(fd1(f, x)).epsilon(tol));
  CHECK(j.d2 == doctest::Approx(fd2(f, x)).epsilon(tol));
  CHECK(j.d3 == doctest::Approx(fd3(f, x)).epsilon(tol));
}

}  // namespace

TEST_CASE("reciprocal jet at 1") {
  const Jet3d r = Jet3d::constant(1.0) / Jet3d::variable(1.0);
  CHECK(r.v == doctest::Approx(1.0));
  CHECK(r.d1 == doctest::Approx(-1.0));
  CHECK(r.d2 == doctest::Approx(2.0));
  CHECK(r.d3 == doctest::Approx(-6.0));
}

TEST_CASE("cube squared equals sixth power") {
  const Jet3d c = power_jet(3, 1.0);
  check_close(c * c, power_jet(6, 1.0), 1e-14);
  const Jet3d want{1.0, 6.0, 30.0, 120.0};
  check_close(power_jet(6, 1.0), want, 1e-14);
}

TEST_CASE("polynomial product matches Leibniz arithmetic") {
  std::mt19937_64 eng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const Poly a = random_poly(eng, 5);
    const Poly b = random_poly(eng, 4);
    const Poly ab = Poly::mul(a, b);
    for (double x : {-1.3, 0.2, 0.9}) {
      check_close(a.jet(x) * b.jet(x), ab.jet(x), 1e-12);
    }
  }
}

TEST_CASE("polynomial composition matches chain arithmetic") {
  std::mt19937_64 eng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const Poly a = random_poly(eng, 4);
    const Poly b = random_poly(eng, 3);
    const Poly ab = Poly::compose(a, b);
    for (double x : {-0.8, 0.1, 0.7}) {
      check_close(jet_compose(a.jet(b.eval(x)), b.jet(x)), ab.jet(x), 1e-10);
    }
  }
}

TEST_CASE("quotient inverts the product") {
  std::mt19937_64 eng(13);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int rep = 0; rep < 50; ++rep) {
    Jet3d a{u(eng), u(eng), u(eng), u(eng)};
    Jet3d b{u(eng), u(eng), u(eng), u(eng)};
    if (std::abs(b.v) < 0.1) b.v += 1.0;
    const Jet3d q = a / b;
    check_close(q * b, a, 1e-11);
  }
}

TEST_CASE("quotient by a vanishing jet throws") {
  const Jet3d a{1.0, 0.0, 0.0, 0.0};
  const Jet3d b{0.0, 1.0, 0.0, 0.0};
  CHECK_THROWS_AS(a / b, DomainError);
}

TEST_CASE("composition is associative") {
  std::mt19937_64 eng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const Jet3d f{u(eng), u(eng), u(eng), u(eng)};
    const Jet3d g{u(eng), u(eng), u(eng), u(eng)};
    const Jet3d h{u(eng), u(eng), u(eng), u(eng)};
    const Jet3d lhs = jet_compose(f, jet_compose(g, h));
    const Jet3d rhs = jet_compose(jet_compose(f, g), h);
    CHECK(lhs.v == doctest::Approx(rhs.v).epsilon(1e-10));
    CHECK(lhs.d1 == doctest::Approx(rhs.d1).epsilon(1e-10));
    CHECK(lhs.d2 == doctest::Approx(rhs.d2).epsilon(1e-10));
    CHECK(lhs.d3 == doctest::Approx(rhs.d3).epsilon(1e-10));
  }
}

TEST_CASE("tangent and arctangent jets at zero") {
  const Jet3d t = tan_jet(0.0);
  CHECK(t.v == 0.0);
  CHECK(t.d1 == 1.0);
  CHECK(t.d2 == 0.0);
  CHECK(t.d3 == 2.0);
  const Jet3d a = atan_jet(0.0);
  CHECK(a.v == 0.0);
  CHECK(a.d1 == 1.0);
  CHECK(a.d2 == 0.0);
  CHECK(a.d3 == -2.0);
}

TEST_CASE("tangent inverts arctangent as a jet") {
  for (double x : {-2.0, -0.4, 0.3, 1.7}) {
    const Jet3d a = atan_jet(x);
    check_close(jet_compose(tan_jet(a.v), a), Jet3d::variable(x), 1e-12);
  }
}

TEST_CASE("elementary jets agree with finite differences") {
  for (double x : {-0.5, 0.1, 0.6}) {
    check_fd([](double t) { return exp_jet(t); }, x, 1e-5);
    check_fd([](double t) { return sin_jet(t); }, x, 1e-5);
    check_fd([](double t) { return cos_jet(t); }, x, 1e-5);
    check_fd([](double t) { return tan_jet(t); }, x, 1e-4);
    check_fd([](double t) { return atan_jet(t); }, x, 1e-4);
    check_fd([](double t) { return power_jet(4, t); }, x, 1e-4);
    check_fd([](double t) { return affine_jet(2.0, -0.5, t); }, x, 1e-5);
  }
}

TEST_CASE("exponential jet carries its own value in each slot") {
  const Jet3d e = exp_jet(0.7);
  const double v = std::exp(0.7);
  CHECK(e.v == doctest::Approx(v));
  CHECK(e.d1 == doctest::Approx(v));
  CHECK(e.d2 == doctest::Approx(v));
  CHECK(e.d3 == doctest::Approx(v));
}

TEST_CASE("monomial jets at the origin") {
  const Jet3d p1 = power_jet(1, 0.0);
  CHECK(p1.v == 0.0);
  CHECK(p1.d1 == 1.0);
  CHECK(p1.d2 == 0.0);
  CHECK(p1.d3 == 0.0);
  const Jet3d p2 = power_jet(2, 0.0);
  CHECK(p2.d2 == 2.0);
  CHECK(p2.d3 == 0.0);
  const Jet3d p3 = power_jet(3, 0.0);
  CHECK(p3.d3 == 6.0);
  const Jet3d p5 = power_jet(5, 0.0);
  CHECK(p5.v == 0.0);
  CHECK(p5.d1 == 0.0);
  CHECK(p5.d2 == 0.0);
  CHECK(p5.d3 == 0.0);
  CHECK_THROWS_AS(power_jet(-1, 0.0), DomainError);
}

TEST_CASE("tangent jet rejects arguments at the pole") {
  CHECK_THROWS_AS(tan_jet(std::acos(-1.0) / 2.0), DomainError);
}
