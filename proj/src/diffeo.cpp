#include "lworld/diffeo.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <utility>

#include "lworld/errors.hpp"

namespace lworld {

namespace {

constexpr double pi = std::numbers::pi;

// Lift jet of a pure Fourier perturbation family evaluated at θ.
// Trig values per mode advance by the angle-addition recurrence so a single
// sin/cos pair at 2θ serves all modes.
Jet3d fourier_jet(double alpha, const std::vector<FourierMode>& modes, double theta) {
  Jet3d j{theta + alpha, 1.0, 0.0, 0.0};
  if (modes.empty()) return j;
  const double s1 = std::sin(2.0 * theta);
  const double c1 = std::cos(2.0 * theta);
  double s = 0.0;  // sin(2kθ) for the current k
  double c = 1.0;  // cos(2kθ)
  int k_prev = 0;
  for (const FourierMode& m : modes) {
    for (; k_prev < m.k; ++k_prev) {
      const double s_next = s * c1 + c * s1;
      const double c_next = c * c1 - s * s1;
      s = s_next;
      c = c_next;
    }
    const double w = 2.0 * m.k;
    j.v += m.a * s + m.b * c;
    j.d1 += w * (m.a * c - m.b * s);
    j.d2 += -w * w * (m.a * s + m.b * c);
    j.d3 += -w * w * w * (m.a * c - m.b * s);
  }
  return j;
}

// Minimum of φ' over a uniform grid on [0, π).
double min_derivative(const CircleDiffeo& f, int n_grid) {
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_grid; ++i) {
    const double theta = pi * static_cast<double>(i) / n_grid;
    lo = std::min(lo, diffeo_jet_angle(f, theta).d1);
  }
  return lo;
}

void require_monotone(const CircleDiffeo& f) {
  const double lo = min_derivative(f, 4096);
  if (!(lo >= 1e-6)) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "circle map is not strictly increasing (min lift derivative %.3e)", lo);
    throw GenerationError(buf);
  }
}

// Uniform double in [0, 1) with 53 random bits, stable across platforms.
double u01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace

CircleDiffeo CircleDiffeo::rotation(double alpha) {
  CircleDiffeo f;
  f.kind_ = Kind::Rotation;
  f.alpha_ = alpha;
  return f;
}

CircleDiffeo CircleDiffeo::mobius(const MobiusMap& m) {
  CircleDiffeo f;
  f.kind_ = Kind::Mobius;
  f.m_ = m;
  return f;
}

CircleDiffeo CircleDiffeo::fourier(double alpha, std::vector<FourierMode> modes) {
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i].k < 1) throw DomainError("fourier mode frequency must be >= 1");
    if (i > 0 && modes[i].k <= modes[i - 1].k) {
      throw DomainError("fourier modes must have strictly increasing frequencies");
    }
  }
  CircleDiffeo f;
  f.kind_ = Kind::Fourier;
  f.alpha_ = alpha;
  f.modes_ = std::move(modes);
  require_monotone(f);
  return f;
}

CircleDiffeo CircleDiffeo::composed(std::vector<CircleDiffeo> parts) {
  if (parts.empty()) throw DomainError("composed diffeo needs at least one part");
  CircleDiffeo f;
  f.kind_ = Kind::Composed;
  f.parts_ = std::move(parts);
  require_monotone(f);
  return f;
}

bool CircleDiffeo::is_mobius() const {
  switch (kind_) {
    case Kind::Rotation:
    case Kind::Mobius:
      return true;
    case Kind::Fourier:
      return modes_.empty();
    case Kind::Composed:
      for (const CircleDiffeo& p : parts_) {
        if (!p.is_mobius()) return false;
      }
      return true;
  }
  return false;
}

Jet3d diffeo_jet_angle(const CircleDiffeo& f, double theta) {
  switch (f.kind()) {
    case CircleDiffeo::Kind::Rotation:
      return Jet3d{theta + f.rotation_angle(), 1.0, 0.0, 0.0};
    case CircleDiffeo::Kind::Mobius:
      return mobius_angle_jet(f.mobius_map(), theta);
    case CircleDiffeo::Kind::Fourier:
      return fourier_jet(f.fourier_alpha(), f.fourier_modes(), theta);
    case CircleDiffeo::Kind::Composed: {
      // parts = {f_1, ..., f_n} acts as f_1 ∘ ... ∘ f_n.
      Jet3d j = Jet3d::variable(theta);
      for (auto it = f.parts().rbegin(); it != f.parts().rend(); ++it) {
        j = jet_compose(diffeo_jet_angle(*it, j.v), j);
      }
      return j;
    }
  }
  throw Error("unreachable diffeo kind");
}

Jet3d diffeo_jet_affine(const CircleDiffeo& f, double x) {
  const Jet3d inner = atan_jet(x);
  const Jet3d phi = jet_compose(diffeo_jet_angle(f, inner.v), inner);
  const double c = std::cos(phi.v);
  if (std::abs(c) < 1e-8) {
    throw SingularityError("affine image of circle map hits the chart pole", std::abs(c), x,
                           phi.v);
  }
  return jet_compose(tan_jet(phi.v), phi);
}

CircleDiffeo random_diffeo(std::uint64_t seed, int n_modes, double amplitude) {
  if (n_modes < 0) throw DomainError("random diffeo needs n_modes >= 0");
  if (!(amplitude >= 0.0)) throw DomainError("random diffeo needs amplitude >= 0");
  std::mt19937_64 eng(seed);
  const double alpha = pi * u01(eng);
  if (n_modes == 0 || amplitude == 0.0) return CircleDiffeo::rotation(alpha);

  std::vector<double> raw;  // 2·n_modes draws in [-1, 1), fixed before retries
  raw.reserve(2 * static_cast<std::size_t>(n_modes));
  for (int i = 0; i < 2 * n_modes; ++i) raw.push_back(2.0 * u01(eng) - 1.0);

  double amp = amplitude;
  for (int attempt = 0; attempt < 20; ++attempt, amp *= 0.5) {
    std::vector<FourierMode> modes;
    modes.reserve(static_cast<std::size_t>(n_modes));
    for (int k = 1; k <= n_modes; ++k) {
      const double scale = amp / (static_cast<double>(k) * k);
      modes.push_back(FourierMode{k, scale * raw[2 * (k - 1)], scale * raw[2 * (k - 1) + 1]});
    }
    try {
      return CircleDiffeo::fourier(alpha, std::move(modes));
    } catch (const GenerationError&) {
      // retry with halved amplitude
    }
  }
  throw GenerationError("random diffeo stayed non-monotone after 20 amplitude halvings");
}

FixedPointCheck fixed_point_free(const CircleDiffeo& f, const MobiusMap& m, int grid) {
  if (grid < 2) throw DomainError("fixed point scan needs grid >= 2");
  const CircleDiffeo cm = CircleDiffeo::mobius(m);
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double theta = pi * static_cast<double>(i) / grid;
    const double d = diffeo_jet_angle(f, theta).v - diffeo_jet_angle(cm, theta).v;
    // distance of d to the nearest multiple of π
    const double r = std::abs(d - pi * std::round(d / pi));
    margin = std::min(margin, r);
  }
  return FixedPointCheck{margin > 1e-4, margin};
}

}  // namespace lworld
