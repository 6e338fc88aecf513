#pragma once

#include <cstdint>
#include <vector>

#include "lworld/jet.hpp"
#include "lworld/projective.hpp"

namespace lworld {

// One Fourier mode of a lift perturbation: a·sin(2kθ) + b·cos(2kθ).
// Even frequencies keep the perturbation π-periodic.
struct FourierMode {
  int k;
  double a;
  double b;
};

// Orientation-preserving diffeomorphism of RP^1, represented by a smooth
// strictly increasing lift φ: R → R with φ(θ+π) = φ(θ)+π.
class CircleDiffeo {
public:
  enum class Kind { Rotation, Mobius, Fourier, Composed };

  static CircleDiffeo rotation(double alpha);
  static CircleDiffeo mobius(const MobiusMap& m);
  // φ(θ) = θ + α + Σ_k a_k sin(2kθ) + b_k cos(2kθ); validated monotone on a
  // 4096-point grid with margin φ' ≥ 1e-6.
  static CircleDiffeo fourier(double alpha, std::vector<FourierMode> modes);
  // composed({f, g}) acts as f after g.
  static CircleDiffeo composed(std::vector<CircleDiffeo> parts);

  Kind kind() const { return kind_; }
  bool is_mobius() const;  // projectively trivial (Rotation/Mobius, or such parts)

  double rotation_angle() const { return alpha_; }
  const MobiusMap& mobius_map() const { return m_; }
  double fourier_alpha() const { return alpha_; }
  const std::vector<FourierMode>& fourier_modes() const { return modes_; }
  const std::vector<CircleDiffeo>& parts() const { return parts_; }

private:
  CircleDiffeo() = default;

  Kind kind_ = Kind::Rotation;
  double alpha_ = 0.0;
  MobiusMap m_;
  std::vector<FourierMode> modes_;
  std::vector<CircleDiffeo> parts_;
};

// Jet of the lift at θ.
Jet3d diffeo_jet_angle(const CircleDiffeo& f, double theta);

// Jet of the conjugated affine map tan ∘ φ ∘ arctan at x; throws when the
// image sits within 1e-8 of the chart pole.
Jet3d diffeo_jet_affine(const CircleDiffeo& f, double x);

// Deterministic random diffeo: rotation α ~ U[0, π) plus n_modes Fourier modes
// with coefficients ~ U[−amplitude/k², amplitude/k²]. Retries with halved
// amplitude when monotonicity fails (max 20), then throws GenerationError.
// amplitude == 0 or n_modes == 0 yields the pure rotation.
CircleDiffeo random_diffeo(std::uint64_t seed, int n_modes, double amplitude);

struct FixedPointCheck {
  bool free;      // no zero of the lifted difference detected
  double margin;  // min distance of φ_f − φ_m to πZ over the scan
};

// Detects fixed points of m⁻¹∘f on RP^1 by scanning the lifted difference
// φ_f(θ) − φ_m(θ) for crossings of πZ on a grid of the given size.
FixedPointCheck fixed_point_free(const CircleDiffeo& f, const MobiusMap& m, int grid = 512);

}  // namespace lworld
