#pragma once

#include <functional>
#include <vector>

#include "lworld/diffeo.hpp"
#include "lworld/jet.hpp"

namespace lworld {

// Schwarzian derivative S = d3/d1 − (3/2)(d2/d1)² of a jet with d1 ≠ 0.
double schwarzian(const Jet3d& j);

// S(f∘g)(θ) − [S(f)(g(θ))·g'(θ)² + S(g)(θ)], evaluated in the angle chart.
// Vanishes identically for the composition rule to hold.
double schwarzian_cocycle_residual(const CircleDiffeo& f, const CircleDiffeo& g, double theta);

enum class Coord { AffineX, AngleTheta, ParamTau };

// A pointwise sample of a quadratic differential q(c)dc² in a named coordinate.
// Under a coordinate change h the value transports as value ↦ (value∘h)·h'².
struct QuadDiffSample {
  Coord coord;
  double point;
  double value;
};

// S(y) − S(x) dτ² for a pair of jets sharing the same parameter; both must be
// strictly increasing (d1 > 0). tau records the common parameter point.
QuadDiffSample relative_schwarzian(const Jet3d& jx, const Jet3d& jy, double tau = 0.0);

double relative_schwarzian_value(const Jet3d& jx, const Jet3d& jy);

// Projective Schwarzian S(φ)(θ) + 2(φ'(θ)² − 1) in the angle chart. Vanishes
// identically exactly when f is projective.
QuadDiffSample projective_schwarzian(const CircleDiffeo& f, double theta);

double projective_schwarzian_value(const CircleDiffeo& f, double theta);

// Zero census of a continuous π-periodic function on [0, π).
struct ZeroReport {
  bool degenerate = false;         // max |f| on the scan grid below 1e-9
  int count = 0;                   // transverse zeros
  std::vector<double> locations;   // sorted, in [0, π)
  std::vector<double> tangential;  // near-zero touch points without a sign change
  bool all_simple = true;          // no tangential touch points detected
  double min_separation = 0.0;     // smallest circular gap between zeros (π when count < 2)
};

// Counts sign-change zeros of f on one period [0, π). Grid scan with n_grid
// cells (floored at 256), bisection refinement, circular merge of duplicates
// closer than 2·refine_tol.
ZeroReport count_zeros_periodic(const std::function<double(double)>& f, int n_grid = 1024,
                                double refine_tol = 1e-10);

}  // namespace lworld
