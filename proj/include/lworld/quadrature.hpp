#pragma once

#include <functional>

namespace lworld {

// Adaptive Gauss–Kronrod (G7, K15) integral of f over [a, b] to the given
// absolute tolerance. Throws IntegrationError when interval bisection exceeds
// depth 50 or the integrand stops being finite.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

}  // namespace lworld
