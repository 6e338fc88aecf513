#include "lworld/errors.hpp"

#include <sstream>

namespace lworld {

namespace {

std::string singular_msg(double abs_denom, double x, double y) {
  std::ostringstream os;
  os << "metric singular at (" << x << ", " << y << "): |D| = " << abs_denom;
  return os.str();
}

std::string timelike_msg(double g_vv, double tau) {
  std::ostringstream os;
  os << "velocity not time-like at tau = " << tau << ": g(v,v) = " << g_vv;
  return os.str();
}

}  // namespace

SingularityError::SingularityError(double abs_denom, double x, double y)
    : DomainError(singular_msg(abs_denom, x, y)), abs_denom_(abs_denom), x_(x), y_(y) {}

SingularityError::SingularityError(const std::string& context, double abs_denom, double x,
                                   double y)
    : DomainError(context + ": " + singular_msg(abs_denom, x, y)),
      abs_denom_(abs_denom),
      x_(x),
      y_(y) {}

TimelikeError::TimelikeError(double g_vv, double tau)
    : DomainError(timelike_msg(g_vv, tau)), g_vv_(g_vv), tau_(tau) {}

TimelikeError::TimelikeError(const std::string& context, double g_vv, double tau)
    : DomainError(context + ": " + timelike_msg(g_vv, tau)), g_vv_(g_vv), tau_(tau) {}

IntegrationError::IntegrationError(const std::string& what, double tau)
    : Error(what + " (tau = " + std::to_string(tau) + ")"), tau_(tau) {}

}  // namespace lworld
