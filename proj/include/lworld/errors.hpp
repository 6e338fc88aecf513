#pragma once

#include <stdexcept>
#include <string>

namespace lworld {

// Base class for every failure raised by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Input outside an operation's domain: chart pole, vanishing derivative,
// non-finite intermediate, bad parameter.
class DomainError : public Error {
public:
  using Error::Error;
};

// Metric denominator within tolerance of zero. Carries |D| and the point.
class SingularityError : public DomainError {
public:
  SingularityError(double abs_denom, double x, double y);
  SingularityError(const std::string& context, double abs_denom, double x, double y);
  double abs_denominator() const { return abs_denom_; }
  double x() const { return x_; }
  double y() const { return y_; }

private:
  double abs_denom_;
  double x_;
  double y_;
};

// Velocity norm g(v,v) at or below the time-like margin.
class TimelikeError : public DomainError {
public:
  TimelikeError(double g_vv, double tau);
  TimelikeError(const std::string& context, double g_vv, double tau);
  double g_vv() const { return g_vv_; }
  double tau() const { return tau_; }

private:
  double g_vv_;
  double tau_;
};

// Quadrature or stencil evaluation failed; carries the offending parameter.
class IntegrationError : public Error {
public:
  IntegrationError(const std::string& what, double tau);
  double tau() const { return tau_; }

private:
  double tau_;
};

// Random generation exhausted its retry budget.
class GenerationError : public Error {
public:
  using Error::Error;
};

}  // namespace lworld
