#pragma once

#include <stdexcept>
#include <string>

namespace kerrsq {

/// Thrown when a formula is evaluated outside its validity regime
/// (e.g. a slow-envelope expression with nu <= 1).
class RegimeError : public std::domain_error {
public:
  explicit RegimeError(const std::string& what) : std::domain_error(what) {}
};

/// Thrown when an operation is asked for a kernel variant it does not support.
class UnsupportedVariantError : public std::domain_error {
public:
  explicit UnsupportedVariantError(const std::string& what) : std::domain_error(what) {}
};

/// Thrown when adaptive quadrature cannot reach the requested tolerance.
/// Carries the best estimate and the error bound actually achieved.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, double best_estimate, double achieved_error)
      : std::runtime_error(what + " (best estimate " + std::to_string(best_estimate) +
                           ", achieved error bound " + std::to_string(achieved_error) + ")"),
        best_estimate_(best_estimate),
        achieved_error_(achieved_error) {}

  double best_estimate() const { return best_estimate_; }
  double achieved_error() const { return achieved_error_; }

private:
  double best_estimate_;
  double achieved_error_;
};

}  // namespace kerrsq
