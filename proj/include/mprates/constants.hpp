#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace mprates {

/// Thrown for arguments that violate a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical procedure cannot deliver its contract
/// (quadrature non-convergence, singular matrix).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = std::numbers::pi;

/// Physical constants the rate formulas are expressed in. The library is
/// unit-agnostic as long as mu0 * eps0 * c^2 == 1.
struct PhysicalConstants {
  double c;
  double hbar;
  double eps0;
  double mu0;

  /// CODATA 2018 SI values.
  static PhysicalConstants si();
  /// c = hbar = eps0 = mu0 = 1.
  static PhysicalConstants natural();

  /// Throws InvalidArgument unless all values are positive and
  /// mu0 * eps0 * c^2 = 1 within 1e-10 relative.
  void validate() const;
};

}  // namespace mprates
