#include "mprates/constants.hpp"

#include <cmath>

namespace mprates {

PhysicalConstants PhysicalConstants::si() {
  constexpr double c = 299792458.0;
  constexpr double hbar = 1.054571817e-34;
  constexpr double mu0 = 1.25663706212e-6;
  // eps0 derived so that mu0 eps0 c^2 = 1 holds to rounding.
  return {c, hbar, 1.0 / (mu0 * c * c), mu0};
}

PhysicalConstants PhysicalConstants::natural() { return {1.0, 1.0, 1.0, 1.0}; }

void PhysicalConstants::validate() const {
  if (!(c > 0 && hbar > 0 && eps0 > 0 && mu0 > 0)) {
    throw InvalidArgument("physical constants must be positive");
  }
  if (std::abs(mu0 * eps0 * c * c - 1.0) > 1e-10) {
    throw InvalidArgument("physical constants violate mu0 * eps0 * c^2 = 1");
  }
}

}  // namespace mprates
