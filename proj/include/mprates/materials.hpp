#pragma once

#include <complex>
#include <istream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mprates {

/// Frequency-independent complex response.
struct ConstantComplex {
  std::complex<double> value{1.0, 0.0};
};

/// 1 - omega_p^2 / (omega^2 + i gamma omega).
struct DrudeMetal {
  double plasma_frequency;
  double damping;
};

/// 1 + f omega0^2 / (omega0^2 - omega^2 - i gamma omega).
struct LorentzOscillator {
  double resonance;
  double strength;
  double damping;
};

/// Sampled response, linearly interpolated in omega (real and imaginary
/// parts separately). No extrapolation.
struct TabulatedSamples {
  std::vector<double> omega;
  std::vector<std::complex<double>> value;
};

using ResponseModel = std::variant<ConstantComplex, DrudeMetal, LorentzOscillator, TabulatedSamples>;

/// Evaluates a single response model. Throws InvalidArgument for omega <= 0,
/// out-of-range tabulated frequencies, or Im < -1e-12 (passivity).
std::complex<double> evaluate(const ResponseModel& model, double omega);

/// Validates model parameters (positive frequencies, strictly increasing
/// tabulated grid). Throws InvalidArgument.
void validate(const ResponseModel& model);

/// Permittivity and permeability of the half-space. Kramers-Kronig
/// consistency is not enforced; every evaluation is at a single frequency.
struct MaterialResponse {
  ResponseModel eps = ConstantComplex{};
  ResponseModel mu = ConstantComplex{};

  static MaterialResponse vacuum() { return {}; }
  static MaterialResponse constant(std::complex<double> eps, std::complex<double> mu = 1.0) {
    return {ConstantComplex{eps}, ConstantComplex{mu}};
  }

  /// (eps(omega), mu(omega)).
  std::pair<std::complex<double>, std::complex<double>> eval(double omega) const;
};

/// Reads `omega re im` triples, one per line; `#` starts a comment, blank
/// lines are skipped. Throws InvalidArgument with the offending line number.
TabulatedSamples read_tabulated(std::istream& in);
TabulatedSamples read_tabulated_file(const std::string& path);

}  // namespace mprates
