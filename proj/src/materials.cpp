#include "mprates/materials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mprates/constants.hpp"

namespace mprates {

namespace {

constexpr double kPassivityTolerance = 1e-12;

std::complex<double> interpolate(const TabulatedSamples& t, double omega) {
  if (t.omega.empty() || omega < t.omega.front() || omega > t.omega.back()) {
    throw InvalidArgument("frequency " + std::to_string(omega) +
                          " outside the tabulated range");
  }
  const auto it = std::upper_bound(t.omega.begin(), t.omega.end(), omega);
  if (it == t.omega.end()) return t.value.back();
  const std::size_t hi = static_cast<std::size_t>(it - t.omega.begin());
  if (hi == 0) return t.value.front();
  const std::size_t lo = hi - 1;
  const double w = (omega - t.omega[lo]) / (t.omega[hi] - t.omega[lo]);
  return t.value[lo] + w * (t.value[hi] - t.value[lo]);
}

struct Evaluator {
  double omega;
  std::complex<double> operator()(const ConstantComplex& m) const { return m.value; }
  std::complex<double> operator()(const DrudeMetal& m) const {
    const std::complex<double> denom(omega * omega, m.damping * omega);
    return 1.0 - m.plasma_frequency * m.plasma_frequency / denom;
  }
  std::complex<double> operator()(const LorentzOscillator& m) const {
    const std::complex<double> denom(m.resonance * m.resonance - omega * omega,
                                     -m.damping * omega);
    return 1.0 + m.strength * m.resonance * m.resonance / denom;
  }
  std::complex<double> operator()(const TabulatedSamples& m) const {
    return interpolate(m, omega);
  }
};

struct Validator {
  void operator()(const ConstantComplex& m) const {
    if (!std::isfinite(m.value.real()) || !std::isfinite(m.value.imag()))
      throw InvalidArgument("constant response must be finite");
  }
  void operator()(const DrudeMetal& m) const {
    if (!(m.plasma_frequency > 0) || !(m.damping >= 0))
      throw InvalidArgument("Drude model needs plasma_frequency > 0 and damping >= 0");
  }
  void operator()(const LorentzOscillator& m) const {
    if (!(m.resonance > 0) || !(m.damping >= 0) || !(m.strength >= 0))
      throw InvalidArgument(
          "Lorentz model needs resonance > 0, strength >= 0 and damping >= 0");
  }
  void operator()(const TabulatedSamples& m) const {
    if (m.omega.size() != m.value.size() || m.omega.size() < 2)
      throw InvalidArgument("tabulated response needs at least two samples");
    for (std::size_t i = 1; i < m.omega.size(); ++i)
      if (!(m.omega[i] > m.omega[i - 1]))
        throw InvalidArgument("tabulated frequencies must be strictly increasing");
  }
};

}  // namespace

std::complex<double> evaluate(const ResponseModel& model, double omega) {
  if (!(omega > 0)) throw InvalidArgument("material evaluated at omega <= 0");
  const std::complex<double> v = std::visit(Evaluator{omega}, model);
  if (v.imag() < -kPassivityTolerance) {
    throw InvalidArgument("material response violates passivity (Im < 0) at omega = " +
                          std::to_string(omega));
  }
  return v;
}

void validate(const ResponseModel& model) { std::visit(Validator{}, model); }

std::pair<std::complex<double>, std::complex<double>> MaterialResponse::eval(
    double omega) const {
  return {evaluate(eps, omega), evaluate(mu, omega)};
}

TabulatedSamples read_tabulated(std::istream& in) {
  TabulatedSamples t;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double w, re, im;
    if (!(fields >> w)) continue;
    if (!(fields >> re >> im)) {
      throw InvalidArgument("tabulated response line " + std::to_string(line_no) +
                            ": expected 'omega re im'");
    }
    std::string extra;
    if (fields >> extra) {
      throw InvalidArgument("tabulated response line " + std::to_string(line_no) +
                            ": trailing field '" + extra + "'");
    }
    t.omega.push_back(w);
    t.value.emplace_back(re, im);
  }
  validate(ResponseModel{t});
  return t;
}

TabulatedSamples read_tabulated_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open tabulated response file '" + path + "'");
  return read_tabulated(in);
}

}  // namespace mprates
