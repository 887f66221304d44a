#include "mprates/moments.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "mprates/constants.hpp"

namespace mprates {

std::string_view to_string(MomentKind kind) {
  switch (kind) {
    case MomentKind::E1: return "E1";
    case MomentKind::E2: return "E2";
    case MomentKind::E3: return "E3";
    case MomentKind::M1: return "M1";
    case MomentKind::M2: return "M2";
  }
  return "?";
}

MomentKind moment_kind_from_string(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char ch) { return std::toupper(ch); });
  for (auto kind : {MomentKind::E1, MomentKind::E2, MomentKind::E3, MomentKind::M1,
                    MomentKind::M2}) {
    if (upper == to_string(kind)) return kind;
  }
  throw InvalidArgument("unknown moment kind '" + std::string(name) +
                        "' (expected E1, E2, E3, M1 or M2)");
}

int tensor_rank(MomentKind kind) {
  switch (kind) {
    case MomentKind::E1:
    case MomentKind::M1: return 1;
    case MomentKind::E2:
    case MomentKind::M2: return 2;
    case MomentKind::E3: return 3;
  }
  return 0;
}

int multipole_order(MomentKind kind) { return tensor_rank(kind); }

bool is_electric(MomentKind kind) {
  return kind == MomentKind::E1 || kind == MomentKind::E2 || kind == MomentKind::E3;
}

bool is_magnetic(MomentKind kind) { return !is_electric(kind); }

std::size_t component_count(MomentKind kind) {
  switch (tensor_rank(kind)) {
    case 1: return 3;
    case 2: return 9;
    default: return 27;
  }
}

namespace {

void symmetrize_rank2(std::array<double, 27>& d, double scale) {
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double a = d[3 * i + j];
      const double b = d[3 * j + i];
      if (std::abs(a - b) > 1e-12 * scale) {
        throw InvalidArgument("electric quadrupole moment must be symmetric");
      }
      d[3 * i + j] = d[3 * j + i] = 0.5 * (a + b);
    }
  }
}

void symmetrize_rank3(std::array<double, 27>& d, double scale) {
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      for (int k = j; k < 3; ++k) {
        const std::array<int, 6> slots = {9 * i + 3 * j + k, 9 * i + 3 * k + j,
                                          9 * j + 3 * i + k, 9 * j + 3 * k + i,
                                          9 * k + 3 * i + j, 9 * k + 3 * j + i};
        double lo = d[slots[0]], hi = d[slots[0]], sum = 0.0;
        for (int s : slots) {
          lo = std::min(lo, d[s]);
          hi = std::max(hi, d[s]);
          sum += d[s];
        }
        if (hi - lo > 1e-12 * scale) {
          throw InvalidArgument("electric octupole moment must be fully symmetric");
        }
        for (int s : slots) d[s] = sum / 6.0;
      }
    }
  }
}

}  // namespace

MultipoleMoment::MultipoleMoment(MomentKind kind, std::span<const double> components)
    : kind_(kind) {
  if (components.size() != component_count(kind)) {
    throw InvalidArgument(std::string(to_string(kind)) + " moment needs " +
                          std::to_string(component_count(kind)) + " components, got " +
                          std::to_string(components.size()));
  }
  double scale = 0.0;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (!std::isfinite(components[i])) {
      throw InvalidArgument("moment components must be finite");
    }
    data_[i] = components[i];
    scale = std::max(scale, std::abs(components[i]));
  }
  if (kind == MomentKind::E2) symmetrize_rank2(data_, scale);
  if (kind == MomentKind::E3) symmetrize_rank3(data_, scale);
}

MultipoleMoment MultipoleMoment::electric_dipole(const std::array<double, 3>& d) {
  return {MomentKind::E1, d};
}
MultipoleMoment MultipoleMoment::electric_quadrupole(const std::array<double, 9>& d) {
  return {MomentKind::E2, d};
}
MultipoleMoment MultipoleMoment::electric_octupole(const std::array<double, 27>& d) {
  return {MomentKind::E3, d};
}
MultipoleMoment MultipoleMoment::magnetic_dipole(const std::array<double, 3>& m) {
  return {MomentKind::M1, m};
}
MultipoleMoment MultipoleMoment::magnetic_quadrupole(const std::array<double, 9>& m) {
  return {MomentKind::M2, m};
}

MultipoleMoment MultipoleMoment::scaled(double factor) const {
  MultipoleMoment out = *this;
  for (auto& x : out.data_) x *= factor;
  return out;
}

MultipoleMoment MultipoleMoment::with_kind(MomentKind kind) const {
  if (tensor_rank(kind) != rank()) {
    throw InvalidArgument("cannot reinterpret a rank-" + std::to_string(rank()) +
                          " moment as " + std::string(to_string(kind)));
  }
  return {kind, components()};
}

double MultipoleMoment::norm_squared() const {
  double s = 0.0;
  for (double x : components()) s += x * x;
  return s;
}

double double_dot(const MultipoleMoment& m) { return m.norm_squared(); }

double trace(const MultipoleMoment& m) {
  if (m.rank() != 2) throw InvalidArgument("trace needs a rank-2 moment");
  return m(0, 0) + m(1, 1) + m(2, 2);
}

double transpose_contraction(const MultipoleMoment& m) {
  if (m.rank() != 2) throw InvalidArgument("transpose contraction needs a rank-2 moment");
  double s = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) s += m(a, b) * m(b, a);
  return s;
}

double trace_contraction(const MultipoleMoment& m) {
  if (m.rank() != 3) throw InvalidArgument("trace contraction needs a rank-3 moment");
  double s = 0.0;
  for (int c = 0; c < 3; ++c) {
    const double t = m(0, 0, c) + m(1, 1, c) + m(2, 2, c);
    s += t * t;
  }
  return s;
}

}  // namespace mprates
