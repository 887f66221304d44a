#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

namespace mprates {

/// The five transition kinds: electric dipole, quadrupole, octupole and
/// magnetic dipole, quadrupole.
enum class MomentKind { E1, E2, E3, M1, M2 };

std::string_view to_string(MomentKind kind);
/// Parses "E1".."M2" (case-insensitive). Throws InvalidArgument otherwise.
MomentKind moment_kind_from_string(std::string_view name);

/// Tensor rank of the moment (1, 2 or 3).
int tensor_rank(MomentKind kind);
/// Multipole order l: 1 for dipoles, 2 for quadrupoles, 3 for the octupole.
int multipole_order(MomentKind kind);
bool is_electric(MomentKind kind);
bool is_magnetic(MomentKind kind);
/// Number of dense components, 3^rank.
std::size_t component_count(MomentKind kind);

/// A primitive (not trace-subtracted) multipole transition moment.
///
/// Components are stored densely in row-major index order: d_i, d_ij at
/// 3i+j, d_ijk at 9i+3j+k. SI units: C m^l for electric kinds, A m^2 for
/// M1 and A m^3 for M2.
///
/// E2 is symmetric and E3 fully symmetric; construction symmetrizes the
/// input and rejects it if the asymmetry exceeds 1e-12 relative to the
/// largest component. M2 has no symmetry constraint.
class MultipoleMoment {
 public:
  /// Builds a moment of the given kind from its dense components.
  /// Throws InvalidArgument on a size mismatch, a non-finite component or a
  /// symmetry violation.
  MultipoleMoment(MomentKind kind, std::span<const double> components);

  static MultipoleMoment electric_dipole(const std::array<double, 3>& d);
  static MultipoleMoment electric_quadrupole(const std::array<double, 9>& d);
  static MultipoleMoment electric_octupole(const std::array<double, 27>& d);
  static MultipoleMoment magnetic_dipole(const std::array<double, 3>& m);
  static MultipoleMoment magnetic_quadrupole(const std::array<double, 9>& m);

  MomentKind kind() const { return kind_; }
  int rank() const { return tensor_rank(kind_); }
  std::span<const double> components() const {
    return {data_.data(), component_count(kind_)};
  }

  double operator()(int i) const { return data_[i]; }
  double operator()(int i, int j) const { return data_[3 * i + j]; }
  double operator()(int i, int j, int k) const { return data_[9 * i + 3 * j + k]; }

  /// Same kind, every component multiplied by `factor`.
  MultipoleMoment scaled(double factor) const;
  /// Same components reinterpreted as `kind` (ranks must match).
  MultipoleMoment with_kind(MomentKind kind) const;

  /// Sum of squares of all components (d.d, d:d, d:.d).
  double norm_squared() const;

 private:
  MomentKind kind_;
  std::array<double, 27> data_{};
};

/// Full contraction d:d of a rank-2 moment with itself.
double double_dot(const MultipoleMoment& m);
/// Trace d_aa of a rank-2 moment.
double trace(const MultipoleMoment& m);
/// d_ab d_ba for a rank-2 moment.
double transpose_contraction(const MultipoleMoment& m);
/// d_aac d_bbc for a rank-3 moment.
double trace_contraction(const MultipoleMoment& m);

}  // namespace mprates
