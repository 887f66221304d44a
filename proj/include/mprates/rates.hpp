#pragma once

#include <complex>
#include <map>
#include <string>
#include <string_view>

#include "mprates/constants.hpp"
#include "mprates/greens.hpp"
#include "mprates/moments.hpp"

namespace mprates {

enum class Regime { FreeSpace, NearFieldClosedForm, FarFieldClosedForm, OracleExact };

std::string_view to_string(Regime regime);

/// Result of one rate evaluation. gamma_total = gamma0 + gamma_surface;
/// gamma_surface may be negative (far-field interference).
struct RateBreakdown {
  double gamma0 = 0.0;
  double gamma_surface = 0.0;
  double gamma_total = 0.0;
  Regime regime = Regime::FreeSpace;
  MomentKind moment_kind = MomentKind::E1;
  std::map<std::string, double> meta;

  static RateBreakdown assemble(double gamma0, double gamma_surface, Regime regime,
                                MomentKind kind);
  /// gamma_surface / gamma0.
  double ratio() const { return gamma_surface / gamma0; }
};

/// Free-space decay (electric) or spin-flip (magnetic) rate:
///   E1  w^3 d.d / (6 pi hbar c^3 eps0)
///   E2  w^5 / (20 pi hbar c^5 eps0) {d:d - tr(d)^2/3}
///   E3  2 w^7 / (105 pi hbar c^7 eps0) {d:d - d_aac d_bbc / 4}
///   M1  mu0 w^3 m.m / (6 pi hbar c^3)
///   M2  mu0 w^5 / (15 pi hbar c^5) {m:m - (m_ab m_ba + tr(m)^2)/4}
double gamma0(const MultipoleMoment& moment, const Frequency& freq,
              const PhysicalConstants& k = PhysicalConstants::si());

/// Near-field reflective correction above a dielectric (mu = 1) half-space.
/// Electric kinds use the leading-order kernel and scale as z^-(2l+1);
/// magnetic kinds use the next-to-leading-order curl kernel and scale as
/// z^-(2l-1). Rejects z <= 0 and Im eps < 0.
double near_field_correction(const MultipoleMoment& moment, const Frequency& freq,
                             const HalfSpaceGeometry& geom, cdouble eps,
                             const PhysicalConstants& k = PhysicalConstants::si());

/// Orientation-averaged near-field correction for electric kinds,
///   K_l eps'' / |eps+1|^2 (c / w z)^(2l+1) gamma0,  K = 1/2, 6, 135/2.
/// Magnetic kinds are refused.
double near_field_correction_iso(const MultipoleMoment& moment, const Frequency& freq,
                                 const HalfSpaceGeometry& geom, cdouble eps,
                                 const PhysicalConstants& k = PhysicalConstants::si());

/// Far-field (stationary phase) reflective correction with
/// r_te = (1 - sqrt eps) / (1 + sqrt eps); the phase arg r_te lies in (-pi, pi].
double far_field_correction(const MultipoleMoment& moment, const Frequency& freq,
                            const HalfSpaceGeometry& geom, cdouble eps,
                            const PhysicalConstants& k = PhysicalConstants::si());

/// (-1)^(l+1) (gamma0/2) |r_te| sin(2 w z / c + arg r_te) (c / w z), electric only.
double far_field_correction_iso(const MultipoleMoment& moment, const Frequency& freq,
                                const HalfSpaceGeometry& geom, cdouble eps,
                                const PhysicalConstants& k = PhysicalConstants::si());

/// |r_te| sin(2 q z + arg r_te), the common far-field oscillation.
double far_field_oscillation(const Frequency& freq, const HalfSpaceGeometry& geom, cdouble eps);

struct DualImage {
  MultipoleMoment moment;
  cdouble eps;
  cdouble mu;
};

/// Electric-magnetic duality: eps <-> mu with m = c d for electric moments
/// and d = -m / c for magnetic ones (E1 <-> M1, E2 <-> M2). Rates are
/// invariant under the map. The octupole has no magnetic partner and is
/// refused, as is a magnetic quadrupole that is not symmetric (its image
/// would not be a valid electric quadrupole).
DualImage duality_transform(const MultipoleMoment& moment, cdouble eps, cdouble mu,
                            const PhysicalConstants& k = PhysicalConstants::si());

/// Closed-form surface corrections for a half-space that is either purely
/// electric (mu = 1) or purely magnetic (eps = 1). The magnetic case is
/// evaluated through duality_transform. Throws for media with both
/// responses, which the closed forms do not cover.
double near_field_correction(const MultipoleMoment& moment, const Frequency& freq,
                             const HalfSpaceGeometry& geom, cdouble eps, cdouble mu,
                             const PhysicalConstants& k = PhysicalConstants::si());
double far_field_correction(const MultipoleMoment& moment, const Frequency& freq,
                            const HalfSpaceGeometry& geom, cdouble eps, cdouble mu,
                            const PhysicalConstants& k = PhysicalConstants::si());

}  // namespace mprates
