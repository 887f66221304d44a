#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

#include "mprates/constants.hpp"
#include "mprates/greens.hpp"
#include "mprates/moments.hpp"
#include "mprates/rational.hpp"

namespace mprates {

/// Controls the numerical surface-rate integral.
struct QuadratureSpec {
  double rel_tol = 1e-8;
  /// Absolute floor on the error, in rate units (1/s for SI).
  double abs_tol = 0.0;
  /// Evanescent cutoff k_max = q + W / (2z); the integrand carries
  /// exp(-2 kappa z) <= exp(-W) beyond it.
  double k_max_window = 40.0;
  int max_subdivisions = 2000;

  /// Throws InvalidArgument unless rel_tol in (0, 1e-2], abs_tol >= 0, W > 0
  /// and max_subdivisions >= 1.
  void validate() const;
};

/// One term coef * kx^ex * ky^ey * kz^ez.
struct Monomial {
  double coef;
  int ex, ey, ez;
};

/// The multipole differential operator in k-space. A derivative d_a becomes
/// i k_a, so the operator is i^degree times a homogeneous real polynomial
/// vector P(k) with one component per field index. Degree is l - 1 for
/// electric and l for magnetic kinds (one extra curl).
struct KSpaceOperator {
  MomentKind kind = MomentKind::E1;
  int degree = 0;
  std::array<std::vector<Monomial>, 3> slots;

  static KSpaceOperator from_moment(const MultipoleMoment& moment);

  /// i^degree P(k) at a (possibly complex) wavevector.
  Eigen::Vector3cd apply(const Eigen::Vector3cd& k) const;
};

/// Exact angular moment: the integral of cos^a(phi) sin^b(phi) over
/// [0, 2 pi], divided by pi. Zero unless a and b are even. a + b <= 8.
Rational angular_moment(int a, int b);

struct OracleResult {
  double gamma_surface = 0.0;
  /// Summed quadrature error estimates, in rate units.
  double residual = 0.0;
  /// Magnitude estimate of the truncated evanescent tail, in rate units.
  double tail_estimate = 0.0;
  int subintervals = 0;
  bool roundoff_limited = false;
  double propagating_part = 0.0;
  double evanescent_part = 0.0;
};

/// Raised when the adaptive quadrature exhausts max_subdivisions.
class OracleConvergenceError : public NumericalError {
 public:
  OracleConvergenceError(const std::string& what, double partial, double residual)
      : NumericalError(what), partial_value(partial), residual(residual) {}
  double partial_value;
  double residual;
};

/// Surface correction to the rate by direct quadrature of the reflection
/// kernel. The multipole operators act analytically in k-space
/// (d -> i k for the field point, d' -> i k~ for the source point with
/// k = (kx, ky, b_up), k~ = (-kx, -ky, b_up)), the azimuthal integral is
/// done exactly from angular_moment, and the k_par integral is split at
/// k_par = q into a propagating part (k = q sin t) and an evanescent part
/// (k = q + u^2), both integrated adaptively.
///
/// Rejects z <= 0, active media, real eps or mu below -1 (surface pole on
/// the integration path), and heights so small that k_max overflows.
OracleResult gamma_surface_exact(const MultipoleMoment& moment, const Frequency& freq,
                                 const HalfSpaceGeometry& geom, cdouble eps, cdouble mu = 1.0,
                                 const QuadratureSpec& spec = {},
                                 const PhysicalConstants& k = PhysicalConstants::si());

/// Orientation-averaged surface correction for electric kinds. The rate is
/// a quadratic form in the moment, so its rotational average is the form
/// applied to <m (x) m>; that averaged tensor is positive semidefinite and is
/// decomposed into eigen-moments, each evaluated with gamma_surface_exact
/// and weighted by its eigenvalue. Magnetic kinds are refused.
OracleResult gamma_surface_exact_iso(const MultipoleMoment& moment, const Frequency& freq,
                                     const HalfSpaceGeometry& geom, cdouble eps, cdouble mu = 1.0,
                                     const QuadratureSpec& spec = {},
                                     const PhysicalConstants& k = PhysicalConstants::si());

/// Free-space rate from the plane-wave representation
///   Im G0(R) = (q / 16 pi^2) * integral over the unit sphere of
///              (I - n n) exp(i q n.R),
/// with the multipole operators applied to the exponential. The sphere
/// integral uses an 8-point Gauss-Legendre rule in cos(theta) and a
/// 16-point trapezoid rule in phi, exact for the polynomial integrands of
/// every supported kind (degree <= 6).
double gamma_free_exact(const MultipoleMoment& moment, const Frequency& freq,
                        const PhysicalConstants& k = PhysicalConstants::si());

}  // namespace mprates
