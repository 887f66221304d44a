#pragma once

#include <Eigen/Dense>
#include <complex>

#include "mprates/constants.hpp"

namespace mprates {

using cdouble = std::complex<double>;
using Matrix3c = Eigen::Matrix3cd;
using Vector3 = Eigen::Vector3d;

/// Transition angular frequency and its vacuum wavenumber q = omega / c.
struct Frequency {
  double omega;
  double q;

  /// Throws InvalidArgument unless omega > 0.
  static Frequency from_omega(double omega,
                              const PhysicalConstants& constants = PhysicalConstants::si());
};

/// Atom at height z_atom above the interface z = 0; the medium fills z < 0.
struct HalfSpaceGeometry {
  double z_atom;

  /// Throws InvalidArgument unless z > 0.
  static HalfSpaceGeometry at_height(double z);
};

/// Free-space dyadic Green function
///   G0_ab = (d_a d_b + q^2 delta_ab) exp(iqR) / (4 pi q^2 R),  R = |r - r'|,
/// with the derivatives taken analytically. Throws InvalidArgument at
/// r == r' (use free_space_img_coincidence there).
Matrix3c free_space_green(const Vector3& r, const Vector3& r_prime, const Frequency& freq);

/// Im G0(r, r, omega) = (q / 6 pi) * identity.
Eigen::Matrix3d free_space_img_coincidence(const Frequency& freq);

/// Longitudinal wavenumber sqrt(x) on the branch Im >= 0. For Im == 0 the
/// principal root (Re >= 0) is kept, which selects Re > 0 for propagating
/// and Im > 0 for evanescent waves in lossless media.
cdouble longitudinal_wavenumber(cdouble x);

struct FresnelCoefficients {
  cdouble r_tm;
  cdouble r_te;
  cdouble beta_upper;  // sqrt(q^2 - k^2) in vacuum
  cdouble beta_lower;  // sqrt(q^2 eps mu - k^2) in the medium
};

/// Fresnel reflection at the vacuum/medium interface,
///   r_tm = (eps b_up - b_lo) / (eps b_up + b_lo),
///   r_te = (mu  b_up - b_lo) / (mu  b_up + b_lo).
/// mu = 1 gives the purely dielectric coefficients. Rejects k_par < 0 and
/// active media (Im eps or Im mu below -1e-12).
FresnelCoefficients fresnel(const Frequency& freq, double k_par, cdouble eps,
                            cdouble mu = 1.0);

/// Same, with the vacuum longitudinal wavenumber supplied by the caller.
/// Quadrature code passes b_up computed from its own substitution variable,
/// which keeps full relative precision close to the branch point k = q.
FresnelCoefficients fresnel_from_upper(const Frequency& freq, double k_par, cdouble beta_upper,
                                       cdouble eps, cdouble mu = 1.0);

/// Angle-independent pieces of the reflection kernel. With direction cosines
/// (c, s) of k_par:
///   R_xx = A c^2 + B s^2    R_yy = A s^2 + B c^2    R_xy = R_yx = (A - B) c s
///   R_zz = C                R_xz = -R_zx = D c      R_yz = -R_zy = D s
struct KernelScalars {
  cdouble tm_transverse;  // A
  cdouble te_transverse;  // B
  cdouble tm_normal;      // C
  cdouble tm_mixed;       // D
};

/// Reflected part of the half-space Green function in (k_par, z, z')
/// representation for source and field points above the interface.
struct ReflectionKernel {
  double k_par = 0.0;
  double cos_phi = 1.0;
  double sin_phi = 0.0;
  FresnelCoefficients fresnel{};
  KernelScalars scalars{};
  Matrix3c components = Matrix3c::Zero();
};

/// Scalars of the reflection kernel. The common factor
/// exp(i b_up (z + z')) is included.
KernelScalars reflection_kernel_scalars(const Frequency& freq, const FresnelCoefficients& f,
                                        double k_par, double z, double z_prime);

Matrix3c assemble_kernel(const KernelScalars& s, double cos_phi, double sin_phi);

/// Full kernel for transverse wavevector k_par (cos_phi, sin_phi). Direction
/// cosines are passed separately so that k_par = 0 is regular.
ReflectionKernel reflection_kernel(const Frequency& freq, double k_par, double cos_phi,
                                   double sin_phi, double z, double z_prime, cdouble eps,
                                   cdouble mu = 1.0);

/// Same, from Cartesian (k_x, k_y); the direction defaults to x at the origin.
ReflectionKernel reflection_kernel_xy(const Frequency& freq, double kx, double ky, double z,
                                      double z_prime, cdouble eps, cdouble mu = 1.0);

/// Leading-order near-field reflection kernel,
///   (1/2q^2) (eps-1)/(eps+1) exp(-k(z+z')) [[kx^2/k, kxky/k, -i kx],
///                                           [kxky/k, ky^2/k, -i ky],
///                                           [i kx,   i ky,    k   ]].
Matrix3c near_field_kernel_lo(const Frequency& freq, double kx, double ky, double z,
                              double z_prime, cdouble eps);

/// Next-to-leading-order near-field double curl of the reflection kernel,
///   q^2 (eps-1)/(8k^3) exp(-k(z+z')) [[kx^2, kxky, -i kx k],
///                                     [kxky, ky^2, -i ky k],
///                                     [i kx k, i ky k, k^2]].
/// Returns zero at k = 0.
Matrix3c near_field_curl_kernel_nlo(const Frequency& freq, double kx, double ky, double z,
                                    double z_prime, cdouble eps);

/// r_te at normal incidence, (1 - sqrt eps) / (1 + sqrt eps); r_tm = -r_te there.
cdouble stationary_point_r_te(cdouble eps);

/// Far-field (stationary phase) kernel (i/2q) r_te exp(i sqrt(q^2-k^2)(z+z')) diag(1,1,0).
Matrix3c far_field_kernel(const Frequency& freq, double k_par, double z, double z_prime,
                          cdouble eps);

/// Far-field double curl (iq/2) r_te exp(i sqrt(q^2-k^2)(z+z')) diag(1,1,0).
Matrix3c far_field_curl_kernel(const Frequency& freq, double k_par, double z, double z_prime,
                               cdouble eps);

}  // namespace mprates
