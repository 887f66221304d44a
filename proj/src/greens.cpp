#include "mprates/greens.hpp"

#include <cmath>

namespace mprates {

namespace {
constexpr cdouble kI{0.0, 1.0};
constexpr double kPassivityTolerance = 1e-12;
}  // namespace

Frequency Frequency::from_omega(double omega, const PhysicalConstants& constants) {
  if (!(omega > 0) || !std::isfinite(omega)) {
    throw InvalidArgument("transition frequency omega must be positive and finite");
  }
  return {omega, omega / constants.c};
}

HalfSpaceGeometry HalfSpaceGeometry::at_height(double z) {
  if (!(z > 0) || !std::isfinite(z)) {
    throw InvalidArgument("atom-surface distance z must be positive and finite");
  }
  return {z};
}

Matrix3c free_space_green(const Vector3& r, const Vector3& r_prime, const Frequency& freq) {
  const Vector3 sep = r - r_prime;
  const double dist = sep.norm();
  if (dist == 0.0) {
    throw InvalidArgument(
        "free-space Green function is singular at coincident points; use "
        "free_space_img_coincidence for the imaginary part");
  }
  const Vector3 n = sep / dist;
  const double x = freq.q * dist;
  const cdouble phase = std::exp(kI * x) / (4.0 * kPi * dist);
  // Transverse and longitudinal radial profiles of (dd + q^2) e^{iqR}/(4 pi q^2 R).
  const cdouble transverse = (1.0 + kI / x - 1.0 / (x * x)) * phase;
  const cdouble longitudinal = (-1.0 - 3.0 * kI / x + 3.0 / (x * x)) * phase;
  Matrix3c g;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      g(a, b) = (a == b ? transverse : cdouble(0.0)) + longitudinal * n(a) * n(b);
  return g;
}

Eigen::Matrix3d free_space_img_coincidence(const Frequency& freq) {
  return Eigen::Matrix3d::Identity() * (freq.q / (6.0 * kPi));
}

cdouble longitudinal_wavenumber(cdouble x) {
  cdouble b = std::sqrt(x);
  if (b.imag() < 0.0) b = -b;
  return b;
}

FresnelCoefficients fresnel(const Frequency& freq, double k_par, cdouble eps, cdouble mu) {
  if (!(k_par >= 0) || !std::isfinite(k_par)) {
    throw InvalidArgument("transverse wavenumber must be non-negative");
  }
  if (eps.imag() < -kPassivityTolerance || mu.imag() < -kPassivityTolerance) {
    throw InvalidArgument("medium is not passive: Im eps and Im mu must be >= 0");
  }
  // q^2 - k^2 is formed as a real number so that -0.0 never leaks into the
  // branch selection for lossless media.
  const double q2 = freq.q * freq.q;
  return fresnel_from_upper(freq, k_par,
                            longitudinal_wavenumber(cdouble(q2 - k_par * k_par, 0.0)), eps, mu);
}

FresnelCoefficients fresnel_from_upper(const Frequency& freq, double k_par, cdouble beta_upper,
                                       cdouble eps, cdouble mu) {
  FresnelCoefficients f;
  f.beta_upper = beta_upper;
  const cdouble lower_sq = freq.q * freq.q * eps * mu - k_par * k_par;
  f.beta_lower = longitudinal_wavenumber(cdouble(lower_sq.real(), lower_sq.imag() + 0.0));
  f.r_tm = (eps * f.beta_upper - f.beta_lower) / (eps * f.beta_upper + f.beta_lower);
  f.r_te = (mu * f.beta_upper - f.beta_lower) / (mu * f.beta_upper + f.beta_lower);
  return f;
}

KernelScalars reflection_kernel_scalars(const Frequency& freq, const FresnelCoefficients& f,
                                        double k_par, double z, double z_prime) {
  const cdouble b = f.beta_upper;
  const double q2 = freq.q * freq.q;
  const cdouble pref = -kI / (2.0 * b) * std::exp(kI * b * (std::abs(z) + std::abs(z_prime)));
  KernelScalars s;
  s.tm_transverse = pref * f.r_tm * b * b / q2;
  s.te_transverse = -pref * f.r_te;
  s.tm_normal = -pref * f.r_tm * k_par * k_par / q2;
  s.tm_mixed = pref * f.r_tm * b * k_par / q2;
  return s;
}

Matrix3c assemble_kernel(const KernelScalars& s, double c, double sn) {
  Matrix3c m;
  m(0, 0) = s.tm_transverse * c * c + s.te_transverse * sn * sn;
  m(1, 1) = s.tm_transverse * sn * sn + s.te_transverse * c * c;
  m(0, 1) = m(1, 0) = (s.tm_transverse - s.te_transverse) * c * sn;
  m(2, 2) = s.tm_normal;
  m(0, 2) = s.tm_mixed * c;
  m(2, 0) = -m(0, 2);
  m(1, 2) = s.tm_mixed * sn;
  m(2, 1) = -m(1, 2);
  return m;
}

ReflectionKernel reflection_kernel(const Frequency& freq, double k_par, double cos_phi,
                                   double sin_phi, double z, double z_prime, cdouble eps,
                                   cdouble mu) {
  if (!(z > 0) || !(z_prime > 0)) {
    throw InvalidArgument("reflection kernel needs both points above the interface");
  }
  ReflectionKernel k;
  k.k_par = k_par;
  k.cos_phi = cos_phi;
  k.sin_phi = sin_phi;
  k.fresnel = fresnel(freq, k_par, eps, mu);
  k.scalars = reflection_kernel_scalars(freq, k.fresnel, k_par, z, z_prime);
  k.components = assemble_kernel(k.scalars, cos_phi, sin_phi);
  return k;
}

ReflectionKernel reflection_kernel_xy(const Frequency& freq, double kx, double ky, double z,
                                      double z_prime, cdouble eps, cdouble mu) {
  const double k = std::hypot(kx, ky);
  const double c = k > 0 ? kx / k : 1.0;
  const double s = k > 0 ? ky / k : 0.0;
  return reflection_kernel(freq, k, c, s, z, z_prime, eps, mu);
}

Matrix3c near_field_kernel_lo(const Frequency& freq, double kx, double ky, double z,
                              double z_prime, cdouble eps) {
  const double k = std::hypot(kx, ky);
  const cdouble pref = (eps - 1.0) / (eps + 1.0) / (2.0 * freq.q * freq.q) *
                       std::exp(-k * (std::abs(z) + std::abs(z_prime)));
  const double c = k > 0 ? kx / k : 1.0;
  const double s = k > 0 ? ky / k : 0.0;
  Matrix3c m;
  m << k * c * c, k * c * s, -kI * kx,
       k * c * s, k * s * s, -kI * ky,
       kI * kx,   kI * ky,   k;
  return pref * m;
}

Matrix3c near_field_curl_kernel_nlo(const Frequency& freq, double kx, double ky, double z,
                                    double z_prime, cdouble eps) {
  const double k = std::hypot(kx, ky);
  if (k == 0.0) return Matrix3c::Zero();
  const cdouble pref = freq.q * freq.q * (eps - 1.0) / (8.0 * k * k * k) *
                       std::exp(-k * (std::abs(z) + std::abs(z_prime)));
  Matrix3c m;
  m << kx * kx,     kx * ky,     -kI * kx * k,
       kx * ky,     ky * ky,     -kI * ky * k,
       kI * kx * k, kI * ky * k, k * k;
  return pref * m;
}

cdouble stationary_point_r_te(cdouble eps) {
  const cdouble n = longitudinal_wavenumber(eps);
  return (1.0 - n) / (1.0 + n);
}

namespace {
Matrix3c far_field_shape(const Frequency& freq, double k_par, double z, double z_prime,
                         cdouble amplitude) {
  const cdouble b = longitudinal_wavenumber(cdouble(freq.q * freq.q - k_par * k_par, 0.0));
  const cdouble v = amplitude * std::exp(kI * b * (std::abs(z) + std::abs(z_prime)));
  Matrix3c m = Matrix3c::Zero();
  m(0, 0) = m(1, 1) = v;
  return m;
}
}  // namespace

Matrix3c far_field_kernel(const Frequency& freq, double k_par, double z, double z_prime,
                          cdouble eps) {
  return far_field_shape(freq, k_par, z, z_prime,
                         kI / (2.0 * freq.q) * stationary_point_r_te(eps));
}

Matrix3c far_field_curl_kernel(const Frequency& freq, double k_par, double z, double z_prime,
                               cdouble eps) {
  return far_field_shape(freq, k_par, z, z_prime,
                         kI * freq.q / 2.0 * stationary_point_r_te(eps));
}

}  // namespace mprates
