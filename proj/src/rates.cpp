#include "mprates/rates.hpp"

#include <cmath>

#include "mprates/tables.hpp"

namespace mprates {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::FreeSpace: return "free_space";
    case Regime::NearFieldClosedForm: return "near_field_closed_form";
    case Regime::FarFieldClosedForm: return "far_field_closed_form";
    case Regime::OracleExact: return "oracle_exact";
  }
  return "?";
}

RateBreakdown RateBreakdown::assemble(double gamma0, double gamma_surface, Regime regime,
                                      MomentKind kind) {
  RateBreakdown r;
  r.gamma0 = gamma0;
  r.gamma_surface = gamma_surface;
  r.gamma_total = gamma0 + gamma_surface;
  r.regime = regime;
  r.moment_kind = kind;
  return r;
}

namespace {

void require_passive(cdouble eps) {
  if (eps.imag() < -1e-12) {
    throw InvalidArgument("medium is not passive: Im eps must be >= 0");
  }
}

// eps'' / |eps + 1|^2
double loss_factor(cdouble eps) { return eps.imag() / std::norm(eps + 1.0); }

void require_electric(MomentKind kind, std::string_view what) {
  if (is_magnetic(kind)) {
    throw InvalidArgument(std::string(what) +
                          ": orientation averaging of magnetic moments is refused (the spin "
                          "is quantized along a fixed axis)");
  }
}

}  // namespace

double gamma0(const MultipoleMoment& m, const Frequency& freq, const PhysicalConstants& k) {
  const double w = freq.omega;
  const double c = k.c;
  switch (m.kind()) {
    case MomentKind::E1:
      return std::pow(w, 3) * m.norm_squared() / (6 * kPi * k.hbar * std::pow(c, 3) * k.eps0);
    case MomentKind::E2: {
      const double tr = trace(m);
      return std::pow(w, 5) / (20 * kPi * k.hbar * std::pow(c, 5) * k.eps0) *
             (double_dot(m) - tr * tr / 3.0);
    }
    case MomentKind::E3:
      return 2 * std::pow(w, 7) / (105 * kPi * k.hbar * std::pow(c, 7) * k.eps0) *
             (double_dot(m) - 0.25 * trace_contraction(m));
    case MomentKind::M1:
      return k.mu0 * std::pow(w, 3) * m.norm_squared() / (6 * kPi * k.hbar * std::pow(c, 3));
    case MomentKind::M2: {
      const double tr = trace(m);
      return k.mu0 * std::pow(w, 5) / (15 * kPi * k.hbar * std::pow(c, 5)) *
             (double_dot(m) - 0.25 * (transpose_contraction(m) + tr * tr));
    }
  }
  return 0.0;
}

double near_field_correction(const MultipoleMoment& m, const Frequency& freq,
                             const HalfSpaceGeometry& geom, cdouble eps,
                             const PhysicalConstants& k) {
  require_passive(eps);
  const double z = HalfSpaceGeometry::at_height(geom.z_atom).z_atom;
  const double w2c2 = freq.omega * freq.omega / (k.c * k.c);
  switch (m.kind()) {
    case MomentKind::E1:
      return loss_factor(eps) / (16 * kPi * k.hbar * k.eps0 * std::pow(z, 3)) *
             (m(0) * m(0) + m(1) * m(1) + 2 * m(2) * m(2));
    case MomentKind::E2:
      return 3 * loss_factor(eps) / (64 * kPi * k.hbar * k.eps0 * std::pow(z, 5)) *
             near_field_form(MomentKind::E2).evaluate(m);
    case MomentKind::E3:
      return 45 * loss_factor(eps) / (256 * kPi * k.hbar * k.eps0 * std::pow(z, 7)) *
             near_field_form(MomentKind::E3).evaluate(m);
    case MomentKind::M1:
      return k.mu0 * w2c2 * eps.imag() / (64 * kPi * k.hbar * z) *
             (m(0) * m(0) + m(1) * m(1) + 2 * m(2) * m(2));
    case MomentKind::M2:
      return k.mu0 * w2c2 * eps.imag() / (512 * kPi * k.hbar * std::pow(z, 3)) *
             near_field_form(MomentKind::M2).evaluate(m);
  }
  return 0.0;
}

double near_field_correction_iso(const MultipoleMoment& m, const Frequency& freq,
                                 const HalfSpaceGeometry& geom, cdouble eps,
                                 const PhysicalConstants& k) {
  require_electric(m.kind(), "near_field_correction_iso");
  require_passive(eps);
  const double z = HalfSpaceGeometry::at_height(geom.z_atom).z_atom;
  const int l = multipole_order(m.kind());
  static constexpr double prefactor[] = {0.5, 6.0, 67.5};
  const double inv_qz = k.c / (freq.omega * z);
  return prefactor[l - 1] * loss_factor(eps) * std::pow(inv_qz, 2 * l + 1) *
         gamma0(m, freq, k);
}

double far_field_oscillation(const Frequency& freq, const HalfSpaceGeometry& geom,
                             cdouble eps) {
  const cdouble r = stationary_point_r_te(eps);
  double phase = std::arg(r);
  if (phase <= -kPi) phase = kPi;
  return std::abs(r) * std::sin(2.0 * freq.q * geom.z_atom + phase);
}

double far_field_correction(const MultipoleMoment& m, const Frequency& freq,
                            const HalfSpaceGeometry& geom, cdouble eps,
                            const PhysicalConstants& k) {
  require_passive(eps);
  const double z = HalfSpaceGeometry::at_height(geom.z_atom).z_atom;
  const double osc = far_field_oscillation(freq, geom, eps);
  const double q = freq.omega / k.c;
  const double base = osc / (8 * kPi * k.hbar * z);
  switch (m.kind()) {
    case MomentKind::E1:
      return q * q / k.eps0 * base * (m(0) * m(0) + m(1) * m(1));
    case MomentKind::E2:
      return -std::pow(q, 4) / k.eps0 * base * (m(2, 0) * m(2, 0) + m(2, 1) * m(2, 1));
    case MomentKind::E3:
      return std::pow(q, 6) / k.eps0 * base *
             (m(2, 2, 0) * m(2, 2, 0) + m(2, 2, 1) * m(2, 2, 1));
    case MomentKind::M1:
      return -k.mu0 * q * q * base * (m(0) * m(0) + m(1) * m(1));
    case MomentKind::M2:
      return k.mu0 * std::pow(q, 4) * base * (m(2, 0) * m(2, 0) + m(2, 1) * m(2, 1));
  }
  return 0.0;
}

double far_field_correction_iso(const MultipoleMoment& m, const Frequency& freq,
                                const HalfSpaceGeometry& geom, cdouble eps,
                                const PhysicalConstants& k) {
  require_electric(m.kind(), "far_field_correction_iso");
  require_passive(eps);
  const double z = HalfSpaceGeometry::at_height(geom.z_atom).z_atom;
  const int l = multipole_order(m.kind());
  const double sign = (l % 2 == 1) ? 1.0 : -1.0;  // (-1)^(l+1)
  return sign * 0.5 * gamma0(m, freq, k) * far_field_oscillation(freq, geom, eps) * k.c /
         (freq.omega * z);
}

DualImage duality_transform(const MultipoleMoment& m, cdouble eps, cdouble mu,
                            const PhysicalConstants& k) {
  switch (m.kind()) {
    case MomentKind::E1: return {m.scaled(k.c).with_kind(MomentKind::M1), mu, eps};
    case MomentKind::E2: return {m.scaled(k.c).with_kind(MomentKind::M2), mu, eps};
    case MomentKind::M1: return {m.scaled(-1.0 / k.c).with_kind(MomentKind::E1), mu, eps};
    case MomentKind::M2: {
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
          if (m(a, b) != m(b, a)) {
            throw InvalidArgument(
                "duality: a non-symmetric magnetic quadrupole has no electric quadrupole "
                "image");
          }
      return {m.scaled(-1.0 / k.c).with_kind(MomentKind::E2), mu, eps};
    }
    case MomentKind::E3:
      throw InvalidArgument(
          "duality: the electric octupole has no magnetic partner among the supported kinds");
  }
  throw InvalidArgument("duality: unknown moment kind");
}

namespace {

template <class ElectricForm>
double via_duality(const MultipoleMoment& m, cdouble eps, cdouble mu,
                   const PhysicalConstants& k, ElectricForm&& form) {
  if (mu == cdouble(1.0)) return form(m, eps);
  if (eps != cdouble(1.0)) {
    throw InvalidArgument(
        "closed forms cover purely electric (mu = 1) or purely magnetic (eps = 1) "
        "half-spaces only; use the oracle for mixed media");
  }
  const DualImage img = duality_transform(m, eps, mu, k);
  return form(img.moment, img.eps);
}

}  // namespace

double near_field_correction(const MultipoleMoment& m, const Frequency& freq,
                             const HalfSpaceGeometry& geom, cdouble eps, cdouble mu,
                             const PhysicalConstants& k) {
  return via_duality(m, eps, mu, k, [&](const MultipoleMoment& mm, cdouble e) {
    return near_field_correction(mm, freq, geom, e, k);
  });
}

double far_field_correction(const MultipoleMoment& m, const Frequency& freq,
                            const HalfSpaceGeometry& geom, cdouble eps, cdouble mu,
                            const PhysicalConstants& k) {
  return via_duality(m, eps, mu, k, [&](const MultipoleMoment& mm, cdouble e) {
    return far_field_correction(mm, freq, geom, e, k);
  });
}

}  // namespace mprates
