#include <cmath>
#include <random>

#include "doctest.h"
#include "mprates/greens.hpp"
#include "support.hpp"

using namespace mprates;

namespace {
const PhysicalConstants kNatural = PhysicalConstants::natural();
Frequency natural_q(double q) { return Frequency::from_omega(q, kNatural); }
}  // namespace

TEST_CASE("frequency and geometry validation") {
  CHECK_THROWS_AS(Frequency::from_omega(0.0), InvalidArgument);
  CHECK_THROWS_AS(HalfSpaceGeometry::at_height(-1e-9), InvalidArgument);
  const auto f = Frequency::from_omega(3.0e15);
  CHECK(f.q == doctest::Approx(3.0e15 / PhysicalConstants::si().c));
}

TEST_CASE("free-space Green function: transverse profile one wavelength apart") {
  const auto f = natural_q(1.0);
  const double d = 2.0 * kPi;
  const Matrix3c g = free_space_green(Vector3(0, 0, 0), Vector3(0, 0, d), f);
  const double qd = f.q * d;
  const cdouble expected = (1.0 + cdouble(0, 1) / qd - 1.0 / (qd * qd)) *
                           std::exp(cdouble(0, qd)) / (4.0 * kPi * d);
  CHECK(std::abs(g(0, 0) - expected) < 1e-14);
  CHECK(std::abs(g(1, 1) - expected) < 1e-14);
  CHECK(std::abs(g(0, 2)) < 1e-16);
  CHECK(std::abs(g(1, 2)) < 1e-16);
  CHECK(std::abs(g(0, 1)) < 1e-16);
}

TEST_CASE("free-space Green function: coincidence") {
  const auto f = natural_q(1.0);
  CHECK_THROWS_AS(free_space_green(Vector3(1, 2, 3), Vector3(1, 2, 3), f), InvalidArgument);
  const Matrix3c g = free_space_green(Vector3(0, 0, 0), Vector3(1e-4, 2e-4, -1e-4), f);
  for (int i = 0; i < 3; ++i) CHECK(g(i, i).imag() == doctest::Approx(1.0 / (6.0 * kPi)).epsilon(1e-7));
  const auto im = free_space_img_coincidence(f);
  CHECK(im(0, 0) == doctest::Approx(1.0 / (6.0 * kPi)));
  CHECK(im.trace() == doctest::Approx(1.0 / (2.0 * kPi)));
  CHECK(free_space_img_coincidence(natural_q(2.0))(1, 1) / im(1, 1) == doctest::Approx(2.0));
}

TEST_CASE("Fresnel coefficients") {
  const auto f = natural_q(1.0);
  SUBCASE("no interface") {
    const auto r = fresnel(f, 0.7, 1.0);
    CHECK(std::abs(r.r_tm) == 0.0);
    CHECK(std::abs(r.r_te) == 0.0);
  }
  SUBCASE("normal incidence on eps = 4") {
    const auto r = fresnel(f, 0.0, 4.0);
    CHECK(std::abs(r.beta_lower - 2.0) < 1e-15);
    CHECK(std::abs(r.beta_upper - 1.0) < 1e-15);
    CHECK(std::abs(r.r_tm - 1.0 / 3.0) < 1e-15);
    CHECK(std::abs(r.r_te + 1.0 / 3.0) < 1e-15);
  }
  SUBCASE("large k_par limits") {
    const cdouble eps(2.0, 0.5);
    const auto r = fresnel(f, 1e6, eps);
    CHECK(std::abs(r.r_tm - (eps - 1.0) / (eps + 1.0)) < 1e-9);
    CHECK(std::abs(r.r_te) < 1e-9);
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(fresnel(f, 0.5, cdouble(2.0, -0.1)), InvalidArgument);
    CHECK_THROWS_AS(fresnel(f, -0.5, 2.0), InvalidArgument);
    CHECK_THROWS_AS(fresnel(f, 0.5, 2.0, cdouble(1.0, -0.1)), InvalidArgument);
  }
}

TEST_CASE("longitudinal wavenumbers stay on the Im >= 0 branch") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto f = natural_q(1.0);
  for (int i = 0; i < 1000; ++i) {
    const cdouble eps(-5.0 + 10.0 * u(rng), 1e-3 + 5.0 * u(rng));
    const auto r = fresnel(f, 5.0 * u(rng), eps);
    REQUIRE(r.beta_upper.imag() >= 0.0);
    REQUIRE(r.beta_lower.imag() >= 0.0);
  }
  CHECK(longitudinal_wavenumber(-4.0) == cdouble(0.0, 2.0));
  CHECK(longitudinal_wavenumber(4.0) == cdouble(2.0, 0.0));
}

TEST_CASE("reflection kernel structure") {
  const auto f = natural_q(1.0);
  SUBCASE("vacuum gives zero") {
    CHECK(reflection_kernel(f, 0.4, 0.6, 0.8, 1.0, 1.0, 1.0).components.norm() == 0.0);
  }
  SUBCASE("k_y = 0 kills xy and yz") {
    const auto r = reflection_kernel_xy(f, 0.5, 0.0, 1.0, 1.0, cdouble(2, 1));
    CHECK(std::abs(r.components(0, 1)) == 0.0);
    CHECK(std::abs(r.components(1, 2)) == 0.0);
  }
  SUBCASE("zz component by direct substitution") {
    const cdouble eps(2.0, 1.0);
    const double z = 1.0, k = 0.5;
    const auto r = reflection_kernel(f, k, 1.0, 0.0, z, z, eps);
    const cdouble beta = std::sqrt(1.0 - k * k);
    const cdouble n = std::sqrt(eps - k * k);
    const cdouble r_tm = (eps * beta - n) / (eps * beta + n);
    const cdouble expected =
        cdouble(0, 1) / (2.0 * beta) * std::exp(cdouble(0, 2) * beta * z) * r_tm * k * k;
    CHECK(std::abs(r.components(2, 2) - expected) < 1e-15);
  }
  SUBCASE("symmetries for random inputs") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      const cdouble eps(0.5 + 5 * u(rng), 5 * u(rng));
      const auto r = reflection_kernel_xy(f, 3 * u(rng) - 1.5, 3 * u(rng) - 1.5, 0.1 + u(rng),
                                          0.1 + u(rng), eps);
      const Matrix3c& m = r.components;
      const double scale = m.cwiseAbs().maxCoeff();
      REQUIRE(std::abs(m(0, 1) - m(1, 0)) <= 1e-14 * scale);
      REQUIRE(std::abs(m(0, 2) + m(2, 0)) <= 1e-14 * scale);
      REQUIRE(std::abs(m(1, 2) + m(2, 1)) <= 1e-14 * scale);
    }
  }
  SUBCASE("k_par = 0 is regular") {
    const auto r = reflection_kernel(f, 0.0, 1.0, 0.0, 1.0, 1.0, cdouble(2, 1));
    CHECK(std::isfinite(r.components.norm()));
    CHECK(std::abs(r.components(2, 2)) == 0.0);
  }
  SUBCASE("heights must be positive") {
    CHECK_THROWS_AS(reflection_kernel(f, 0.5, 1.0, 0.0, 0.0, 1.0, 2.0), InvalidArgument);
  }
}

TEST_CASE("leading-order near-field kernel") {
  const auto f = natural_q(1.0);
  const cdouble eps(2.0, 0.5);
  const double kx = 3.0, ky = 4.0, k = 5.0, z = 0.2;
  CHECK(near_field_kernel_lo(f, kx, ky, z, z, 1.0).norm() == 0.0);
  const Matrix3c m = near_field_kernel_lo(f, kx, ky, z, z, eps);
  CHECK(std::abs(m(2, 2) / m(0, 0) - k * k / (kx * kx)) < 1e-12);
  const cdouble expected_trace = 0.5 * (eps - 1.0) / (eps + 1.0) * std::exp(-2.0 * k * z) * 2.0 * k;
  CHECK(std::abs(m.trace() - expected_trace) < 1e-14);
}

TEST_CASE("next-to-leading-order curl kernel") {
  const auto f = natural_q(0.5);
  const cdouble eps(2.0, 0.5);
  const double kx = 3.0, ky = 4.0, k = 5.0, z = 0.2;
  CHECK(near_field_curl_kernel_nlo(f, kx, ky, z, z, 1.0).norm() == 0.0);
  CHECK(near_field_curl_kernel_nlo(f, 0.0, 0.0, z, z, eps).norm() == 0.0);
  const Matrix3c m = near_field_curl_kernel_nlo(f, kx, ky, z, z, eps);
  const cdouble expected =
      0.25 * (eps - 1.0) / (8.0 * k * k * k) * std::exp(-2.0 * k * z) * 2.0 * k * k;
  CHECK(std::abs(m.trace() - expected) < 1e-15);
  CHECK(std::abs(m(0, 2) + m(2, 0)) < 1e-15);
  CHECK(std::abs(m(1, 2) + m(2, 1)) < 1e-15);
}

TEST_CASE("full kernel approaches the leading-order form quadratically in q") {
  const cdouble eps(2.0, 0.5);
  const double z = 1.0;
  auto error_at = [&](double q, double k) {
    const auto f = natural_q(q);
    const double kx = 0.6 * k, ky = 0.8 * k;
    const Matrix3c full = reflection_kernel_xy(f, kx, ky, z, z, eps).components;
    const Matrix3c lo = near_field_kernel_lo(f, kx, ky, z, z, eps);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(full(i, j) / lo(i, j) - 1.0));
    return worst;
  };
  for (double kz : {0.1, 1.0, 10.0}) {
    CAPTURE(kz);
    const double e1 = error_at(1e-4, kz / z), e2 = error_at(1e-5, kz / z);
    CHECK(e1 < 1e-5);
    CHECK(std::log10(e1 / e2) == doctest::Approx(2.0).epsilon(0.05));
  }
}

TEST_CASE("far-field kernels") {
  const auto f = natural_q(1.0);
  CHECK(stationary_point_r_te(4.0) == cdouble(-1.0 / 3.0, 0.0));
  CHECK(far_field_kernel(f, 0.0, 10.0, 10.0, 1.0).norm() == 0.0);
  const Matrix3c k = far_field_kernel(f, 0.0, 10.0, 10.0, 4.0);
  CHECK(std::abs(k(2, 2)) == 0.0);
  const cdouble expected = cdouble(0, 0.5) * (-1.0 / 3.0) * std::exp(cdouble(0, 20.0));
  CHECK(std::abs(k(0, 0) - expected) < 1e-15);
  const Matrix3c c = far_field_curl_kernel(f, 0.0, 10.0, 10.0, 4.0);
  CHECK(std::abs(c(1, 1) - expected) < 1e-15);
  // r_tm at normal incidence equals -r_te.
  const auto r = fresnel(f, 0.0, 4.0);
  CHECK(std::abs(r.r_tm + stationary_point_r_te(4.0)) < 1e-15);
}
