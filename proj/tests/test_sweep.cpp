#include <random>

#include "doctest.h"
#include "mprates/rates.hpp"
#include "mprates/sweep.hpp"
#include "support.hpp"

using namespace mprates;

namespace {
const PhysicalConstants kNat = PhysicalConstants::natural();
const Frequency kUnit = Frequency::from_omega(1.0, kNat);
}  // namespace

TEST_CASE("height grids") {
  const auto lin = height_grid(1.0, 3.0, 3, false);
  CHECK(lin == std::vector<double>{1.0, 2.0, 3.0});
  const auto lg = height_grid(1e-3, 1e-1, 3, true);
  CHECK(lg[1] == doctest::Approx(1e-2));
  CHECK(lg.back() == 1e-1);
  CHECK(height_grid(2.0, 2.0, 1, true) == std::vector<double>{2.0});
  CHECK_THROWS_AS(height_grid(0.0, 1.0, 3, true), InvalidArgument);
  CHECK_THROWS_AS(height_grid(1.0, 2.0, 0, true), InvalidArgument);
}

TEST_CASE("parallel kernels reproduce the serial reference bit for bit") {
  std::mt19937_64 rng(51);
  std::vector<MultipoleMoment> moments;
  for (int i = 0; i < 40; ++i) moments.push_back(testing::random_moment(testing::all_kinds()[i % 5], rng));
  const std::vector<cdouble> eps = {cdouble(2, 0.5), cdouble(-3, 1), cdouble(10, 0.01)};
  const auto geom = HalfSpaceGeometry::at_height(0.01);

  CHECK(near_field_batch(moments, eps, kUnit, geom, Execution::Serial, kNat) ==
        near_field_batch(moments, eps, kUnit, geom, Execution::Parallel, kNat));
  CHECK(free_oracle_batch(moments, kUnit, Execution::Serial, kNat) ==
        free_oracle_batch(moments, kUnit, Execution::Parallel, kNat));

  const auto heights = height_grid(1e-2, 10.0, 6, true);
  const auto a = oracle_sweep(moments[1], kUnit, heights, eps[0], 1.0, {}, Execution::Serial, kNat);
  const auto b = oracle_sweep(moments[1], kUnit, heights, eps[0], 1.0, {}, Execution::Parallel, kNat);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].result.has_value());
    CHECK(a[i].result->gamma_surface == b[i].result->gamma_surface);
  }
}

TEST_CASE("batch layout is moment-major") {
  const std::vector<MultipoleMoment> moments = {MultipoleMoment::electric_dipole({1, 0, 0}),
                                                MultipoleMoment::electric_dipole({0, 0, 1})};
  const std::vector<cdouble> eps = {cdouble(2, 0.5), cdouble(2, 1.0)};
  const auto geom = HalfSpaceGeometry::at_height(0.1);
  const auto out = near_field_batch(moments, eps, kUnit, geom, Execution::Serial, kNat);
  REQUIRE(out.size() == 4);
  CHECK(out[1] == near_field_correction(moments[0], kUnit, geom, eps[1], kNat));
  CHECK(out[2] == near_field_correction(moments[1], kUnit, geom, eps[0], kNat));
}

TEST_CASE("oracle sweep records failures per point") {
  const auto d = MultipoleMoment::electric_dipole({1, 0, 0});
  QuadratureSpec spec;
  spec.max_subdivisions = 1;
  spec.rel_tol = 1e-12;
  const auto pts = oracle_sweep(d, kUnit, {30.0}, cdouble(2, 0.5), 1.0, spec, Execution::Parallel, kNat);
  REQUIRE(pts.size() == 1);
  CHECK_FALSE(pts[0].result.has_value());
  CHECK(pts[0].convergence_failure);
  CHECK_FALSE(pts[0].error.empty());
}

TEST_CASE("thread count configuration") {
  set_thread_count(3);
  CHECK(configured_threads() == 3);
  set_thread_count(0);
  CHECK(configured_threads() >= 1);
}

TEST_CASE("exceptions inside parallel loops reach the caller") {
  CHECK_THROWS_AS(parallel_for(8, Execution::Parallel,
                               [](std::size_t i) {
                                 if (i == 5) throw InvalidArgument("boom");
                               }),
                  InvalidArgument);
}
