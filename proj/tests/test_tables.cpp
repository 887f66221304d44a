#include "doctest.h"
#include "mprates/constants.hpp"
#include "mprates/tables.hpp"
#include "support.hpp"

using namespace mprates;

namespace {
MultipoleMoment quadrupole_with(std::initializer_list<std::pair<const char*, double>> entries,
                                MomentKind kind = MomentKind::E2) {
  std::array<double, 9> c{};
  for (const auto& [name, v] : entries) {
    const int i = name[0] - 'x', j = name[1] - 'x';
    c[3 * i + j] = v;
    if (kind == MomentKind::E2) c[3 * j + i] = v;
  }
  return MultipoleMoment(kind, c);
}
}  // namespace

TEST_CASE("averaging-tensor checks pass") {
  for (const auto& c : run_table_checks()) {
    if (c.group != TableCheck::Group::Averaging) continue;
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.passed);
  }
}

TEST_CASE("averaged quadrupole table reproduces the isotropic braces") {
  const auto inv = averaged_invariants(quadrupole_coefficients());
  CHECK(inv.full == Rational(32, 5));
  CHECK(inv.trace == Rational(-32, 15));
}

TEST_CASE("averaged octupole table: derived invariants") {
  // Exact rotational average of the tabulated octupole form. Confirmed
  // independently by Monte Carlo over random rotations. This is not the
  // (256/35){d:d - d_aac d_bbc / 4} the isotropic formula assumes.
  const auto inv = averaged_invariants(octupole_coefficients());
  CHECK(inv.full == Rational(128, 7));
  CHECK(inv.trace == Rational(-384, 35));
  for (const auto& c : run_table_checks())
    if (c.name.rfind("octupole", 0) == 0) CHECK_FALSE(c.passed);
}

TEST_CASE("printed quadrupole table entries") {
  const auto& form = near_field_form(MomentKind::E2);
  CHECK(form.evaluate(quadrupole_with({{"xx", 1}})) == doctest::Approx(3));
  CHECK(form.evaluate(quadrupole_with({{"zz", 1}})) == doctest::Approx(8));
  // Four ordered pairs (xy,xy), (xy,yx), (yx,xy), (yx,yx) at 1 each.
  CHECK(form.evaluate(quadrupole_with({{"xy", 1}})) == doctest::Approx(4));
  // 3 + 8 + 2 * (-4).
  CHECK(form.evaluate(quadrupole_with({{"yy", 1}, {"zz", 1}})) == doctest::Approx(3));
}

TEST_CASE("printed octupole table entries") {
  const auto& form = near_field_form(MomentKind::E3);
  std::array<double, 27> c{};
  c[26] = 1.0;  // zzz
  CHECK(form.evaluate(MultipoleMoment::electric_octupole(c)) == doctest::Approx(16));
  c[26] = 0.0;
  c[0] = 1.0;  // xxx
  CHECK(form.evaluate(MultipoleMoment::electric_octupole(c)) == doctest::Approx(5));
}

TEST_CASE("magnetic quadrupole form accepts non-symmetric moments") {
  const auto& form = near_field_form(MomentKind::M2);
  const auto m = quadrupole_with({{"xy", 1}}, MomentKind::M2);
  CHECK(form.evaluate(m) == doctest::Approx(1));
  CHECK_THROWS_AS(near_field_form(MomentKind::E1), InvalidArgument);
}

TEST_CASE("row counts and the coefficient tensors' symmetries") {
  CHECK(quadrupole_table_rows().size() == 21);
  CHECK(octupole_table_rows().size() == 19);
  const auto& a = octupole_coefficients();
  // Exchange of the two tensors and permutations within each.
  const int i1[6] = {0, 1, 2, 2, 2, 0};
  const int i2[6] = {2, 2, 0, 1, 0, 2};
  const int i3[6] = {1, 0, 2, 2, 0, 2};
  CHECK(a.at(i1) == a.at(i2));
  CHECK(a.at(i1) == a.at(i3));
}

TEST_CASE("quadratic forms are positive semidefinite") {
  for (MomentKind kind : {MomentKind::E2, MomentKind::E3, MomentKind::M2}) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(near_field_form(kind).matrix);
    CHECK(solver.eigenvalues().minCoeff() > -1e-12);
  }
}
