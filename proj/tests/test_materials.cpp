#include <sstream>

#include "doctest.h"
#include "mprates/constants.hpp"
#include "mprates/materials.hpp"

using namespace mprates;
using cd = std::complex<double>;

TEST_CASE("constant response") {
  const auto m = MaterialResponse::constant({2.0, 0.5});
  for (double w : {1e3, 1e15}) {
    const auto [eps, mu] = m.eval(w);
    CHECK(eps == cd(2.0, 0.5));
    CHECK(mu == cd(1.0, 0.0));
  }
}

TEST_CASE("vacuum") {
  const auto [eps, mu] = MaterialResponse::vacuum().eval(1.0);
  CHECK(eps == cd(1.0));
  CHECK(mu == cd(1.0));
}

TEST_CASE("Drude metal at the plasma frequency with vanishing damping") {
  const double wp = 1e16, gamma = 1e-6 * wp;
  const cd eps = evaluate(DrudeMetal{wp, gamma}, wp);
  CHECK(std::abs(eps.real()) < 1e-11);
  CHECK(eps.imag() == doctest::Approx(1e-6).epsilon(1e-6));
  CHECK(eps.imag() > 0);
}

TEST_CASE("Lorentz oscillator") {
  const double w0 = 2.0, f = 0.5, g = 0.1, w = 1.5;
  const cd expected = 1.0 + f * w0 * w0 / cd(w0 * w0 - w * w, -g * w);
  CHECK(std::abs(evaluate(LorentzOscillator{w0, f, g}, w) - expected) < 1e-15);
  CHECK(evaluate(LorentzOscillator{w0, f, g}, w).imag() > 0);
}

TEST_CASE("tabulated samples interpolate linearly without extrapolation") {
  TabulatedSamples t{{1.0, 2.0, 4.0}, {cd(2, 0.2), cd(4, 0.4), cd(0, 1)}};
  CHECK_NOTHROW(validate(ResponseModel(t)));
  CHECK(std::abs(evaluate(t, 1.5) - cd(3, 0.3)) < 1e-15);
  CHECK(std::abs(evaluate(t, 3.0) - cd(2, 0.7)) < 1e-15);
  CHECK(evaluate(t, 4.0) == cd(0, 1));
  CHECK_THROWS_AS(evaluate(t, 0.5), InvalidArgument);
  CHECK_THROWS_AS(evaluate(t, 4.5), InvalidArgument);
}

TEST_CASE("invalid models are rejected") {
  CHECK_THROWS_AS(validate(ResponseModel(TabulatedSamples{{1.0, 1.0}, {cd(1), cd(2)}})),
                  InvalidArgument);
  CHECK_THROWS_AS(evaluate(ConstantComplex{cd(2, -0.1)}, 1.0), InvalidArgument);
  CHECK_NOTHROW(evaluate(ConstantComplex{cd(2, -1e-13)}, 1.0));
  CHECK_THROWS_AS(evaluate(ConstantComplex{cd(2, 0)}, 0.0), InvalidArgument);
  // A gain medium: negative oscillator strength.
  CHECK_THROWS_AS(evaluate(LorentzOscillator{2.0, -0.5, 0.1}, 1.5), InvalidArgument);
}

TEST_CASE("tabulated text format") {
  std::istringstream in("# omega re im\n1.0 2.0 0.1\n\n2.0 3.0 0.2  # trailing\n");
  const auto t = read_tabulated(in);
  REQUIRE(t.omega.size() == 2);
  CHECK(t.value[1] == cd(3.0, 0.2));

  std::istringstream bad("1.0 2.0 0.1\n2.0 oops 0.2\n");
  CHECK_THROWS_WITH_AS(read_tabulated(bad), doctest::Contains("line 2"), InvalidArgument);
  CHECK_THROWS_AS(read_tabulated_file("/nonexistent/file.txt"), InvalidArgument);
}
