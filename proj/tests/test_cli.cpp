#include <cmath>
#include <sstream>

#include "doctest.h"
#include "mprates/config.hpp"
#include "mprates/runner.hpp"

using namespace mprates;

namespace {

std::string base_config(const std::string& extra = "") {
  return R"({
    "transition": {"kind": "E1", "omega": 1.0, "moment": [0.3, -0.5, 0.8]},
    "material": {"eps": [2.0, 0.5]},
    "sweep": {"z_min": 1e-4, "z_max": 1e-2, "points": 5, "spacing": "log"},
    "units": "natural")" +
         extra + "}";
}

std::string field_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("configuration parsing") {
  const RunConfig c = parse_config(base_config(R"(, "mode": "near", "iso": true,
      "output": {"format": "json"}, "thresholds": {"near_max_qz": 0.02},
      "quadrature": {"rel_tol": 1e-7, "max_subdivisions": 500})"));
  CHECK(c.kind == MomentKind::E1);
  CHECK(c.mode == RunMode::Near);
  CHECK(c.iso);
  CHECK(c.format == OutputFormat::Json);
  CHECK(c.near_max_qz == 0.02);
  CHECK(c.far_min_qz == 20.0);
  CHECK(c.quadrature.rel_tol == 1e-7);
  CHECK(c.quadrature.max_subdivisions == 500);
  CHECK(c.natural_units);
  CHECK(c.material.eval(1.0).first == cdouble(2.0, 0.5));
}

TEST_CASE("nested moment arrays and material models") {
  const RunConfig c = parse_config(R"({
    "transition": {"kind": "M2", "omega": 2e15, "moment": [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]},
    "material": {"eps": {"model": "drude", "plasma_frequency": 1.4e16, "damping": 1e14},
                 "mu": {"model": "constant", "value": 1}},
    "sweep": {"z_min": 1e-9}
  })");
  CHECK(c.moment[3] == -1.0);
  CHECK(c.points == 1);
  CHECK(c.z_max == 1e-9);
  CHECK(std::holds_alternative<DrudeMetal>(c.material.eps));
}

TEST_CASE("configuration errors name the offending field") {
  CHECK(field_of(base_config(R"(, "colour": 1)")) == "colour");
  CHECK(field_of(R"({"transition": {"kind": "E1", "omega": 1, "moment": [1, 0]},
                    "sweep": {"z_min": 1}})") == "transition.moment");
  CHECK(field_of(R"({"transition": {"kind": "E5", "omega": 1, "moment": [1, 0, 0]},
                    "sweep": {"z_min": 1}})") == "transition.kind");
  CHECK(field_of(R"({"transition": {"kind": "E1", "omega": 1, "moment": [1, 0, 0]},
                    "sweep": {"z_min": -1}})") == "sweep.z_min");
  CHECK(field_of(base_config(R"(, "thresholds": {"near_max_qz": 50})")) == "thresholds.far_min_qz");
  CHECK(field_of(base_config(R"(, "mode": "fast")")) == "mode");
  CHECK(field_of(R"({"transition": {"kind": "E1", "omega": 1, "moment": [1, 0, 0]},
                    "material": {"eps": {"model": "plasma"}}, "sweep": {"z_min": 1}})") ==
        "material.eps.model");
  CHECK(field_of(R"({"transition": {"kind": "E1", "omega": 1, "moment": [1, 0, 0]},
                    "material": {"eps": {"model": "tabulated", "path": "/no/such/file"}},
                    "sweep": {"z_min": 1}})") == "material.eps.path");
  CHECK(field_of("{not json")  == "<document>");
}

TEST_CASE("orientation averaging of a magnetic transition is rejected before running") {
  CHECK(field_of(R"({"transition": {"kind": "M1", "omega": 1, "moment": [1, 0, 0]},
                    "sweep": {"z_min": 1}, "iso": true})") == "iso");
}

TEST_CASE("vacuum material gives zero surface corrections everywhere") {
  RunConfig c = parse_config(base_config());
  c.material = MaterialResponse::vacuum();
  const auto result = run(c, Execution::Serial);
  CHECK(result.failures == 0);
  for (const auto& r : result.rows) CHECK(r.gamma_surface == 0.0);
}

TEST_CASE("mode all: near-field rows only inside their window, agreeing with the oracle") {
  RunConfig c = parse_config(base_config());
  c.z_min = c.z_max = 1e-3;
  c.points = 1;
  const auto result = run(c, Execution::Serial);
  REQUIRE(result.rows.size() == 3);  // free, near, oracle; far is out of range
  CHECK(result.rows[0].mode == RunMode::Free);
  CHECK(result.rows[1].mode == RunMode::Near);
  CHECK(result.rows[2].mode == RunMode::Oracle);
  CHECK(std::abs(result.rows[1].gamma_surface / result.rows[2].gamma_surface - 1.0) < 1e-2);
  CHECK(result.rows[2].residual > 0.0);
  CHECK(result.rows[1].gamma_total == result.rows[1].gamma0 + result.rows[1].gamma_surface);
}

TEST_CASE("CSV output is reproducible and round-trips") {
  const RunConfig c = parse_config(base_config(R"(, "mode": "near")"));
  std::ostringstream a, b;
  write_csv(a, run(c, Execution::Parallel));
  write_csv(b, run(c, Execution::Serial));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind(kCsvHeader, 0) == 0);

  std::istringstream in(a.str());
  const auto rows = read_csv(in);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].regime == Regime::NearFieldClosedForm);
  const auto original = run(c, Execution::Serial);
  CHECK(rows[4].gamma_surface == original.rows[4].gamma_surface);
}

TEST_CASE("JSON output carries a schema version and nulls for failures") {
  RunConfig c = parse_config(base_config(R"(, "mode": "oracle",
      "quadrature": {"rel_tol": 1e-12, "max_subdivisions": 1})"));
  c.z_min = c.z_max = 30.0;
  c.points = 1;
  const auto result = run(c, Execution::Serial);
  CHECK(result.failures == 1);
  CHECK(std::isnan(result.rows[0].gamma_surface));
  CHECK(result.rows[0].status == "not_converged");
  std::ostringstream out;
  write_json(out, result, c);
  CHECK(out.str().find("\"schema_version\": 1") != std::string::npos);
  CHECK(out.str().find("\"gamma_surface\": null") != std::string::npos);
}

TEST_CASE("fitting near-field scaling exponents") {
  for (const char* kind : {"E1", "E3", "M2"}) {
    std::string moment = std::string(kind) == "E1" ? "[0.3, -0.5, 0.8]"
                         : std::string(kind) == "M2" ? "[0.1, 0.7, -0.2, 0.3, 0.2, 0.4, 0.6, -0.1, 0.5]"
                                                     : "[0,0,1, 0,0,0, 1,0,0,  0,0,0, 0,0,0, 0,0,0,  1,0,0, 0,0,0, 0,0,0.5]";
    const RunConfig c = parse_config(std::string(R"({"transition": {"kind": ")") + kind +
                                     R"(", "omega": 1, "moment": )" + moment + R"(},
        "material": {"eps": [2, 0.5]}, "units": "natural", "mode": "near",
        "sweep": {"z_min": 1e-4, "z_max": 1e-3, "points": 6}})");
    const auto fits = fit_scaling(run(c, Execution::Serial).rows, RunMode::Near);
    REQUIRE(fits.size() == 1);
    const double expected = std::string(kind) == "E1" ? -3 : std::string(kind) == "E3" ? -7 : -3;
    CHECK(fits[0].slope == doctest::Approx(expected).epsilon(1e-12));
    CHECK(fits[0].standard_error < 1e-10);
    CHECK(fits[0].points == 6);
  }
}

TEST_CASE("fitting refuses oscillating windows and short sweeps") {
  const RunConfig far = parse_config(R"({"transition": {"kind": "E1", "omega": 1, "moment": [1, 0, 0]},
      "material": {"eps": 4}, "units": "natural", "mode": "far",
      "sweep": {"z_min": 20, "z_max": 30, "points": 12, "spacing": "linear"}})");
  CHECK_THROWS_AS(fit_scaling(run(far, Execution::Serial).rows, RunMode::Far), NumericalError);
  RunConfig few = parse_config(base_config(R"(, "mode": "near")"));
  few.points = 3;
  CHECK_THROWS_AS(fit_scaling(run(few, Execution::Serial).rows, RunMode::Near), InvalidArgument);
}

TEST_CASE("closed forms refuse media with both responses") {
  RunConfig c = parse_config(base_config(R"(, "mode": "near")"));
  c.material = MaterialResponse::constant(cdouble(2, 0.5), cdouble(1.5, 0.1));
  CHECK_THROWS_AS(run(c, Execution::Serial), ConfigError);
  c.mode = RunMode::Oracle;
  c.z_min = c.z_max = 0.01;
  c.points = 1;
  CHECK(run(c, Execution::Serial).failures == 0);
}

TEST_CASE("help text lists every key") {
  const std::string ref = config_reference();
  for (const char* key : {"transition.kind", "transition.omega", "transition.moment", "material.eps",
                          "sweep.z_min", "sweep.points", "sweep.spacing", "mode", "iso",
                          "output.format", "output.path", "thresholds.near_max_qz",
                          "thresholds.far_min_qz", "quadrature.rel_tol", "units"})
    CHECK(ref.find(key) != std::string::npos);
}
