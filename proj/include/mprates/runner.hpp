#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mprates/config.hpp"
#include "mprates/rates.hpp"
#include "mprates/sweep.hpp"

namespace mprates {

/// One output row. Failed evaluations carry NaN in every rate column and a
/// status other than "ok"; the library itself never returns NaN.
struct ResultRow {
  MomentKind kind = MomentKind::E1;
  double z = 0.0;
  double qz = 0.0;
  RunMode mode = RunMode::Free;
  Regime regime = Regime::FreeSpace;
  double gamma0 = 0.0;
  double gamma_surface = 0.0;
  double gamma_total = 0.0;
  double gamma_ratio = 0.0;
  double residual = 0.0;  // oracle quadrature error; 0 for closed forms
  std::string status = "ok";
};

struct RunResult {
  std::vector<ResultRow> rows;
  int failures = 0;
};

/// Evaluates every height of the sweep for the requested mode. Rows are
/// ordered by height, then free, near, far, oracle. With mode = all the
/// near-field rows are emitted only for qz <= near_max_qz and the far-field
/// rows only for qz >= far_min_qz; free and oracle rows are always emitted.
/// Throws ConfigError for inputs rejected before any evaluation.
RunResult run(const RunConfig& config, Execution exec = Execution::Parallel);

/// Frozen CSV header.
inline constexpr const char* kCsvHeader =
    "kind,z,qz,mode,regime,gamma0,gamma_surface,gamma_total,gamma_ratio,residual,status";

/// Writes rows with 17 significant digits, so identical runs are
/// byte-identical.
void write_csv(std::ostream& out, const RunResult& result);
/// JSON document {"schema_version": 1, "columns": [...], "rows": [...]};
/// NaN sentinels are written as null.
void write_json(std::ostream& out, const RunResult& result, const RunConfig& config);

/// Reads a CSV produced by write_csv. Throws InvalidArgument on malformed
/// input.
std::vector<ResultRow> read_csv(std::istream& in);

struct ScalingFit {
  MomentKind kind;
  double slope;
  double standard_error;
  std::size_t points;
};

/// Least-squares slope of log|gamma_surface| against log z, per moment kind,
/// over the rows of the given mode. Needs at least five distinct heights
/// per kind. Refuses (NumericalError) when gamma_surface changes sign or
/// contains a failed row: an oscillating far-field window has no power law,
/// fit its envelope instead.
std::vector<ScalingFit> fit_scaling(const std::vector<ResultRow>& rows, RunMode mode);

}  // namespace mprates
