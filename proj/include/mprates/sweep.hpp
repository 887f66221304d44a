#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mprates/greens.hpp"
#include "mprates/moments.hpp"
#include "mprates/oracle.hpp"

namespace mprates {

/// Serial loops are the reference; Parallel runs the same per-point work
/// under OpenMP. Both produce identical, index-ordered output.
enum class Execution { Serial, Parallel };

/// Thread count used by Parallel kernels: set_thread_count() if called with
/// n >= 1, otherwise the MPRATES_THREADS environment variable, otherwise the
/// OpenMP default.
int configured_threads();
void set_thread_count(int n);

/// Calls body(i) for every i in [0, n), in order (Serial) or across
/// configured_threads() OpenMP threads (Parallel). The first exception
/// thrown by any body is rethrown after the loop completes.
void parallel_for(std::size_t n, Execution exec, const std::function<void(std::size_t)>& body);

/// Near-field closed-form corrections for every (moment, eps) pair,
/// moment-major: out[i * eps.size() + j].
std::vector<double> near_field_batch(const std::vector<MultipoleMoment>& moments,
                                     const std::vector<cdouble>& eps, const Frequency& freq,
                                     const HalfSpaceGeometry& geom, Execution exec,
                                     const PhysicalConstants& k = PhysicalConstants::si());

/// Free-space oracle rate for each moment.
std::vector<double> free_oracle_batch(const std::vector<MultipoleMoment>& moments,
                                      const Frequency& freq, Execution exec,
                                      const PhysicalConstants& k = PhysicalConstants::si());

/// One point of an oracle distance sweep; `error` is set instead of
/// `result` when the evaluation threw.
struct OraclePoint {
  double z = 0.0;
  std::optional<OracleResult> result;
  std::string error;
  bool convergence_failure = false;
};

/// Surface oracle at each height.
std::vector<OraclePoint> oracle_sweep(const MultipoleMoment& moment, const Frequency& freq,
                                      const std::vector<double>& heights, cdouble eps, cdouble mu,
                                      const QuadratureSpec& spec, Execution exec,
                                      const PhysicalConstants& k = PhysicalConstants::si());

/// n heights between z_min and z_max inclusive, linear or logarithmic.
std::vector<double> height_grid(double z_min, double z_max, int n, bool logarithmic);

}  // namespace mprates
