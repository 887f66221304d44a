#include "mprates/sweep.hpp"

#include <omp.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

#include "mprates/rates.hpp"

namespace mprates {

namespace {

std::atomic<int> thread_override{0};

}  // namespace

int configured_threads() {
  if (const int n = thread_override.load(); n >= 1) return n;
  if (const char* env = std::getenv("MPRATES_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<int>(n);
  }
  return omp_get_max_threads();
}

void set_thread_count(int n) { thread_override.store(n >= 1 ? n : 0); }

void parallel_for(std::size_t n, Execution exec, const std::function<void(std::size_t)>& body) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  // Exceptions must not leave an OpenMP region; keep the first and rethrow.
  std::exception_ptr failure;
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(configured_threads())
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(mprates_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> near_field_batch(const std::vector<MultipoleMoment>& moments,
                                     const std::vector<cdouble>& eps, const Frequency& freq,
                                     const HalfSpaceGeometry& geom, Execution exec,
                                     const PhysicalConstants& k) {
  std::vector<double> out(moments.size() * eps.size());
  // One task per moment: a single closed-form evaluation is too cheap to
  // schedule on its own.
  parallel_for(moments.size(), exec, [&](std::size_t i) {
    for (std::size_t j = 0; j < eps.size(); ++j)
      out[i * eps.size() + j] = near_field_correction(moments[i], freq, geom, eps[j], k);
  });
  return out;
}

std::vector<double> free_oracle_batch(const std::vector<MultipoleMoment>& moments,
                                      const Frequency& freq, Execution exec,
                                      const PhysicalConstants& k) {
  std::vector<double> out(moments.size());
  parallel_for(out.size(), exec,
                 [&](std::size_t i) { out[i] = gamma_free_exact(moments[i], freq, k); });
  return out;
}

std::vector<OraclePoint> oracle_sweep(const MultipoleMoment& moment, const Frequency& freq,
                                      const std::vector<double>& heights, cdouble eps, cdouble mu,
                                      const QuadratureSpec& spec, Execution exec,
                                      const PhysicalConstants& k) {
  std::vector<OraclePoint> out(heights.size());
  parallel_for(out.size(), exec, [&](std::size_t i) {
    OraclePoint& p = out[i];
    p.z = heights[i];
    try {
      p.result = gamma_surface_exact(moment, freq, HalfSpaceGeometry::at_height(heights[i]), eps,
                                     mu, spec, k);
    } catch (const OracleConvergenceError& e) {
      p.error = e.what();
      p.convergence_failure = true;
    } catch (const std::exception& e) {
      p.error = e.what();
    }
  });
  return out;
}

std::vector<double> height_grid(double z_min, double z_max, int n, bool logarithmic) {
  if (!(z_min > 0) || !(z_max >= z_min) || n < 1) {
    throw InvalidArgument("height grid needs 0 < z_min <= z_max and at least one point");
  }
  std::vector<double> z(n);
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    z[i] = logarithmic ? z_min * std::pow(z_max / z_min, t) : z_min + t * (z_max - z_min);
  }
  z.back() = n == 1 ? z_min : z_max;
  return z;
}

}  // namespace mprates
