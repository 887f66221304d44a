#pragma once

#include <functional>
#include <span>
#include <vector>

namespace mprates {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // summed Kronrod-Gauss panel estimates
  double l1 = 0.0;     // integral of |f|, for roundoff judgement
  int subintervals = 0;
  bool converged = false;
  bool roundoff_limited = false;
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature of f over the union
/// of [breaks[i], breaks[i+1]]. The panel with the largest error estimate is
/// bisected until error <= max(abs_tol, rel_tol |I|), or until the error is
/// within a small multiple of machine precision times the L1 norm (reported
/// as roundoff_limited), or until max_subdivisions panels exist (reported
/// as not converged).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breaks, double rel_tol,
                                    double abs_tol, int max_subdivisions);

}  // namespace mprates
