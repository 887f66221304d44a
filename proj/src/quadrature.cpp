#include "mprates/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <queue>

#include "mprates/constants.hpp"

namespace mprates {

namespace {

struct Panel {
  double a, b;
  double value, error, l1;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using Gauss = boost::math::quadrature::gauss<double, 7>;
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  // Abscissae are stored for x >= 0 with x = 0 first; even positions are
  // the embedded Gauss nodes.
  const double f0 = f(mid);
  double kron = wk[0] * f0;
  double gauss = wg[0] * f0;
  double l1 = wk[0] * std::abs(f0);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double dx = half * xk[i];
    const double fl = f(mid - dx);
    const double fr = f(mid + dx);
    kron += wk[i] * (fl + fr);
    l1 += wk[i] * (std::abs(fl) + std::abs(fr));
    if (i % 2 == 0) gauss += wg[i / 2] * (fl + fr);
  }
  return {a, b, kron * half, std::abs((kron - gauss) * half), l1 * std::abs(half)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breaks, double rel_tol,
                                    double abs_tol, int max_subdivisions) {
  if (breaks.size() < 2) throw InvalidArgument("quadrature needs at least one interval");
  std::priority_queue<Panel> panels;
  QuadratureResult r;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    Panel p = evaluate_panel(f, breaks[i], breaks[i + 1]);
    r.value += p.value;
    r.error += p.error;
    r.l1 += p.l1;
    panels.push(p);
  }
  r.subintervals = static_cast<int>(panels.size());
  constexpr double kRoundoff = 50.0 * std::numeric_limits<double>::epsilon();

  auto done = [&] {
    if (r.error <= std::max(abs_tol, rel_tol * std::abs(r.value))) {
      r.converged = true;
      return true;
    }
    if (r.error <= kRoundoff * r.l1) {
      r.converged = true;
      r.roundoff_limited = true;
      return true;
    }
    return false;
  };

  while (!done()) {
    if (r.subintervals >= max_subdivisions || panels.empty()) break;
    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      r.roundoff_limited = true;
      break;
    }
    panels.pop();
    const Panel left = evaluate_panel(f, worst.a, mid);
    const Panel right = evaluate_panel(f, mid, worst.b);
    r.value += left.value + right.value - worst.value;
    r.error += left.error + right.error - worst.error;
    r.l1 += left.l1 + right.l1 - worst.l1;
    panels.push(left);
    panels.push(right);
    ++r.subintervals;
  }

  // Re-sum from scratch so incremental updates leave no drift.
  double value = 0.0, error = 0.0, l1 = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    error += panels.top().error;
    l1 += panels.top().l1;
    panels.pop();
  }
  r.value = value;
  r.error = error;
  r.l1 = l1;
  return r;
}

}  // namespace mprates
