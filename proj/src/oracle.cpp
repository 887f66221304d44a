#include "mprates/oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <map>
#include <tuple>

#include "mprates/averaging.hpp"
#include "mprates/quadrature.hpp"

namespace mprates {

namespace {

constexpr cdouble kI{0.0, 1.0};

cdouble ipow(int n) {
  static constexpr cdouble powers[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return powers[((n % 4) + 4) % 4];
}

int levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  return ((a == 0 && b == 1) || (a == 1 && b == 2) || (a == 2 && b == 0)) ? 1 : -1;
}

void add_monomial(std::vector<Monomial>& slot, double coef, const std::array<int, 3>& powers) {
  if (coef == 0.0) return;
  for (auto& m : slot) {
    if (m.ex == powers[0] && m.ey == powers[1] && m.ez == powers[2]) {
      m.coef += coef;
      return;
    }
  }
  slot.push_back({coef, powers[0], powers[1], powers[2]});
}

std::array<int, 3> unit_power(int axis) {
  std::array<int, 3> p{0, 0, 0};
  ++p[axis];
  return p;
}

std::array<int, 3> pair_power(int a, int b) {
  std::array<int, 3> p{0, 0, 0};
  ++p[a];
  ++p[b];
  return p;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0 && rel_tol <= 1e-2)) throw InvalidArgument("rel_tol must lie in (0, 1e-2]");
  if (!(abs_tol >= 0)) throw InvalidArgument("abs_tol must be >= 0");
  if (!(k_max_window > 0)) throw InvalidArgument("k_max_window must be > 0");
  if (max_subdivisions < 1) throw InvalidArgument("max_subdivisions must be >= 1");
}

KSpaceOperator KSpaceOperator::from_moment(const MultipoleMoment& m) {
  KSpaceOperator op;
  op.kind = m.kind();
  switch (m.kind()) {
    case MomentKind::E1:
      op.degree = 0;
      for (int g = 0; g < 3; ++g) add_monomial(op.slots[g], m(g), {0, 0, 0});
      break;
    case MomentKind::E2:
      // d_ab d_a acting on field component b.
      op.degree = 1;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) add_monomial(op.slots[b], m(a, b), unit_power(a));
      break;
    case MomentKind::E3:
      op.degree = 2;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int g = 0; g < 3; ++g) add_monomial(op.slots[g], m(a, b, g), pair_power(a, b));
      break;
    case MomentKind::M1:
      // m_a eps_abg d_b: the curl.
      op.degree = 1;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int g = 0; g < 3; ++g)
            add_monomial(op.slots[g], m(a) * levi_civita(a, b, g), unit_power(b));
      break;
    case MomentKind::M2:
      // m_ab eps_bgd d_a d_g.
      op.degree = 2;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int g = 0; g < 3; ++g)
            for (int d = 0; d < 3; ++d)
              add_monomial(op.slots[d], m(a, b) * levi_civita(b, g, d), pair_power(a, g));
      break;
  }
  return op;
}

Eigen::Vector3cd KSpaceOperator::apply(const Eigen::Vector3cd& k) const {
  Eigen::Vector3cd out = Eigen::Vector3cd::Zero();
  for (int g = 0; g < 3; ++g) {
    for (const auto& t : slots[g]) {
      out(g) += t.coef * std::pow(k(0), t.ex) * std::pow(k(1), t.ey) * std::pow(k(2), t.ez);
    }
  }
  return out * ipow(degree);
}

Rational angular_moment(int a, int b) {
  if (a < 0 || b < 0 || a + b > 8) throw InvalidArgument("angular moment table covers a + b <= 8");
  if (a % 2 != 0 || b % 2 != 0) return Rational(0);
  auto double_factorial = [](int n) {
    long long r = 1;
    for (int i = n; i > 1; i -= 2) r *= i;
    return r;
  };
  return Rational(2 * double_factorial(a - 1) * double_factorial(b - 1),
                  double_factorial(a + b));
}

namespace {

// Angular structure of the reflection kernel (see assemble_kernel). Each
// entry is sign * X * cos^c sin^s with X one of the scalars
//   A = P r_tm b^2 / q^2, B = -P r_te, C = -P r_tm k^2 / q^2, D = P r_tm b k / q^2,
// and P = (-i / 2b) exp(2 i b z).
enum ScalarId { kA, kB, kC, kD };

struct KernelEntry {
  ScalarId id;
  int sign;
  int cos_power;
  int sin_power;
};

const std::vector<KernelEntry>& kernel_entries(int row, int col) {
  static const std::vector<KernelEntry> table[3][3] = {
      {{{kA, 1, 2, 0}, {kB, 1, 0, 2}}, {{kA, 1, 1, 1}, {kB, -1, 1, 1}}, {{kD, 1, 1, 0}}},
      {{{kA, 1, 1, 1}, {kB, -1, 1, 1}}, {{kA, 1, 0, 2}, {kB, 1, 2, 0}}, {{kD, 1, 0, 1}}},
      {{{kD, -1, 1, 0}}, {{kD, -1, 0, 1}}, {{kC, 1, 0, 0}}},
  };
  return table[row][col];
}

enum Channel { kTm = 0, kTe = 1 };

/// coef * k^k_power * q^q_power * b^beta_power, multiplying P r_channel.
struct ChannelTerm {
  Channel channel;
  int k_power;
  int q_power;
  int beta_power;  // 0 or 1
  double coef;     // includes the azimuthal integral, pi included
};

// Collapses the azimuthally integrated a^T R b into a polynomial in k, q
// and at most one power of b per channel. The coefficients are accumulated
// in exact rational arithmetic with b^2 rewritten as q^2 - k^2, so the large
// cancellations between the b^2 and k^2 pieces (the static curl of a
// gradient vanishing, for instance) happen in the coefficients rather than
// in the floating-point sum at large k.
std::vector<ChannelTerm> angular_reduce(const KSpaceOperator& op) {
  using Key = std::tuple<int, int, int, int>;  // channel, k power, q power, b parity
  std::map<Key, Rational> acc;
  // i^degree on each side: i^(2 degree) = +-1.
  const int phase = (op.degree % 2 == 0) ? 1 : -1;

  auto accumulate = [&](Channel ch, const Rational& c, int kp, int qp, int bp) {
    // b^bp = b^(bp % 2) (q^2 - k^2)^(bp / 2)
    const int m = bp / 2;
    Rational binom = 1;
    for (int j = 0; j <= m; ++j) {
      // C(m, j) q^(2j) (-k^2)^(m-j)
      const Rational term = ((m - j) % 2 == 0 ? binom : Rational(-binom)) * c;
      acc[{ch, kp + 2 * (m - j), qp + 2 * j, bp % 2}] += term;
      binom = binom * (m - j) / (j + 1);
    }
  };

  for (int g = 0; g < 3; ++g) {
    for (int z = 0; z < 3; ++z) {
      for (const auto& ta : op.slots[g]) {
        for (const auto& tb : op.slots[z]) {
          // Source-side wavevector (-kx, -ky, b).
          const int source_sign = ((tb.ex + tb.ey) % 2 == 0) ? 1 : -1;
          const Rational product = Rational(ta.coef) * Rational(tb.coef) * (phase * source_sign);
          const int kp = ta.ex + ta.ey + tb.ex + tb.ey;
          const int bp = ta.ez + tb.ez;
          for (const auto& e : kernel_entries(g, z)) {
            const Rational ang = angular_moment(ta.ex + tb.ex + e.cos_power,
                                                ta.ey + tb.ey + e.sin_power);
            if (ang == 0) continue;
            const Rational c = product * ang * e.sign;
            switch (e.id) {
              case kA: accumulate(kTm, c, kp, -2, bp + 2); break;
              case kB: accumulate(kTe, -c, kp, 0, bp); break;
              case kC: accumulate(kTm, -c, kp + 2, -2, bp); break;
              case kD: accumulate(kTm, c, kp + 1, -2, bp + 1); break;
            }
          }
        }
      }
    }
  }
  std::vector<ChannelTerm> out;
  for (const auto& [key, coef] : acc) {
    if (coef == 0) continue;
    out.push_back({static_cast<Channel>(std::get<0>(key)), std::get<1>(key), std::get<2>(key),
                   std::get<3>(key), coef.convert_to<double>() * kPi});
  }
  return out;
}

double max_abs_component(const MultipoleMoment& m) {
  double s = 0.0;
  for (double x : m.components()) s = std::max(s, std::abs(x));
  return s;
}

double rate_prefactor(MomentKind kind, const Frequency& freq, const PhysicalConstants& k) {
  return is_electric(kind) ? freq.omega * freq.omega / (k.hbar * k.c * k.c * k.eps0)
                           : k.mu0 / k.hbar;
}

void reject_on_axis_pole(cdouble v, const char* name) {
  if (v.imag() == 0.0 && v.real() <= -1.0) {
    throw InvalidArgument(std::string("lossless ") + name +
                          " <= -1 puts a surface pole on the integration path; add a small "
                          "positive imaginary part");
  }
}

}  // namespace

OracleResult gamma_surface_exact(const MultipoleMoment& moment, const Frequency& freq,
                                 const HalfSpaceGeometry& geom, cdouble eps, cdouble mu,
                                 const QuadratureSpec& spec, const PhysicalConstants& k) {
  spec.validate();
  const double z = HalfSpaceGeometry::at_height(geom.z_atom).z_atom;
  if (eps.imag() < -1e-12 || mu.imag() < -1e-12) {
    throw InvalidArgument("medium is not passive: Im eps and Im mu must be >= 0");
  }
  reject_on_axis_pole(eps, "eps");
  reject_on_axis_pole(mu, "mu");

  OracleResult result;
  const double scale = max_abs_component(moment);
  if (scale == 0.0 || (eps == cdouble(1.0) && mu == cdouble(1.0))) return result;

  const double q = freq.q;
  const double k_max = q + spec.k_max_window / (2.0 * z);
  const double u_max = std::sqrt(k_max - q);
  if (!std::isfinite(k_max) || !std::isfinite(u_max * u_max * u_max * u_max) ||
      k_max > 1e100 * q) {
    throw InvalidArgument("atom-surface distance too small: evanescent cutoff overflows");
  }

  const auto op = KSpaceOperator::from_moment(moment.scaled(1.0 / scale));
  const auto terms = angular_reduce(op);
  const double pref = rate_prefactor(moment.kind(), freq, k) * scale * scale;

  // Im of the azimuthally integrated a^T R b at (k, b), times k / (4 pi^2).
  auto integrand = [&](double kp, cdouble beta) {
    const FresnelCoefficients f = fresnel_from_upper(freq, kp, beta, eps, mu);
    const cdouble p = -kI / (2.0 * beta) * std::exp(2.0 * kI * beta * z);
    cdouble channel[2] = {0.0, 0.0};
    for (const auto& t : terms) {
      const double magnitude = t.coef * std::pow(kp, t.k_power) * std::pow(q, t.q_power);
      channel[t.channel] += t.beta_power ? magnitude * beta : cdouble(magnitude);
    }
    const cdouble sum = p * (f.r_tm * channel[kTm] + f.r_te * channel[kTe]);
    return (sum * kp / (4.0 * kPi * kPi)).imag();
  };

  // Propagating waves, k = q sin t.
  auto propagating = [&](double t) {
    const double kp = q * std::sin(t);
    const double beta = q * std::cos(t);
    return integrand(kp, beta) * beta;
  };
  // Evanescent waves, k = q + u^2.
  auto evanescent = [&](double u) {
    const double kp = q + u * u;
    const cdouble beta = kI * (u * std::sqrt(2.0 * q + u * u));
    return integrand(kp, beta) * 2.0 * u;
  };

  // Breakpoints: oscillation count of exp(2 i q z cos t), medium branch
  // points and the surface-mode pole when they sit on the path.
  const cdouble n2 = eps * mu;
  std::vector<double> prop_breaks;
  const int prop_panels = std::max(4, static_cast<int>(std::ceil(q * z)));
  for (int i = 0; i <= prop_panels; ++i) prop_breaks.push_back(0.5 * kPi * i / prop_panels);
  std::vector<double> evan_breaks = {0.0};
  const double scale_k = std::min(q, 1.0 / z);
  for (double d = 1e-3 * scale_k; d < k_max - q; d *= 4.0) evan_breaks.push_back(std::sqrt(d));
  evan_breaks.push_back(u_max);
  auto add_k_break = [&](double kb) {
    if (!(kb > 0) || !std::isfinite(kb)) return;
    if (kb < q) prop_breaks.push_back(std::asin(kb / q));
    else if (kb > q && kb < k_max) evan_breaks.push_back(std::sqrt(kb - q));
  };
  add_k_break(q * std::sqrt(n2).real());
  // Surface-mode poles: eps b_up + b_low = 0 (TM) and mu b_up + b_low = 0 (TE).
  for (const auto& [own, other] : {std::pair{eps, mu}, std::pair{mu, eps}}) {
    const cdouble sp = std::sqrt(own * (own - other) / (own * own - 1.0));
    if (std::isfinite(sp.real())) add_k_break(q * std::abs(sp.real()));
  }
  std::sort(prop_breaks.begin(), prop_breaks.end());
  std::sort(evan_breaks.begin(), evan_breaks.end());

  const double abs_tol = spec.abs_tol / pref;
  const auto prop = integrate_adaptive(propagating, prop_breaks, spec.rel_tol, abs_tol,
                                       spec.max_subdivisions);
  const auto evan = integrate_adaptive(evanescent, evan_breaks, spec.rel_tol, abs_tol,
                                       spec.max_subdivisions);

  result.propagating_part = pref * prop.value;
  result.evanescent_part = pref * evan.value;
  result.gamma_surface = result.propagating_part + result.evanescent_part;
  result.residual = pref * (prop.error + evan.error);
  result.subintervals = prop.subintervals + evan.subintervals;
  result.roundoff_limited = prop.roundoff_limited || evan.roundoff_limited;
  // Beyond k_max the integrand decays at least like exp(-2 (k - q) z).
  result.tail_estimate =
      std::abs(pref * integrand(k_max, kI * std::sqrt(k_max * k_max - q * q))) / (2.0 * z);

  if (!prop.converged || !evan.converged) {
    throw OracleConvergenceError(
        "surface-rate quadrature did not converge within " +
            std::to_string(spec.max_subdivisions) + " subdivisions",
        result.gamma_surface, result.residual);
  }
  return result;
}

OracleResult gamma_surface_exact_iso(const MultipoleMoment& moment, const Frequency& freq,
                                     const HalfSpaceGeometry& geom, cdouble eps, cdouble mu,
                                     const QuadratureSpec& spec, const PhysicalConstants& k) {
  const DenseTensor avg = rotational_average_pair(moment, moment);
  const int dim = static_cast<int>(component_count(moment.kind()));
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = avg.data[i * dim + j];
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (m + m.transpose()));

  OracleResult total;
  const double cutoff = 1e-12 * solver.eigenvalues().cwiseAbs().maxCoeff();
  for (int c = 0; c < dim; ++c) {
    const double lambda = solver.eigenvalues()(c);
    if (lambda <= cutoff) continue;
    const Eigen::VectorXd v = solver.eigenvectors().col(c);
    const MultipoleMoment eigen_moment(moment.kind(), std::span<const double>(v.data(), dim));
    const OracleResult r = gamma_surface_exact(eigen_moment, freq, geom, eps, mu, spec, k);
    total.gamma_surface += lambda * r.gamma_surface;
    total.propagating_part += lambda * r.propagating_part;
    total.evanescent_part += lambda * r.evanescent_part;
    total.residual += lambda * r.residual;
    total.tail_estimate += lambda * r.tail_estimate;
    total.subintervals += r.subintervals;
    total.roundoff_limited = total.roundoff_limited || r.roundoff_limited;
  }
  return total;
}

double gamma_free_exact(const MultipoleMoment& moment, const Frequency& freq,
                        const PhysicalConstants& k) {
  const double scale = max_abs_component(moment);
  if (scale == 0.0) return 0.0;
  const auto op = KSpaceOperator::from_moment(moment.scaled(1.0 / scale));
  const double q = freq.q;

  using Legendre = boost::math::quadrature::gauss<double, 8>;
  const auto& x = Legendre::abscissa();
  const auto& w = Legendre::weights();
  constexpr int kPhi = 16;

  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (double sign : {-1.0, 1.0}) {
      const double ct = sign * x[i];
      if (i == 0 && sign > 0 && x[0] == 0.0) continue;  // centre node counted once
      const double st = std::sqrt(1.0 - ct * ct);
      for (int j = 0; j < kPhi; ++j) {
        const double phi = 2.0 * kPi * j / kPhi;
        const Eigen::Vector3d n(st * std::cos(phi), st * std::sin(phi), ct);
        const Eigen::Vector3cd field_side = op.apply((q * n).cast<cdouble>());
        const Eigen::Vector3cd source_side = op.apply((-q * n).cast<cdouble>());
        const Eigen::Matrix3d transverse = Eigen::Matrix3d::Identity() - n * n.transpose();
        const cdouble v = field_side.transpose() * transverse.cast<cdouble>() * source_side;
        sum += w[i] * (2.0 * kPi / kPhi) * v.real();
      }
    }
  }
  return rate_prefactor(moment.kind(), freq, k) * scale * scale * q / (16.0 * kPi * kPi) * sum;
}

}  // namespace mprates
