#pragma once

#include <Eigen/Geometry>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "mprates/moments.hpp"

namespace mprates::testing {

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Random moment of the given kind with components in [-1, 1]; symmetric
/// kinds are symmetrized by construction.
inline MultipoleMoment random_moment(MomentKind kind, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::array<double, 27> c{};
  const int rank = tensor_rank(kind);
  if (rank == 1) {
    for (int i = 0; i < 3; ++i) c[i] = u(rng);
  } else if (rank == 2) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (kind == MomentKind::E2 && j < i) c[3 * i + j] = c[3 * j + i];
        else c[3 * i + j] = u(rng);
      }
  } else {
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        for (int k = j; k < 3; ++k) {
          const double v = u(rng);
          const int idx[3] = {i, j, k};
          int p[3] = {0, 1, 2};
          do {
            c[9 * idx[p[0]] + 3 * idx[p[1]] + idx[p[2]]] = v;
          } while (std::next_permutation(p, p + 3));
        }
  }
  return MultipoleMoment(kind, std::span<const double>(c.data(), component_count(kind)));
}

/// Uniformly random rotation matrix, row-major.
inline std::array<double, 9> random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  const Eigen::Matrix3d r = q.toRotationMatrix();
  std::array<double, 9> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[3 * i + j] = r(i, j);
  return out;
}

inline MultipoleMoment rotate_moment(const MultipoleMoment& m, const std::array<double, 9>& r) {
  std::array<double, 27> out{};
  const int rank = m.rank();
  const int n = static_cast<int>(component_count(m.kind()));
  for (int dst = 0; dst < n; ++dst) {
    double sum = 0.0;
    for (int src = 0; src < n; ++src) {
      double w = 1.0;
      int a = dst, b = src;
      for (int s = 0; s < rank; ++s) {
        w *= r[3 * (a % 3) + (b % 3)];
        a /= 3;
        b /= 3;
      }
      sum += w * m.components()[src];
    }
    out[dst] = sum;
  }
  return MultipoleMoment(m.kind(), std::span<const double>(out.data(), n));
}

inline const std::vector<MomentKind>& all_kinds() {
  static const std::vector<MomentKind> kinds = {MomentKind::E1, MomentKind::E2, MomentKind::E3,
                                                MomentKind::M1, MomentKind::M2};
  return kinds;
}

}  // namespace mprates::testing
