#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "mprates/moments.hpp"
#include "mprates/rational.hpp"

namespace mprates {

/// One product of Kronecker deltas over 2n index slots, written as a
/// perfect matching of the slots.
struct Isomer {
  std::vector<std::array<int, 2>> pairs;

  /// Value of the delta product at a concrete index assignment.
  bool evaluate(std::span<const int> indices) const;
  bool operator==(const Isomer&) const = default;
};

/// Canonical delta-product basis of the isotropic rank-2n tensors in three
/// dimensions, n in {1, 2, 3}: 1, 3 and 15 isomers.
///
/// Matchings are enumerated lexicographically (slot 0 paired with 1, 2, ...
/// in turn, then recursively), which reproduces the column order
/// (ab)(mn), (am)(bn), (an)(bm) for n = 2 and the standard 15-row order for
/// n = 3. Levi-Civita isomers are not needed: for even total rank in three
/// dimensions a product of two epsilons expands into delta products, so the
/// delta isomers already span the isotropic subspace.
///
/// Throws InvalidArgument("rank not implemented") for other n.
std::vector<Isomer> build_isomers(int rank_n);

/// S_ij = full contraction of isomer i with isomer j over three dimensions.
/// Computed as 3^(number of cycles) of the union of the two matchings.
RationalMatrix gram_matrix(std::span<const Isomer> isomers);

/// Isotropic averaging tensor I^(n) = g . M . f with M = S^-1.
struct AveragingTensor {
  int rank_n = 0;
  std::vector<Isomer> isomers;
  RationalMatrix coefficients;  // M
  std::vector<double> coefficients_fp;  // M as doubles, row-major

  /// Component I_{out...}^{in...}.
  double component(std::span<const int> out_indices, std::span<const int> in_indices) const;
};

/// Builds the averaging tensor for rank_n in {1, 2, 3} by exact rational
/// inversion of the Gram matrix. Cached; safe to call from many threads.
const AveragingTensor& averaging_tensor(int rank_n);

/// Dense tensor of rank r over three dimensions (3^r components, row-major).
struct DenseTensor {
  int rank = 0;
  std::vector<double> data;

  static DenseTensor zeros(int rank);
  double& at(std::span<const int> indices);
  double at(std::span<const int> indices) const;
};

/// Outer product a (x) b of two moments, rank 2n.
DenseTensor outer_product(const MultipoleMoment& a, const MultipoleMoment& b);

/// Full contraction of an isomer with a dense tensor of matching rank.
double contract(const Isomer& isomer, const DenseTensor& t);

/// Projects a rank-2n tensor onto its rotational average, <I> T.
DenseTensor rotational_average(const DenseTensor& t);

/// Rotational average of the outer product of two electric moments of the
/// same kind. Throws InvalidArgument on a kind mismatch and for magnetic
/// kinds: a spin has a fixed quantization axis, so its orientation average
/// has no physical meaning and is refused.
DenseTensor rotational_average_pair(const MultipoleMoment& a, const MultipoleMoment& b);

/// Applies a rotation R (row-major 3x3) to every index of a dense tensor.
DenseTensor rotate(const DenseTensor& t, const std::array<double, 9>& rotation);

}  // namespace mprates
