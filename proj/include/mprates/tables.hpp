#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mprates/averaging.hpp"
#include "mprates/moments.hpp"
#include "mprates/rational.hpp"

namespace mprates {

/// Integer-valued dense tensor over three dimensions.
struct IntegerTensor {
  int rank = 0;
  std::vector<long long> data;

  static IntegerTensor zeros(int rank);
  long long at(std::span<const int> indices) const;
  long long& at(std::span<const int> indices);
};

/// One printed row of a near-field coefficient table: the index strings of
/// the two moment components (e.g. "xzz", "xxx"), the coefficient, and
/// whether the row stands for all index permutations and tensor exchange.
struct CoefficientRow {
  std::string first;
  std::string second;
  int coefficient;
  bool all_permutations;
};

/// Quadrupole near-field rows (21 entries, shared by E2 and M2).
const std::vector<CoefficientRow>& quadrupole_table_rows();
/// Octupole near-field rows (19 entries, most with "+ perm.").
const std::vector<CoefficientRow>& octupole_table_rows();

/// Rank-4 tensor A_abgd of the quadrupole table.
const IntegerTensor& quadrupole_coefficients();
/// Rank-6 tensor A_abgdmn of the octupole table. "+ perm." rows are
/// expanded to every distinct ordering of each index triple and to the
/// exchanged pair; each ordered entry is assigned once, never accumulated.
const IntegerTensor& octupole_coefficients();

/// The coefficient table written as a symmetric matrix over the independent
/// moment components: 6 for symmetric rank 2, 10 for symmetric rank 3,
/// 9 for the general rank-2 magnetic quadrupole.
struct QuadraticForm {
  /// Representative index tuple of each independent component.
  std::vector<std::vector<int>> components;
  /// Dense positions (row-major) summed into each independent component.
  std::vector<std::vector<int>> orbits;
  Eigen::MatrixXd matrix;

  /// x^T Q x with x the independent components of the moment.
  double evaluate(const MultipoleMoment& m) const;
};

/// The near-field quadratic form {A d d} appropriate for `kind`
/// (E2, E3 or M2). Throws InvalidArgument for dipoles.
const QuadraticForm& near_field_form(MomentKind kind);

/// The 15x15 integer matrix of the rank-6 averaging tensor as printed, to
/// be scaled by 1/210.
const std::vector<long long>& printed_rank6_numerators();

/// Rotational average of a coefficient tensor's quadratic form, written as
/// weights on the isomer invariants f_b . (d (x) d). Exact.
std::vector<Rational> averaged_form_weights(const IntegerTensor& coefficients);

/// The averaged quadratic form of a symmetric moment of rank n, reduced to
/// its two invariants: full * d:d + trace * (d_aa.. d_bb..). The trace
/// invariant collects every isomer that contracts indices within one moment.
struct AveragedInvariants {
  Rational full;
  Rational trace;
};
AveragedInvariants averaged_invariants(const IntegerTensor& coefficients);

struct TableCheck {
  enum class Group { Averaging, Isotropic };
  Group group;
  std::string name;
  bool passed;
  std::string detail;
};

/// Exact checks of the averaging tensors and the coefficient tables:
/// rank-2/4/6 coefficient matrices against their printed values,
/// S M S = S (group Averaging), and the isotropic near-field braces and
/// prefactors obtained by averaging both tables (group Isotropic).
std::vector<TableCheck> run_table_checks();

}  // namespace mprates
