#include "mprates/tables.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "mprates/constants.hpp"

namespace mprates {

namespace {

int ipow3(int e) {
  int r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

std::size_t flatten(std::span<const int> indices) {
  std::size_t f = 0;
  for (int i : indices) f = 3 * f + static_cast<std::size_t>(i);
  return f;
}

std::vector<int> parse_indices(const std::string& s) {
  std::vector<int> out;
  for (char ch : s) {
    switch (ch) {
      case 'x': out.push_back(0); break;
      case 'y': out.push_back(1); break;
      case 'z': out.push_back(2); break;
      default: throw InvalidArgument("bad index letter in coefficient table");
    }
  }
  return out;
}

std::vector<std::vector<int>> distinct_orderings(std::vector<int> idx) {
  std::sort(idx.begin(), idx.end());
  std::vector<std::vector<int>> out;
  do {
    out.push_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

IntegerTensor build_coefficients(const std::vector<CoefficientRow>& rows, int moment_rank) {
  IntegerTensor t = IntegerTensor::zeros(2 * moment_rank);
  std::map<std::size_t, int> assigned;
  auto assign = [&](const std::vector<int>& a, const std::vector<int>& b, int value) {
    std::vector<int> full(a);
    full.insert(full.end(), b.begin(), b.end());
    const std::size_t f = flatten(full);
    if (auto it = assigned.find(f); it != assigned.end() && it->second != value) {
      throw NumericalError("coefficient table assigns two values to one entry");
    }
    assigned[f] = value;
    t.data[f] = value;
  };
  for (const auto& row : rows) {
    const auto a = parse_indices(row.first);
    const auto b = parse_indices(row.second);
    if (!row.all_permutations) {
      assign(a, b, row.coefficient);
      continue;
    }
    for (const auto& pa : distinct_orderings(a))
      for (const auto& pb : distinct_orderings(b)) {
        assign(pa, pb, row.coefficient);
        assign(pb, pa, row.coefficient);
      }
  }
  return t;
}

QuadraticForm build_form(const IntegerTensor& coeffs, int moment_rank, bool symmetric) {
  QuadraticForm form;
  const int dense = ipow3(moment_rank);
  if (symmetric) {
    std::map<std::vector<int>, std::vector<int>> orbit_of;
    std::vector<int> idx(moment_rank);
    for (int f = 0; f < dense; ++f) {
      int rem = f;
      for (int k = moment_rank - 1; k >= 0; --k) {
        idx[k] = rem % 3;
        rem /= 3;
      }
      auto key = idx;
      std::sort(key.begin(), key.end());
      orbit_of[key].push_back(f);
    }
    for (auto& [key, orbit] : orbit_of) {
      form.components.push_back(key);
      form.orbits.push_back(orbit);
    }
  } else {
    for (int f = 0; f < dense; ++f) {
      form.components.push_back({f / 3, f % 3});
      form.orbits.push_back({f});
    }
  }
  const std::size_t n = form.components.size();
  form.matrix = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      long long sum = 0;
      for (int i : form.orbits[u])
        for (int j : form.orbits[v]) sum += coeffs.data[static_cast<std::size_t>(i) * dense + j];
      form.matrix(u, v) = static_cast<double>(sum);
    }
  return form;
}

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace

IntegerTensor IntegerTensor::zeros(int rank) {
  return {rank, std::vector<long long>(static_cast<std::size_t>(ipow3(rank)), 0)};
}

long long IntegerTensor::at(std::span<const int> indices) const { return data[flatten(indices)]; }
long long& IntegerTensor::at(std::span<const int> indices) { return data[flatten(indices)]; }

const std::vector<CoefficientRow>& quadrupole_table_rows() {
  // Printed order, column by column within each row. The fifth row of the
  // third column prints zx zx a second time; the entry it stands for is
  // xz xz, the only ordered pair of that block otherwise missing.
  static const std::vector<CoefficientRow> rows = {
      {"xx", "xx", 3, false},  {"yy", "yy", 3, false},  {"zz", "zz", 8, false},
      {"xy", "xy", 1, false},  {"yz", "yz", 4, false},  {"zx", "zx", 4, false},
      {"xy", "yx", 1, false},  {"yz", "zy", 4, false},  {"zx", "xz", 4, false},
      {"yx", "xy", 1, false},  {"zy", "yz", 4, false},  {"xz", "zx", 4, false},
      {"yx", "yx", 1, false},  {"zy", "zy", 4, false},  {"xz", "xz", 4, false},
      {"xx", "yy", 1, false},  {"yy", "zz", -4, false}, {"zz", "xx", -4, false},
      {"yy", "xx", 1, false},  {"zz", "yy", -4, false}, {"xx", "zz", -4, false},
  };
  return rows;
}

const std::vector<CoefficientRow>& octupole_table_rows() {
  static const std::vector<CoefficientRow> rows = {
      {"xxx", "xxx", 5, false},  {"yyy", "yyy", 5, false},  {"zzz", "zzz", 16, false},
      {"xxy", "xxy", 1, true},   {"xxz", "xxz", 6, true},   {"yyx", "yyx", 1, true},
      {"yyz", "yyz", 6, true},   {"zzx", "zzx", 8, true},   {"zzy", "zzy", 8, true},
      {"xyy", "xxx", 1, true},   {"xzz", "xxx", -6, true},  {"yxx", "yyy", 1, true},
      {"yzz", "yyy", -6, true},  {"zxx", "zzz", -8, true},  {"zyy", "zzz", -8, true},
      {"xyy", "xzz", -2, true},  {"yzz", "yxx", -2, true},  {"zxx", "zyy", 2, true},
      {"xyz", "xyz", 2, true},
  };
  return rows;
}

const IntegerTensor& quadrupole_coefficients() {
  static const IntegerTensor t = build_coefficients(quadrupole_table_rows(), 2);
  return t;
}

const IntegerTensor& octupole_coefficients() {
  static const IntegerTensor t = build_coefficients(octupole_table_rows(), 3);
  return t;
}

double QuadraticForm::evaluate(const MultipoleMoment& m) const {
  const auto c = m.components();
  const std::size_t n = components.size();
  Eigen::VectorXd x(n);
  for (std::size_t u = 0; u < n; ++u) x(u) = c[orbits[u].front()];
  return x.dot(matrix * x);
}

const QuadraticForm& near_field_form(MomentKind kind) {
  static const QuadraticForm e2 = build_form(quadrupole_coefficients(), 2, true);
  static const QuadraticForm m2 = build_form(quadrupole_coefficients(), 2, false);
  static const QuadraticForm e3 = build_form(octupole_coefficients(), 3, true);
  switch (kind) {
    case MomentKind::E2: return e2;
    case MomentKind::M2: return m2;
    case MomentKind::E3: return e3;
    default: throw InvalidArgument("dipoles have no tabulated near-field quadratic form");
  }
}

const std::vector<long long>& printed_rank6_numerators() {
  static const std::vector<long long> m = {
      16, -5, -5, -5, 2,  2,  -5, 2,  2,  2,  2,  -5, 2,  2,  -5,
      -5, 16, -5, 2,  -5, 2,  2,  2,  -5, -5, 2,  2,  2,  -5, 2,
      -5, -5, 16, 2,  2,  -5, 2,  -5, 2,  2,  -5, 2,  -5, 2,  2,
      -5, 2,  2,  16, -5, -5, -5, 2,  2,  2,  -5, 2,  2,  -5, 2,
      2,  -5, 2,  -5, 16, -5, 2,  -5, 2,  -5, 2,  2,  2,  2,  -5,
      2,  2,  -5, -5, -5, 16, 2,  2,  -5, 2,  2,  -5, -5, 2,  2,
      -5, 2,  2,  -5, 2,  2,  16, -5, -5, -5, 2,  2,  -5, 2,  2,
      2,  2,  -5, 2,  -5, 2,  -5, 16, -5, 2,  -5, 2,  2,  2,  -5,
      2,  -5, 2,  2,  2,  -5, -5, -5, 16, 2,  2,  -5, 2,  -5, 2,
      2,  -5, 2,  2,  -5, 2,  -5, 2,  2,  16, -5, -5, -5, 2,  2,
      2,  2,  -5, -5, 2,  2,  2,  -5, 2,  -5, 16, -5, 2,  -5, 2,
      -5, 2,  2,  2,  2,  -5, 2,  2,  -5, -5, -5, 16, 2,  2,  -5,
      2,  2,  -5, 2,  2,  -5, -5, 2,  2,  -5, 2,  2,  16, -5, -5,
      2,  -5, 2,  -5, 2,  2,  2,  2,  -5, 2,  -5, 2,  -5, 16, -5,
      -5, 2,  2,  2,  -5, 2,  2,  -5, 2,  2,  2,  -5, -5, -5, 16,
  };
  return m;
}

std::vector<Rational> averaged_form_weights(const IntegerTensor& coefficients) {
  if (coefficients.rank % 2 != 0) throw InvalidArgument("coefficient tensor rank must be even");
  const AveragingTensor& avg = averaging_tensor(coefficients.rank / 2);
  const std::size_t n = avg.isomers.size();
  // A . g_a for every isomer.
  std::vector<long long> projections(n, 0);
  std::vector<int> idx(coefficients.rank);
  for (std::size_t f = 0; f < coefficients.data.size(); ++f) {
    if (coefficients.data[f] == 0) continue;
    std::size_t rem = f;
    for (int k = coefficients.rank - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(rem % 3);
      rem /= 3;
    }
    for (std::size_t a = 0; a < n; ++a)
      if (avg.isomers[a].evaluate(idx)) projections[a] += coefficients.data[f];
  }
  std::vector<Rational> weights(n, Rational(0));
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t a = 0; a < n; ++a) weights[b] += Rational(projections[a]) * avg.coefficients(a, b);
  return weights;
}

AveragedInvariants averaged_invariants(const IntegerTensor& coefficients) {
  const int n = coefficients.rank / 2;
  const auto weights = averaged_form_weights(coefficients);
  const auto& isomers = averaging_tensor(n).isomers;
  AveragedInvariants out{Rational(0), Rational(0)};
  for (std::size_t b = 0; b < isomers.size(); ++b) {
    const bool intra = std::any_of(isomers[b].pairs.begin(), isomers[b].pairs.end(),
                                   [&](const auto& p) { return p[1] < n; });
    (intra ? out.trace : out.full) += weights[b];
  }
  return out;
}

std::vector<TableCheck> run_table_checks() {
  std::vector<TableCheck> checks;
  auto group = TableCheck::Group::Averaging;
  auto add = [&](std::string name, bool ok, std::string detail) {
    checks.push_back({group, std::move(name), ok, std::move(detail)});
  };

  const std::vector<RationalMatrix> printed = {
      RationalMatrix::from_integers(1, 1, {1}, 3),
      RationalMatrix::from_integers(3, 3, {4, -1, -1, -1, 4, -1, -1, -1, 4}, 30),
      RationalMatrix::from_integers(15, 15, printed_rank6_numerators(), 210),
  };
  for (int n = 1; n <= 3; ++n) {
    const auto isomers = build_isomers(n);
    const RationalMatrix s = gram_matrix(isomers);
    const RationalMatrix& m = averaging_tensor(n).coefficients;
    const std::string tag = "rank-" + std::to_string(2 * n) + " averaging tensor";
    add(tag + ": M equals printed matrix", m == printed[n - 1],
        n < 3 ? "M = " + m.to_string() : "15x15, entry-for-entry");
    add(tag + ": S M S = S", s * m * s == s, std::to_string(isomers.size()) + " isomers");
    add(tag + ": M symmetric", m.is_symmetric(), "");
  }

  group = TableCheck::Group::Isotropic;
  struct Target {
    std::string name;
    const IntegerTensor* coeffs;
    Rational full;   // expected weight on d:d
    Rational trace;  // expected weight on the trace-trace invariant
    Rational near_prefactor;
    Rational iso_prefactor;  // near_prefactor * full
  };
  const std::vector<Target> targets = {
      {"quadrupole table average = (32/5){d:d - tr(d)^2/3}", &quadrupole_coefficients(),
       Rational(32, 5), Rational(-32, 15), Rational(3, 64), Rational(3, 10)},
      {"octupole table average = (256/35){d:d - d_aac d_bbc/4}", &octupole_coefficients(),
       Rational(256, 35), Rational(-64, 35), Rational(45, 256), Rational(9, 7)},
  };
  for (const auto& t : targets) {
    const auto [full, tr] = averaged_invariants(*t.coeffs);
    add(t.name, full == t.full && tr == t.trace,
        "d:d weight " + rational_str(full) + ", trace weight " + rational_str(tr));
    const Rational iso = t.near_prefactor * full;
    add(t.name.substr(0, t.name.find(' ')) + " isotropic prefactor " +
            rational_str(t.near_prefactor) + " -> " + rational_str(t.iso_prefactor),
        iso == t.iso_prefactor, "got " + rational_str(iso));
  }
  return checks;
}

}  // namespace mprates
