#include "mprates/averaging.hpp"

#include <mutex>
#include <string>

#include "mprates/constants.hpp"

namespace mprates {

bool Isomer::evaluate(std::span<const int> indices) const {
  for (const auto& p : pairs) {
    if (indices[p[0]] != indices[p[1]]) return false;
  }
  return true;
}

namespace {

void enumerate_matchings(std::vector<int>& free_slots, Isomer& current,
                         std::vector<Isomer>& out) {
  if (free_slots.empty()) {
    out.push_back(current);
    return;
  }
  const int first = free_slots.front();
  for (std::size_t k = 1; k < free_slots.size(); ++k) {
    const int partner = free_slots[k];
    std::vector<int> rest;
    for (std::size_t m = 1; m < free_slots.size(); ++m)
      if (m != k) rest.push_back(free_slots[m]);
    current.pairs.push_back({first, partner});
    enumerate_matchings(rest, current, out);
    current.pairs.pop_back();
  }
}

int count_cycles(const Isomer& a, const Isomer& b, int slots) {
  std::vector<int> partner_a(slots), partner_b(slots);
  for (const auto& p : a.pairs) {
    partner_a[p[0]] = p[1];
    partner_a[p[1]] = p[0];
  }
  for (const auto& p : b.pairs) {
    partner_b[p[0]] = p[1];
    partner_b[p[1]] = p[0];
  }
  std::vector<bool> seen(slots, false);
  int cycles = 0;
  for (int start = 0; start < slots; ++start) {
    if (seen[start]) continue;
    ++cycles;
    int s = start;
    // Alternate a-edges and b-edges until the cycle closes.
    do {
      seen[s] = true;
      const int t = partner_a[s];
      seen[t] = true;
      s = partner_b[t];
    } while (s != start);
  }
  return cycles;
}

int ipow3(int e) {
  int r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

void unflatten(std::size_t flat, int rank, std::span<int> out) {
  for (int k = rank - 1; k >= 0; --k) {
    out[k] = static_cast<int>(flat % 3);
    flat /= 3;
  }
}

std::size_t flatten(std::span<const int> indices) {
  std::size_t f = 0;
  for (int i : indices) f = 3 * f + static_cast<std::size_t>(i);
  return f;
}

AveragingTensor build_averaging_tensor(int rank_n) {
  AveragingTensor t;
  t.rank_n = rank_n;
  t.isomers = build_isomers(rank_n);
  t.coefficients = gram_matrix(t.isomers).inverse();
  const std::size_t n = t.isomers.size();
  t.coefficients_fp.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t.coefficients_fp[i * n + j] = t.coefficients(i, j).convert_to<double>();
  return t;
}

}  // namespace

std::vector<Isomer> build_isomers(int rank_n) {
  if (rank_n < 1 || rank_n > 3) {
    throw InvalidArgument("rank not implemented: averaging tensors exist for n = 1, 2, 3, got " +
                          std::to_string(rank_n));
  }
  std::vector<int> slots(2 * rank_n);
  for (int i = 0; i < 2 * rank_n; ++i) slots[i] = i;
  std::vector<Isomer> out;
  Isomer current;
  enumerate_matchings(slots, current, out);
  return out;
}

RationalMatrix gram_matrix(std::span<const Isomer> isomers) {
  const std::size_t n = isomers.size();
  RationalMatrix s(n, n);
  if (n == 0) return s;
  const int slots = static_cast<int>(2 * isomers[0].pairs.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      s(i, j) = ipow3(count_cycles(isomers[i], isomers[j], slots));
  return s;
}

double AveragingTensor::component(std::span<const int> out_indices,
                                  std::span<const int> in_indices) const {
  const std::size_t n = isomers.size();
  double sum = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    if (!isomers[a].evaluate(out_indices)) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (isomers[b].evaluate(in_indices)) sum += coefficients_fp[a * n + b];
    }
  }
  return sum;
}

const AveragingTensor& averaging_tensor(int rank_n) {
  if (rank_n < 1 || rank_n > 3) build_isomers(rank_n);  // throws
  static std::once_flag flags[3];
  static AveragingTensor cache[3];
  std::call_once(flags[rank_n - 1],
                 [rank_n] { cache[rank_n - 1] = build_averaging_tensor(rank_n); });
  return cache[rank_n - 1];
}

DenseTensor DenseTensor::zeros(int rank) {
  return {rank, std::vector<double>(static_cast<std::size_t>(ipow3(rank)), 0.0)};
}

double& DenseTensor::at(std::span<const int> indices) { return data[flatten(indices)]; }
double DenseTensor::at(std::span<const int> indices) const { return data[flatten(indices)]; }

DenseTensor outer_product(const MultipoleMoment& a, const MultipoleMoment& b) {
  auto ca = a.components();
  auto cb = b.components();
  DenseTensor t{a.rank() + b.rank(), {}};
  t.data.reserve(ca.size() * cb.size());
  for (double x : ca)
    for (double y : cb) t.data.push_back(x * y);
  return t;
}

double contract(const Isomer& isomer, const DenseTensor& t) {
  if (static_cast<int>(2 * isomer.pairs.size()) != t.rank) {
    throw InvalidArgument("isomer and tensor ranks differ");
  }
  std::vector<int> idx(t.rank);
  double sum = 0.0;
  for (std::size_t f = 0; f < t.data.size(); ++f) {
    unflatten(f, t.rank, idx);
    if (isomer.evaluate(idx)) sum += t.data[f];
  }
  return sum;
}

DenseTensor rotational_average(const DenseTensor& t) {
  if (t.rank % 2 != 0) throw InvalidArgument("rotational averaging needs an even rank");
  const AveragingTensor& avg = averaging_tensor(t.rank / 2);
  const std::size_t n = avg.isomers.size();

  std::vector<double> invariants(n);
  for (std::size_t b = 0; b < n; ++b) invariants[b] = contract(avg.isomers[b], t);
  std::vector<double> weights(n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      weights[a] += avg.coefficients_fp[a * n + b] * invariants[b];

  DenseTensor out = DenseTensor::zeros(t.rank);
  std::vector<int> idx(t.rank);
  for (std::size_t f = 0; f < out.data.size(); ++f) {
    unflatten(f, t.rank, idx);
    double v = 0.0;
    for (std::size_t a = 0; a < n; ++a)
      if (avg.isomers[a].evaluate(idx)) v += weights[a];
    out.data[f] = v;
  }
  return out;
}

DenseTensor rotational_average_pair(const MultipoleMoment& a, const MultipoleMoment& b) {
  if (a.kind() != b.kind()) {
    throw InvalidArgument("rotational averaging needs two moments of the same kind");
  }
  if (is_magnetic(a.kind())) {
    throw InvalidArgument(
        "rotational averaging of magnetic moments is not physically meaningful: the spin "
        "is quantized along a fixed axis");
  }
  return rotational_average(outer_product(a, b));
}

DenseTensor rotate(const DenseTensor& t, const std::array<double, 9>& r) {
  // Apply R to one index at a time: T'_{..i..} = R_ij T_{..j..}.
  DenseTensor cur = t;
  const std::size_t total = t.data.size();
  for (int slot = 0; slot < t.rank; ++slot) {
    const std::size_t stride = static_cast<std::size_t>(ipow3(t.rank - 1 - slot));
    DenseTensor next = DenseTensor::zeros(t.rank);
    for (std::size_t f = 0; f < total; ++f) {
      const int i = static_cast<int>((f / stride) % 3);
      const std::size_t base = f - static_cast<std::size_t>(i) * stride;
      double v = 0.0;
      for (int j = 0; j < 3; ++j) v += r[3 * i + j] * cur.data[base + j * stride];
      next.data[f] = v;
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace mprates
