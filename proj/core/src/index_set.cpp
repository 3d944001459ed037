#include "corrcache/index_set.hpp"

#include <stdexcept>

namespace corrcache {

IndexSet::IndexSet(std::initializer_list<int> indices) {
  for (int i : indices) insert(i);
}

IndexSet IndexSet::range(int n) {
  if (n < 0 || n > kMaxIndex) throw std::out_of_range("IndexSet::range: n out of range");
  return from_mask(n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n)));
}

void IndexSet::insert(int i) {
  if (i < 1 || i > kMaxIndex) throw std::out_of_range("IndexSet: index " + std::to_string(i) + " out of range");
  mask_ |= std::uint64_t{1} << (i - 1);
}

std::vector<int> IndexSet::elements() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

std::string IndexSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int i : elements()) {
    if (!first) s += ',';
    s += std::to_string(i);
    first = false;
  }
  s += '}';
  return s;
}

bool operator<(IndexSet a, IndexSet b) {
  const std::uint64_t diff = a.mask_ ^ b.mask_;
  if (diff == 0) return false;
  // Both sequences agree below the first differing index p; whichever set
  // holds p wins unless the other one has run out of elements.
  const int p = std::countr_zero(diff);
  const std::uint64_t above = (p == 63) ? 0 : (~std::uint64_t{0} << (p + 1));
  if ((a.mask_ >> p) & 1U) return (b.mask_ & above) != 0;
  return (a.mask_ & above) == 0;
}

std::vector<IndexSet> k_subsets_of(IndexSet universe, int k) {
  std::vector<IndexSet> out;
  const std::vector<int> items = universe.elements();
  const int n = static_cast<int>(items.size());
  if (k < 0 || k > n) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    IndexSet s;
    for (int i : idx) s.insert(items[i]);
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<IndexSet> k_subsets(int n, int k) { return k_subsets_of(IndexSet::range(n), k); }

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) is always divisible by i here.
    result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

BigInt big_binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

}  // namespace corrcache
