#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "corrcache/rational.hpp"

namespace corrcache {

/// Largest file or user index an IndexSet can hold.
inline constexpr int kMaxIndex = 32;

/// A set of 1-based indices (files or users), stored as a bitmask.
///
/// Ordering is lexicographic on the sorted element sequence, so {1,2} < {1,3}
/// < {2,3} and a proper prefix sorts first ({} < {1} < {1,2}).
class IndexSet {
 public:
  constexpr IndexSet() = default;
  IndexSet(std::initializer_list<int> indices);

  static constexpr IndexSet from_mask(std::uint64_t mask) {
    IndexSet s;
    s.mask_ = mask;
    return s;
  }
  /// {1, ..., n}
  static IndexSet range(int n);

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool contains(int i) const { return i >= 1 && i <= 64 && ((mask_ >> (i - 1)) & 1U); }

  void insert(int i);
  void erase(int i) { mask_ &= ~(std::uint64_t{1} << (i - 1)); }

  constexpr IndexSet operator|(IndexSet o) const { return from_mask(mask_ | o.mask_); }
  constexpr IndexSet operator&(IndexSet o) const { return from_mask(mask_ & o.mask_); }
  /// Set difference.
  constexpr IndexSet operator-(IndexSet o) const { return from_mask(mask_ & ~o.mask_); }
  constexpr bool is_subset_of(IndexSet o) const { return (mask_ & ~o.mask_) == 0; }
  constexpr bool intersects(IndexSet o) const { return (mask_ & o.mask_) != 0; }

  /// Sorted ascending, 1-based.
  std::vector<int> elements() const;
  /// Smallest element; 0 when empty.
  int front() const { return mask_ == 0 ? 0 : std::countr_zero(mask_) + 1; }

  /// `{1,2,5}`
  std::string to_string() const;

  friend constexpr bool operator==(IndexSet a, IndexSet b) { return a.mask_ == b.mask_; }
  friend bool operator<(IndexSet a, IndexSet b);

 private:
  std::uint64_t mask_ = 0;
};

/// All k-subsets of {1..n} in lexicographic order.
std::vector<IndexSet> k_subsets(int n, int k);

/// All k-subsets of `universe` in lexicographic order.
std::vector<IndexSet> k_subsets_of(IndexSet universe, int k);

/// Binomial coefficient; zero when k < 0 or k > n.
std::uint64_t binomial(int n, int k);
BigInt big_binomial(int n, int k);

}  // namespace corrcache
