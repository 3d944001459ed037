#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace corrcache {

/// Fixed-width bit vector over GF(2), packed into 64-bit words.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

  static BitVector unit(std::size_t width, std::size_t column) {
    BitVector v(width);
    v.set(column);
    return v;
  }

  std::size_t width() const { return width_; }
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  bool none() const;
  std::size_t count() const;

  BitVector& operator^=(const BitVector& other);
  friend bool operator==(const BitVector&, const BitVector&) = default;

  /// Index of the lowest set bit at or after word `from_word`; width() if none.
  std::size_t lowest_set(std::size_t from_word = 0) const;

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Row space of a GF(2) matrix kept in echelon form. Rows are reduced as
/// they are inserted, so rank and span queries never re-run elimination.
class Gf2Matrix {
 public:
  explicit Gf2Matrix(std::size_t width);

  /// Adds a row; returns true if it raised the rank.
  bool insert(BitVector row);
  bool insert_unit(std::size_t column) { return insert(BitVector::unit(width_, column)); }

  std::size_t width() const { return width_; }
  std::size_t rank() const { return basis_.size(); }

  bool in_span(BitVector v) const;
  /// True iff the unit vector e_column lies in the row space.
  bool spans_unit(std::size_t column) const { return in_span(BitVector::unit(width_, column)); }

 private:
  // Reduces v in place against the basis; v ends up zero iff it was in span.
  void reduce(BitVector& v) const;

  std::size_t width_;
  std::vector<BitVector> basis_;
  // basis_ index whose lowest set bit is the column, or -1.
  std::vector<int> pivot_row_;
};

}  // namespace corrcache
