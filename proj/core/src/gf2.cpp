#include "corrcache/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace corrcache {

bool BitVector::none() const {
  for (std::uint64_t w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::size_t BitVector::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.width_ != width_) throw std::invalid_argument("BitVector width mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::size_t BitVector::lowest_set(std::size_t from_word) const {
  for (std::size_t w = from_word; w < words_.size(); ++w) {
    if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return width_;
}

Gf2Matrix::Gf2Matrix(std::size_t width) : width_(width), pivot_row_(width, -1) {}

void Gf2Matrix::reduce(BitVector& v) const {
  std::size_t col = v.lowest_set();
  while (col < width_) {
    const int row = pivot_row_[col];
    if (row < 0) return;
    v ^= basis_[static_cast<std::size_t>(row)];
    // Basis rows have nothing below their pivot, so the scan can resume at
    // the pivot's word.
    col = v.lowest_set(col / 64);
  }
}

bool Gf2Matrix::insert(BitVector row) {
  if (row.width() != width_) throw std::invalid_argument("Gf2Matrix::insert: row width mismatch");
  reduce(row);
  const std::size_t pivot = row.lowest_set();
  if (pivot >= width_) return false;
  pivot_row_[pivot] = static_cast<int>(basis_.size());
  basis_.push_back(std::move(row));
  return true;
}

bool Gf2Matrix::in_span(BitVector v) const {
  if (v.width() != width_) throw std::invalid_argument("Gf2Matrix::in_span: width mismatch");
  reduce(v);
  return v.none();
}

}  // namespace corrcache
