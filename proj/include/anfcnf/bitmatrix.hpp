#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace anfcnf {

/// Dense row-major bit matrix packed into 64-bit words. Trailing pad bits
/// of each row stay zero.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), w_(rows * wpr_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    check(r, c);
    return (w_[r * wpr_ + c / 64] >> (c % 64)) & 1u;
  }

  void set(std::size_t r, std::size_t c, bool v) {
    check(r, c);
    uint64_t& word = w_[r * wpr_ + c / 64];
    uint64_t mask = uint64_t(1) << (c % 64);
    if (v)
      word |= mask;
    else
      word &= ~mask;
  }

  /// dst ^= src, word-parallel.
  void xor_row_into(std::size_t src, std::size_t dst) {
    if (src >= rows_ || dst >= rows_)
      throw std::out_of_range("row index out of range");
    if (src == dst) throw std::invalid_argument("src and dst must differ");
    const uint64_t* s = &w_[src * wpr_];
    uint64_t* d = &w_[dst * wpr_];
    for (std::size_t k = 0; k < wpr_; ++k) d[k] ^= s[k];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    if (a >= rows_ || b >= rows_)
      throw std::out_of_range("row index out of range");
    for (std::size_t k = 0; k < wpr_; ++k)
      std::swap(w_[a * wpr_ + k], w_[b * wpr_ + k]);
  }

  bool row_is_zero(std::size_t r) const {
    if (r >= rows_) throw std::out_of_range("row index out of range");
    for (std::size_t k = 0; k < wpr_; ++k)
      if (w_[r * wpr_ + k]) return false;
    return true;
  }

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.w_ == b.w_;
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_)
      throw std::out_of_range("matrix index out of range");
  }

  std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<uint64_t> w_;
};

struct GaussResult {
  BitMatrix rref;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

/// In-place Gauss-Jordan elimination to reduced row echelon form. Pivots are
/// chosen scanning columns left to right; zero rows end up at the bottom.
inline GaussResult gauss_jordan(BitMatrix m) {
  GaussResult res;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = m.rows();
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (m.get(i, c)) {
        pivot = i;
        break;
      }
    }
    if (pivot == m.rows()) continue;
    m.swap_rows(pivot, r);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m.get(i, c)) m.xor_row_into(r, i);
    res.pivot_cols.push_back(c);
    ++r;
  }
  res.rank = r;
  res.rref = std::move(m);
  return res;
}

}  // namespace anfcnf
