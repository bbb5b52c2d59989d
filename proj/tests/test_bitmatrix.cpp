#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "anfcnf/bitmatrix.hpp"
#include "oracle.hpp"

using namespace anfcnf;

namespace {

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                        std::size_t cols, int density_percent = 40) {
  BitMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (rng() % 100 < static_cast<uint64_t>(density_percent))
        m.set(r, c, true);
  return m;
}

// All 2^rows XOR combinations of a matrix's rows, as column bitsets.
std::set<std::vector<int>> row_space(const BitMatrix& m) {
  auto rows = oracle::unpack(m);
  std::set<std::vector<int>> space;
  for (uint64_t mask = 0; mask < (uint64_t(1) << m.rows()); ++mask) {
    std::vector<int> combo(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r)
      if ((mask >> r) & 1)
        for (std::size_t c = 0; c < m.cols(); ++c) combo[c] ^= rows[r][c];
    space.insert(std::move(combo));
  }
  return space;
}

}  // namespace

TEST_CASE("bit get/set and bounds checks") {
  BitMatrix m(2, 70);  // spans two words per row
  m.set(1, 69, true);
  CHECK(m.get(1, 69));
  m.set(1, 69, false);
  CHECK(!m.get(1, 69));
  CHECK_THROWS_AS(m.get(2, 0), std::out_of_range);
  CHECK_THROWS_AS(m.set(0, 70, true), std::out_of_range);
}

TEST_CASE("xor_row_into") {
  BitMatrix m(3, 3);
  // row0 = {1,0,1}, row1 = {1,1,0}
  m.set(0, 0, true);
  m.set(0, 2, true);
  m.set(1, 0, true);
  m.set(1, 1, true);
  m.xor_row_into(0, 1);
  CHECK(!m.get(1, 0));
  CHECK(m.get(1, 1));
  CHECK(m.get(1, 2));
  // xor of a zero row changes nothing
  BitMatrix before = m;
  m.xor_row_into(2, 0);
  CHECK(m == before);
  CHECK_THROWS_AS(m.xor_row_into(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(m.xor_row_into(0, 5), std::out_of_range);
}

TEST_CASE("gauss_jordan: identity is a fixed point") {
  BitMatrix m(5, 5);
  for (int i = 0; i < 5; ++i) m.set(i, i, true);
  auto res = gauss_jordan(m);
  CHECK(res.rank == 5);
  CHECK(res.rref == m);
  CHECK(res.pivot_cols == std::vector<std::size_t>{0, 1, 2, 3, 4});
}

TEST_CASE("gauss_jordan matches the naive unpacked eliminator") {
  std::mt19937_64 rng(101);
  for (int it = 0; it < 300; ++it) {
    std::size_t rows = 1 + rng() % 24, cols = 1 + rng() % 24;
    BitMatrix m = random_matrix(rng, rows, cols);
    auto res = gauss_jordan(m);
    CHECK(oracle::unpack(res.rref) == oracle::naive_rref(oracle::unpack(m)));
  }
}

TEST_CASE("gauss_jordan on wide packed matrices up to 64x96") {
  std::mt19937_64 rng(103);
  for (int it = 0; it < 1000; ++it) {
    std::size_t rows = 1 + rng() % 64, cols = 1 + rng() % 96;
    BitMatrix m = random_matrix(rng, rows, cols, 30);
    auto res = gauss_jordan(m);
    CHECK(oracle::unpack(res.rref) == oracle::naive_rref(oracle::unpack(m)));
    // RREF shape: each pivot column has exactly one set bit
    for (std::size_t k = 0; k < res.pivot_cols.size(); ++k) {
      std::size_t ones = 0;
      for (std::size_t r = 0; r < res.rref.rows(); ++r)
        ones += res.rref.get(r, res.pivot_cols[k]);
      CHECK(ones == 1);
      CHECK(res.rref.get(k, res.pivot_cols[k]));
    }
    // zero rows at the bottom, rank = nonzero rows
    for (std::size_t r = 0; r < res.rref.rows(); ++r)
      CHECK(res.rref.row_is_zero(r) == (r >= res.rank));
  }
}

TEST_CASE("gauss_jordan preserves the row space") {
  std::mt19937_64 rng(107);
  for (int it = 0; it < 50; ++it) {
    std::size_t rows = 1 + rng() % 10, cols = 1 + rng() % 12;
    BitMatrix m = random_matrix(rng, rows, cols);
    auto res = gauss_jordan(m);
    CHECK(row_space(m) == row_space(res.rref));
  }
}

TEST_CASE("gauss_jordan is a projection") {
  std::mt19937_64 rng(109);
  for (int it = 0; it < 50; ++it) {
    BitMatrix m = random_matrix(rng, 1 + rng() % 16, 1 + rng() % 16);
    auto once = gauss_jordan(m);
    auto twice = gauss_jordan(once.rref);
    CHECK(once.rref == twice.rref);
    CHECK(once.rank == twice.rank);
  }
}
