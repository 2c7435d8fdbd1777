#pragma once
// Exact rank computations: Gaussian elimination over the rational-function
// field GF(2)(x1,...) with complexity-ranked pivot selection, and bitset
// elimination over GF(2) itself.

#include <cstdint>
#include <vector>

#include "skein/ratfn.hpp"

namespace skein {

// Rank of a matrix over GF(2)(x...).  Pivots are chosen cheapest-first
// (exact 1 beats monomial fractions beats general entries), which keeps the
// fraction arithmetic from blowing up on the sparse matrices we feed it.
inline size_t rank_ratfn(std::vector<std::vector<RatFn>> m) {
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  std::vector<char> row_used(rows, 0), col_used(cols, 0);
  auto score = [](const RatFn& f) -> long {
    if (f.is_one()) return 0;
    if (f.num().num_terms() == 1 && f.den().num_terms() == 1) return 1;
    return static_cast<long>(f.num().num_terms() + f.den().num_terms());
  };
  size_t rank = 0;
  for (;;) {
    long best = -1;
    size_t pi = 0, pj = 0;
    for (size_t i = 0; i < rows; ++i) {
      if (row_used[i]) continue;
      for (size_t j = 0; j < cols; ++j) {
        if (col_used[j] || m[i][j].is_zero()) continue;
        long s = score(m[i][j]);
        if (best < 0 || s < best) {
          best = s;
          pi = i;
          pj = j;
          if (best == 0) goto found;
        }
      }
    }
    if (best < 0) break;
  found:
    row_used[pi] = 1;
    col_used[pj] = 1;
    ++rank;
    for (size_t k = 0; k < rows; ++k) {
      if (row_used[k] || m[k][pj].is_zero()) continue;
      RatFn factor = m[k][pj] / m[pi][pj];
      for (size_t c = 0; c < cols; ++c) {
        if (col_used[c] && c != pj) continue;
        if (m[pi][c].is_zero()) continue;
        m[k][c] += factor * m[pi][c];  // subtraction = addition over GF(2)
      }
    }
  }
  return rank;
}

// Rank over GF(2) of a dense 0/1 matrix, via 64-bit word rows.
inline size_t rank_gf2(const std::vector<std::vector<uint8_t>>& m) {
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  size_t words = (cols + 63) / 64;
  std::vector<std::vector<uint64_t>> bits(rows, std::vector<uint64_t>(words, 0));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j)
      if (m[i][j] & 1) bits[i][j / 64] |= uint64_t(1) << (j % 64);

  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t w = col / 64;
    uint64_t mask = uint64_t(1) << (col % 64);
    size_t pivot = rank;
    while (pivot < rows && !(bits[pivot][w] & mask)) ++pivot;
    if (pivot == rows) continue;
    std::swap(bits[pivot], bits[rank]);
    for (size_t i = 0; i < rows; ++i) {
      if (i != rank && (bits[i][w] & mask))
        for (size_t k = 0; k < words; ++k) bits[i][k] ^= bits[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace skein
