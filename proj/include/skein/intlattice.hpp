#pragma once
// Integer lattices given by generating rows: row-style Hermite normal form,
// canonical coset representatives, and membership tests.  Entries stay small
// in our use (homology-class bookkeeping on surfaces), so int64 suffices; the
// arithmetic asserts against overflow anyway.

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace skein {

class IntLattice {
 public:
  using Vec = std::vector<int64_t>;

  IntLattice() : dim_(0) {}

  // Lattice spanned (over Z) by the given rows, all of length dim.
  explicit IntLattice(std::vector<Vec> rows, size_t dim) : dim_(dim) {
    for (auto& r : rows)
      if (r.size() != dim_) throw std::invalid_argument("IntLattice: row length mismatch");
    hnf_ = std::move(rows);
    to_hnf();
  }

  size_t dim() const { return dim_; }
  const std::vector<Vec>& basis() const { return hnf_; }

  // Canonical representative of v + L: pivot-column entries land in
  // [0, pivot).  Two vectors are congruent mod L iff they reduce equally.
  Vec reduce(Vec v) const {
    if (v.size() != dim_) throw std::invalid_argument("IntLattice::reduce: length mismatch");
    for (size_t r = 0; r < hnf_.size(); ++r) {
      size_t c = pivot_col_[r];
      int64_t p = hnf_[r][c];
      int64_t q = floor_div(v[c], p);
      if (q != 0)
        for (size_t j = 0; j < dim_; ++j) v[j] -= mul_checked(q, hnf_[r][j]);
    }
    return v;
  }

  bool contains(const Vec& v) const {
    Vec r = reduce(v);
    for (int64_t x : r)
      if (x != 0) return false;
    return true;
  }

 private:
  size_t dim_;
  std::vector<Vec> hnf_;        // echelon rows, positive pivots
  std::vector<size_t> pivot_col_;

  static int64_t mul_checked(int64_t a, int64_t b) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p > INT64_MAX || p < INT64_MIN) throw std::overflow_error("IntLattice: overflow");
    return static_cast<int64_t>(p);
  }
  static int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
  }

  void to_hnf() {
    size_t r = 0;
    pivot_col_.clear();
    for (size_t c = 0; c < dim_ && r < hnf_.size(); ++c) {
      // Euclid out the column below row r until a single nonzero remains.
      for (;;) {
        size_t best = hnf_.size();
        for (size_t i = r; i < hnf_.size(); ++i)
          if (hnf_[i][c] != 0 && (best == hnf_.size() ||
                                  std::abs(hnf_[i][c]) < std::abs(hnf_[best][c])))
            best = i;
        if (best == hnf_.size()) break;  // column is zero below r
        std::swap(hnf_[r], hnf_[best]);
        bool others = false;
        for (size_t i = r + 1; i < hnf_.size(); ++i) {
          if (hnf_[i][c] == 0) continue;
          int64_t q = hnf_[i][c] / hnf_[r][c];
          for (size_t j = 0; j < dim_; ++j) hnf_[i][j] -= mul_checked(q, hnf_[r][j]);
          if (hnf_[i][c] != 0) others = true;
        }
        if (!others) break;
      }
      if (hnf_[r][c] == 0) continue;
      if (hnf_[r][c] < 0)
        for (size_t j = 0; j < dim_; ++j) hnf_[r][j] = -hnf_[r][j];
      // Reduce the entries above the pivot into [0, pivot).
      for (size_t i = 0; i < r; ++i) {
        int64_t q = floor_div(hnf_[i][c], hnf_[r][c]);
        if (q != 0)
          for (size_t j = 0; j < dim_; ++j) hnf_[i][j] -= mul_checked(q, hnf_[r][j]);
      }
      pivot_col_.push_back(c);
      ++r;
    }
    hnf_.resize(r);  // drop the zero rows
  }
};

}  // namespace skein
