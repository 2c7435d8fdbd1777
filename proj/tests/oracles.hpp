#pragma once
// Independent test oracles.  Everything here deliberately avoids the library's
// own elimination / normalization code paths:
//   * GF(256) (AES polynomial x^8+x^4+x^3+x+1) evaluation for Schwartz–Zippel
//     style checks of polynomial/fraction identities and matrix ranks,
//   * cofactor-expansion determinants for small exact rank cross-checks,
//   * exhaustive span / membership enumeration for GF(2) rank and integer
//     lattices.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "skein/gf2poly.hpp"
#include "skein/ratfn.hpp"

namespace oracle {

// ---------------------------------------------------------------- GF(256) --
struct F256 {
  uint8_t v = 0;
  friend F256 operator+(F256 a, F256 b) { return F256{static_cast<uint8_t>(a.v ^ b.v)}; }
  friend F256 operator*(F256 a, F256 b) {
    uint8_t x = a.v, y = b.v, r = 0;
    while (y) {
      if (y & 1) r ^= x;
      uint8_t hi = x & 0x80;
      x <<= 1;
      if (hi) x ^= 0x1B;  // x^8 = x^4+x^3+x+1
      y >>= 1;
    }
    return F256{r};
  }
  friend bool operator==(F256 a, F256 b) { return a.v == b.v; }
  bool is_zero() const { return v == 0; }
};

inline F256 f256_pow(F256 a, unsigned e) {
  F256 r{1};
  while (e) {
    if (e & 1) r = r * a;
    a = a * a;
    e >>= 1;
  }
  return r;
}
inline F256 f256_inv(F256 a) { return f256_pow(a, 254); }  // a^(q-2), a != 0

using Point = std::map<int, F256>;

inline Point random_point(const std::vector<int>& vars, std::mt19937& rng) {
  Point p;
  for (int v : vars) p[v] = F256{static_cast<uint8_t>(rng() % 256)};
  return p;
}

inline F256 eval_poly(const skein::PolyGF2& poly, const Point& pt) {
  F256 acc{0};
  for (const auto& m : poly.terms()) {
    F256 prod{1};
    for (auto& [var, exp] : m.vp) {
      auto it = pt.find(var);
      F256 val = it == pt.end() ? F256{0} : it->second;
      prod = prod * f256_pow(val, static_cast<unsigned>(exp));
    }
    acc = acc + prod;
  }
  return acc;
}

// Evaluates num/den; the caller must ensure den(pt) != 0.
inline F256 eval_ratfn(const skein::RatFn& f, const Point& pt) {
  return eval_poly(f.num(), pt) * f256_inv(eval_poly(f.den(), pt));
}

inline size_t rank_f256(std::vector<std::vector<F256>> m) {
  size_t rows = m.size(), cols = rows ? m[0].size() : 0, rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t p = rank;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    F256 inv = f256_inv(m[rank][c]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == rank || m[i][c].is_zero()) continue;
      F256 f = m[i][c] * inv;
      for (size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] + f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Rank oracle for RatFn matrices: max rank over several random evaluations
// (each a lower bound on the true rank; the max attains it w.h.p.).
inline size_t rank_by_evaluation(const std::vector<std::vector<skein::RatFn>>& m,
                                 std::mt19937& rng, int trials = 12) {
  std::vector<int> vars;
  {
    int maxv = 0;
    for (auto& row : m)
      for (auto& f : row) maxv = std::max({maxv, f.num().max_var(), f.den().max_var()});
    for (int v = 1; v <= maxv; ++v) vars.push_back(v);
  }
  size_t best = 0;
  int done = 0;
  for (int attempt = 0; attempt < trials * 20 && done < trials; ++attempt) {
    Point pt = random_point(vars, rng);
    bool ok = true;
    std::vector<std::vector<F256>> ev(m.size());
    for (size_t i = 0; i < m.size() && ok; ++i) {
      ev[i].resize(m[i].size());
      for (size_t j = 0; j < m[i].size() && ok; ++j) {
        if (eval_poly(m[i][j].den(), pt).is_zero()) ok = false;
        else ev[i][j] = eval_ratfn(m[i][j], pt);
      }
    }
    if (!ok) continue;
    best = std::max(best, rank_f256(std::move(ev)));
    ++done;
  }
  return best;
}

// --------------------------------------------- exact small determinants ----
inline skein::RatFn det_cofactor(const std::vector<std::vector<skein::RatFn>>& m) {
  size_t n = m.size();
  if (n == 0) return skein::RatFn::one();
  if (n == 1) return m[0][0];
  skein::RatFn acc = skein::RatFn::zero();
  for (size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<skein::RatFn>> minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<skein::RatFn> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    acc += m[0][j] * det_cofactor(minor);  // char 2: no signs
  }
  return acc;
}

// ----------------------------------------------- exhaustive GF(2) span -----
// rank = log2(#span), span enumerated over all XOR combinations (<= 2^16).
inline size_t rank_gf2_exhaustive(const std::vector<std::vector<uint8_t>>& m) {
  size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<uint64_t> masks(rows, 0);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j)
      if (m[i][j] & 1) masks[i] |= uint64_t(1) << j;
  std::vector<uint64_t> span;
  for (uint64_t sub = 0; sub < (uint64_t(1) << rows); ++sub) {
    uint64_t x = 0;
    for (size_t i = 0; i < rows; ++i)
      if (sub & (uint64_t(1) << i)) x ^= masks[i];
    span.push_back(x);
  }
  std::sort(span.begin(), span.end());
  span.erase(std::unique(span.begin(), span.end()), span.end());
  size_t r = 0;
  while ((size_t(1) << r) < span.size()) ++r;
  return r;
}

// --------------------------------------- exhaustive lattice membership -----
// Searches integer combinations of <= 4 generators with coefficients in
// [-bound, bound].  Only sound as a *positive* certificate finder.
inline bool lattice_member_exhaustive(const std::vector<std::vector<int64_t>>& gens,
                                      const std::vector<int64_t>& v, int bound) {
  size_t g = gens.size();
  if (g > 4) throw std::logic_error("lattice_member_exhaustive: too many generators");
  std::vector<int> coeff(g, -bound);
  for (;;) {
    std::vector<int64_t> sum(v.size(), 0);
    for (size_t i = 0; i < g; ++i)
      for (size_t j = 0; j < v.size(); ++j) sum[j] += coeff[i] * gens[i][j];
    if (sum == v) return true;
    size_t k = 0;
    while (k < g && coeff[k] == bound) coeff[k++] = -bound;
    if (k == g) return false;
    ++coeff[k];
  }
}

}  // namespace oracle
