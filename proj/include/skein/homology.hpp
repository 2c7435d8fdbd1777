#pragma once
// Sector-wise homology of the complexes built in complexes.hpp.
//
// Both differentials preserve the glyph and raise delta by exactly 2, so the
// complex splits into independent (glyph, delta)-graded sectors; homology at
// delta is  dim(chain) - rank(d out of delta) - rank(d into delta).  The
// untwisted variant (surface arrows only, GF(2) coefficients) additionally
// preserves q and raises h by 1, giving an (h, q)-bigraded answer per glyph.

#include <map>
#include <stdexcept>
#include <vector>

#include "skein/complexes.hpp"
#include "skein/linalg.hpp"

namespace skein {

struct SectorHomology {
  Glyph glyph;
  std::map<int, int> chain;  // delta -> chain dimension
  std::map<int, int> dims;   // delta -> homology dimension (zeros erased)

  int total() const {
    int t = 0;
    for (auto& [d, v] : dims) t += v;
    return t;
  }
};

struct TwistedHomology {
  std::vector<SectorHomology> sectors;  // sorted by glyph
  int total = 0;

  const SectorHomology* sector(const Glyph& g) const {
    for (auto& s : sectors)
      if (s.glyph == g) return &s;
    return nullptr;
  }
  // (glyph, delta) -> dim map with zero sectors absent; the shape equality
  // used when comparing two computations of the same invariant.
  std::map<std::pair<Glyph, int>, int> table() const {
    std::map<std::pair<Glyph, int>, int> t;
    for (auto& s : sectors)
      for (auto& [d, v] : s.dims)
        if (v) t[{s.glyph, d}] = v;
    return t;
  }
};

inline TwistedHomology twisted_homology(const Complex& C) {
  if (!C.twisted) throw std::logic_error("twisted_homology needs a twisted complex");
  // gens per (glyph, delta)
  std::map<std::pair<int, int>, std::vector<int>> blocks;
  for (int i = 0; i < static_cast<int>(C.size()); ++i)
    blocks[{C.glyph_id[i], C.delta[i]}].push_back(i);

  std::map<std::pair<int, int>, size_t> ranks;
  for (auto& [key, src] : blocks) {
    auto it = blocks.find({key.first, key.second + 2});
    std::map<int, int> row_of;
    std::vector<int> rows;
    if (it != blocks.end())
      for (int t : it->second) {
        row_of[t] = static_cast<int>(rows.size());
        rows.push_back(t);
      }
    std::vector<std::vector<RatFn>> m(rows.size(), std::vector<RatFn>(src.size()));
    for (size_t j = 0; j < src.size(); ++j)
      for (auto& [dst, coeff] : C.d[src[j]]) {
        if (C.glyph_id[dst] != key.first)
          throw std::logic_error("differential does not preserve the glyph");
        if (C.delta[dst] != key.second + 2)
          throw std::logic_error("differential is not of degree 2 in delta");
        m[row_of.at(dst)][j] = coeff;
      }
    ranks[key] = rows.empty() ? 0 : rank_ratfn(m);
  }

  std::map<int, SectorHomology> by_glyph;
  for (auto& [key, src] : blocks) {
    auto [gid, delta] = key;
    SectorHomology& s = by_glyph[gid];
    s.glyph = C.glyphs[gid];
    s.chain[delta] += static_cast<int>(src.size());
  }
  TwistedHomology H;
  for (auto& [gid, s] : by_glyph) {
    for (auto& [delta, dim] : s.chain) {
      auto out = ranks.count({gid, delta}) ? ranks[{gid, delta}] : 0;
      auto in = ranks.count({gid, delta - 2}) ? ranks[{gid, delta - 2}] : 0;
      int hdim = dim - static_cast<int>(out) - static_cast<int>(in);
      if (hdim < 0) throw std::logic_error("negative homology dimension");
      if (hdim) s.dims[delta] = hdim;
    }
    H.total += s.total();
  }
  for (auto& [gid, s] : by_glyph) H.sectors.push_back(std::move(s));
  std::sort(H.sectors.begin(), H.sectors.end(),
            [](const SectorHomology& a, const SectorHomology& b) { return a.glyph < b.glyph; });
  return H;
}

struct UntwistedSector {
  Glyph glyph;
  std::map<std::pair<int, int>, int> chain;  // (h, q) -> chain dimension
  std::map<std::pair<int, int>, int> dims;   // (h, q) -> homology dimension

  int total() const {
    int t = 0;
    for (auto& [hq, v] : dims) t += v;
    return t;
  }
};

struct UntwistedHomology {
  std::vector<UntwistedSector> sectors;
  int total = 0;
};

inline UntwistedHomology untwisted_homology(const Complex& C) {
  if (C.twisted) throw std::logic_error("untwisted_homology needs an untwisted complex");
  std::map<std::tuple<int, int, int>, std::vector<int>> blocks;  // (glyph, h, q)
  for (int i = 0; i < static_cast<int>(C.size()); ++i)
    blocks[{C.glyph_id[i], C.h[i], C.q[i]}].push_back(i);

  std::map<std::tuple<int, int, int>, size_t> ranks;
  for (auto& [key, src] : blocks) {
    auto [gid, hh, qq] = key;
    auto it = blocks.find({gid, hh + 1, qq});
    std::map<int, int> row_of;
    size_t nrows = 0;
    if (it != blocks.end())
      for (int t : it->second) row_of[t] = static_cast<int>(nrows++);
    std::vector<std::vector<uint8_t>> m(nrows, std::vector<uint8_t>(src.size(), 0));
    for (size_t j = 0; j < src.size(); ++j)
      for (auto& [dst, coeff] : C.d[src[j]]) {
        if (!coeff.is_one()) throw std::logic_error("untwisted arrow with nontrivial coefficient");
        if (C.glyph_id[dst] != gid || C.h[dst] != hh + 1 || C.q[dst] != qq)
          throw std::logic_error("untwisted differential must preserve q and the glyph");
        m[row_of.at(dst)][j] = 1;
      }
    ranks[key] = nrows ? rank_gf2(m) : 0;
  }

  std::map<int, UntwistedSector> by_glyph;
  for (auto& [key, src] : blocks) {
    auto [gid, hh, qq] = key;
    UntwistedSector& s = by_glyph[gid];
    s.glyph = C.glyphs[gid];
    s.chain[{hh, qq}] += static_cast<int>(src.size());
  }
  UntwistedHomology H;
  for (auto& [gid, s] : by_glyph) {
    for (auto& [hq, dim] : s.chain) {
      auto [hh, qq] = hq;
      auto get = [&](int a, int b, int c) {
        auto it = ranks.find({a, b, c});
        return it == ranks.end() ? size_t(0) : it->second;
      };
      int hdim = dim - static_cast<int>(get(gid, hh, qq)) - static_cast<int>(get(gid, hh - 1, qq));
      if (hdim < 0) throw std::logic_error("negative homology dimension");
      if (hdim) s.dims[{hh, qq}] = hdim;
    }
    H.total += s.total();
  }
  for (auto& [gid, s] : by_glyph) H.sectors.push_back(std::move(s));
  std::sort(H.sectors.begin(), H.sectors.end(),
            [](const UntwistedSector& a, const UntwistedSector& b) { return a.glyph < b.glyph; });
  return H;
}

// d o d — must vanish identically; the strongest structural self-check.
inline bool differential_squares_to_zero(const Complex& C) {
  for (int i = 0; i < static_cast<int>(C.size()); ++i) {
    std::map<int, RatFn> sq;
    for (auto& [mid, c1] : C.d[i])
      for (auto& [dst, c2] : C.d[mid]) {
        RatFn& cell = sq[dst];
        cell = cell + c1 * c2;
      }
    for (auto& [dst, v] : sq)
      if (!v.is_zero()) return false;
  }
  return true;
}

}  // namespace skein
