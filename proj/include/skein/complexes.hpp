#pragma once
// Chain complexes of a diagram over the function field GF(2)(x1..xE).
//
// Generators: a complete smoothing plus a +/- decoration on each circle
// (arcs carry no decoration).  The full complex carries two differentials:
//   * the vertex (Koszul) part: each contractible circle decorated + maps to
//     the same state with that circle decorated -, with coefficient its
//     weight [C] (noncontractible circles have coefficient 0: no arrow);
//   * the surface part: each crossing at 0 flips to 1 and rewires the local
//     curves by structural rules (below).
// Gradings: h = |r|, q = h + #(+) - #(-), k = sum of signs over
// noncontractible circles, delta = 2h - q - n+.  Both differentials raise
// delta by exactly 2 and preserve the glyph.
//
// Surface rules (v = contractible circle, w = noncontractible circle,
// a = arc; everything structurally outside this list has coefficient 0):
//   merge (v,v)->v : (+,+)->+ , mixed->- , (-,-)->0
//   merge (w,w)->v : opposite signs -> - , equal -> 0
//   merge (v,w)->w : (+,s)->s , (-,s)->0
//   merge (a,v)->a : (+)-> pass , (-)->0
//   split v->(v,v) : + -> (+,-) + (-,+) , - -> (-,-)
//   split v->(w,w) : + -> (+,-) + (-,+) , - -> 0
//   split w->(w,v) : s -> (s,-)
//   split a->(a,v) : pass -> (pass,-)
//
// The collapsed complex lives on contractible-free states.  Its differential
// is the two-step zigzag: flip one crossing (always creating exactly one
// contractible circle, decorated -), invert that circle's Koszul arrow
// (coefficient 1/[C], flipping - to +), then flip a second crossing and keep
// the contractible-free outputs.  Building it requires every contractible
// circle in every state to have nonzero weight (std::domain_error otherwise).

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "skein/ratfn.hpp"
#include "skein/resolution.hpp"

namespace skein {

struct Generator {
  uint64_t code = 0;
  uint32_t dec = 0;  // bit j set = j-th circle of the state decorated minus

  friend bool operator<(const Generator& a, const Generator& b) {
    return a.code != b.code ? a.code < b.code : a.dec < b.dec;
  }
  friend bool operator==(const Generator& a, const Generator& b) = default;
};

namespace detail {

// Decorations as a per-curve sign vector: +1/-1 for circles, 0 for arcs.
inline std::vector<int> signs_of(const Resolution& r, uint32_t dec) {
  std::vector<int> s(r.curves.size(), 0);
  int slot = 0;
  for (size_t i = 0; i < r.curves.size(); ++i)
    if (!r.curves[i].is_arc) s[i] = ((dec >> slot++) & 1) ? -1 : +1;
  return s;
}

inline uint32_t dec_of(const Resolution& r, const std::vector<int>& s) {
  uint32_t dec = 0;
  int slot = 0;
  for (size_t i = 0; i < r.curves.size(); ++i)
    if (!r.curves[i].is_arc) {
      if (s[i] == -1) dec |= uint32_t(1) << slot;
      ++slot;
    }
  return dec;
}

struct SigmaArrow {
  uint64_t code;
  std::vector<int> signs;
};

// All surface-rule outputs of flipping `crossing` (with coefficient 1 each;
// an empty result means the rule coefficient is 0).
inline std::vector<SigmaArrow> sigma_step(const Resolver& R, uint64_t code,
                                          const std::vector<int>& signs, int crossing) {
  const Resolution& src = R.resolve(code);
  uint64_t code2 = code | (uint64_t(1) << crossing);
  const Resolution& dst = R.resolve(code2);
  Transition t = R.transition(code, crossing);

  std::vector<int> base(dst.curves.size(), 0);
  for (auto [i, j] : t.unchanged) base[j] = signs[i];

  std::vector<SigmaArrow> out;
  auto emit = [&](std::vector<int> s) { out.push_back({code2, std::move(s)}); };
  auto with = [&](int j, int v) {
    std::vector<int> s = base;
    s[j] = v;
    return s;
  };
  auto with2 = [&](int j0, int v0, int j1, int v1) {
    std::vector<int> s = base;
    s[j0] = v0;
    s[j1] = v1;
    return s;
  };

  if (t.before.size() == 2 && t.after.size() == 1) {
    int b0 = t.before[0], b1 = t.before[1], a0 = t.after[0];
    const Curve &B0 = src.curves[b0], &B1 = src.curves[b1], &A = dst.curves[a0];
    if (B0.is_arc && B1.is_arc) throw std::logic_error("two arcs cannot merge into one curve");
    if (B0.is_arc || B1.is_arc) {  // (a, circle) -> a
      const Curve& circ = B0.is_arc ? B1 : B0;
      int ci = B0.is_arc ? b1 : b0;
      if (!A.is_arc) throw std::logic_error("arc-circle merge must yield an arc");
      if (circ.contractible && signs[ci] == +1) emit(with(a0, 0));
    } else if (B0.contractible && B1.contractible) {  // (v,v) -> v
      if (A.is_arc || !A.contractible)
        throw std::logic_error("merge of two contractible circles must be contractible");
      if (signs[b0] == +1 || signs[b1] == +1)
        emit(with(a0, (signs[b0] == +1 && signs[b1] == +1) ? +1 : -1));
    } else if (!B0.contractible && !B1.contractible) {  // (w,w) -> v or 0
      if (A.is_arc) throw std::logic_error("circle merge cannot yield an arc");
      if (A.contractible && signs[b0] != signs[b1]) emit(with(a0, -1));
    } else {  // (v,w) -> w
      if (A.is_arc || A.contractible)
        throw std::logic_error("mixed merge must stay noncontractible");
      int vi = B0.contractible ? b0 : b1;
      int wi = B0.contractible ? b1 : b0;
      if (signs[vi] == +1) emit(with(a0, signs[wi]));
    }
  } else if (t.before.size() == 1 && t.after.size() == 2) {
    int b0 = t.before[0], a0 = t.after[0], a1 = t.after[1];
    const Curve &B = src.curves[b0], &A0 = dst.curves[a0], &A1 = dst.curves[a1];
    if (B.is_arc) {  // a -> (a, circle)
      if (A0.is_arc == A1.is_arc)
        throw std::logic_error("arc split must yield one arc and one circle");
      int arcj = A0.is_arc ? a0 : a1;
      int cirj = A0.is_arc ? a1 : a0;
      if (dst.curves[cirj].contractible) emit(with2(arcj, 0, cirj, -1));
    } else {
      if (A0.is_arc || A1.is_arc) throw std::logic_error("circle split cannot yield an arc");
      if (B.contractible) {
        if (A0.contractible != A1.contractible)
          throw std::logic_error("contractible split must be (v,v) or (w,w)");
        if (A0.contractible) {  // v -> (v,v)
          if (signs[b0] == +1) {
            emit(with2(a0, +1, a1, -1));
            emit(with2(a0, -1, a1, +1));
          } else {
            emit(with2(a0, -1, a1, -1));
          }
        } else {  // v -> (w,w)
          if (signs[b0] == +1) {
            emit(with2(a0, +1, a1, -1));
            emit(with2(a0, -1, a1, +1));
          }
        }
      } else {
        if (A0.contractible && A1.contractible)
          throw std::logic_error("noncontractible circle cannot split into two disks");
        if (A0.contractible != A1.contractible) {  // w -> (w, v)
          int vj = A0.contractible ? a0 : a1;
          int wj = A0.contractible ? a1 : a0;
          emit(with2(wj, signs[b0], vj, -1));
        }
        // w -> (w,w): coefficient 0
      }
    }
  } else if (t.before.size() == 2 && t.after.size() == 2) {
    for (int i : t.before)
      if (!src.curves[i].is_arc)
        throw std::logic_error("2->2 transitions can only rematch arcs");
    // arc rematch: coefficient 0
  }
  // 1 -> 1 reconfiguration: coefficient 0
  return out;
}

}  // namespace detail

// The glyph of a decorated state: parallel-family labels (zeros erased,
// families with equal class keys pooled) plus the arc system.
inline Glyph glyph_of(const Resolution& r, const std::vector<int>& signs) {
  Glyph g;
  for (size_t i = 0; i < r.curves.size(); ++i) {
    const Curve& cv = r.curves[i];
    if (cv.is_arc)
      g.arcs.push_back({cv.tail_end, cv.head_end, cv.key});
    else if (!cv.contractible)
      g.circles[cv.key] += signs[i];
  }
  for (auto it = g.circles.begin(); it != g.circles.end();)
    it = it->second == 0 ? g.circles.erase(it) : std::next(it);
  std::sort(g.arcs.begin(), g.arcs.end());
  return g;
}

struct Complex {
  const Resolver* resolver = nullptr;
  bool collapsed = false;  // built on contractible-free states only
  bool twisted = true;     // vertex (Koszul) arrows included

  std::vector<Generator> gens;
  std::map<Generator, int> index;
  std::vector<int> h, q, k, delta;
  std::vector<int> glyph_id;
  std::vector<Glyph> glyphs;
  std::vector<std::map<int, RatFn>> d;  // d[src][dst] = coefficient
  std::vector<std::string> warnings;

  size_t size() const { return gens.size(); }

  int add_gen(const Generator& g) {
    auto it = index.find(g);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(gens.size());
    gens.push_back(g);
    index[g] = id;

    const Resolution& r = resolver->resolve(g.code);
    std::vector<int> signs = detail::signs_of(r, g.dec);
    int plus = 0, minus = 0, kk = 0;
    for (size_t i = 0; i < r.curves.size(); ++i) {
      if (r.curves[i].is_arc) continue;
      (signs[i] == +1 ? plus : minus) += 1;
      if (!r.curves[i].contractible) kk += signs[i];
    }
    h.push_back(r.h);
    q.push_back(r.h + plus - minus);
    k.push_back(kk);
    delta.push_back(2 * r.h - q.back() - resolver->diagram().n_plus());

    Glyph gl = glyph_of(r, signs);
    int gid = -1;
    for (size_t i = 0; i < glyphs.size(); ++i)
      if (glyphs[i] == gl) gid = static_cast<int>(i);
    if (gid < 0) {
      gid = static_cast<int>(glyphs.size());
      glyphs.push_back(gl);
    }
    glyph_id.push_back(gid);
    d.emplace_back();
    return id;
  }

  void add_arrow(int src, int dst, const RatFn& coeff) {
    if (coeff.is_zero()) return;
    RatFn& cell = d[src][dst];
    cell = cell + coeff;
    if (cell.is_zero()) d[src].erase(dst);
  }
};

namespace detail {

// Structural sanity applied while building: circles whose class keys cannot
// tell families apart (only possible at genus >= 2).
inline void collect_warnings(const Resolver& R, Complex& C) {
  if (R.diagram().genus() < 2) return;
  for (uint64_t code = 0; code < (uint64_t(1) << R.diagram().n()); ++code) {
    const Resolution& r = R.resolve(code);
    std::map<std::vector<int64_t>, std::set<int>> fams;
    bool zero_key = false;
    for (auto& cv : r.curves) {
      if (cv.is_arc || cv.contractible) continue;
      fams[cv.key].insert(cv.family);
      if (cv.key == std::vector<int64_t>(R.diagram().num_edges(), 0)) zero_key = true;
    }
    for (auto& [key, fam_set] : fams)
      if (fam_set.size() > 1) {
        C.warnings.push_back(
            "distinct parallel families share a class key; sectors may be pooled");
        return;
      }
    if (zero_key) {
      C.warnings.push_back(
          "noncontractible circle with null class key; sectors may be pooled");
      return;
    }
  }
}

}  // namespace detail

// The full complex: all states, vertex + surface differentials.  The two
// parts can be selected independently (surface-only is the untwisted GF(2)
// theory; vertex-only and surface-only are composed in tests to check that
// the parts anticommute).
inline Complex build_sk_parts(const Resolver& R, bool with_vertical, bool with_sigma) {
  Complex C;
  C.resolver = &R;
  C.collapsed = false;
  C.twisted = with_vertical;
  const Diagram& D = R.diagram();
  int n = D.n();

  for (uint64_t code = 0; code < (uint64_t(1) << n); ++code) {
    const Resolution& r = R.resolve(code);
    if (r.num_circles > 30) throw std::domain_error("too many circles in one state");
    for (uint32_t dec = 0; dec < (uint32_t(1) << r.num_circles); ++dec)
      C.add_gen({code, dec});
  }

  for (int src = 0; src < static_cast<int>(C.size()); ++src) {
    Generator g = C.gens[src];
    const Resolution& r = R.resolve(g.code);
    std::vector<int> signs = detail::signs_of(r, g.dec);
    if (with_vertical) {
      int slot = 0;
      for (size_t i = 0; i < r.curves.size(); ++i) {
        if (r.curves[i].is_arc) continue;
        if (signs[i] == +1 && r.curves[i].contractible && !r.curves[i].weight.is_zero())
          C.add_arrow(src, C.index.at({g.code, g.dec | (uint32_t(1) << slot)}),
                      RatFn::of(r.curves[i].weight));
        ++slot;
      }
    }
    if (with_sigma)
      for (int c = 0; c < n; ++c) {
        if ((g.code >> c) & 1) continue;
        for (auto& arrow : detail::sigma_step(R, g.code, signs, c)) {
          const Resolution& r2 = R.resolve(arrow.code);
          C.add_arrow(src, C.index.at({arrow.code, detail::dec_of(r2, arrow.signs)}),
                      RatFn::one());
        }
      }
  }
  detail::collect_warnings(R, C);
  return C;
}

inline Complex build_sk(const Resolver& R) { return build_sk_parts(R, true, true); }

// Surface arrows only, all coefficients 1: the untwisted GF(2) theory.
inline Complex build_untwisted(const Resolver& R) { return build_sk_parts(R, false, true); }

// The collapsed complex on contractible-free states with the two-step zigzag
// differential.  Throws std::domain_error if any contractible circle anywhere
// in the cube has zero weight (the collapse inverts those weights).
inline Complex build_ct(const Resolver& R) {
  Complex C;
  C.resolver = &R;
  C.collapsed = true;
  C.twisted = true;
  const Diagram& D = R.diagram();
  int n = D.n();

  for (uint64_t code = 0; code < (uint64_t(1) << n); ++code) {
    const Resolution& r = R.resolve(code);
    for (auto& cv : r.curves)
      if (!cv.is_arc && cv.contractible && cv.weight.is_zero())
        throw std::domain_error(
            "collapse undefined: a contractible circle has zero weight");
    if (!r.contractible_free()) continue;
    if (r.num_circles > 30) throw std::domain_error("too many circles in one state");
    for (uint32_t dec = 0; dec < (uint32_t(1) << r.num_circles); ++dec)
      C.add_gen({code, dec});
  }

  size_t base_gens = C.size();  // zigzag targets are contractible-free: no new gens
  for (int src = 0; src < static_cast<int>(base_gens); ++src) {
    Generator g = C.gens[src];
    const Resolution& r = R.resolve(g.code);
    std::vector<int> signs = detail::signs_of(r, g.dec);
    for (int c1 = 0; c1 < n; ++c1) {
      if ((g.code >> c1) & 1) continue;
      for (auto& mid : detail::sigma_step(R, g.code, signs, c1)) {
        const Resolution& rm = R.resolve(mid.code);
        int ci = -1;
        for (size_t i = 0; i < rm.curves.size(); ++i)
          if (!rm.curves[i].is_arc && rm.curves[i].contractible) {
            if (ci >= 0) throw std::logic_error("zigzag middle has two contractible circles");
            ci = static_cast<int>(i);
          }
        if (ci < 0 || mid.signs[ci] != -1)
          throw std::logic_error("zigzag middle must carry one minus-decorated circle");
        RatFn coeff = RatFn::of(rm.curves[ci].weight).inv();
        std::vector<int> flipped = mid.signs;
        flipped[ci] = +1;
        for (int c2 = 0; c2 < n; ++c2) {
          if ((mid.code >> c2) & 1) continue;
          for (auto& fin : detail::sigma_step(R, mid.code, flipped, c2)) {
            const Resolution& rf = R.resolve(fin.code);
            if (!rf.contractible_free()) continue;
            C.add_arrow(src, C.index.at({fin.code, detail::dec_of(rf, fin.signs)}), coeff);
          }
        }
      }
    }
  }
  if (C.size() != base_gens) throw std::logic_error("zigzag left the collapsed complex");
  detail::collect_warnings(R, C);
  return C;
}

}  // namespace skein
