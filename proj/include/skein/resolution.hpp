#pragma once
// Resolutions (complete smoothings) of a diagram and their surface topology.
//
// Smoothing conventions (anchored slots: slot 0 = first under halfedge):
//   * code 0 joins slots (0,1) and (2,3); code 1 joins slots (0,3) and (1,2).
//   * The resolved picture is itself a combinatorial map M_r: each crossing
//     becomes two degree-3 "smoothing vertices" (one per local strand arc)
//     joined by a virtual "channel" edge through the old crossing point.
//     CCW rotations: code 0 -> (a0,a1,ch),(a2,a3,ch); code 1 ->
//     (a3,a0,ch),(a1,a2,ch).  The faces of M_r are in bijection with the
//     faces of the diagram; the channel edge splits the band between the two
//     smoothing arcs lengthwise.
//   * Region analysis: regions are unions of M_r faces glued across all
//     edges NOT in a chosen cut set (channel edges are never cut).  The
//     Euler characteristic of a region is computed exactly from the CW
//     structure: faces, glued/boundary edge sides, and corner sectors.
//   * A circle is contractible iff cutting along it alone yields a region
//     with chi = 1 containing no marked face and not the boundary vertex.
//   * Two noncontractible circles are adjacent-parallel iff cutting along
//     all noncontractible circles yields a region with chi = 0, no marked
//     faces, no boundary vertex, whose boundary meets exactly one full side
//     of each.  Parallel families are the transitive closure.
//   * Class keys: a curve's edge chain lives in Z^E; its class in the
//     punctured surface is the canonical coset representative modulo the
//     lattice spanned by unmarked face boundaries.  Circles use
//     lexmin(reduce(v), reduce(-v)); arcs are oriented from their smaller
//     boundary end.  (For genus >= 2 the key can identify non-isotopic
//     separating circles; consumers emit a warning when that matters.)

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "skein/diagram.hpp"
#include "skein/intlattice.hpp"

namespace skein {

namespace detail {

// A small rotation-system map over a fixed halfedge id universe (ids with
// vertex -1 are unused).
struct SmallMap {
  std::vector<std::vector<int>> rot;  // per vertex, CCW
  std::vector<int> twin;              // per halfedge id
  // derived
  std::vector<int> vertex_of, sigma, sigma_inv, face_of;
  std::vector<std::vector<int>> faces;

  void build() {
    size_t H = twin.size();
    vertex_of.assign(H, -1);
    sigma.assign(H, -1);
    sigma_inv.assign(H, -1);
    face_of.assign(H, -1);
    faces.clear();
    for (size_t v = 0; v < rot.size(); ++v) {
      auto& r = rot[v];
      for (size_t i = 0; i < r.size(); ++i) {
        vertex_of[r[i]] = static_cast<int>(v);
        sigma[r[i]] = r[(i + 1) % r.size()];
      }
    }
    for (size_t h = 0; h < H; ++h)
      if (sigma[h] >= 0) sigma_inv[sigma[h]] = static_cast<int>(h);
    for (size_t h0 = 0; h0 < H; ++h0) {
      if (vertex_of[h0] < 0 || face_of[h0] >= 0) continue;
      std::vector<int> cyc;
      int h = static_cast<int>(h0);
      do {
        face_of[h] = static_cast<int>(faces.size());
        cyc.push_back(h);
        h = sigma_inv[twin[h]];
      } while (h != static_cast<int>(h0));
      faces.push_back(std::move(cyc));
    }
  }
};

// Regions of a SmallMap relative to a cut set of map-edges, with exact
// per-region Euler characteristics via corner sectors.
struct Regions {
  std::vector<int> region_of_face;
  int count = 0;
  std::vector<int> chi;                      // per region
  std::vector<std::vector<int>> markers;     // marker indices per region
  std::vector<char> has_boundary_vertex;     // per region
};

inline Regions analyze_regions(const SmallMap& m, const std::vector<int>& map_edge_of,
                               const std::vector<char>& cut,
                               const std::vector<std::pair<int, int>>& marker_faces,
                               const std::vector<int>& boundary_vertex_faces) {
  size_t H = m.twin.size();
  size_t F = m.faces.size();

  // Union-find over faces: glue across non-cut edges.
  std::vector<int> parent(F);
  for (size_t i = 0; i < F; ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t h = 0; h < H; ++h) {
    if (m.vertex_of[h] < 0) continue;
    if (!cut[map_edge_of[h]])
      parent[find(m.face_of[h])] = find(m.face_of[m.twin[h]]);
  }

  Regions out;
  out.region_of_face.assign(F, -1);
  std::map<int, int> root_to_region;
  for (size_t f = 0; f < F; ++f) {
    int r = find(static_cast<int>(f));
    auto it = root_to_region.find(r);
    if (it == root_to_region.end()) it = root_to_region.insert({r, out.count++}).first;
    out.region_of_face[f] = it->second;
  }

  // Corner sectors: corner id h = the corner between germ h and sigma(h);
  // corners merge across germ g (i.e. corner sigma_inv(g) with corner g)
  // exactly when g's edge is glued.
  std::vector<int> cparent(H);
  for (size_t i = 0; i < H; ++i) cparent[i] = static_cast<int>(i);
  auto cfind = [&](int x) {
    while (cparent[x] != x) x = cparent[x] = cparent[cparent[x]];
    return x;
  };
  for (size_t g = 0; g < H; ++g) {
    if (m.vertex_of[g] < 0) continue;
    if (!cut[map_edge_of[g]]) cparent[cfind(m.sigma_inv[g])] = cfind(static_cast<int>(g));
  }
  std::vector<char> sector_seen(H, 0);
  std::vector<int> V(out.count, 0), E(out.count, 0), Fc(out.count, 0);
  for (size_t h = 0; h < H; ++h) {
    if (m.vertex_of[h] < 0) continue;
    int rep = cfind(static_cast<int>(h));
    if (!sector_seen[rep]) {
      sector_seen[rep] = 1;
      ++V[out.region_of_face[m.face_of[h]]];
    }
  }
  for (size_t h = 0; h < H; ++h) {
    if (m.vertex_of[h] < 0 || m.twin[h] < static_cast<int>(h)) continue;  // one per edge
    int ra = out.region_of_face[m.face_of[h]];
    int rb = out.region_of_face[m.face_of[m.twin[h]]];
    if (cut[map_edge_of[h]]) {
      ++E[ra];
      ++E[rb];
    } else {
      if (ra != rb) throw std::logic_error("regions: glued edge spans two regions");
      ++E[ra];
    }
  }
  for (size_t f = 0; f < F; ++f) ++Fc[out.region_of_face[f]];
  out.chi.resize(out.count);
  for (int r = 0; r < out.count; ++r) out.chi[r] = V[r] - E[r] + Fc[r];

  out.markers.assign(out.count, {});
  for (auto& [marker_id, face] : marker_faces)
    out.markers[out.region_of_face[face]].push_back(marker_id);
  out.has_boundary_vertex.assign(out.count, 0);
  for (int f : boundary_vertex_faces) out.has_boundary_vertex[out.region_of_face[f]] = 1;
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------

struct Curve {
  std::vector<int> edge_cycle;  // edge indices in traversal order
  std::vector<int64_t> vec;     // oriented chain vector in Z^E
  bool is_arc = false;
  int tail_end = -1, head_end = -1;  // boundary germ halfedges (arcs only)
  bool contractible = false;          // circles only
  PolyGF2 weight;                     // sum of member edge weights
  std::vector<int64_t> key;           // canonical class key
  std::vector<int> enclosed_punctures;  // genus-0 display aid (circles)
  int family = -1;                    // parallel family among noncontractible circles

  std::set<int> edge_set() const { return {edge_cycle.begin(), edge_cycle.end()}; }
};

// The isotopy data of the noncontractible part of a decorated state: parallel
// circle families with nonzero integer labels, plus the arc system.
struct Glyph {
  std::map<std::vector<int64_t>, int> circles;  // class key -> label (never 0)
  std::vector<std::tuple<int, int, std::vector<int64_t>>> arcs;  // sorted

  bool operator==(const Glyph&) const = default;
  bool operator<(const Glyph& o) const {
    if (circles != o.circles) return circles < o.circles;
    return arcs < o.arcs;
  }

  bool trivial() const { return circles.empty() && arcs.empty(); }

  static std::string render_vec(const std::vector<int64_t>& v) {
    std::string s = "[";
    bool first = true;
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      if (!first) s += ",";
      first = false;
      s += "e" + std::to_string(i + 1) + ":" + std::to_string(v[i]);
    }
    if (first) s += "0";
    return s + "]";
  }

  std::string render() const {
    if (trivial()) return "trivial";
    std::string s;
    for (auto& [key, label] : circles) {
      if (!s.empty()) s += " ";
      s += render_vec(key) + (label > 0 ? ":+" : ":") + std::to_string(label);
    }
    for (auto& [t, h, key] : arcs) {
      if (!s.empty()) s += " ";
      s += "arc(" + std::to_string(t) + "-" + std::to_string(h) + ")" + render_vec(key);
    }
    return s;
  }
};

struct Resolution {
  uint64_t code = 0;
  int h = 0;  // |r| = number of 1-smoothings
  std::vector<Curve> curves;
  std::vector<int> curve_at;          // per original halfedge: curve index
  std::optional<int> black_chi;       // state black-surface chi (marked faces subtracted)
  std::optional<int> black_punctures; // punctures (infinity excluded) in black regions
  int num_circles = 0, num_contractible = 0, num_arcs = 0;

  bool contractible_free() const { return num_contractible == 0; }
};

// Identifies how flipping one crossing 0 -> 1 rewires the curves.
struct Transition {
  std::vector<int> before;                    // curve ids in the source through the crossing
  std::vector<int> after;                     // curve ids in the target through the crossing
  std::vector<std::pair<int, int>> unchanged; // (source id, target id), identical edge sets
};

class Resolver {
 public:
  explicit Resolver(const Diagram& d) : d_(d) {
    std::set<int> marked = d_.marked_faces();
    std::vector<IntLattice::Vec> rows;
    for (int f = 0; f < d_.num_faces(); ++f)
      if (!marked.count(f)) rows.push_back(d_.face_boundary_vec(f));
    lattice_ = IntLattice(rows, d_.edges.size());
    // Marker ids: punctures get 0..p-1, the infinity face (if any) gets p.
    for (size_t i = 0; i < d_.punctures.size(); ++i)
      markers_.push_back({static_cast<int>(i), d_.punctures[i]});
    if (d_.infinity) markers_.push_back({static_cast<int>(d_.punctures.size()), *d_.infinity});
  }

  const Diagram& diagram() const { return d_; }
  const IntLattice& class_lattice() const { return lattice_; }
  int infinity_marker() const { return d_.infinity ? static_cast<int>(d_.punctures.size()) : -1; }

  const Resolution& resolve(uint64_t code) const {
    auto it = cache_.find(code);
    if (it == cache_.end()) it = cache_.insert({code, compute(code)}).first;
    return it->second;
  }

  Transition transition(uint64_t code, int crossing) const {
    if (code & (uint64_t(1) << crossing))
      throw std::logic_error("transition: crossing already at 1");
    const Resolution& src = resolve(code);
    const Resolution& dst = resolve(code | (uint64_t(1) << crossing));
    Transition t;
    std::set<int> before, after;
    for (int i = 0; i < 4; ++i) {
      before.insert(src.curve_at[d_.anchored_he(crossing, i)]);
      after.insert(dst.curve_at[d_.anchored_he(crossing, i)]);
    }
    t.before = {before.begin(), before.end()};
    t.after = {after.begin(), after.end()};
    std::map<std::set<int>, int> dst_by_edges;
    for (size_t j = 0; j < dst.curves.size(); ++j)
      if (!after.count(static_cast<int>(j)))
        dst_by_edges[dst.curves[j].edge_set()] = static_cast<int>(j);
    for (size_t i = 0; i < src.curves.size(); ++i) {
      if (before.count(static_cast<int>(i))) continue;
      auto it = dst_by_edges.find(src.curves[i].edge_set());
      if (it == dst_by_edges.end())
        throw std::logic_error("transition: unchanged curve has no edge-set partner");
      t.unchanged.push_back({static_cast<int>(i), it->second});
    }
    if (t.unchanged.size() + t.before.size() != src.curves.size() ||
        t.unchanged.size() + t.after.size() != dst.curves.size())
      throw std::logic_error("transition: curve matching is not a bijection");
    return t;
  }

  std::vector<int64_t> reduce_cycle(const std::vector<int64_t>& v) const {
    return lattice_.reduce(v);
  }
  std::vector<int64_t> canonical_circle_key(const std::vector<int64_t>& v) const {
    std::vector<int64_t> neg(v.size());
    for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
    std::vector<int64_t> a = lattice_.reduce(v), b = lattice_.reduce(neg);
    return std::min(a, b);
  }

 private:
  Diagram d_;  // owned copy: a Resolver outlives any temporary it was built from
  IntLattice lattice_;
  std::vector<std::pair<int, int>> markers_;  // (marker id, marker halfedge)
  mutable std::map<uint64_t, Resolution> cache_;

  int channel_he(int c, int side) const { return d_.num_halfedges() + 2 * c + side; }
  int channel_edge(int c) const { return static_cast<int>(d_.edges.size()) + c; }

  // The smoothing partner of original halfedge h at its crossing under `code`.
  int partner(uint64_t code, int h) const {
    int c = d_.origin(h);
    int i = d_.anchored_slot(h);
    int bit = (code >> c) & 1;
    // code 0: 0<->1, 2<->3 ; code 1: 0<->3, 1<->2.
    static const int p0[4] = {1, 0, 3, 2};
    static const int p1[4] = {3, 2, 1, 0};
    return d_.anchored_he(c, bit ? p1[i] : p0[i]);
  }

  detail::SmallMap build_map(uint64_t code) const {
    detail::SmallMap m;
    int H = d_.num_halfedges();
    int n = d_.n();
    m.twin.assign(H + 2 * n, -1);
    for (auto& [a, b] : d_.edges) {
      m.twin[a] = b;
      m.twin[b] = a;
    }
    for (int c = 0; c < n; ++c) {
      m.twin[channel_he(c, 0)] = channel_he(c, 1);
      m.twin[channel_he(c, 1)] = channel_he(c, 0);
    }
    m.rot.assign(2 * n + (d_.has_boundary() ? 1 : 0), {});
    for (int c = 0; c < n; ++c) {
      int a0 = d_.anchored_he(c, 0), a1 = d_.anchored_he(c, 1);
      int a2 = d_.anchored_he(c, 2), a3 = d_.anchored_he(c, 3);
      if ((code >> c) & 1) {
        m.rot[2 * c] = {a3, a0, channel_he(c, 0)};
        m.rot[2 * c + 1] = {a1, a2, channel_he(c, 1)};
      } else {
        m.rot[2 * c] = {a0, a1, channel_he(c, 0)};
        m.rot[2 * c + 1] = {a2, a3, channel_he(c, 1)};
      }
    }
    if (d_.has_boundary()) m.rot[2 * n] = d_.boundary_ends;
    m.build();
    return m;
  }

  std::vector<int> map_edge_of(const detail::SmallMap& m) const {
    std::vector<int> me(m.twin.size(), -1);
    for (size_t h = 0; h < m.twin.size(); ++h) {
      if (m.vertex_of[h] < 0) continue;
      me[h] = h < static_cast<size_t>(d_.num_halfedges())
                  ? d_.edge_of(static_cast<int>(h))
                  : channel_edge((static_cast<int>(h) - d_.num_halfedges()) / 2);
    }
    return me;
  }

  Resolution compute(uint64_t code) const;
};

inline Resolution Resolver::compute(uint64_t code) const {
  Resolution res;
  res.code = code;
  res.h = static_cast<int>(__builtin_popcountll(code));

  int H = d_.num_halfedges();
  int E = static_cast<int>(d_.edges.size());

  // ---- trace the resolved curves ----
  res.curve_at.assign(H, -1);
  std::vector<char> edge_done(E, 0);
  auto trace_from = [&](int h0, bool arc) {
    Curve cv;
    cv.is_arc = arc;
    cv.vec.assign(E, 0);
    int h = h0;
    for (;;) {
      int e = d_.edge_of(h);
      cv.edge_cycle.push_back(e);
      edge_done[e] = 1;
      cv.vec[e] += (d_.edges[e].first == h) ? 1 : -1;
      int t = d_.twin(h);
      if (d_.origin(t) == d_.n()) {  // reached the boundary vertex
        cv.head_end = t;
        break;
      }
      h = partner(code, t);
      if (h == h0) break;
    }
    if (arc) {
      cv.tail_end = h0;
      if (cv.tail_end > cv.head_end) {
        std::swap(cv.tail_end, cv.head_end);
        std::reverse(cv.edge_cycle.begin(), cv.edge_cycle.end());
        for (auto& x : cv.vec) x = -x;
      }
    }
    cv.weight = d_.weight_sum(cv.edge_cycle);
    return cv;
  };

  std::vector<Curve> curves;
  // Arcs start at boundary germs.
  for (int g : d_.boundary_ends)
    if (!edge_done[d_.edge_of(g)]) curves.push_back(trace_from(g, true));
  // Circles: start from the smallest untraced halfedge of each.
  for (int h = 0; h < H; ++h)
    if (d_.origin(h) != d_.n() && !edge_done[d_.edge_of(h)])
      curves.push_back(trace_from(h, false));

  // Deterministic order: arcs by tail end, then circles by smallest edge.
  std::stable_sort(curves.begin(), curves.end(), [](const Curve& a, const Curve& b) {
    if (a.is_arc != b.is_arc) return a.is_arc;
    if (a.is_arc) return a.tail_end < b.tail_end;
    return *std::min_element(a.edge_cycle.begin(), a.edge_cycle.end()) <
           *std::min_element(b.edge_cycle.begin(), b.edge_cycle.end());
  });
  res.curves = std::move(curves);
  for (size_t i = 0; i < res.curves.size(); ++i)
    for (int e : res.curves[i].edge_cycle) {
      res.curve_at[d_.edges[e].first] = static_cast<int>(i);
      res.curve_at[d_.edges[e].second] = static_cast<int>(i);
    }

  // ---- region machinery ----
  detail::SmallMap m = build_map(code);
  std::vector<int> me = map_edge_of(m);
  int num_map_edges = E + d_.n();

  std::vector<std::pair<int, int>> marker_faces;
  for (auto& [id, he] : markers_) marker_faces.push_back({id, m.face_of[he]});
  std::vector<int> bfaces;
  for (int g : d_.boundary_ends) bfaces.push_back(m.face_of[g]);

  auto regions_with_cut = [&](const std::vector<char>& cut) {
    return detail::analyze_regions(m, me, cut, marker_faces, bfaces);
  };

  // Contractibility + genus-0 enclosed-puncture labels, one cut per circle.
  int inf_marker = infinity_marker();
  for (auto& cv : res.curves) {
    if (cv.is_arc) continue;
    std::vector<char> cut(num_map_edges, 0);
    for (int e : cv.edge_cycle) cut[e] = 1;
    detail::Regions rg = regions_with_cut(cut);
    cv.contractible = false;
    for (int r = 0; r < rg.count; ++r)
      if (rg.chi[r] == 1 && rg.markers[r].empty() && !rg.has_boundary_vertex[r])
        cv.contractible = true;
    if (d_.chi() == 2 && rg.count == 2) {
      // Genus 0: a circle separates the sphere into two sides.  Record the
      // punctures on the side away from infinity / the boundary vertex; with
      // neither present, the lexicographically smaller side.
      auto side = [&](int r) {
        std::vector<int> s;
        for (int mk : rg.markers[r])
          if (mk != inf_marker) s.push_back(mk);
        std::sort(s.begin(), s.end());
        return s;
      };
      auto holds_infinity = [&](int r) {
        return rg.has_boundary_vertex[r] ||
               std::count(rg.markers[r].begin(), rg.markers[r].end(), inf_marker) > 0;
      };
      if (holds_infinity(0) != holds_infinity(1))
        cv.enclosed_punctures = side(holds_infinity(0) ? 1 : 0);
      else
        cv.enclosed_punctures = std::min(side(0), side(1));
    }
  }

  // ---- class keys ----
  for (auto& cv : res.curves) {
    if (cv.is_arc) cv.key = reduce_cycle(cv.vec);
    else cv.key = canonical_circle_key(cv.vec);
  }

  // ---- parallel families among noncontractible circles ----
  std::vector<int> nn;
  for (size_t i = 0; i < res.curves.size(); ++i)
    if (!res.curves[i].is_arc && !res.curves[i].contractible) nn.push_back(static_cast<int>(i));
  if (!nn.empty()) {
    std::vector<int> fam(nn.size());
    for (size_t i = 0; i < nn.size(); ++i) fam[i] = static_cast<int>(i);
    auto ffind = [&](int x) {
      while (fam[x] != x) x = fam[x] = fam[fam[x]];
      return x;
    };
    if (nn.size() > 1) {
      std::vector<char> cut(num_map_edges, 0);
      for (int i : nn)
        for (int e : res.curves[i].edge_cycle) cut[e] = 1;
      detail::Regions rg = regions_with_cut(cut);
      // Side counts: region -> circle -> number of edge-sides.
      std::vector<std::map<int, int>> sides(rg.count);
      for (int h = 0; h < H; ++h) {
        if (d_.origin(h) == d_.n()) continue;
        int cvi = res.curve_at[h];
        if (cvi < 0 || res.curves[cvi].is_arc || res.curves[cvi].contractible) continue;
        ++sides[rg.region_of_face[m.face_of[h]]][cvi];
      }
      for (int r = 0; r < rg.count; ++r) {
        if (rg.chi[r] != 0 || !rg.markers[r].empty() || rg.has_boundary_vertex[r]) continue;
        if (sides[r].size() != 2) continue;
        auto it = sides[r].begin();
        auto [c1, s1] = *it;
        auto [c2, s2] = *std::next(it);
        if (s1 == static_cast<int>(res.curves[c1].edge_cycle.size()) &&
            s2 == static_cast<int>(res.curves[c2].edge_cycle.size())) {
          // exactly one full side of each: they cobound an annulus
          int i1 = static_cast<int>(std::find(nn.begin(), nn.end(), c1) - nn.begin());
          int i2 = static_cast<int>(std::find(nn.begin(), nn.end(), c2) - nn.begin());
          fam[ffind(i1)] = ffind(i2);
        }
      }
    }
    std::map<int, int> root_to_family;
    for (size_t i = 0; i < nn.size(); ++i) {
      int r = ffind(static_cast<int>(i));
      auto it = root_to_family.find(r);
      if (it == root_to_family.end())
        it = root_to_family.insert({r, static_cast<int>(root_to_family.size())}).first;
      res.curves[nn[i]].family = it->second;
    }
    // Isotopic circles are homologous: members of a family must share keys.
    std::map<int, std::vector<int64_t>> fam_key;
    for (int i : nn) {
      auto it = fam_key.find(res.curves[i].family);
      if (it == fam_key.end()) fam_key[res.curves[i].family] = res.curves[i].key;
      else if (it->second != res.curves[i].key)
        throw std::logic_error("parallel circles with different class keys");
    }
  }

  // ---- counts ----
  for (auto& cv : res.curves) {
    if (cv.is_arc) ++res.num_arcs;
    else {
      ++res.num_circles;
      if (cv.contractible) ++res.num_contractible;
    }
  }

  // ---- state black-surface chi ----
  {
    std::vector<char> cut(num_map_edges, 0);
    for (int e = 0; e < E; ++e) cut[e] = 1;
    detail::Regions rg = regions_with_cut(cut);
    std::vector<char> color(rg.count, 2);  // 2 = unknown
    bool consistent = true;
    for (int c = 0; c < d_.n() && consistent; ++c)
      for (int i = 0; i < 4; ++i) {
        int r = rg.region_of_face[m.face_of[d_.anchored_he(c, i)]];
        char want = Diagram::corner_black(i) ? 1 : 0;
        if (color[r] == 2) color[r] = want;
        else if (color[r] != want) {
          consistent = false;
          break;
        }
      }
    // Propagate across curve edges (adjacent regions get opposite colors).
    for (bool changed = consistent && d_.n() > 0; changed && consistent;) {
      changed = false;
      for (int h = 0; h < H; ++h) {
        int ra = rg.region_of_face[m.face_of[h]];
        int rb = rg.region_of_face[m.face_of[d_.twin(h)]];
        if (color[ra] == 2 && color[rb] != 2) color[ra] = !color[rb], changed = true;
        else if (color[rb] == 2 && color[ra] != 2) color[rb] = !color[ra], changed = true;
        else if (color[ra] != 2 && color[ra] == color[rb]) {
          consistent = false;
          break;
        }
      }
    }
    bool all_known = consistent && d_.n() > 0;
    for (int r = 0; r < rg.count && all_known; ++r)
      if (color[r] == 2) all_known = false;
    if (all_known) {
      int chi = 0, bp = 0;
      int inf = infinity_marker();
      for (int r = 0; r < rg.count; ++r)
        if (color[r] == 1) {
          chi += rg.chi[r] - static_cast<int>(rg.markers[r].size());
          for (int id : rg.markers[r])
            if (id != inf) ++bp;
        }
      res.black_chi = chi;
      res.black_punctures = bp;
    }
  }

  return res;
}

}  // namespace skein
