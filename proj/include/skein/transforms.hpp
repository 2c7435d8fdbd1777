#pragma once
// Diagram transformations and structural laws built on top of the core
// model: mirror images, weight shifts along strands, Reidemeister moves
// with site enumeration and marker tracking, random diagram generators,
// the checkerboard signature (closed form plus a Goeritz-matrix oracle),
// grading laws for alternating diagrams, and alternating tangle completion.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "skein/complexes.hpp"
#include "skein/diagram.hpp"
#include "skein/homology.hpp"
#include "skein/resolution.hpp"

namespace skein {

// ---------------------------------------------------------------------------
// Mirror image: at every crossing the other strand goes under.  Rotations,
// edges, markers, weights and orientation are untouched, so the mirror is an
// involution and positive/negative crossing counts swap.
// ---------------------------------------------------------------------------
inline Diagram mirror(const Diagram& d) {
  Diagram m = d;
  if (!m.name.empty()) m.name += "!";
  for (auto& cr : m.crossings) {
    int s = 0;
    while (s < 4 && cr.rotation[s] != cr.under[0]) ++s;
    if (s == 4) throw std::logic_error("under halfedge missing from rotation");
    cr.under = {cr.rotation[(s + 1) & 3], cr.rotation[(s + 3) & 3]};
  }
  m.analyze();
  return m;
}

// ---------------------------------------------------------------------------
// Weight shift: move (part of) an edge weight past a crossing onto the
// strand continuation edge.  Over GF(2) the moved part w is added to both
// weights; passing the full current weight empties the source edge.  The
// halfedge form names the transit end directly (its origin is the crossing
// passed); the (edge, crossing) form resolves to a halfedge, taking the
// smaller slot when a loop edge meets the crossing twice.
// ---------------------------------------------------------------------------
inline Diagram jaeger_shift_at(const Diagram& d, int h,
                               std::optional<PolyGF2> part = std::nullopt) {
  if (h < 0 || h >= d.num_halfedges())
    throw std::invalid_argument("no such halfedge");
  int c = d.origin(h);
  if (c == d.n())
    throw std::invalid_argument("weight shifts pass crossings, not the boundary");
  int e = d.edge_of(h);
  int t = d.crossings[c].rotation[(d.slot(h) + 2) & 3];
  int f = d.edge_of(t);
  PolyGF2 w = part ? *part : d.weight(e);
  Diagram out = d;
  out.weights[e] += w;
  out.weights[f] += w;  // e == f: a straight loop returns the weight to itself
  out.analyze();
  return out;
}

inline Diagram jaeger_shift(const Diagram& d, int edge, int crossing,
                            std::optional<PolyGF2> part = std::nullopt) {
  if (edge < 0 || edge >= d.num_edges())
    throw std::invalid_argument("no such edge");
  auto [a, b] = d.edges[edge];
  int h = -1;
  for (int g : {a, b})
    if (d.origin(g) == crossing && (h == -1 || d.slot(g) < d.slot(h))) h = g;
  if (h == -1) throw std::invalid_argument("edge does not meet that crossing");
  return jaeger_shift_at(d, h, std::move(part));
}

// ---------------------------------------------------------------------------
// Surgery scaffolding shared by the Reidemeister moves.  Works in an
// extended halfedge id space: existing ids stay as they are, germs of
// appended crossings get working ids H, H+1, ... (crossing j owns the block
// H+4j..H+4j+3 in slot order).  finish() renumbers everything densely,
// drops deleted crossings, rebuilds rotations canonically and re-analyzes.
// Weights are reset so every edge of the result carries its own fresh
// variable.
// ---------------------------------------------------------------------------
namespace detail_t {

struct Surgery {
  explicit Surgery(const Diagram& base)
      : d(base),
        dead(base.n(), 0),
        edges(base.edges),
        punctures(base.punctures),
        infinity(base.infinity),
        orient(base.orient),
        name(base.name) {}

  const Diagram& d;
  std::vector<char> dead;
  std::vector<std::array<int, 2>> added_under;  // per appended crossing
  std::vector<std::pair<int, int>> edges;       // working ids
  std::vector<int> punctures;
  std::optional<int> infinity;
  std::vector<int> orient;
  std::string name;
  bool drop_boundary = false;

  // Appends a crossing; returns the working id of its slot-0 germ.
  int new_crossing(std::array<int, 2> under) {
    int base = d.num_halfedges() + 4 * static_cast<int>(added_under.size());
    added_under.push_back(under);
    return base;
  }

  // Replaces the unique edge entry equal to `from` with `to`.
  void reattach(int from, int to) {
    for (auto& [a, b] : edges) {
      if (a == from) { a = to; return; }
      if (b == from) { b = to; return; }
    }
    throw std::logic_error("reattach: germ is not an edge end");
  }

  void remove_edge_at(int germ) {
    for (size_t i = 0; i < edges.size(); ++i)
      if (edges[i].first == germ || edges[i].second == germ) {
        edges.erase(edges.begin() + i);
        return;
      }
    throw std::logic_error("remove_edge_at: germ is not an edge end");
  }

  Diagram finish() const {
    int H0 = d.num_halfedges();
    int n0 = d.n();
    std::vector<int> cmap(n0, -1);
    int live = 0;
    for (int c = 0; c < n0; ++c)
      if (!dead[c]) cmap[c] = live++;
    int total = live + static_cast<int>(added_under.size());
    int nb = static_cast<int>(d.boundary_ends.size());
    std::vector<int> bpos(H0, -1);
    for (int i = 0; i < nb; ++i) bpos[d.boundary_ends[i]] = i;

    auto mapg = [&](int g) -> int {
      if (g >= H0) {
        int j = (g - H0) >> 2;
        return 4 * (live + j) + ((g - H0) & 3);
      }
      int v = d.origin(g);
      if (v == n0) {
        if (drop_boundary) return -1;
        return 4 * total + bpos[g];
      }
      if (dead[v]) return -1;
      return 4 * cmap[v] + d.slot(g);
    };

    Diagram out;
    out.name = name;
    out.crossings.resize(total);
    for (int c = 0; c < n0; ++c) {
      if (dead[c]) continue;
      Crossing& cr = out.crossings[cmap[c]];
      for (int i = 0; i < 4; ++i) cr.rotation[i] = 4 * cmap[c] + i;
      for (int i = 0; i < 2; ++i) {
        int u = mapg(d.crossings[c].under[i]);
        if (u < 0) throw std::logic_error("surgery: under germ vanished");
        cr.under[i] = u;
      }
    }
    for (size_t j = 0; j < added_under.size(); ++j) {
      Crossing& cr = out.crossings[live + j];
      for (int i = 0; i < 4; ++i) cr.rotation[i] = 4 * (live + j) + i;
      for (int i = 0; i < 2; ++i) {
        int u = mapg(added_under[j][i]);
        if (u < 0) throw std::logic_error("surgery: under germ vanished");
        cr.under[i] = u;
      }
    }
    for (auto& [a, b] : edges) {
      int ma = mapg(a), mb = mapg(b);
      if (ma < 0 || mb < 0) throw std::logic_error("surgery: edge end vanished");
      out.edges.push_back({ma, mb});
    }
    if (!drop_boundary)
      for (int g : d.boundary_ends) out.boundary_ends.push_back(mapg(g));
    for (int g : punctures) {
      int m = mapg(g);
      if (m < 0) throw std::logic_error("surgery: puncture anchor vanished");
      out.punctures.push_back(m);
    }
    if (infinity) {
      int m = mapg(*infinity);
      if (m < 0) throw std::logic_error("surgery: infinity anchor vanished");
      out.infinity = m;
    }
    for (int g : orient) {
      int m = mapg(g);
      if (m < 0) throw std::logic_error("surgery: orientation seed vanished");
      out.orient.push_back(m);
    }
    out.analyze();
    return out;
  }
};

// Rotates a marker anchor off the germs of crossings about to be deleted
// (or off an explicit avoid set): returns a germ of the same face that
// survives, throwing if the face has none.
inline int safe_anchor(const Diagram& d, int rep, const std::set<int>& avoid) {
  if (!avoid.count(rep)) return rep;
  for (int g : d.faces()[d.face_of(rep)])
    if (!avoid.count(g)) return g;
  throw std::invalid_argument("marked face has no anchor clear of the move site");
}

// Germs of a crossing, as a set, for anchor avoidance.
inline void add_crossing_germs(const Diagram& d, int c, std::set<int>& out) {
  for (int g : d.crossings[c].rotation) out.insert(g);
}

// Removes a set of crossings by smoothing every passage into a through
// connection, concatenating the incident edges into chains.  Throws if a
// chain closes up with no surviving end (the move would strand a free,
// crossingless circle, which the model cannot represent).  Also rewires
// orientation seeds whose germ dies onto a surviving chain end with the
// same flow.
inline void splice_out(Surgery& s, const std::vector<int>& dying) {
  const Diagram& d = s.d;
  std::set<int> dead_germs;
  for (int c : dying) {
    s.dead[c] = 1;
    add_crossing_germs(d, c, dead_germs);
  }
  // Move marker anchors off the dying germs first.
  for (int& rep : s.punctures) rep = safe_anchor(d, rep, dead_germs);
  if (s.infinity) s.infinity = safe_anchor(d, *s.infinity, dead_germs);

  auto through = [&](int g) {
    return d.crossings[d.origin(g)].rotation[(d.slot(g) + 2) & 3];
  };
  // Walk chains from every surviving end whose far side dies.
  std::vector<std::pair<int, int>> chains;  // surviving germ pairs
  std::set<int> consumed;                   // dying germs eaten by a chain
  std::vector<std::pair<int, int>> out_edges;
  for (auto& [a, b] : s.edges) {
    bool da = dead_germs.count(a), db = dead_germs.count(b);
    if (!da && !db) {
      out_edges.push_back({a, b});
      continue;
    }
    for (int start : {a, b}) {
      if (dead_germs.count(start)) continue;
      // start survives; walk across dying crossings to the chain's far end.
      int g = (start == a) ? b : a;  // dying far end of this edge
      while (true) {
        consumed.insert(g);
        int nxt = through(g);  // partner germ of the same dead crossing
        consumed.insert(nxt);
        // the strand continues along the edge attached at nxt
        int e2 = d.edge_of(nxt);
        int far = (d.edges[e2].first == nxt) ? d.edges[e2].second
                                             : d.edges[e2].first;
        if (!dead_germs.count(far)) {
          if (start < far) out_edges.push_back({start, far});
          break;
        }
        g = far;
      }
    }
  }
  // Any dying germ not consumed by a chain belongs to a closed loop of
  // edges entirely through dying crossings: a free circle.
  for (int g : dead_germs) {
    if (consumed.count(g)) continue;
    if (d.edge_of(g) >= 0) {
      bool loop_only = true;
      // the germ's edge has both ends dying and was never reached
      int other = (d.edges[d.edge_of(g)].first == g)
                      ? d.edges[d.edge_of(g)].second
                      : d.edges[d.edge_of(g)].first;
      if (!dead_germs.count(other)) loop_only = false;
      if (loop_only)
        throw std::invalid_argument(
            "move would leave a crossingless circle, which the model cannot represent");
    }
  }
  s.edges = std::move(out_edges);
  // Reseat orientation seeds that died.
  std::vector<int> fixed;
  for (int seed : s.orient) {
    if (!dead_germs.count(seed)) {
      fixed.push_back(seed);
      continue;
    }
    int comp = -1;
    const auto& comps = d.components();
    for (size_t i = 0; i < comps.size() && comp < 0; ++i)
      for (int h : comps[i].forward_halfedges)
        if (h == seed || d.twin(h) == seed) {
          comp = static_cast<int>(i);
          break;
        }
    if (comp < 0) throw std::logic_error("orientation seed outside every component");
    int replacement = -1;
    for (auto& [a, b] : s.edges) {
      for (int g : {a, b}) {
        if (dead_germs.count(g)) continue;
        bool in_comp = false;
        for (int h : comps[comp].forward_halfedges)
          if (h == g || d.twin(h) == g) { in_comp = true; break; }
        if (in_comp) {
          replacement = d.forward(g) ? g : (g == a ? b : a);
          break;
        }
      }
      if (replacement >= 0) break;
    }
    if (replacement < 0)
      throw std::invalid_argument("move erased every edge of an oriented component");
    fixed.push_back(replacement);
  }
  s.orient = std::move(fixed);
}

inline bool passage_is_under(const Diagram& d, int h) {
  const auto& u = d.crossings[d.origin(h)].under;
  return h == u[0] || h == u[1];
}

}  // namespace detail_t

// ---------------------------------------------------------------------------
// Reidemeister moves.  Every move returns a freshly analyzed diagram whose
// edges all carry default weights (each edge its own variable): moves
// introduce new edges, and downstream comparisons are dimension tables over
// the function field, which renaming does not see.
// ---------------------------------------------------------------------------

// Kink insertion on edge_of(h); the new lobe pokes into face_of(h).
// sign > 0 inserts a positive crossing, sign < 0 a negative one.
inline Diagram reidemeister_one(const Diagram& d, int h, int sign) {
  if (h < 0 || h >= d.num_halfedges())
    throw std::invalid_argument("no such halfedge");
  detail_t::Surgery s(d);
  int t = d.twin(h);
  // loop on slots (0,1); the strand enters at slot 2 and leaves at slot 3
  int b = s.new_crossing({0, 0});
  s.added_under.back() = (sign > 0) ? std::array<int, 2>{b, b + 2}
                                    : std::array<int, 2>{b + 1, b + 3};
  s.remove_edge_at(h);
  s.edges.push_back({h, b + 2});
  s.edges.push_back({b + 3, t});
  s.edges.push_back({b, b + 1});
  s.name += "+R1";
  Diagram out = s.finish();
  if (out.num_faces() != d.num_faces() + 1 || out.chi() != d.chi())
    throw std::logic_error("kink insertion changed the surface");
  int nc = out.n() - 1;
  if (out.crossing_sign(nc) != (sign > 0 ? 1 : -1))
    throw std::logic_error("kink insertion produced the wrong crossing sign");
  return out;
}

// Kink removal at crossing c, which must carry a loop edge bounding an
// empty unmarked lobe.
inline Diagram reidemeister_one_inverse(const Diagram& d, int c) {
  if (c < 0 || c >= d.n()) throw std::invalid_argument("no such crossing");
  const auto& rot = d.crossings[c].rotation;
  int sl = -1;
  for (int i = 0; i < 4; ++i) {
    int g = rot[i], g2 = rot[(i + 1) & 3];
    if (d.twin(g) == g2) { sl = i; break; }
  }
  if (sl < 0) throw std::invalid_argument("crossing carries no kink loop");
  int lobe = d.face_of(rot[sl]);
  if (d.faces()[lobe].size() != 1)
    throw std::invalid_argument("loop encloses other structure; not a kink");
  if (d.marked_faces().count(lobe))
    throw std::invalid_argument("kink lobe is marked");
  detail_t::Surgery s(d);
  detail_t::splice_out(s, {c});
  s.name += "-R1";
  Diagram out = s.finish();
  if (out.num_faces() != d.num_faces() - 1 || out.chi() != d.chi())
    throw std::logic_error("kink removal changed the surface");
  return out;
}

// Finger move: push edge_of(hs) across edge_of(ht) through their common
// face, creating a bigon.  hs and ht must lie on the same face but on
// different edges; s_over picks which strand crosses above.
inline Diagram reidemeister_two(const Diagram& d, int hs, int ht, bool s_over = true) {
  if (hs < 0 || hs >= d.num_halfedges() || ht < 0 || ht >= d.num_halfedges())
    throw std::invalid_argument("no such halfedge");
  if (d.face_of(hs) != d.face_of(ht))
    throw std::invalid_argument("halfedges do not share a face");
  if (d.edge_of(hs) == d.edge_of(ht))
    throw std::invalid_argument("finger move needs two distinct edges");
  int ts = d.twin(hs), tt = d.twin(ht);
  detail_t::Surgery s(d);
  int b1 = s.new_crossing({0, 0});
  int b2 = s.new_crossing({0, 0});
  // c1 slots: [toward bigon, s up, t onward, s down]; c2 mirrors it.
  s.added_under[0] = s_over ? std::array<int, 2>{b1, b1 + 2}
                            : std::array<int, 2>{b1 + 1, b1 + 3};
  s.added_under[1] = s_over ? std::array<int, 2>{b2, b2 + 2}
                            : std::array<int, 2>{b2 + 1, b2 + 3};
  s.remove_edge_at(hs);
  s.remove_edge_at(ht);
  s.edges.push_back({hs, b1 + 3});
  s.edges.push_back({b2 + 3, ts});
  s.edges.push_back({b1 + 1, b2 + 1});
  s.edges.push_back({ht, b2});
  s.edges.push_back({tt, b1 + 2});
  s.edges.push_back({b1, b2 + 2});
  s.name += "+R2";
  Diagram out = s.finish();
  if (out.num_faces() != d.num_faces() + 2 || out.chi() != d.chi())
    throw std::logic_error("finger move changed the surface");
  if (out.crossing_sign(out.n() - 1) + out.crossing_sign(out.n() - 2) != 0)
    throw std::logic_error("finger move crossings should have opposite signs");
  return out;
}

// Bigon removal: hb names a halfedge on a two-sided face whose two
// crossings are distinct and whose shared strand runs over (or under) at
// both of them.
inline Diagram reidemeister_two_inverse(const Diagram& d, int hb) {
  if (hb < 0 || hb >= d.num_halfedges())
    throw std::invalid_argument("no such halfedge");
  int f = d.face_of(hb);
  const auto& cyc = d.faces()[f];
  if (cyc.size() != 2) throw std::invalid_argument("face is not a bigon");
  int p = cyc[0], q = cyc[1];
  int c1 = d.origin(p), c2 = d.origin(q);
  if (c1 == d.n() || c2 == d.n() || c1 == c2)
    throw std::invalid_argument("bigon must join two distinct crossings");
  if (d.edge_of(p) == d.edge_of(q))
    throw std::invalid_argument("bigon sides must be distinct edges");
  if (detail_t::passage_is_under(d, p) != detail_t::passage_is_under(d, d.twin(p)))
    throw std::invalid_argument("bigon strands interleave; not a finger");
  if (d.marked_faces().count(f))
    throw std::invalid_argument("bigon face is marked");
  detail_t::Surgery s(d);
  detail_t::splice_out(s, {c1, c2});
  s.name += "-R2";
  Diagram out = s.finish();
  if (out.num_faces() != d.num_faces() - 2 || out.chi() != d.chi())
    throw std::logic_error("bigon removal changed the surface");
  return out;
}

// Triangle slide: hf names a halfedge on a three-sided face bounded by
// three distinct crossings and edges whose over/under pattern admits the
// slide (one strand passes over or under both others).  The face must be
// unmarked.  The surgery swaps, for each of the three strands, its
// triangle-side attachment with its outside attachment at both corners;
// rotations and under assignments are untouched.
inline Diagram reidemeister_three(const Diagram& d, int hf) {
  if (hf < 0 || hf >= d.num_halfedges())
    throw std::invalid_argument("no such halfedge");
  int f = d.face_of(hf);
  const auto& cyc = d.faces()[f];
  if (cyc.size() != 3) throw std::invalid_argument("face is not a triangle");
  if (d.marked_faces().count(f))
    throw std::invalid_argument("triangle face is marked");
  std::array<int, 3> g{cyc[0], cyc[1], cyc[2]};
  std::array<int, 3> corner{};
  for (int i = 0; i < 3; ++i) {
    corner[i] = d.origin(g[i]);
    if (corner[i] == d.n())
      throw std::invalid_argument("triangle touches the boundary vertex");
  }
  if (corner[0] == corner[1] || corner[1] == corner[2] || corner[0] == corner[2])
    throw std::invalid_argument("triangle corners must be three distinct crossings");
  if (d.edge_of(g[0]) == d.edge_of(g[1]) || d.edge_of(g[1]) == d.edge_of(g[2]) ||
      d.edge_of(g[0]) == d.edge_of(g[2]))
    throw std::invalid_argument("triangle sides must be three distinct edges");
  // Strand i runs along side g[i] between corner[i] and corner[i+1].
  // Over/under pattern: at corner[i] the meeting strands are i and i-1.
  std::array<int, 3> wins{0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    bool i_under = detail_t::passage_is_under(d, g[i]);
    int j = (i + 2) % 3;  // strand i-1
    if (!i_under) ++wins[i];
    else ++wins[j];
  }
  if (wins[0] != 2 && wins[1] != 2 && wins[2] != 2)
    throw std::invalid_argument("cyclic over/under pattern admits no slide");

  auto through = [&](int h) {
    return d.crossings[d.origin(h)].rotation[(d.slot(h) + 2) & 3];
  };
  // Substitution: strand i has internal germs a=g[i] (at corner i) and
  // b=twin(g[i]) (at corner i+1) with external partners through(a),
  // through(b).  Attachments swap internal <-> external at both corners,
  // crosswise.
  std::map<int, int> sub;
  for (int i = 0; i < 3; ++i) {
    int a = g[i], b = d.twin(g[i]);
    int ea = through(a), eb = through(b);
    sub[ea] = b;
    sub[eb] = a;
    sub[a] = ea;
    sub[b] = eb;
  }
  detail_t::Surgery s(d);
  std::set<int> site;
  for (auto& [k, v] : sub) site.insert(k);
  for (int& rep : s.punctures) rep = detail_t::safe_anchor(d, rep, site);
  if (s.infinity) s.infinity = detail_t::safe_anchor(d, *s.infinity, site);
  for (auto& [a, b] : s.edges) {
    auto ia = sub.find(a);
    if (ia != sub.end()) a = ia->second;
    auto ib = sub.find(b);
    if (ib != sub.end()) b = ib->second;
  }
  s.name += "+R3";
  Diagram out = s.finish();
  if (out.num_faces() != d.num_faces() || out.chi() != d.chi() ||
      out.n() != d.n() || out.num_edges() != d.num_edges() ||
      out.components().size() != d.components().size())
    throw std::logic_error("triangle slide changed the surface");
  return out;
}

// ---------------------------------------------------------------------------
// Move specifications and site enumeration.
// ---------------------------------------------------------------------------
struct MoveSpec {
  enum class Kind { R1Pos, R1Neg, R2, R3, R1Inv, R2Inv };
  Kind kind = Kind::R1Pos;
  int a = -1;            // halfedge (R1/R2/R3/R2Inv) or crossing (R1Inv)
  int b = -1;            // second halfedge for R2
  bool under = false;    // R2: push the finger under instead of over
};

inline const char* move_name(MoveSpec::Kind k) {
  switch (k) {
    case MoveSpec::Kind::R1Pos: return "R1+";
    case MoveSpec::Kind::R1Neg: return "R1-";
    case MoveSpec::Kind::R2: return "R2";
    case MoveSpec::Kind::R3: return "R3";
    case MoveSpec::Kind::R1Inv: return "R1-inverse";
    case MoveSpec::Kind::R2Inv: return "R2-inverse";
  }
  return "?";
}

inline std::optional<MoveSpec::Kind> move_kind_from_name(const std::string& s) {
  if (s == "R1+" || s == "r1+") return MoveSpec::Kind::R1Pos;
  if (s == "R1-" || s == "r1-") return MoveSpec::Kind::R1Neg;
  if (s == "R2" || s == "r2") return MoveSpec::Kind::R2;
  if (s == "R3" || s == "r3") return MoveSpec::Kind::R3;
  if (s == "R1-inverse" || s == "r1-inverse") return MoveSpec::Kind::R1Inv;
  if (s == "R2-inverse" || s == "r2-inverse") return MoveSpec::Kind::R2Inv;
  return std::nullopt;
}

inline Diagram apply_move(const Diagram& d, const MoveSpec& m) {
  switch (m.kind) {
    case MoveSpec::Kind::R1Pos: return reidemeister_one(d, m.a, +1);
    case MoveSpec::Kind::R1Neg: return reidemeister_one(d, m.a, -1);
    case MoveSpec::Kind::R2: return reidemeister_two(d, m.a, m.b, !m.under);
    case MoveSpec::Kind::R3: return reidemeister_three(d, m.a);
    case MoveSpec::Kind::R1Inv: return reidemeister_one_inverse(d, m.a);
    case MoveSpec::Kind::R2Inv: return reidemeister_two_inverse(d, m.a);
  }
  throw std::invalid_argument("unknown move kind");
}

// Candidate sites for each move kind.  Structural admissibility is checked
// here; apply_move re-verifies and may still reject rare marker-anchoring
// corner cases.
inline std::vector<MoveSpec> enumerate_moves(const Diagram& d, MoveSpec::Kind k) {
  std::vector<MoveSpec> out;
  using K = MoveSpec::Kind;
  switch (k) {
    case K::R1Pos:
    case K::R1Neg:
      for (int h = 0; h < d.num_halfedges(); ++h)
        out.push_back({k, h, -1, false});
      break;
    case K::R2:
      for (int f = 0; f < d.num_faces(); ++f) {
        const auto& cyc = d.faces()[f];
        for (int hs : cyc)
          for (int ht : cyc)
            if (d.edge_of(hs) != d.edge_of(ht)) {
              out.push_back({k, hs, ht, false});
              out.push_back({k, hs, ht, true});
            }
      }
      break;
    case K::R3:
      for (int f = 0; f < d.num_faces(); ++f) {
        const auto& cyc = d.faces()[f];
        if (cyc.size() != 3 || d.marked_faces().count(f)) continue;
        bool ok = true;
        std::set<int> cs, es;
        for (int g : cyc) {
          if (d.origin(g) == d.n()) { ok = false; break; }
          cs.insert(d.origin(g));
          es.insert(d.edge_of(g));
        }
        if (!ok || cs.size() != 3 || es.size() != 3) continue;
        int wins[3] = {0, 0, 0};
        for (int i = 0; i < 3; ++i) {
          bool iu = detail_t::passage_is_under(d, cyc[i]);
          if (!iu) ++wins[i];
          else ++wins[(i + 2) % 3];
        }
        if (wins[0] != 2 && wins[1] != 2 && wins[2] != 2) continue;
        out.push_back({k, cyc[0], -1, false});
      }
      break;
    case K::R1Inv:
      for (int c = 0; c < d.n(); ++c) {
        const auto& rot = d.crossings[c].rotation;
        int sl = -1;
        for (int i = 0; i < 4; ++i)
          if (d.twin(rot[i]) == rot[(i + 1) & 3]) { sl = i; break; }
        if (sl < 0) continue;
        int lobe = d.face_of(rot[sl]);
        if (d.faces()[lobe].size() != 1 || d.marked_faces().count(lobe)) continue;
        out.push_back({k, c, -1, false});
      }
      break;
    case K::R2Inv:
      for (int f = 0; f < d.num_faces(); ++f) {
        const auto& cyc = d.faces()[f];
        if (cyc.size() != 2 || d.marked_faces().count(f)) continue;
        int p = cyc[0], q = cyc[1];
        if (d.origin(p) == d.n() || d.origin(q) == d.n()) continue;
        if (d.origin(p) == d.origin(q)) continue;
        if (d.edge_of(p) == d.edge_of(q)) continue;
        if (detail_t::passage_is_under(d, p) !=
            detail_t::passage_is_under(d, d.twin(p)))
          continue;
        out.push_back({k, p, -1, false});
      }
      break;
  }
  return out;
}

// Picks a random admissible move, preferring an even mix of kinds, and
// applies it.  Throws only if no move at all applies (cannot happen: kink
// insertion is always available).
inline std::pair<Diagram, MoveSpec> random_reidemeister(const Diagram& d,
                                                        std::mt19937_64& rng) {
  using K = MoveSpec::Kind;
  std::vector<K> kinds = {K::R1Pos, K::R1Neg, K::R2, K::R3, K::R1Inv, K::R2Inv};
  std::shuffle(kinds.begin(), kinds.end(), rng);
  for (K k : kinds) {
    auto sites = enumerate_moves(d, k);
    std::shuffle(sites.begin(), sites.end(), rng);
    for (const auto& m : sites) {
      try {
        return {apply_move(d, m), m};
      } catch (const std::invalid_argument&) {
        continue;  // marker anchoring or degeneracy; try another site
      }
    }
  }
  throw std::logic_error("no admissible move found");
}

// ---------------------------------------------------------------------------
// Random diagrams.
// ---------------------------------------------------------------------------
enum class SurfaceKind { Sphere, Annulus, TwoHoledDisk, Torus };

namespace detail_t {

// Faces / connectivity of a candidate matching without building a Diagram.
struct Quick {
  int faces = 0;
  bool connected = false;
};

inline Quick quick_topology(int n, const std::vector<int>& twin) {
  int H = 4 * n;
  Quick q;
  std::vector<char> seen(H, 0);
  for (int h = 0; h < H; ++h) {
    if (seen[h]) continue;
    ++q.faces;
    int g = h;
    while (!seen[g]) {
      seen[g] = 1;
      int t = twin[g];
      int c = t >> 2, s = t & 3;
      g = 4 * c + ((s + 3) & 3);  // sigma^{-1} within canonical rotations
    }
  }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int h = 0; h < H; ++h) {
    int a = h >> 2, b = twin[h] >> 2;
    parent[find(a)] = find(b);
  }
  int roots = 0;
  for (int c = 0; c < n; ++c)
    if (find(c) == c) ++roots;
  q.connected = (roots == 1);
  return q;
}

}  // namespace detail_t

// Random connected link diagram with n crossings on the requested surface.
// Sphere-family surfaces mark one face as infinity plus 0/1/2 punctures;
// the torus marks nothing.  Throws after max_tries failed samples.
inline Diagram random_link_diagram(std::mt19937_64& rng, int n, SurfaceKind kind,
                                   int max_tries = 200000) {
  if (n < 1) throw std::invalid_argument("need at least one crossing");
  int H = 4 * n;
  int want_faces = (kind == SurfaceKind::Torus) ? n : n + 2;
  int want_marks = kind == SurfaceKind::Sphere ? 1
                   : kind == SurfaceKind::Annulus ? 2
                   : kind == SurfaceKind::TwoHoledDisk ? 3
                                                       : 0;
  std::vector<int> perm(H);
  for (int tries = 0; tries < max_tries; ++tries) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> twin(H);
    for (int i = 0; i < H; i += 2) {
      twin[perm[i]] = perm[i + 1];
      twin[perm[i + 1]] = perm[i];
    }
    auto q = detail_t::quick_topology(n, twin);
    if (!q.connected || q.faces != want_faces) continue;
    if (q.faces < want_marks) continue;

    Diagram d;
    d.name = "random";
    d.crossings.resize(n);
    for (int c = 0; c < n; ++c) {
      for (int i = 0; i < 4; ++i) d.crossings[c].rotation[i] = 4 * c + i;
      bool flip = std::uniform_int_distribution<int>(0, 1)(rng);
      d.crossings[c].under = flip ? std::array<int, 2>{4 * c + 1, 4 * c + 3}
                                  : std::array<int, 2>{4 * c, 4 * c + 2};
    }
    for (int h = 0; h < H; ++h)
      if (h < twin[h]) d.edges.push_back({h, twin[h]});
    // Orientation seeds: one per strand component of the through-pairing.
    std::vector<char> vis(H, 0);
    for (int h = 0; h < H; ++h) {
      if (vis[h]) continue;
      d.orient.push_back(h);
      int g = h;
      while (!vis[g]) {
        vis[g] = 1;
        vis[twin[g]] = 1;  // the reverse direction germ set
        int t = twin[g];
        int c = t >> 2, s = t & 3;
        g = 4 * c + ((s + 2) & 3);
      }
    }
    // Markers on distinct faces.
    if (want_marks > 0) {
      std::vector<int> face_of(H, -1);
      int fcount = 0;
      for (int h = 0; h < H; ++h) {
        if (face_of[h] >= 0) continue;
        int g = h;
        while (face_of[g] < 0) {
          face_of[g] = fcount;
          int t = twin[g];
          int c = t >> 2, s = t & 3;
          g = 4 * c + ((s + 3) & 3);
        }
        ++fcount;
      }
      std::vector<int> fids(fcount);
      std::iota(fids.begin(), fids.end(), 0);
      std::shuffle(fids.begin(), fids.end(), rng);
      std::vector<int> reps(want_marks, -1);
      for (int m = 0; m < want_marks; ++m)
        for (int h = 0; h < H; ++h)
          if (face_of[h] == fids[m]) { reps[m] = h; break; }
      d.infinity = reps[0];
      for (int m = 1; m < want_marks; ++m) d.punctures.push_back(reps[m]);
    }
    try {
      d.analyze();
    } catch (const std::exception&) {
      continue;
    }
    return d;
  }
  throw std::runtime_error("random diagram sampling did not converge");
}

// Random connected alternating link diagram on a sphere-family surface: the
// projection is sampled as above, faces are properly two-colored, and the
// under assignment is the one whose anchored black corners realize that
// coloring, which makes the diagram alternating by construction.
inline Diagram random_alternating_link(std::mt19937_64& rng, int n, SurfaceKind kind,
                                       int max_tries = 200000) {
  for (int tries = 0; tries < max_tries; ++tries) {
    Diagram d = random_link_diagram(rng, n, kind, max_tries);
    // Proper 2-coloring of faces (exists on the sphere family; retry if the
    // marked assignment collides with the torus case).
    int F = d.num_faces();
    std::vector<char> col(F, -1);
    bool ok = true;
    for (int f0 = 0; f0 < F && ok; ++f0) {
      if (col[f0] >= 0) continue;
      col[f0] = 0;
      std::vector<int> stack = {f0};
      while (!stack.empty() && ok) {
        int f = stack.back();
        stack.pop_back();
        for (int h : d.faces()[f]) {
          int g = d.face_of(d.twin(h));
          if (col[g] < 0) {
            col[g] = !col[f];
            stack.push_back(g);
          } else if (col[g] == col[f]) {
            ok = false;
            break;
          }
        }
      }
    }
    if (!ok) continue;
    // Under assignment from the coloring: anchored corner 0 must be black.
    for (int c = 0; c < d.n(); ++c) {
      int s = -1;
      for (int i = 0; i < 4 && s < 0; ++i) {
        int corner_face = d.face_of(d.crossings[c].rotation[i]);
        if (col[corner_face] == 1) s = i;
      }
      d.crossings[c].under = {d.crossings[c].rotation[s],
                              d.crossings[c].rotation[(s + 2) & 3]};
    }
    d.analyze();
    if (!d.alternating() || !d.convention_coloring()) continue;
    return d;
  }
  throw std::runtime_error("alternating sampling did not converge");
}

// Random connected arc-only tangle in the disk: k strands run east across m
// columns, each column crossing an adjacent pair of rows.  No faces are
// marked.  If `alternating` is set the unders realize a proper face
// coloring, making the tangle alternating.
inline Diagram random_arc_tangle(std::mt19937_64& rng, int k, int m,
                                 bool alternating = false, int max_tries = 20000) {
  if (k < 2 || m < 1) throw std::invalid_argument("need two strands and a crossing");
  for (int tries = 0; tries < max_tries; ++tries) {
    Diagram d;
    d.name = "tangle";
    d.crossings.resize(m);
    int H = 4 * m;
    // rotation [NE, NW, SW, SE]; west germs are NW (slot 1), SW (slot 2)
    std::vector<int> cur(k);  // germ awaiting its eastward connection
    std::vector<int> west(k);
    for (int r = 0; r < k; ++r) cur[r] = west[r] = H + r;  // boundary germs
    std::vector<int> rows(m);
    for (int j = 0; j < m; ++j) {
      rows[j] = std::uniform_int_distribution<int>(0, k - 2)(rng);
      for (int i = 0; i < 4; ++i) d.crossings[j].rotation[i] = 4 * j + i;
      bool flip = std::uniform_int_distribution<int>(0, 1)(rng);
      d.crossings[j].under = flip ? std::array<int, 2>{4 * j + 1, 4 * j + 3}
                                  : std::array<int, 2>{4 * j, 4 * j + 2};
      int r = rows[j];
      d.edges.push_back({cur[r], 4 * j + 1});      // NW
      d.edges.push_back({cur[r + 1], 4 * j + 2});  // SW
      cur[r] = 4 * j;          // NE
      cur[r + 1] = 4 * j + 3;  // SE
    }
    std::vector<int> east(k);
    for (int r = 0; r < k; ++r) {
      east[r] = H + k + r;
      d.edges.push_back({cur[r], east[r]});
    }
    // Disk-boundary order: west top..bottom then east bottom..top, counter-
    // clockwise; the boundary vertex sees the reverse.
    std::vector<int> diskorder;
    for (int r = 0; r < k; ++r) diskorder.push_back(west[r]);
    for (int r = k - 1; r >= 0; --r) diskorder.push_back(east[r]);
    d.boundary_ends.assign(diskorder.rbegin(), diskorder.rend());
    // Orientation: one tail per arc, at a random end.  occupant[e] is the
    // strand sitting at row e after all column swaps, so the strand that
    // entered at west row r leaves at the east row where occupant equals r.
    {
      std::vector<int> occupant(k);
      std::iota(occupant.begin(), occupant.end(), 0);
      for (int j = 0; j < m; ++j) std::swap(occupant[rows[j]], occupant[rows[j] + 1]);
      std::vector<int> exit_row(k);
      for (int e = 0; e < k; ++e) exit_row[occupant[e]] = e;
      for (int r = 0; r < k; ++r) {
        bool from_west = std::uniform_int_distribution<int>(0, 1)(rng);
        d.orient.push_back(from_west ? west[r] : east[exit_row[r]]);
      }
    }
    try {
      d.analyze();
    } catch (const std::exception&) {
      continue;
    }
    // no strand may run boundary-to-boundary without a crossing
    {
      bool crossingless = false;
      for (const auto& comp : d.components())
        if (comp.forward_halfedges.size() < 2) crossingless = true;
      if (crossingless) continue;
    }
    // connectivity: every crossing reachable (single strand net)
    {
      std::vector<int> parent(m);
      std::iota(parent.begin(), parent.end(), 0);
      std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (auto& [a, b] : d.edges) {
        if (d.origin(a) == m || d.origin(b) == m) continue;
        parent[find(d.origin(a))] = find(d.origin(b));
      }
      int roots = 0;
      for (int c = 0; c < m; ++c)
        if (find(c) == c) ++roots;
      if (roots != 1) continue;
    }
    if (alternating) {
      int F = d.num_faces();
      std::vector<char> col(F, -1);
      bool ok = true;
      for (int f0 = 0; f0 < F && ok; ++f0) {
        if (col[f0] >= 0) continue;
        col[f0] = 0;
        std::vector<int> stack = {f0};
        while (!stack.empty() && ok) {
          int f = stack.back();
          stack.pop_back();
          for (int h : d.faces()[f]) {
            int g = d.face_of(d.twin(h));
            if (col[g] < 0) {
              col[g] = !col[f];
              stack.push_back(g);
            } else if (col[g] == col[f]) {
              ok = false;
              break;
            }
          }
        }
      }
      if (!ok) continue;
      for (int c = 0; c < d.n(); ++c) {
        int s = -1;
        for (int i = 0; i < 4 && s < 0; ++i)
          if (col[d.face_of(d.crossings[c].rotation[i])] == 1) s = i;
        d.crossings[c].under = {d.crossings[c].rotation[s],
                                d.crossings[c].rotation[(s + 2) & 3]};
      }
      d.analyze();
      if (!d.alternating() || !d.convention_coloring()) continue;
    }
    return d;
  }
  throw std::runtime_error("tangle sampling did not converge");
}

// ---------------------------------------------------------------------------
// Checkerboard signature.  signature_alternating is the closed form for
// reduced alternating diagrams under the convention coloring; the Goeritz
// routine computes the signature of any convention-colorable closed sphere
// diagram from the white-region form with the negative-crossing correction,
// and serves as the independent oracle.
// ---------------------------------------------------------------------------
namespace detail_t {

struct Frac {
  long long n = 0, d = 1;
  Frac() = default;
  Frac(long long num, long long den = 1) : n(num), d(den) { reduce(); }
  void reduce() {
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n == 0) d = 1;
  }
  Frac operator+(const Frac& o) const { return Frac(n * o.d + o.n * d, d * o.d); }
  Frac operator-(const Frac& o) const { return Frac(n * o.d - o.n * d, d * o.d); }
  Frac operator*(const Frac& o) const { return Frac(n * o.n, d * o.d); }
  Frac operator/(const Frac& o) const {
    if (o.n == 0) throw std::logic_error("division by zero");
    return Frac(n * o.d, d * o.n);
  }
  bool zero() const { return n == 0; }
  int sign() const { return n > 0 ? 1 : n < 0 ? -1 : 0; }
};

// Signature of a symmetric rational matrix by congruence diagonalization.
inline int symmetric_signature(std::vector<std::vector<Frac>> A) {
  int m = static_cast<int>(A.size());
  std::vector<char> done(m, 0);
  int sig = 0;
  for (int step = 0; step < m; ++step) {
    int piv = -1;
    for (int i = 0; i < m && piv < 0; ++i)
      if (!done[i] && !A[i][i].zero()) piv = i;
    if (piv < 0) {
      int oi = -1, oj = -1;
      for (int i = 0; i < m && oi < 0; ++i) {
        if (done[i]) continue;
        for (int j = 0; j < m; ++j)
          if (!done[j] && j != i && !A[i][j].zero()) { oi = i; oj = j; break; }
      }
      if (oi < 0) break;  // remaining block is zero
      // congruence x_i -> x_i + x_j turns the off-diagonal pair into a pivot
      for (int t = 0; t < m; ++t)
        if (!done[t]) A[oi][t] = A[oi][t] + A[oj][t];
      for (int t = 0; t < m; ++t)
        if (!done[t]) A[t][oi] = A[t][oi] + A[t][oj];
      piv = oi;
    }
    sig += A[piv][piv].sign();
    for (int i = 0; i < m; ++i) {
      if (done[i] || i == piv || A[i][piv].zero()) continue;
      Frac r = A[i][piv] / A[piv][piv];
      for (int j = 0; j < m; ++j)
        if (!done[j]) A[i][j] = A[i][j] - r * A[piv][j];
      for (int j = 0; j < m; ++j)
        if (!done[j]) A[j][i] = A[j][i] - r * A[j][piv];
    }
    done[piv] = 1;
  }
  return sig;
}

}  // namespace detail_t

// Closed form for connected reduced alternating diagrams: black region
// count minus one minus the positive crossing count, in the convention
// coloring.  nullopt when that coloring does not exist.
inline std::optional<int> signature_alternating(const Diagram& d) {
  auto col = d.convention_coloring();
  if (!col) return std::nullopt;
  int black = 0;
  for (char c : *col) black += (c == 1);
  return black - 1 - d.n_plus();
}

// Goeritz-form signature of a convention-colorable closed diagram on the
// sphere (markers are ignored; they do not change the underlying link).
inline std::optional<int> goeritz_signature(const Diagram& d) {
  if (d.has_boundary() || d.chi() != 2 || d.n() == 0) return std::nullopt;
  auto col = d.convention_coloring();
  if (!col) return std::nullopt;
  std::vector<int> widx(d.num_faces(), -1);
  int m = 0;
  for (int f = 0; f < d.num_faces(); ++f)
    if ((*col)[f] == 0) widx[f] = m++;
  std::vector<std::vector<long long>> G(m, std::vector<long long>(m, 0));
  for (int c = 0; c < d.n(); ++c) {
    int u = widx[d.face_of(d.anchored_he(c, 1))];
    int v = widx[d.face_of(d.anchored_he(c, 3))];
    if (u < 0 || v < 0) throw std::logic_error("white corner landed on a black face");
    if (u == v) continue;
    G[u][v] += 1;
    G[v][u] += 1;
  }
  for (int i = 0; i < m; ++i) {
    long long row = 0;
    for (int j = 0; j < m; ++j)
      if (j != i) row += G[i][j];
    G[i][i] = -row;
  }
  // delete one region and take the signature of the rest
  std::vector<std::vector<detail_t::Frac>> A(m - 1,
                                             std::vector<detail_t::Frac>(m - 1));
  for (int i = 1; i < m; ++i)
    for (int j = 1; j < m; ++j) A[i - 1][j - 1] = detail_t::Frac(G[i][j]);
  int sig = (m > 1) ? detail_t::symmetric_signature(A) : 0;
  return sig + d.n_minus();
}

// ---------------------------------------------------------------------------
// Glyph-level dualities, checked on dimension tables.
// ---------------------------------------------------------------------------
inline Glyph negate_glyph(const Glyph& g) {
  Glyph r = g;
  for (auto& kv : r.circles) kv.second = -kv.second;
  return r;
}

inline int glyph_weight(const Glyph& g) {
  int s = 0;
  for (auto& kv : g.circles) s += kv.second;
  return s;
}

using DimTable = std::map<std::pair<Glyph, int>, int>;

inline DimTable homology_table(const Diagram& d) {
  Resolver R(d);
  return twisted_homology(build_sk(R)).table();
}

// dim H_delta(-g) must equal dim H_{delta - 2k(g)}(g) throughout the table.
inline bool negation_duality_holds(const DimTable& t, std::string* why = nullptr) {
  auto dim = [&](const Glyph& g, int delta) -> int {
    auto it = t.find({g, delta});
    return it == t.end() ? 0 : it->second;
  };
  std::set<std::pair<Glyph, int>> keys;
  for (auto& [k, v] : t) {
    keys.insert(k);
    keys.insert({negate_glyph(k.first), k.second + 2 * glyph_weight(k.first)});
  }
  for (auto& [g, delta] : keys) {
    int lhs = dim(negate_glyph(g), delta);
    int rhs = dim(g, delta - 2 * glyph_weight(g));
    if (lhs != rhs) {
      if (why) {
        std::ostringstream os;
        os << "negation mismatch at delta=" << delta << ": " << lhs << " vs " << rhs;
        *why = os.str();
      }
      return false;
    }
  }
  return true;
}

// dim H_delta(mirror, g) must equal dim H_{-delta-2k(g)}(original, g).
inline bool mirror_duality_holds(const DimTable& mirrored, const DimTable& original,
                                 std::string* why = nullptr) {
  auto dim = [](const DimTable& t, const Glyph& g, int delta) -> int {
    auto it = t.find({g, delta});
    return it == t.end() ? 0 : it->second;
  };
  std::set<std::pair<Glyph, int>> keys;
  for (auto& [k, v] : mirrored) keys.insert(k);
  for (auto& [k, v] : original)
    keys.insert({k.first, -k.second - 2 * glyph_weight(k.first)});
  for (auto& [g, delta] : keys) {
    int lhs = dim(mirrored, g, delta);
    int rhs = dim(original, g, -delta - 2 * glyph_weight(g));
    if (lhs != rhs) {
      if (why) {
        std::ostringstream os;
        os << "mirror mismatch at delta=" << delta << ": " << lhs << " vs " << rhs;
        *why = os.str();
      }
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Encoding-independent sector fingerprint, for comparing dimension tables
// across moves (edge numbering and class keys change; marker identities and
// decoration labels do not).  Genus-0 circles are identified by the set of
// punctures they enclose; elsewhere by label multiset alone.  Arcs are
// identified by their boundary end positions.
// ---------------------------------------------------------------------------
inline std::multiset<std::string> invariance_fingerprint(const Diagram& d) {
  Resolver R(d);
  Complex C = build_sk(R);
  auto H = twisted_homology(C);
  // class key -> enclosed punctures (genus 0) over all states
  std::map<std::vector<int64_t>, std::set<int>> enclosure;
  uint64_t states = uint64_t{1} << d.n();
  for (uint64_t code = 0; code < states; ++code) {
    const Resolution& r = R.resolve(code);
    for (const auto& cv : r.curves)
      if (!cv.is_arc && !cv.contractible && !cv.enclosed_punctures.empty())
        enclosure[cv.key] = std::set<int>(cv.enclosed_punctures.begin(),
                                          cv.enclosed_punctures.end());
  }
  std::map<int, int> bpos;  // boundary germ -> position
  for (size_t i = 0; i < d.boundary_ends.size(); ++i)
    bpos[d.boundary_ends[i]] = static_cast<int>(i);
  std::multiset<std::string> out;
  for (const auto& sec : H.sectors) {
    std::ostringstream os;
    std::vector<std::string> parts;
    for (auto& [key, label] : sec.glyph.circles) {
      std::ostringstream p;
      p << "c";
      auto it = enclosure.find(key);
      if (it != enclosure.end()) {
        p << "{";
        for (int id : it->second) p << id << ",";
        p << "}";
      }
      p << "*" << label;
      parts.push_back(p.str());
    }
    for (auto& [tail, head, key] : sec.glyph.arcs) {
      std::ostringstream p;
      p << "a(" << bpos[tail] << "," << bpos[head] << ")";
      parts.push_back(p.str());
    }
    std::sort(parts.begin(), parts.end());
    for (auto& p : parts) os << p << ";";
    os << "|";
    for (auto& [delta, dim] : sec.dims) os << delta << ":" << dim << ",";
    out.insert(os.str());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Grading laws for alternating diagrams.  Each check reports whether its
// premises hold for the diagram and, if so, whether every collapsed-complex
// generator satisfies the law.
// ---------------------------------------------------------------------------
struct LawReport {
  bool applies = false;
  bool passed = false;
  std::string detail;
};

// Connected alternating colorable diagrams: within one colored-glyph sector
// (glyph plus black-surface chi) all generators share one homological grading.
inline LawReport single_grading_check(const Diagram& d) {
  LawReport rep;
  if (!d.alternating() || !d.convention_coloring()) {
    rep.detail = "needs an alternating diagram with the convention coloring";
    return rep;
  }
  rep.applies = true;
  Resolver R(d);
  Complex C = build_ct(R);
  std::map<std::pair<int, int>, std::set<int>> grades;  // (glyph id, chi) -> h
  for (size_t i = 0; i < C.gens.size(); ++i) {
    auto& res = R.resolve(C.gens[i].code);
    if (!res.black_chi) {
      rep.detail = "a state failed to inherit the checkerboard coloring";
      return rep;
    }
    grades[{C.glyph_id[i], *res.black_chi}].insert(C.h[i]);
  }
  for (auto& [key, hs] : grades)
    if (hs.size() > 1) {
      std::ostringstream os;
      os << "colored sector (glyph " << key.first << ", chi " << key.second
         << ") spreads over " << hs.size() << " gradings";
      rep.detail = os.str();
      return rep;
    }
  rep.passed = true;
  return rep;
}

// Connected alternating colorable links in the punctured plane: every
// collapsed-complex generator sits in grading
//   delta = sigma - k(glyph) - chi_black - punctured_black + J
// where J is 1 when the unbounded region is white and 0 when black.
inline LawReport punctured_plane_check(const Diagram& d) {
  LawReport rep;
  auto col = d.convention_coloring();
  if (d.has_boundary() || d.chi() != 2 || !d.infinity || !d.alternating() || !col) {
    rep.detail = "needs a closed alternating colorable diagram in the punctured plane";
    return rep;
  }
  rep.applies = true;
  auto sigma = goeritz_signature(d);
  if (!sigma) {
    rep.detail = "signature unavailable";
    return rep;
  }
  int J = ((*col)[*d.infinity_face()] == 1) ? 0 : 1;
  Resolver R(d);
  Complex C = build_ct(R);
  for (size_t i = 0; i < C.gens.size(); ++i) {
    auto& res = R.resolve(C.gens[i].code);
    if (!res.black_chi || !res.black_punctures) {
      rep.detail = "a state failed to inherit the checkerboard coloring";
      return rep;
    }
    int k = glyph_weight(C.glyphs[C.glyph_id[i]]);
    int want = *sigma - k - *res.black_chi - *res.black_punctures + J;
    if (C.delta[i] != want) {
      std::ostringstream os;
      os << "state " << C.gens[i].code << "/" << C.gens[i].dec << ": delta "
         << C.delta[i] << " != " << want;
      rep.detail = os.str();
      return rep;
    }
  }
  rep.passed = true;
  return rep;
}

// Annular specialization: sectors whose glyph is one core circle labeled k
// satisfy  delta + k = sigma            (k odd)
//          delta + k = sigma - 1        (k even, unbounded region black)
//          delta + k = sigma + 1        (k even, unbounded region white).
// The trivial glyph counts as k = 0.
inline LawReport annular_check(const Diagram& d) {
  LawReport rep;
  auto col = d.convention_coloring();
  if (d.has_boundary() || d.chi() != 2 || !d.infinity || d.punctures.size() != 1 ||
      !d.alternating() || !col) {
    rep.detail = "needs a closed alternating colorable annular diagram";
    return rep;
  }
  rep.applies = true;
  auto sigma = goeritz_signature(d);
  if (!sigma) {
    rep.detail = "signature unavailable";
    return rep;
  }
  bool unbounded_black = (*col)[*d.infinity_face()] == 1;
  Resolver R(d);
  Complex C = build_ct(R);
  for (size_t i = 0; i < C.gens.size(); ++i) {
    const Glyph& g = C.glyphs[C.glyph_id[i]];
    if (g.circles.size() > 1) {
      rep.detail = "annular state with two distinct core classes";
      return rep;
    }
    int k = glyph_weight(g);
    int want = (k % 2 != 0) ? *sigma : (unbounded_black ? *sigma - 1 : *sigma + 1);
    if (C.delta[i] + k != want) {
      std::ostringstream os;
      os << "sector k=" << k << ": delta+k = " << C.delta[i] + k << " != " << want;
      rep.detail = os.str();
      return rep;
    }
  }
  rep.passed = true;
  return rep;
}

// ---------------------------------------------------------------------------
// Alternating tangle completion: closes an alternating disk tangle into an
// alternating link by repeatedly joining adjacent outgoing/incoming end
// pairs around the boundary circle.
// ---------------------------------------------------------------------------
struct EndLabel {
  int germ = -1;        // boundary halfedge
  bool outgoing = false;  // strand heads out of the disk here
  bool under_next = false;  // heading out, the strand should next go under
};

struct Completion {
  Diagram diagram;                        // the closed-up link
  std::vector<std::pair<int, int>> joins; // boundary germ pairs, outgoing first
  std::vector<EndLabel> labels;           // in disk-boundary order
};

inline Completion complete_alternating_tangle(const Diagram& d) {
  if (!d.has_boundary())
    throw std::invalid_argument("completion needs a tangle with boundary ends");
  if (!d.punctures.empty() || d.infinity)
    throw std::invalid_argument("completion handles tangles in the plain disk");
  if (!d.alternating() || !d.convention_coloring())
    throw std::invalid_argument("completion needs an alternating colorable tangle");
  // Disk-boundary order is the reverse of the boundary-vertex rotation.
  std::vector<int> disk(d.boundary_ends.rbegin(), d.boundary_ends.rend());
  int m = static_cast<int>(disk.size());
  std::vector<EndLabel> labels(m);
  for (int i = 0; i < m; ++i) {
    int b = disk[i];
    int t = d.twin(b);
    if (d.origin(t) == d.n())
      throw std::invalid_argument("crossingless strand cannot be completed");
    bool under_first = detail_t::passage_is_under(d, t);
    labels[i] = {b, !d.forward(b), !under_first};
  }
  for (int i = 0; i < m; ++i)
    if (labels[i].under_next == labels[(i + 1) % m].under_next)
      throw std::invalid_argument("under/over end labels fail to alternate");
  // Join adjacent (outgoing, incoming) pairs until none remain.
  std::vector<int> nxt(m), prv(m);
  for (int i = 0; i < m; ++i) {
    nxt[i] = (i + 1) % m;
    prv[i] = (i + m - 1) % m;
  }
  std::vector<char> gone(m, 0);
  std::vector<std::pair<int, int>> joins;
  int remaining = m;
  while (remaining > 0) {
    int found = -1;
    for (int i = 0; i < m; ++i) {
      if (gone[i]) continue;
      int j = nxt[i];
      if (j != i && labels[i].outgoing && !labels[j].outgoing) { found = i; break; }
    }
    if (found < 0)
      throw std::invalid_argument("ends admit no adjacent outgoing/incoming pair");
    int i = found, j = nxt[i];
    joins.push_back({labels[i].germ, labels[j].germ});
    gone[i] = gone[j] = 1;
    nxt[prv[i]] = nxt[j];
    prv[nxt[j]] = prv[i];
    remaining -= 2;
  }
  // Splice the joined ends into edges and drop the boundary vertex.
  detail_t::Surgery s(d);
  s.drop_boundary = true;
  std::map<int, int> inner;  // boundary germ -> inner germ of its edge
  for (int b : d.boundary_ends) inner[b] = d.twin(b);
  for (auto& [bo, bi] : joins) {
    s.remove_edge_at(bo);
    s.remove_edge_at(bi);
    s.edges.push_back({inner[bo], inner[bi]});
  }
  // Seeds: keep those of closed components; arcs get one seed per closure
  // cycle, flowing from the outgoing side inward.
  std::vector<int> seeds;
  const auto& comps = d.components();
  std::vector<int> comp_of_germ(d.num_halfedges(), -1);
  for (size_t ci = 0; ci < comps.size(); ++ci)
    for (int h : comps[ci].forward_halfedges) {
      comp_of_germ[h] = static_cast<int>(ci);
      comp_of_germ[d.twin(h)] = static_cast<int>(ci);
    }
  for (size_t ci = 0; ci < comps.size(); ++ci)
    if (comps[ci].closed) seeds.push_back(comps[ci].forward_halfedges.front());
  {
    // cycles of arcs under the joins
    std::vector<int> parent(comps.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto& [bo, bi] : joins)
      parent[find(comp_of_germ[bo])] = find(comp_of_germ[bi]);
    std::set<int> seeded;
    for (auto& [bo, bi] : joins) {
      int root = find(comp_of_germ[bo]);
      if (seeded.count(root)) continue;
      seeded.insert(root);
      seeds.push_back(inner[bo]);  // inner germ points away from the old head
    }
  }
  s.orient = seeds;
  s.name += "+closure";
  Completion out{s.finish(), joins, labels};
  if (!out.diagram.alternating())
    throw std::logic_error("completion failed to stay alternating");
  return out;
}

// Disk-tangle specialization: complete the tangle to a link L; every
// collapsed-complex generator of the tangle then sits in grading
//   delta = sigma(L) - chi_black(same state in L) + 1.
inline LawReport disk_tangle_check(const Diagram& d) {
  LawReport rep;
  if (!d.has_boundary() || !d.punctures.empty() || d.infinity ||
      !d.alternating() || !d.convention_coloring()) {
    rep.detail = "needs an alternating colorable tangle in the plain disk";
    return rep;
  }
  for (const auto& comp : d.components())
    if (comp.closed) {
      rep.detail = "needs an arc-only tangle";
      return rep;
    }
  rep.applies = true;
  Completion comp = complete_alternating_tangle(d);
  auto sigma = goeritz_signature(comp.diagram);
  if (!sigma) {
    rep.detail = "completed link has no signature";
    return rep;
  }
  Resolver RT(d), RL(comp.diagram);
  Complex C = build_ct(RT);
  for (size_t i = 0; i < C.gens.size(); ++i) {
    auto& closed_state = RL.resolve(C.gens[i].code);
    if (!closed_state.black_chi) {
      rep.detail = "a completed state failed to inherit the coloring";
      return rep;
    }
    int want = *sigma - *closed_state.black_chi + 1;
    if (C.delta[i] != want) {
      std::ostringstream os;
      os << "state " << C.gens[i].code << ": delta " << C.delta[i] << " != " << want;
      rep.detail = os.str();
      return rep;
    }
  }
  rep.passed = true;
  return rep;
}

}  // namespace skein
