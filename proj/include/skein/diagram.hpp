#pragma once
// Link/tangle diagrams on closed orientable surfaces, encoded as rotation
// systems (combinatorial maps).
//
// Conventions (load-bearing; the whole library is anchored to these):
//   * Halfedges point OUT of their vertex.  Crossing c owns halfedges
//     4c..4c+3; `rotation` lists them in CCW order around the crossing.
//     Tangle endpoints attach to a single extra vertex ("the boundary
//     vertex"), whose CCW order is `boundary_ends`.  Note: the CCW order
//     around that vertex is the REVERSE of the order in which the ends
//     appear along the disk boundary as seen from the diagram side.
//   * Face tracing: next(h) = sigma^{-1}(twin(h)) walks the face to the LEFT
//     of h, CCW around interior faces.  Faces of a rotation system are discs,
//     so V - E + F is the Euler characteristic of the closed surface.
//   * The corner between rotation[i] and rotation[i+1] lies in the face of
//     the directed halfedge rotation[i].
//   * Slots are re-anchored per crossing so slot 0 = the first under
//     halfedge.  The 0-smoothing joins slots (0,1) and (2,3); the
//     1-smoothing joins slots (0,3) and (1,2).  BLACK corners are the wedges
//     (0,1) and (2,3) — the pair merged by the 1-smoothing.
//   * Crossing sign is + iff the over strand exits at slot (under exit + 3)
//     mod 4.  (Equivalently: a positive kink's small circle appears in its
//     0-smoothing.)
//   * Surfaces-with-boundary are modelled as the closed surface with marked
//     faces: `punctures` (one representative halfedge per marked face) plus
//     an optional distinguished `infinity` face for planar families.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "skein/gf2poly.hpp"

namespace skein {

struct Crossing {
  std::array<int, 4> rotation;  // CCW around the crossing
  std::array<int, 2> under;     // the two under-strand halfedges (opposite slots)
};

struct StrandComponent {
  std::vector<int> forward_halfedges;  // in traversal order, starting at the tail
  bool closed = false;
};

class Diagram {
 public:
  // ---- raw data -----------------------------------------------------------
  std::string name;
  std::vector<Crossing> crossings;
  std::vector<std::pair<int, int>> edges;  // halfedge pairs; edge id = index + 1
  std::vector<int> boundary_ends;          // CCW around the boundary vertex
  std::vector<int> punctures;              // one halfedge per marked face
  std::optional<int> infinity;             // halfedge marking the infinity face
  std::vector<int> orient;                 // one tail halfedge per strand component
  std::vector<PolyGF2> weights;            // per edge; empty -> x_{edge id}

  // ---- lifecycle ----------------------------------------------------------

  // Structural validation; returns human-readable problems (empty if valid).
  std::vector<std::string> validate() const;

  // Builds the derived structure; throws std::runtime_error listing the
  // problems if validation fails.
  void analyze();

  static Diagram from_json(const nlohmann::json& j);
  static Diagram from_json_text(const std::string& text);
  nlohmann::json to_json() const;

  // ---- derived accessors (valid after analyze()) --------------------------
  int n() const { return static_cast<int>(crossings.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_halfedges() const { return H_; }
  bool has_boundary() const { return !boundary_ends.empty(); }
  int boundary_vertex() const { return n(); }

  int twin(int h) const { return twin_[h]; }
  int edge_of(int h) const { return edge_index_[h]; }  // 0-based edge index
  int origin(int h) const { return origin_[h]; }
  int slot(int h) const { return slot_[h]; }
  int sigma(int h) const { return sigma_[h]; }
  int sigma_inv(int h) const { return sigma_inv_[h]; }
  int face_next(int h) const { return sigma_inv_[twin_[h]]; }

  int face_of(int h) const { return face_of_[h]; }
  const std::vector<std::vector<int>>& faces() const { return faces_; }
  int num_faces() const { return static_cast<int>(faces_.size()); }

  const std::vector<StrandComponent>& components() const { return components_; }
  bool forward(int h) const { return forward_[h]; }

  int chi() const { return chi_; }
  int genus() const { return (2 - chi_) / 2; }

  int crossing_sign(int c) const { return sign_[c]; }
  int n_plus() const { return n_plus_; }
  int n_minus() const { return n_minus_; }
  int writhe() const { return n_plus_ - n_minus_; }

  // Halfedge at re-anchored slot i of crossing c (slot 0 = under[0]).
  int anchored_he(int c, int i) const {
    int a = slot_[crossings[c].under[0]];
    return crossings[c].rotation[(a + i) & 3];
  }
  // Re-anchored slot of halfedge h at its crossing.
  int anchored_slot(int h) const {
    int c = origin_[h];
    int a = slot_[crossings[c].under[0]];
    return (slot_[h] - a + 4) & 3;
  }

  const PolyGF2& weight(int edge_index) const { return weights[edge_index]; }
  PolyGF2 weight_sum(const std::vector<int>& edge_indices) const {
    PolyGF2 s;
    for (int e : edge_indices) s += weights[e];
    return s;
  }

  std::set<int> puncture_faces() const {
    std::set<int> s;
    for (int h : punctures) s.insert(face_of_[h]);
    return s;
  }
  std::optional<int> infinity_face() const {
    if (!infinity) return std::nullopt;
    return face_of_[*infinity];
  }
  std::set<int> marked_faces() const {  // punctures plus infinity
    std::set<int> s = puncture_faces();
    if (infinity) s.insert(face_of_[*infinity]);
    return s;
  }

  // BLACK iff re-anchored corner index is 0 or 2 (corner i sits between
  // anchored slots i and i+1, inside the face of anchored_he(c, i)).
  static bool corner_black(int i) { return i == 0 || i == 2; }

  // The checkerboard coloring (face -> 1 black / 0 white) forced by the
  // corner convention; nullopt if inconsistent.
  std::optional<std::vector<char>> convention_coloring() const;
  bool checkerboard_colorable() const;  // any proper 2-coloring of faces
  bool alternating() const;

  // Oriented boundary of a face in edge space Z^E: entry e counts +1 each
  // time the face cycle traverses edge e along its first-listed halfedge and
  // -1 along the twin.
  std::vector<int64_t> face_boundary_vec(int f) const {
    std::vector<int64_t> v(edges.size(), 0);
    for (int h : faces_[f]) v[edge_index_[h]] += (edges[edge_index_[h]].first == h) ? 1 : -1;
    return v;
  }

 private:
  int H_ = 0;
  std::vector<int> twin_, edge_index_, origin_, slot_, sigma_, sigma_inv_, face_of_;
  std::vector<std::vector<int>> faces_;
  std::vector<StrandComponent> components_;
  std::vector<char> forward_;
  std::vector<int> sign_;
  int chi_ = 0, n_plus_ = 0, n_minus_ = 0;

  // Strand continuation: arriving at the head of forward halfedge h, the next
  // forward halfedge (or -1 if the strand ends at the boundary vertex).
  int strand_next(int h) const {
    int t = twin_[h];
    int w = origin_[t];
    if (w == n()) return -1;
    return crossings[w].rotation[(slot_[t] + 2) & 3];
  }

  // Union-find over edges joined by passing straight through crossings; the
  // classes are the strand components.
  std::vector<int> strand_classes() const;
};

// ---------------------------------------------------------------------------

inline std::vector<int> Diagram::strand_classes() const {
  std::vector<int> parent(edges.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::vector<int>* pp = &parent;
  auto find = [pp](int x) {
    while ((*pp)[x] != x) x = (*pp)[x] = (*pp)[(*pp)[x]];
    return x;
  };
  for (int c = 0; c < n(); ++c)
    for (int i = 0; i < 2; ++i) {
      int a = edge_index_[crossings[c].rotation[i]];
      int b = edge_index_[crossings[c].rotation[i + 2]];
      parent[find(a)] = find(b);
    }
  for (auto& x : parent) x = find(x);
  return parent;
}

inline std::vector<std::string> Diagram::validate() const {
  std::vector<std::string> errs;
  int nc = static_cast<int>(crossings.size());
  int H = 4 * nc + static_cast<int>(boundary_ends.size());
  auto bad_he = [&](int h) { return h < 0 || h >= H; };

  // Every halfedge id must appear exactly once across rotations + boundary.
  std::vector<int> seen(H, 0);
  bool range_ok = true;
  for (int c = 0; c < nc; ++c)
    for (int h : crossings[c].rotation) {
      if (bad_he(h)) {
        errs.push_back("crossing " + std::to_string(c) + ": halfedge id " +
                       std::to_string(h) + " out of range");
        range_ok = false;
      } else
        ++seen[h];
    }
  for (int h : boundary_ends) {
    if (bad_he(h)) {
      errs.push_back("boundary_ends: halfedge id " + std::to_string(h) + " out of range");
      range_ok = false;
    } else
      ++seen[h];
  }
  if (!range_ok) return errs;
  for (int h = 0; h < H; ++h)
    if (seen[h] != 1)
      errs.push_back("halfedge " + std::to_string(h) + " listed " + std::to_string(seen[h]) +
                     " times across rotations and boundary_ends (expected exactly 1)");
  if (!errs.empty()) return errs;

  // Edges: a perfect matching on halfedges.
  std::vector<int> deg(H, 0);
  for (auto& [a, b] : edges) {
    if (bad_he(a) || bad_he(b)) {
      errs.push_back("edge (" + std::to_string(a) + "," + std::to_string(b) +
                     "): halfedge out of range");
      continue;
    }
    if (a == b) {
      errs.push_back("edge (" + std::to_string(a) + "," + std::to_string(b) +
                     "): a halfedge cannot be its own twin");
      continue;
    }
    ++deg[a];
    ++deg[b];
  }
  for (int h = 0; h < H; ++h)
    if (deg[h] != 1)
      errs.push_back("halfedge " + std::to_string(h) + " belongs to " + std::to_string(deg[h]) +
                     " edges (expected exactly 1)");
  if (!errs.empty()) return errs;

  // Under pairs must occupy opposite rotation slots of their own crossing.
  for (int c = 0; c < nc; ++c) {
    auto& rot = crossings[c].rotation;
    auto slot_in = [&](int h) -> int {
      for (int i = 0; i < 4; ++i)
        if (rot[i] == h) return i;
      return -1;
    };
    int s0 = slot_in(crossings[c].under[0]), s1 = slot_in(crossings[c].under[1]);
    if (s0 < 0 || s1 < 0)
      errs.push_back("crossing " + std::to_string(c) +
                     ": under halfedges must belong to the crossing's rotation");
    else if ((s0 + 2) % 4 != s1)
      errs.push_back("crossing " + std::to_string(c) +
                     ": under halfedges must sit at opposite rotation slots");
  }

  // Marked faces and orientation tails must reference valid halfedges.
  for (int h : punctures)
    if (bad_he(h)) errs.push_back("punctures: halfedge id " + std::to_string(h) + " out of range");
  if (infinity && bad_he(*infinity))
    errs.push_back("infinity: halfedge id " + std::to_string(*infinity) + " out of range");
  for (int h : orient)
    if (bad_he(h)) errs.push_back("orient: halfedge id " + std::to_string(h) + " out of range");
  if (!errs.empty()) return errs;

  // Connectivity (vertices = crossings + boundary vertex, via edges).
  {
    int V = nc + (boundary_ends.empty() ? 0 : 1);
    if (V > 0) {
      // local origin map
      std::vector<int> org(H, nc);
      for (int c = 0; c < nc; ++c)
        for (int h : crossings[c].rotation) org[h] = c;
      std::vector<int> parent(V);
      for (int i = 0; i < V; ++i) parent[i] = i;
      auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (auto& [a, b] : edges) parent[find(org[a])] = find(org[b]);
      std::set<int> roots;
      for (int i = 0; i < V; ++i) roots.insert(find(i));
      if (roots.size() > 1)
        errs.push_back("diagram is disconnected (" + std::to_string(roots.size()) +
                       " components); connected diagrams are required");
    }
  }
  if (!errs.empty()) return errs;

  // Orientation: exactly one tail per strand component; arc tails must start
  // at the boundary vertex.
  {
    // Rebuild minimal derived info locally (validate() may run pre-analyze()).
    std::vector<int> org(H, nc), slt(H, -1), edge_ix(H, -1);
    for (int c = 0; c < nc; ++c)
      for (int i = 0; i < 4; ++i) org[crossings[c].rotation[i]] = c,
                                  slt[crossings[c].rotation[i]] = i;
    for (size_t i = 0; i < boundary_ends.size(); ++i) slt[boundary_ends[i]] = static_cast<int>(i);
    for (size_t e = 0; e < edges.size(); ++e)
      edge_ix[edges[e].first] = edge_ix[edges[e].second] = static_cast<int>(e);

    std::vector<int> parent(edges.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int c = 0; c < nc; ++c)
      for (int i = 0; i < 2; ++i)
        parent[find(edge_ix[crossings[c].rotation[i]])] =
            find(edge_ix[crossings[c].rotation[i + 2]]);

    std::map<int, int> tails_per_class;
    std::set<int> arc_classes;
    for (auto& [a, b] : edges)
      if (org[a] == nc || org[b] == nc) arc_classes.insert(find(edge_ix[a]));
    for (int h : orient) {
      int cls = find(edge_ix[h]);
      ++tails_per_class[cls];
      if (arc_classes.count(cls) && org[h] != nc)
        errs.push_back("orient: tail " + std::to_string(h) +
                       " of an arc component must start at the boundary vertex");
    }
    std::set<int> classes;
    for (size_t e = 0; e < edges.size(); ++e) classes.insert(find(static_cast<int>(e)));
    for (int cls : classes)
      if (tails_per_class[cls] != 1)
        errs.push_back("orient: strand component needs exactly one tail, got " +
                       std::to_string(tails_per_class[cls]));
  }

  // Weights, if overridden, must match the edge count.
  if (!weights.empty() && weights.size() != edges.size())
    errs.push_back("weights: expected " + std::to_string(edges.size()) + " entries, got " +
                   std::to_string(weights.size()));

  return errs;
}

inline void Diagram::analyze() {
  auto errs = validate();
  if (!errs.empty()) {
    std::string msg = "invalid diagram";
    if (!name.empty()) msg += " '" + name + "'";
    for (auto& e : errs) msg += "\n  - " + e;
    throw std::runtime_error(msg);
  }

  if (weights.empty())
    for (size_t e = 0; e < edges.size(); ++e)
      weights.push_back(PolyGF2::var(static_cast<int>(e) + 1));

  int nc = n();
  H_ = 4 * nc + static_cast<int>(boundary_ends.size());
  twin_.assign(H_, -1);
  edge_index_.assign(H_, -1);
  origin_.assign(H_, -1);
  slot_.assign(H_, -1);
  sigma_.assign(H_, -1);
  sigma_inv_.assign(H_, -1);

  for (size_t e = 0; e < edges.size(); ++e) {
    twin_[edges[e].first] = edges[e].second;
    twin_[edges[e].second] = edges[e].first;
    edge_index_[edges[e].first] = edge_index_[edges[e].second] = static_cast<int>(e);
  }
  for (int c = 0; c < nc; ++c)
    for (int i = 0; i < 4; ++i) {
      int h = crossings[c].rotation[i];
      origin_[h] = c;
      slot_[h] = i;
      sigma_[h] = crossings[c].rotation[(i + 1) & 3];
    }
  int m = static_cast<int>(boundary_ends.size());
  for (int i = 0; i < m; ++i) {
    int h = boundary_ends[i];
    origin_[h] = nc;
    slot_[h] = i;
    sigma_[h] = boundary_ends[(i + 1) % m];
  }
  for (int h = 0; h < H_; ++h) sigma_inv_[sigma_[h]] = h;

  // Faces: orbits of h -> sigma^{-1}(twin(h)).
  face_of_.assign(H_, -1);
  faces_.clear();
  for (int h0 = 0; h0 < H_; ++h0) {
    if (face_of_[h0] >= 0) continue;
    std::vector<int> cyc;
    int h = h0;
    do {
      face_of_[h] = static_cast<int>(faces_.size());
      cyc.push_back(h);
      h = face_next(h);
    } while (h != h0);
    faces_.push_back(std::move(cyc));
  }
  // (faces are discovered in min-halfedge order already: h0 ascending)

  int V = nc + (boundary_ends.empty() ? 0 : 1);
  chi_ = V - static_cast<int>(edges.size()) + static_cast<int>(faces_.size());
  if (boundary_ends.empty() && chi_ % 2 != 0)
    throw std::logic_error("odd Euler characteristic for a closed rotation system");

  // Orientation propagation from the declared tails.
  forward_.assign(H_, 0);
  components_.clear();
  for (int tail : orient) {
    StrandComponent comp;
    int h = tail;
    for (;;) {
      forward_[h] = 1;
      comp.forward_halfedges.push_back(h);
      int nx = strand_next(h);
      if (nx < 0) {
        comp.closed = false;
        break;
      }
      if (nx == tail) {
        comp.closed = true;
        break;
      }
      h = nx;
    }
    components_.push_back(std::move(comp));
  }

  // Crossing signs.
  sign_.assign(nc, 0);
  n_plus_ = n_minus_ = 0;
  for (int c = 0; c < nc; ++c) {
    auto& rot = crossings[c].rotation;
    int u0 = slot_[crossings[c].under[0]];
    auto exit_slot = [&](int s0, int s1) -> int {
      bool f0 = forward_[rot[s0]], f1 = forward_[rot[s1]];
      if (f0 == f1)
        throw std::logic_error("orientation: strand must exit a crossing exactly once per passage");
      return f0 ? s0 : s1;
    };
    int under_exit = exit_slot(u0, (u0 + 2) & 3);
    int over_exit = exit_slot((u0 + 1) & 3, (u0 + 3) & 3);
    bool positive = ((over_exit - under_exit + 4) & 3) == 3;
    sign_[c] = positive ? 1 : -1;
    (positive ? n_plus_ : n_minus_)++;
  }
}

inline std::optional<std::vector<char>> Diagram::convention_coloring() const {
  std::vector<char> color(faces_.size(), -1);
  // Corner constraints.
  for (int c = 0; c < n(); ++c)
    for (int i = 0; i < 4; ++i) {
      int f = face_of_[anchored_he(c, i)];
      char want = corner_black(i) ? 1 : 0;
      if (color[f] < 0) color[f] = want;
      else if (color[f] != want) return std::nullopt;
    }
  // Edge adjacency propagation (also covers crossing-free regions).
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& [a, b] : edges) {
      int fa = face_of_[a], fb = face_of_[b];
      if (fa == fb) return std::nullopt;  // face self-adjacent across an edge
      if (color[fa] >= 0 && color[fb] < 0) color[fb] = !color[fa], changed = true;
      else if (color[fb] >= 0 && color[fa] < 0) color[fa] = !color[fb], changed = true;
      else if (color[fa] >= 0 && color[fb] >= 0 && color[fa] == color[fb]) return std::nullopt;
    }
  }
  for (auto& col : color)
    if (col < 0) col = 0;
  return color;
}

inline bool Diagram::checkerboard_colorable() const {
  std::vector<char> color(faces_.size(), -1);
  for (size_t f0 = 0; f0 < faces_.size(); ++f0) {
    if (color[f0] >= 0) continue;
    color[f0] = 0;
    std::vector<int> stack = {static_cast<int>(f0)};
    while (!stack.empty()) {
      int f = stack.back();
      stack.pop_back();
      for (int h : faces_[f]) {
        int g = face_of_[twin_[h]];
        if (g == f) return false;
        if (color[g] < 0) {
          color[g] = !color[f];
          stack.push_back(g);
        } else if (color[g] == color[f])
          return false;
      }
    }
  }
  return true;
}

inline bool Diagram::alternating() const {
  for (auto& comp : components_) {
    std::vector<char> unders;
    for (int h : comp.forward_halfedges) {
      int t = twin_[h];
      if (origin_[t] == n()) continue;  // arc end
      int c = origin_[t];
      bool is_under = (t == crossings[c].under[0] || t == crossings[c].under[1]);
      unders.push_back(is_under);
    }
    for (size_t i = 0; i + 1 < unders.size(); ++i)
      if (unders[i] == unders[i + 1]) return false;
    if (comp.closed && unders.size() >= 2 && unders.front() == unders.back()) return false;
    if (comp.closed && unders.size() % 2 != 0) return false;
  }
  return true;
}

// ------------------------------------------------------------------- JSON --

inline Diagram Diagram::from_json(const nlohmann::json& j) {
  Diagram d;
  try {
    d.name = j.value("name", "");
    for (const auto& c : j.at("crossings")) {
      Crossing cr{};
      auto rot = c.at("rotation");
      auto und = c.at("under");
      if (rot.size() != 4) throw std::runtime_error("crossing rotation must list 4 halfedges");
      if (und.size() != 2) throw std::runtime_error("crossing under must list 2 halfedges");
      for (int i = 0; i < 4; ++i) cr.rotation[i] = rot.at(i).get<int>();
      for (int i = 0; i < 2; ++i) cr.under[i] = und.at(i).get<int>();
      d.crossings.push_back(cr);
    }
    for (const auto& e : j.at("edges")) {
      if (e.size() != 2) throw std::runtime_error("edge must list 2 halfedges");
      d.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    }
    if (j.contains("boundary_ends"))
      for (const auto& h : j.at("boundary_ends")) d.boundary_ends.push_back(h.get<int>());
    if (j.contains("punctures"))
      for (const auto& h : j.at("punctures")) d.punctures.push_back(h.get<int>());
    if (j.contains("infinity") && !j.at("infinity").is_null())
      d.infinity = j.at("infinity").get<int>();
    for (const auto& h : j.at("orient")) d.orient.push_back(h.get<int>());
    d.weights.clear();
    for (size_t e = 0; e < d.edges.size(); ++e)
      d.weights.push_back(PolyGF2::var(static_cast<int>(e) + 1));
    if (j.contains("weights"))
      for (auto& [key, val] : j.at("weights").items()) {
        int id = std::stoi(key);
        if (id < 1 || id > static_cast<int>(d.edges.size()))
          throw std::runtime_error("weights: edge id " + key + " out of range");
        d.weights[id - 1] = PolyGF2::parse(val.get<std::string>());
      }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("diagram JSON malformed: ") + e.what());
  }
  d.analyze();
  return d;
}

inline Diagram Diagram::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("diagram JSON unparseable: ") + e.what());
  }
  return from_json(j);
}

inline nlohmann::json Diagram::to_json() const {
  nlohmann::json j;
  if (!name.empty()) j["name"] = name;
  j["crossings"] = nlohmann::json::array();
  for (const auto& c : crossings)
    j["crossings"].push_back({{"rotation", c.rotation}, {"under", c.under}});
  j["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : edges) j["edges"].push_back({a, b});
  if (!boundary_ends.empty()) j["boundary_ends"] = boundary_ends;
  if (!punctures.empty()) j["punctures"] = punctures;
  if (infinity) j["infinity"] = *infinity;
  j["orient"] = orient;
  nlohmann::json w = nlohmann::json::object();
  for (size_t e = 0; e < weights.size(); ++e)
    if (!(weights[e] == PolyGF2::var(static_cast<int>(e) + 1)))
      w[std::to_string(e + 1)] = weights[e].render();
  if (!w.empty()) j["weights"] = w;
  return j;
}

}  // namespace skein
