#pragma once

// Rectangle complex spanned by a 4-dimensional marking diagram: the closed
// PL surface obtained by filling every (w,x)-panel with an axis-aligned
// rectangle and joining the panels with connector rectangles in the zw-, xy-
// and wx-planes.  The module builds the complex, counts its CW cells, finds
// the double-point circles where rectangles pass through one another, and
// classifies the surface (embedded-Lagrangian / embedded / immersed).  It
// also checks, numerically, that the corner-rounding patches used to smooth
// the surface stay Lagrangian for the symplectic form dw∧dy + dz∧dx.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperkube/errors.hpp"
#include "hyperkube/hypercube.hpp"

namespace hyperkube {

// ---------------------------------------------------------------------------
// Geometry primitives
// ---------------------------------------------------------------------------

/** Closed integer interval [lo, hi]; lo > hi encodes the empty interval. */
struct Interval {
  int lo = 0;
  int hi = 0;

  static Interval point(int v) { return {v, v}; }
  static Interval span(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

  bool empty() const { return lo > hi; }
  bool degenerate() const { return lo == hi; }
  int length() const { return hi - lo; }
  bool contains(int v) const { return lo <= v && v <= hi; }
  bool strictlyContains(int v) const { return lo < v && v < hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

inline Interval meet(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

/**
 * The four coordinate planes that carry rectangles.  Each plane has an
 * ordered frame (first axis, second axis); the cyclic order w→x→y→z→w makes
 * the frames consistent with the segment chain of the diagram.
 */
enum class RectPlane { YZ, ZW, XY, WX };

constexpr std::array<int, 2> plane_axes(RectPlane p) {
  switch (p) {
    case RectPlane::YZ: return {2, 3};  // (y, z)
    case RectPlane::ZW: return {3, 0};  // (z, w)
    case RectPlane::XY: return {1, 2};  // (x, y)
    case RectPlane::WX: return {0, 1};  // (w, x)
  }
  return {0, 0};
}

constexpr std::string_view to_string(RectPlane p) {
  switch (p) {
    case RectPlane::YZ: return "yz";
    case RectPlane::ZW: return "zw";
    case RectPlane::XY: return "xy";
    case RectPlane::WX: return "wx";
  }
  return "??";
}

constexpr char axis_name(int axis) { return "wxyz"[axis & 3]; }

/**
 * Axis-aligned rectangle in R⁴: the product of one interval per axis, with
 * nondegenerate intervals exactly on the two axes of `plane` and degenerate
 * (point) intervals on the two transverse axes.  `sign` is +1 when the
 * surface orientation agrees with the plane frame (counterclockwise), -1
 * otherwise.
 */
struct Rectangle {
  RectPlane plane = RectPlane::YZ;
  std::array<Interval, 4> span = {};
  int sign = 0;

  std::array<Cell4, 4> corners() const {
    auto [A, B] = plane_axes(plane);
    Cell4 base = {span[0].lo, span[1].lo, span[2].lo, span[3].lo};
    std::array<Cell4, 4> out = {base, base, base, base};
    out[1][A] = span[A].hi;
    out[2][B] = span[B].hi;
    out[3][A] = span[A].hi;
    out[3][B] = span[B].hi;
    return out;
  }
};

/** Undirected axis-parallel edge, keyed by its endpoints (a < b). */
struct EdgeCell {
  Cell4 a = {};
  Cell4 b = {};

  friend bool operator==(const EdgeCell&, const EdgeCell&) = default;
  friend auto operator<=>(const EdgeCell&, const EdgeCell&) = default;
};

/** Vertex/edge/face identification tables of the rectangle complex. */
struct IncidenceTables {
  std::vector<Cell4> vertices;              // sorted, duplicate-free
  std::vector<EdgeCell> edges;              // sorted, duplicate-free
  std::vector<std::vector<int>> edgeFaces;  // edge id → incident face ids
  std::vector<std::vector<int>> vertexEdges;
  std::vector<std::vector<int>> vertexFaces;
};

/** Cell counts of the complex, with the Euler characteristic. */
struct CwCounts {
  std::int64_t vertices = 0;
  std::int64_t edges = 0;
  std::int64_t faces = 0;

  std::int64_t euler() const { return vertices - edges + faces; }

  friend bool operator==(const CwCounts&, const CwCounts&) = default;
};

/**
 * The full rectangle complex of a diagram of size n.  `faces` holds the four
 * n²-rectangle families in fixed blocks:
 *   [0, n²)      panel rectangles (yz-plane), index w·n + x;
 *   [n², 2n²)    row connectors (zw-plane), index x·n + y-value;
 *   [2n², 3n²)   column connectors (xy-plane), index w·n + z-value;
 *   [3n², 4n²)   corner rectangles (wx-plane), index y-value·n + z-value.
 */
struct RectangleComplex {
  int size = 0;
  std::vector<Rectangle> faces;

  // Extents shared along a whole column (fixed w) or row (fixed x).
  std::vector<Interval> columnYSpan;  // per w: the y-extent of every panel
  std::vector<Interval> rowZSpan;     // per x: the z-extent of every panel

  // For each y-value: the two columns whose y-extent ends there (sorted);
  // for each z-value: the two rows whose z-extent ends there.
  std::vector<std::array<int, 2>> columnsPairingY;
  std::vector<std::array<int, 2>> rowsPairingZ;

  IncidenceTables cells;
  int faceComponents = 0;  // connected components of the face-adjacency graph

  int panelFace(int w, int x) const { return w * size + x; }
  int rowConnectorFace(int x, int yValue) const {
    return size * size + x * size + yValue;
  }
  int columnConnectorFace(int w, int zValue) const {
    return 2 * size * size + w * size + zValue;
  }
  int cornerFace(int yValue, int zValue) const {
    return 3 * size * size + yValue * size + zValue;
  }
};

// ---------------------------------------------------------------------------
// Incidence tables and Euler characteristic
// ---------------------------------------------------------------------------

namespace detail {

/** Four boundary edges of a rectangle, canonically keyed. */
inline std::array<EdgeCell, 4> face_edges(const Rectangle& f) {
  auto [A, B] = plane_axes(f.plane);
  Cell4 lolo = {f.span[0].lo, f.span[1].lo, f.span[2].lo, f.span[3].lo};
  Cell4 hihi = lolo, hilo = lolo, lohi = lolo;
  hilo[A] = f.span[A].hi;
  lohi[B] = f.span[B].hi;
  hihi[A] = f.span[A].hi;
  hihi[B] = f.span[B].hi;
  return {EdgeCell{lolo, hilo}, EdgeCell{lohi, hihi},   // parallel to axis A
          EdgeCell{lolo, lohi}, EdgeCell{hilo, hihi}};  // parallel to axis B
}

/**
 * Identify shared corners and edges of the face list exactly and build the
 * incidence tables.  Throws NonManifoldEdge when some edge is not incident
 * to exactly two faces.
 */
inline IncidenceTables make_incidence(const std::vector<Rectangle>& faces) {
  std::map<Cell4, std::vector<int>> vertexMap;
  std::map<EdgeCell, std::vector<int>> edgeMap;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    for (const Cell4& c : faces[f].corners()) vertexMap[c].push_back(f);
    for (const EdgeCell& e : face_edges(faces[f])) edgeMap[e].push_back(f);
  }

  IncidenceTables t;
  std::map<EdgeCell, int> edgeId;
  for (auto& [edge, incident] : edgeMap) {
    if (incident.size() != 2)
      throw Error(Errc::NonManifoldEdge,
                  "edge from (" + std::to_string(edge.a[0]) + "," +
                      std::to_string(edge.a[1]) + "," +
                      std::to_string(edge.a[2]) + "," +
                      std::to_string(edge.a[3]) + ") is incident to " +
                      std::to_string(incident.size()) +
                      " faces; a closed surface needs exactly 2");
    edgeId[edge] = static_cast<int>(t.edges.size());
    t.edges.push_back(edge);
    t.edgeFaces.push_back(incident);
  }
  std::map<Cell4, int> vertexId;
  for (auto& [corner, incident] : vertexMap) {
    vertexId[corner] = static_cast<int>(t.vertices.size());
    t.vertices.push_back(corner);
    t.vertexFaces.push_back(incident);
  }
  t.vertexEdges.assign(t.vertices.size(), {});
  for (int e = 0; e < static_cast<int>(t.edges.size()); ++e) {
    t.vertexEdges[vertexId.at(t.edges[e].a)].push_back(e);
    t.vertexEdges[vertexId.at(t.edges[e].b)].push_back(e);
  }
  return t;
}

}  // namespace detail

/**
 * Identify the shared cells of the complex and return the exact counts.
 * Recomputes from `rc.faces`, so a complex broken by hand (e.g. a face
 * removed) is diagnosed here.  Throws NonManifoldEdge when an edge does not
 * meet exactly two faces.
 */
inline CwCounts cw_euler_characteristic(const RectangleComplex& rc) {
  IncidenceTables t = detail::make_incidence(rc.faces);
  return CwCounts{static_cast<std::int64_t>(t.vertices.size()),
                  static_cast<std::int64_t>(t.edges.size()),
                  static_cast<std::int64_t>(rc.faces.size())};
}

// ---------------------------------------------------------------------------
// Building the complex
// ---------------------------------------------------------------------------

namespace detail {

/**
 * Direction (along `edgeAxis`, as ±1) in which the boundary of `f` traverses
 * an edge lying on the side of `f` named by `sideValue`, when the face is
 * taken with sign +1 (counterclockwise in its plane frame).
 */
inline int induced_direction(const Rectangle& f, int edgeAxis, int sideValue) {
  auto [A, B] = plane_axes(f.plane);
  if (edgeAxis == A) {
    // Edge parallel to the first frame axis: bottom side runs forward.
    return sideValue == f.span[B].lo ? +1 : -1;
  }
  // Edge parallel to the second frame axis: right side runs forward.
  return sideValue == f.span[A].hi ? +1 : -1;
}

inline int sgn(int v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

/**
 * Assign orientation signs: the panel and corner rectangles that contain two
 * consecutive chain segments are seeded with the rotation sense of those
 * segments, the connector rectangles attached to the chain with the opposite
 * sense, and the rest follows by matching induced boundary orientations
 * across shared edges.  Inconsistencies signal a builder bug.
 */
inline void orient_faces(RectangleComplex& rc, const HypercubeDiagram& h) {
  const int n = rc.size;
  Perm yzInv = inverse_perm(h.yzPair);

  std::vector<int> sign(rc.faces.size(), 0);
  std::vector<int> pending;
  auto seed = [&](int face, int s) {
    if (s == 0)
      throw Error(Errc::ValidationError,
                  "degenerate chain corner while orienting the complex");
    if (sign[face] == 0) {
      sign[face] = s;
      pending.push_back(face);
    } else if (sign[face] != s) {
      throw Error(Errc::ValidationError,
                  "chain-derived orientations disagree on face " +
                      std::to_string(face));
    }
  };

  for (int j = 0; j < n; ++j) {
    const Cell4& Z = h.Z[j];
    const Cell4& Y = h.Y[yzInv[j]];
    const Cell4& Wb = h.W[h.zwPair[j]];
    const Cell4& Xk = h.X[h.wxPair[h.zwPair[j]]];
    const Cell4& Yk = h.Y[h.xyPair[h.wxPair[h.zwPair[j]]]];
    const Cell4& Zk = h.Z[h.yzPair[h.xyPair[h.wxPair[h.zwPair[j]]]]];

    int dy = Z[2] - Y[2];     // step into Z along y
    int dz = Wb[3] - Z[3];    // step out of Z along z
    int dw = Xk[0] - Wb[0];   // step out of W along w
    int dx = Yk[1] - Xk[1];   // step out of X along x
    int dy2 = Zk[2] - Yk[2];  // step out of the next Y along y

    // Panel rectangle spanned by the segments into and out of Z.
    seed(rc.panelFace(Z[0], Z[1]), sgn(dy * dz));
    // Row connector attached along the segment out of Z: opposite sense.
    seed(rc.rowConnectorFace(Wb[1], Wb[2]), -sgn(dz * dw));
    // Corner rectangle spanned by the segments out of W and out of X.
    seed(rc.cornerFace(Xk[2], Xk[3]), sgn(dw * dx));
    // Column connector attached along the segment out of X: opposite sense.
    seed(rc.columnConnectorFace(Yk[0], Yk[3]), -sgn(dx * dy2));
  }

  // Propagate across shared edges: adjacent faces must induce opposite
  // directions on the edge between them.
  int components = 0;
  std::size_t cursor = 0;
  auto neighbours = [&](int face) {
    std::vector<std::pair<int, int>> out;  // (other face, forced sign)
    for (const EdgeCell& e : face_edges(rc.faces[face])) {
      // Locate the edge in the tables.
      auto it = std::lower_bound(rc.cells.edges.begin(), rc.cells.edges.end(), e);
      int eid = static_cast<int>(it - rc.cells.edges.begin());
      for (int g : rc.cells.edgeFaces[eid]) {
        if (g == face) continue;
        int axis = e.a[0] != e.b[0] ? 0 : e.a[1] != e.b[1] ? 1
                   : e.a[2] != e.b[2] ? 2 : 3;
        auto side = [&](const Rectangle& f) {
          auto [A, B] = plane_axes(f.plane);
          int transverse = axis == A ? B : A;
          return e.a[transverse];
        };
        int df = induced_direction(rc.faces[face], axis, side(rc.faces[face]));
        int dg = induced_direction(rc.faces[g], axis, side(rc.faces[g]));
        out.emplace_back(g, -sign[face] * df * dg);
      }
    }
    return out;
  };

  std::vector<int> order(pending);
  while (true) {
    while (cursor < order.size()) {
      int face = order[cursor++];
      for (auto [g, forced] : neighbours(face)) {
        if (sign[g] == 0) {
          sign[g] = forced;
          order.push_back(g);
        } else if (sign[g] != forced) {
          throw Error(Errc::ValidationError,
                      "orientation propagation conflict between faces " +
                          std::to_string(face) + " and " + std::to_string(g));
        }
      }
    }
    // Components that contain no chain rectangle (possible for diagrams in
    // block form) get an arbitrary orientation.
    auto next = std::find(sign.begin(), sign.end(), 0);
    if (next == sign.end()) break;
    *next = 1;
    order.push_back(static_cast<int>(next - sign.begin()));
  }

  // Count connected components of the face-adjacency graph.
  std::vector<int> comp(rc.faces.size(), -1);
  for (int f = 0; f < static_cast<int>(rc.faces.size()); ++f) {
    if (comp[f] != -1) continue;
    std::vector<int> stack = {f};
    comp[f] = components;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (auto [g, forced] : neighbours(cur)) {
        (void)forced;
        if (comp[g] == -1) {
          comp[g] = components;
          stack.push_back(g);
        }
      }
    }
    ++components;
  }
  rc.faceComponents = components;

  for (std::size_t f = 0; f < rc.faces.size(); ++f) rc.faces[f].sign = sign[f];
}

}  // namespace detail

/**
 * Build the rectangle complex of a marking-valid diagram.  Total on valid
 * input: every (w,x) panel receives one yz-rectangle whose y-extent is the
 * column's and whose z-extent is the row's; rows are joined by zw-plane
 * connectors at shared y-edge values, columns by xy-plane connectors at
 * shared z-edge values, and each (y,z) value pair carries one wx-plane
 * corner rectangle whose edges agree with the incident connectors.
 */
inline RectangleComplex build_rectangles(const HypercubeDiagram& h);

// ---------------------------------------------------------------------------
// Double point circles
// ---------------------------------------------------------------------------

enum class CircleClass { Horizontal, Vertical };

constexpr std::string_view to_string(CircleClass c) {
  return c == CircleClass::Horizontal ? "horizontal" : "vertical";
}

/**
 * Straight piece of a double point circle: the interior intersection of two
 * rectangles, spanning `box[axis]` and degenerate on the other three axes.
 */
struct IntersectionSegment {
  int axis = 0;
  std::array<Interval, 4> box = {};
  int faceA = -1;
  int faceB = -1;

  Cell4 lowEnd() const {
    return {box[0].lo, box[1].lo, box[2].lo, box[3].lo};
  }
  Cell4 highEnd() const {
    Cell4 p = lowEnd();
    p[axis] = box[axis].hi;
    return p;
  }

  friend bool operator==(const IntersectionSegment&,
                         const IntersectionSegment&) = default;
};

/** Closed chain of intersection segments on one schematic line. */
struct DoublePointCircle {
  CircleClass cls = CircleClass::Horizontal;
  // The two coordinates every segment of the circle shares: for a horizontal
  // circle the panel row x and inner height z; for a vertical circle the
  // panel column w and inner offset y.
  int panelCoord = 0;
  int innerCoord = 0;
  std::vector<IntersectionSegment> segments;  // consecutive pieces share ends
};

/** Closed-set intersection test for two segments (any classes). */
inline bool segments_intersect(const IntersectionSegment& a,
                               const IntersectionSegment& b) {
  for (int axis = 0; axis < 4; ++axis)
    if (meet(a.box[axis], b.box[axis]).empty()) return false;
  return true;
}

/** Whether two circles share a point (only opposite classes ever can). */
inline bool circles_intersect(const DoublePointCircle& a,
                              const DoublePointCircle& b) {
  if (a.cls == b.cls) return false;
  for (const auto& sa : a.segments)
    for (const auto& sb : b.segments)
      if (segments_intersect(sa, sb)) return true;
  return false;
}

std::vector<DoublePointCircle> double_point_circles(const RectangleComplex& rc);

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

enum class TorusClass { EmbeddedLagrangian, Embedded, Immersed };

constexpr std::string_view to_string(TorusClass c) {
  switch (c) {
    case TorusClass::EmbeddedLagrangian: return "embedded-lagrangian";
    case TorusClass::Embedded: return "embedded";
    case TorusClass::Immersed: return "immersed";
  }
  return "??";
}

/** Everything the classification pipeline produces, for reports. */
struct TorusReport {
  CwCounts counts;
  int surfaceComponents = 0;
  std::vector<DoublePointCircle> circles;
  TorusClass torusClass = TorusClass::EmbeddedLagrangian;
};

TorusReport torus_report(const HypercubeDiagram& h);
TorusClass classify_torus(const HypercubeDiagram& h);

// ---------------------------------------------------------------------------
// Implementation
// ---------------------------------------------------------------------------

inline RectangleComplex build_rectangles(const HypercubeDiagram& h) {
  HypercubeDiagram v = h;
  const int n = h.size;
  if (static_cast<int>(v.wxPair.size()) != n)
    v = validate_hypercube(h.size, h.W, h.X, h.Y, h.Z);

  RectangleComplex rc;
  rc.size = n;
  rc.columnYSpan.assign(n, {});
  rc.rowZSpan.assign(n, {});
  Perm yzInv = inverse_perm(v.yzPair);

  for (int j = 0; j < n; ++j) {
    const Cell4& Z = v.Z[j];
    const Cell4& Y = v.Y[yzInv[j]];
    const Cell4& Wb = v.W[v.zwPair[j]];
    rc.columnYSpan[Z[0]] = Interval::span(Y[2], Z[2]);
    rc.rowZSpan[Z[1]] = Interval::span(Z[3], Wb[3]);
  }

  auto pairUp = [n](const std::vector<Interval>& spans, const char* what) {
    std::vector<std::vector<int>> at(n);
    for (int i = 0; i < n; ++i) {
      at[spans[i].lo].push_back(i);
      at[spans[i].hi].push_back(i);
    }
    std::vector<std::array<int, 2>> pairs(n);
    for (int value = 0; value < n; ++value) {
      if (at[value].size() != 2)
        throw Error(Errc::ValidationError,
                    std::string(what) + "-extent endpoints at level " +
                        std::to_string(value) + " occur " +
                        std::to_string(at[value].size()) +
                        " times; expected exactly 2");
      pairs[value] = {std::min(at[value][0], at[value][1]),
                      std::max(at[value][0], at[value][1])};
    }
    return pairs;
  };
  rc.columnsPairingY = pairUp(rc.columnYSpan, "column y");
  rc.rowsPairingZ = pairUp(rc.rowZSpan, "row z");

  rc.faces.reserve(4 * n * n);
  for (int w = 0; w < n; ++w)
    for (int x = 0; x < n; ++x)
      rc.faces.push_back({RectPlane::YZ,
                          {Interval::point(w), Interval::point(x),
                           rc.columnYSpan[w], rc.rowZSpan[x]},
                          0});
  for (int x = 0; x < n; ++x)
    for (int c = 0; c < n; ++c) {
      auto [w1, w2] = rc.columnsPairingY[c];
      rc.faces.push_back({RectPlane::ZW,
                          {Interval{w1, w2}, Interval::point(x),
                           Interval::point(c), rc.rowZSpan[x]},
                          0});
    }
  for (int w = 0; w < n; ++w)
    for (int d = 0; d < n; ++d) {
      auto [x1, x2] = rc.rowsPairingZ[d];
      rc.faces.push_back({RectPlane::XY,
                          {Interval::point(w), Interval{x1, x2},
                           rc.columnYSpan[w], Interval::point(d)},
                          0});
    }
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d) {
      auto [w1, w2] = rc.columnsPairingY[c];
      auto [x1, x2] = rc.rowsPairingZ[d];
      rc.faces.push_back({RectPlane::WX,
                          {Interval{w1, w2}, Interval{x1, x2},
                           Interval::point(c), Interval::point(d)},
                          0});
    }

  rc.cells = detail::make_incidence(rc.faces);
  detail::orient_faces(rc, v);
  return rc;
}

inline std::vector<DoublePointCircle> double_point_circles(
    const RectangleComplex& rc) {
  const int faceCount = static_cast<int>(rc.faces.size());
  std::vector<IntersectionSegment> segments;

  for (int f = 0; f < faceCount; ++f) {
    for (int g = f + 1; g < faceCount; ++g) {
      const Rectangle& F = rc.faces[f];
      const Rectangle& G = rc.faces[g];
      std::array<Interval, 4> box;
      bool disjoint = false;
      for (int axis = 0; axis < 4 && !disjoint; ++axis) {
        box[axis] = meet(F.span[axis], G.span[axis]);
        disjoint = box[axis].empty();
      }
      if (disjoint) continue;
      int spanAxis = -1;
      int dims = 0;
      for (int axis = 0; axis < 4; ++axis)
        if (!box[axis].degenerate()) {
          spanAxis = axis;
          ++dims;
        }
      if (dims == 0) continue;  // corner/point contact, handled via circles
      if (dims != 1)
        throw Error(Errc::ValidationError,
                    "coplanar rectangles overlap in a region");

      auto crossesInterior = [&](const Rectangle& R) {
        auto [A, B] = plane_axes(R.plane);
        int transverse = spanAxis == A ? B : A;
        return R.span[transverse].strictlyContains(box[transverse].lo);
      };
      bool strictF = crossesInterior(F);
      bool strictG = crossesInterior(G);
      if (!strictF && !strictG) continue;  // glued along a shared edge
      if (strictF != strictG)
        throw Error(Errc::UnclassifiableCircle,
                    "rectangle intersection runs along an edge");
      segments.push_back({spanAxis, box, f, g});
    }
  }

  // Group the segments by the schematic line they draw on: pieces parallel
  // to the w- or y-axis keep (x, z) constant (horizontal lines), pieces
  // parallel to the x- or z-axis keep (w, y) constant (vertical lines).
  std::map<std::array<int, 3>, std::vector<IntersectionSegment>> groups;
  for (const auto& s : segments) {
    bool horizontal = s.axis == 0 || s.axis == 2;
    if (!horizontal && s.axis != 1 && s.axis != 3)
      throw Error(Errc::UnclassifiableCircle, "segment on an unexpected axis");
    std::array<int, 3> key = horizontal
                                 ? std::array<int, 3>{0, s.box[1].lo, s.box[3].lo}
                                 : std::array<int, 3>{1, s.box[0].lo, s.box[2].lo};
    groups[key].push_back(s);
  }

  std::vector<DoublePointCircle> circles;
  for (auto& [key, pieces] : groups) {
    CircleClass cls = key[0] == 0 ? CircleClass::Horizontal : CircleClass::Vertical;
    // Chain the pieces end-to-end: every endpoint must be shared by exactly
    // two pieces for the union to close up into circles.
    std::map<Cell4, std::vector<int>> atPoint;
    for (int i = 0; i < static_cast<int>(pieces.size()); ++i) {
      atPoint[pieces[i].lowEnd()].push_back(i);
      atPoint[pieces[i].highEnd()].push_back(i);
    }
    for (const auto& [point, incident] : atPoint)
      if (incident.size() != 2)
        throw Error(Errc::UnclassifiableCircle,
                    "double point pieces do not close into circles: an end "
                    "meets " + std::to_string(incident.size()) + " pieces");

    std::vector<bool> used(pieces.size(), false);
    for (int start = 0; start < static_cast<int>(pieces.size()); ++start) {
      if (used[start]) continue;
      DoublePointCircle circle;
      circle.cls = cls;
      circle.panelCoord = key[1];
      circle.innerCoord = key[2];
      int cur = start;
      Cell4 from = pieces[start].lowEnd();
      Cell4 at = pieces[start].highEnd();
      while (true) {
        used[cur] = true;
        circle.segments.push_back(pieces[cur]);
        const auto& incident = atPoint.at(at);
        int next = incident[0] == cur ? incident[1] : incident[0];
        if (used[next]) break;
        Cell4 nextEnd = pieces[next].lowEnd() == at ? pieces[next].highEnd()
                                                    : pieces[next].lowEnd();
        cur = next;
        at = nextEnd;
      }
      if (at != from)
        throw Error(Errc::UnclassifiableCircle,
                    "double point chain ended without closing");
      circles.push_back(std::move(circle));
    }
  }
  return circles;
}

inline TorusReport torus_report(const HypercubeDiagram& h) {
  RectangleComplex rc = build_rectangles(h);
  TorusReport report;
  report.counts = cw_euler_characteristic(rc);
  report.surfaceComponents = rc.faceComponents;
  report.circles = double_point_circles(rc);
  bool crossing = false;
  for (std::size_t i = 0; i < report.circles.size() && !crossing; ++i)
    for (std::size_t j = i + 1; j < report.circles.size() && !crossing; ++j)
      crossing = circles_intersect(report.circles[i], report.circles[j]);
  report.torusClass = report.circles.empty() ? TorusClass::EmbeddedLagrangian
                      : crossing             ? TorusClass::Immersed
                                             : TorusClass::Embedded;
  return report;
}

inline TorusClass classify_torus(const HypercubeDiagram& h) {
  return torus_report(h).torusClass;
}

// ---------------------------------------------------------------------------
// Lagrangian smoothing patches
// ---------------------------------------------------------------------------

enum class PatchKind { Edge, Vertex };

/**
 * Quarter-pipe replacing the ε-neighbourhood of an edge where a wx-plane
 * rectangle meets a zw-plane rectangle along the w-axis (both through the
 * origin): E(s,t) = (s, ε−ε·cos(t/ε), 0, ε−ε·sin(t/ε)) with t ∈ [0, επ/2].
 */
inline std::array<double, 4> edge_patch_point(double epsilon, double s,
                                              double t) {
  return {s, epsilon - epsilon * std::cos(t / epsilon), 0.0,
          epsilon - epsilon * std::sin(t / epsilon)};
}

/** Tangent frame of the edge patch at parameter t (independent of s). */
inline std::array<std::array<double, 4>, 2> edge_patch_frame(double epsilon,
                                                             double t) {
  return {{{1.0, 0.0, 0.0, 0.0},
           {0.0, std::sin(t / epsilon), 0.0, -std::cos(t / epsilon)}}};
}

/**
 * Corner cap replacing the ε-neighbourhood of a vertex where four
 * rectangles meet: V(s,t) = (ε−ε·cos(s/ε), ε−ε·cos(t/ε), ε−ε·sin(s/ε),
 * ε−ε·sin(t/ε)) on [0, επ/2]².
 */
inline std::array<double, 4> vertex_patch_point(double epsilon, double s,
                                                double t) {
  return {epsilon - epsilon * std::cos(s / epsilon),
          epsilon - epsilon * std::cos(t / epsilon),
          epsilon - epsilon * std::sin(s / epsilon),
          epsilon - epsilon * std::sin(t / epsilon)};
}

/** Tangent frame of the vertex patch at parameters (s, t). */
inline std::array<std::array<double, 4>, 2> vertex_patch_frame(double epsilon,
                                                               double s,
                                                               double t) {
  return {{{std::sin(s / epsilon), 0.0, -std::cos(s / epsilon), 0.0},
           {0.0, std::sin(t / epsilon), 0.0, -std::cos(t / epsilon)}}};
}

/** The symplectic form dw∧dy + dz∧dx evaluated on a pair of 4-vectors. */
inline double symplectic_area(const std::array<double, 4>& u,
                              const std::array<double, 4>& v) {
  return u[0] * v[2] - u[2] * v[0] + u[3] * v[1] - u[1] * v[3];
}

/**
 * Maximum |dw∧dy + dz∧dx| over the tangent planes of `sampleCount` parameter
 * samples of the requested smoothing patch.  The patches are Lagrangian, so
 * the result is zero up to rounding.
 */
inline double lagrangian_patch_residual(PatchKind kind, double epsilon,
                                        int sampleCount) {
  int perAxis = std::max(
      2, static_cast<int>(std::lround(std::ceil(std::sqrt(
             static_cast<double>(std::max(1, sampleCount)))))));
  double worst = 0.0;
  const double tMax = epsilon * 3.14159265358979323846 / 2.0;
  for (int i = 0; i < perAxis; ++i) {
    double a = static_cast<double>(i) / (perAxis - 1);
    for (int j = 0; j < perAxis; ++j) {
      double b = static_cast<double>(j) / (perAxis - 1);
      std::array<std::array<double, 4>, 2> frame;
      if (kind == PatchKind::Edge) {
        // s runs along the straight edge direction; the form does not
        // depend on it, but sample the full stated domain anyway.
        frame = edge_patch_frame(epsilon, b * tMax);
      } else {
        frame = vertex_patch_frame(epsilon, a * tMax, b * tMax);
      }
      worst = std::max(worst, std::abs(symplectic_area(frame[0], frame[1])));
    }
  }
  return worst;
}

/**
 * Maximum coordinate distance between the vertex patch boundary at
 * s = επ/2 and the edge patch boundary at s = ε over `sampleCount` shared
 * parameter values of t: the two replacements must agree where they meet.
 */
inline double patch_boundary_mismatch(double epsilon, int sampleCount) {
  int steps = std::max(2, sampleCount);
  const double tMax = epsilon * 3.14159265358979323846 / 2.0;
  double worst = 0.0;
  for (int i = 0; i < steps; ++i) {
    double t = tMax * static_cast<double>(i) / (steps - 1);
    auto v = vertex_patch_point(epsilon, tMax, t);
    auto e = edge_patch_point(epsilon, epsilon, t);
    for (int axis = 0; axis < 4; ++axis)
      worst = std::max(worst, std::abs(v[axis] - e[axis]));
  }
  return worst;
}

}  // namespace hyperkube
