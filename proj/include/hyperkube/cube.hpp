#pragma once

// 3-dimensional cube diagrams: X, Y, Z marking families with one of each per
// flat, right-angle conditions per flat, crossing conditions in the three
// planar projections, and projection down to oriented grid diagrams. The
// chain runs X→Y parallel to x, Y→Z parallel to y, Z→X parallel to z.

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "hyperkube/errors.hpp"
#include "hyperkube/grid.hpp"

namespace hyperkube {

using Cell3 = std::array<int, 3>;

struct CubeDiagram {
  int size = 0;
  std::vector<Cell3> X, Y, Z;  // cell coordinates, right-handed x∧y∧z

  friend bool operator==(const CubeDiagram&, const CubeDiagram&) = default;
};

enum class CubePlane { XY, YZ, ZX };

inline std::string to_string(CubePlane p) {
  switch (p) {
    case CubePlane::XY: return "xy";
    case CubePlane::YZ: return "yz";
    case CubePlane::ZX: return "zx";
  }
  return "?";
}

namespace detail {

inline void check_cube_shapes(int size, const std::vector<Cell3>& X,
                              const std::vector<Cell3>& Y,
                              const std::vector<Cell3>& Z) {
  if (size <= 0) throw Error(Errc::ParseError, "size must be positive");
  for (const auto* fam : {&X, &Y, &Z}) {
    if (static_cast<int>(fam->size()) != size)
      throw Error(Errc::ParseError, "each family needs exactly size markings");
    for (const auto& p : *fam)
      for (int c : p)
        if (c < 0 || c >= size)
          throw Error(Errc::ParseError, "marking coordinate out of range");
  }
}

/**
 * Right-angle check in one flat: the three points (2D, in-flat coordinates)
 * must form an axis-parallel right angle whose corner is `vertexIndex`
 * (0 = X, 1 = Y, 2 = Z).
 */
inline void check_flat_angle(const std::array<std::array<int, 2>, 3>& pts,
                             int vertexIndex, const std::string& flatName) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (pts[i] == pts[j])
        throw Error(Errc::RightAngleViolation,
                    flatName + ": two markings share a cell");
  auto isVertex = [&](int v) {
    int a = (v + 1) % 3, b = (v + 2) % 3;
    bool u = (pts[v][0] == pts[a][0] && pts[v][1] == pts[b][1]) ||
             (pts[v][0] == pts[b][0] && pts[v][1] == pts[a][1]);
    return u;
  };
  bool anyVertex = isVertex(0) || isVertex(1) || isVertex(2);
  if (!anyVertex)
    throw Error(Errc::RightAngleViolation,
                flatName + ": markings do not form an axis-parallel angle");
  if (!isVertex(vertexIndex))
    throw Error(Errc::VertexLabelViolation,
                flatName + ": angle vertex is not the required family");
}

}  // namespace detail

/**
 * Checks the marking conditions: one X, one Y, one Z per flat, and the
 * right-angle rule with vertex Z/X/Y in x-/y-/z-flats respectively.
 */
inline CubeDiagram validate_cube_markings(int size, std::vector<Cell3> X,
                                          std::vector<Cell3> Y,
                                          std::vector<Cell3> Z) {
  detail::check_cube_shapes(size, X, Y, Z);
  const char* axisName = "xyz";
  // Per axis and level, locate the single marking of each family.
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<std::array<int, 3>> at(static_cast<size_t>(size),
                                       {-1, -1, -1});  // level → family index
    const std::vector<Cell3>* fams[3] = {&X, &Y, &Z};
    for (int f = 0; f < 3; ++f) {
      for (int i = 0; i < size; ++i) {
        int level = (*fams[f])[i][axis];
        if (at[level][f] >= 0)
          throw Error(Errc::FlatCountViolation,
                      std::string(1, axisName[axis]) + "-flat " +
                          std::to_string(level) + " has two " + "XYZ"[f] +
                          std::string(" markings"));
        at[level][f] = i;
      }
    }
    // Counts are exact (n markings, n flats, no duplicates) — now the angle.
    const int dropped = axis;  // in-flat coordinates are the other two axes
    int u = dropped == 0 ? 1 : 0;
    int v = dropped == 2 ? 1 : 2;
    const int vertexForAxis[3] = {2, 0, 1};  // x-flat→Z, y-flat→X, z-flat→Y
    for (int level = 0; level < size; ++level) {
      std::array<std::array<int, 2>, 3> pts;
      for (int f = 0; f < 3; ++f) {
        const Cell3& p = (*fams[f])[at[level][f]];
        pts[f] = {p[u], p[v]};
      }
      detail::check_flat_angle(pts, vertexForAxis[dropped],
                               std::string(1, axisName[axis]) + "-flat " +
                                   std::to_string(level));
    }
  }
  return CubeDiagram{size, std::move(X), std::move(Y), std::move(Z)};
}

/** Axis-parallel chain segment between two paired markings. */
struct CubeSegment {
  int tail = 0, head = 0;  // indices into the tail/head family vectors
  Cell3 from{}, to{};
};

namespace detail {

/** Pairs tail[i] with the unique head sharing both off-axis coordinates. */
inline std::vector<CubeSegment> pair_segments(const std::vector<Cell3>& tails,
                                              const std::vector<Cell3>& heads,
                                              int axis) {
  int u = axis == 0 ? 1 : 0;
  int v = axis == 2 ? 1 : 2;
  std::vector<CubeSegment> out;
  for (int i = 0; i < static_cast<int>(tails.size()); ++i) {
    int match = -1;
    for (int j = 0; j < static_cast<int>(heads.size()); ++j)
      if (heads[j][u] == tails[i][u] && heads[j][v] == tails[i][v]) {
        if (match >= 0)
          throw Error(Errc::ValidationError, "ambiguous segment pairing");
        match = j;
      }
    if (match < 0)
      throw Error(Errc::ValidationError,
                  "marking has no chain partner (corrupt cube)");
    out.push_back(CubeSegment{i, match, tails[i], heads[match]});
  }
  return out;
}

}  // namespace detail

/** The n segments X→Y (axis 0), Y→Z (axis 1) or Z→X (axis 2). */
inline std::vector<CubeSegment> cube_segments(const CubeDiagram& c, int axis) {
  switch (axis) {
    case 0: return detail::pair_segments(c.X, c.Y, 0);
    case 1: return detail::pair_segments(c.Y, c.Z, 1);
    default: return detail::pair_segments(c.Z, c.X, 2);
  }
}

struct CubeCrossingViolation {
  CubePlane plane;
  int firstSegment = 0;   // index of the first-axis-parallel segment
  int secondSegment = 0;  // index of the second-axis-parallel segment
  std::array<int, 2> cell{};  // planar crossing cell (first, second axis)
};

struct CubeCrossingReport {
  std::vector<CubeCrossingViolation> violations;
  int crossingsChecked = 0;
  bool ok() const { return violations.empty(); }
};

/**
 * Verifies, in the requested planar projections, that at every transverse
 * crossing the segment parallel to the projection's first axis has the
 * smaller dropped coordinate (equivalently: second-axis segments pass over).
 */
inline CubeCrossingReport check_cube_crossings(
    const CubeDiagram& c, const std::vector<CubePlane>& which) {
  CubeCrossingReport report;
  struct PlaneSpec {
    CubePlane plane;
    int a, b, d;  // first axis, second axis, dropped (depth) axis
  };
  const PlaneSpec allPlanes[3] = {{CubePlane::XY, 0, 1, 2},
                                  {CubePlane::YZ, 1, 2, 0},
                                  {CubePlane::ZX, 2, 0, 1}};
  for (const auto& ps : allPlanes) {
    if (std::find(which.begin(), which.end(), ps.plane) == which.end())
      continue;
    auto aSegs = cube_segments(c, ps.a);
    auto bSegs = cube_segments(c, ps.b);
    for (int i = 0; i < static_cast<int>(aSegs.size()); ++i) {
      const auto& h = aSegs[i];
      int hLo = std::min(h.from[ps.a], h.to[ps.a]);
      int hHi = std::max(h.from[ps.a], h.to[ps.a]);
      int hB = h.from[ps.b], hD = h.from[ps.d];
      for (int j = 0; j < static_cast<int>(bSegs.size()); ++j) {
        const auto& v = bSegs[j];
        int vLo = std::min(v.from[ps.b], v.to[ps.b]);
        int vHi = std::max(v.from[ps.b], v.to[ps.b]);
        int vA = v.from[ps.a], vD = v.from[ps.d];
        if (hLo < vA && vA < hHi && vLo < hB && hB < vHi) {
          ++report.crossingsChecked;
          if (hD == vD)
            throw Error(Errc::ValidationError,
                        "depth tie at a transverse crossing (corrupt cube)");
          if (hD > vD)
            report.violations.push_back(
                CubeCrossingViolation{ps.plane, i, j, {vA, hB}});
        }
      }
    }
  }
  return report;
}

/** All three planar projections at once. */
inline CubeCrossingReport check_cube_crossings(const CubeDiagram& c) {
  return check_cube_crossings(
      c, {CubePlane::XY, CubePlane::YZ, CubePlane::ZX});
}

/**
 * Projects to an oriented grid diagram. The pair joined by the dropped-axis
 * segment merges into the grid's X marking; the remaining family becomes the
 * grid's Y marking.
 */
inline GridDiagram cube_project_grid(const CubeDiagram& c, CubePlane plane) {
  std::vector<std::array<int, 2>> xPts, yPts;
  auto take = [](const std::vector<Cell3>& fam, int a, int b) {
    std::vector<std::array<int, 2>> out;
    for (const auto& p : fam) out.push_back({p[a], p[b]});
    return out;
  };
  switch (plane) {
    case CubePlane::XY:  // drop z: Z→X merges into X; cols x, rows y
      xPts = take(c.X, 0, 1);
      yPts = take(c.Y, 0, 1);
      break;
    case CubePlane::YZ:  // drop x: X→Y merges into X; cols y, rows z
      xPts = take(c.X, 1, 2);
      yPts = take(c.Z, 1, 2);
      break;
    case CubePlane::ZX:  // drop y: Y→Z merges into X; cols z, rows x
      xPts = take(c.Z, 2, 0);
      yPts = take(c.X, 2, 0);
      break;
  }
  try {
    return make_grid_from_points(c.size, xPts, yPts, AxisOrder::Standard);
  } catch (const Error& e) {
    throw Error(Errc::ProjectionNotGrid,
                "projection " + to_string(plane) +
                    " is not a grid diagram: " + e.what());
  }
}

/**
 * Rebuilds the unique cube with the given xy- and yz-projections: the grid
 * data of π_xy fixes (x,y) per marking triple, π_yz supplies the z-levels.
 */
inline CubeDiagram cube_from_projections(const GridDiagram& gxy,
                                         const GridDiagram& gyz) {
  if (gxy.size != gyz.size)
    throw Error(Errc::ParseError, "projection sizes differ");
  const int n = gxy.size;
  Perm zOfY_X = inverse_perm(gyz.xCol);  // y → z of the X/Y marking pair
  Perm zOfY_Z = inverse_perm(gyz.yCol);  // y → z of the Z marking
  std::vector<Cell3> X, Y, Z;
  for (int y = 0; y < n; ++y) {
    X.push_back({gxy.xCol[y], y, zOfY_X[y]});
    Y.push_back({gxy.yCol[y], y, zOfY_X[y]});
    Z.push_back({gxy.xCol[y], y, zOfY_Z[y]});
  }
  return validate_cube_markings(n, std::move(X), std::move(Y), std::move(Z));
}

}  // namespace hyperkube
