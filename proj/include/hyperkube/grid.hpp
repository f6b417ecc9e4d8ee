#pragma once

// Oriented grid diagrams: an n×n array with exactly one X and one Y marking
// per row and per column. Markings live in integer cells; the encoded link
// runs through the half-integer cell centers. Segments join X→Y horizontally
// (first axis) and Y→X vertically (second axis); at a crossing the segment
// parallel to the second axis of `axisOrder` passes over.

#include <array>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "hyperkube/errors.hpp"
#include "hyperkube/permutation.hpp"

namespace hyperkube {

/** Which axis plays the role of "second" (its segments overcross). */
enum class AxisOrder { Standard, Reversed };

inline std::string to_string(AxisOrder o) {
  return o == AxisOrder::Standard ? "xy" : "yx";
}

struct GridDiagram {
  int size = 0;
  Perm xCol;  // xCol[r] = column of the X marking in row r
  Perm yCol;  // yCol[r] = column of the Y marking in row r
  AxisOrder axisOrder = AxisOrder::Standard;

  friend bool operator==(const GridDiagram&, const GridDiagram&) = default;
};

struct LinkComponents {
  // Rows visited by each closed loop, in traversal order: the loop passes
  // X(row) → Y(row) → X(next row) → … and closes up.
  std::vector<std::vector<int>> components;
  std::vector<int> markingCount;    // n_i = number of X markings on component i
  std::vector<int> componentOfRow;  // row → component index

  int count() const { return static_cast<int>(components.size()); }
};

struct Crossing {
  int column = 0;  // cell column of the vertical strand
  int row = 0;     // cell row of the horizontal strand
  char overAxis = 'y';  // 'y': vertical strand on top; 'x': horizontal
  int sign = 0;         // right-hand convention from the two orientations

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/** Validates the row/column/shared-cell conditions and returns the diagram. */
inline GridDiagram validate_grid(int size, Perm xCol, Perm yCol,
                                 AxisOrder axisOrder = AxisOrder::Standard) {
  if (size <= 0) throw Error(Errc::ParseError, "size must be positive");
  if (static_cast<int>(xCol.size()) != size ||
      static_cast<int>(yCol.size()) != size)
    throw Error(Errc::ParseError, "marking arrays must have length size");
  for (int r = 0; r < size; ++r) {
    if (xCol[r] < 0 || xCol[r] >= size || yCol[r] < 0 || yCol[r] >= size)
      throw Error(Errc::ParseError,
                  "column out of range in row " + std::to_string(r));
  }
  for (const auto* fam : {&xCol, &yCol}) {
    std::vector<int> seen(static_cast<size_t>(size), -1);
    for (int r = 0; r < size; ++r) {
      int c = (*fam)[static_cast<size_t>(r)];
      if (seen[c] >= 0)
        throw Error(Errc::DuplicateInColumn,
                    std::string(fam == &xCol ? "X" : "Y") +
                        " markings of rows " + std::to_string(seen[c]) + " and " +
                        std::to_string(r) + " share column " + std::to_string(c));
      seen[c] = r;
    }
  }
  for (int r = 0; r < size; ++r) {
    if (xCol[r] == yCol[r])
      throw Error(Errc::SharedCell, "row " + std::to_string(r) +
                                        " has X and Y in cell column " +
                                        std::to_string(xCol[r]));
  }
  return GridDiagram{size, std::move(xCol), std::move(yCol), axisOrder};
}

/**
 * Builds a grid from explicit marking points (col,row), as produced by the
 * 3D/4D projections. Detects row violations that the array form cannot
 * express.
 */
inline GridDiagram make_grid_from_points(
    int size, const std::vector<std::array<int, 2>>& xPts,
    const std::vector<std::array<int, 2>>& yPts,
    AxisOrder axisOrder = AxisOrder::Standard) {
  if (static_cast<int>(xPts.size()) != size ||
      static_cast<int>(yPts.size()) != size)
    throw Error(Errc::ParseError, "need exactly size markings per family");
  Perm xCol(static_cast<size_t>(size), -1), yCol(static_cast<size_t>(size), -1);
  auto place = [&](const std::vector<std::array<int, 2>>& pts, Perm& cols,
                   const char* fam) {
    for (const auto& p : pts) {
      int c = p[0], r = p[1];
      if (c < 0 || c >= size || r < 0 || r >= size)
        throw Error(Errc::ParseError, std::string(fam) + " marking out of range");
      if (cols[static_cast<size_t>(r)] >= 0)
        throw Error(Errc::DuplicateInRow, std::string(fam) +
                                              " markings share row " +
                                              std::to_string(r));
      cols[static_cast<size_t>(r)] = c;
    }
  };
  place(xPts, xCol, "X");
  place(yPts, yCol, "Y");
  return validate_grid(size, std::move(xCol), std::move(yCol), axisOrder);
}

/** Partitions the markings into closed loops (cycles of xCol⁻¹∘yCol on rows). */
inline LinkComponents trace_components(const GridDiagram& g) {
  // Row r's Y sits in column yCol[r]; the vertical segment leads to the X in
  // that column, i.e. to row xCol⁻¹(yCol[r]).
  Perm next = compose_perm(inverse_perm(g.xCol), g.yCol);
  LinkComponents out;
  out.components = perm_cycles(next);
  out.componentOfRow.assign(static_cast<size_t>(g.size), -1);
  for (size_t i = 0; i < out.components.size(); ++i) {
    out.markingCount.push_back(static_cast<int>(out.components[i].size()));
    for (int r : out.components[i]) out.componentOfRow[static_cast<size_t>(r)] = static_cast<int>(i);
  }
  return out;
}

/** All transverse double points of the segment arrangement. */
inline std::vector<Crossing> resolve_crossings(const GridDiagram& g) {
  std::vector<Crossing> out;
  Perm xRow = inverse_perm(g.xCol);  // column → row of its X
  Perm yRow = inverse_perm(g.yCol);
  for (int r = 0; r < g.size; ++r) {
    int hLo = std::min(g.xCol[r], g.yCol[r]);
    int hHi = std::max(g.xCol[r], g.yCol[r]);
    int hDir = g.yCol[r] > g.xCol[r] ? 1 : -1;  // X → Y travel direction
    for (int c = hLo + 1; c < hHi; ++c) {
      int vLo = std::min(xRow[c], yRow[c]);
      int vHi = std::max(xRow[c], yRow[c]);
      if (vLo < r && r < vHi) {
        int vDir = xRow[c] > yRow[c] ? 1 : -1;  // Y → X travel direction
        // Right-hand rule: sign of det[over under] with 2D direction vectors.
        int sign;
        char over;
        if (g.axisOrder == AxisOrder::Standard) {
          over = 'y';  // vertical strand (0, vDir) over horizontal (hDir, 0)
          sign = -vDir * hDir;
        } else {
          over = 'x';
          sign = hDir * vDir;
        }
        out.push_back(Crossing{c, r, over, sign});
      }
    }
  }
  return out;
}

/** Half the signed count of crossings between two distinct components. */
inline int linking_number(const GridDiagram& g, int i, int j) {
  LinkComponents lc = trace_components(g);
  if (i < 0 || j < 0 || i >= lc.count() || j >= lc.count() || i == j)
    throw Error(Errc::BadComponentIndex,
                "need two distinct components, got (" + std::to_string(i) +
                    "," + std::to_string(j) + ") of " +
                    std::to_string(lc.count()));
  Perm xRow = inverse_perm(g.xCol);
  int total = 0;
  for (const Crossing& cr : resolve_crossings(g)) {
    int horizComp = lc.componentOfRow[static_cast<size_t>(cr.row)];
    int vertComp = lc.componentOfRow[static_cast<size_t>(xRow[cr.column])];
    if ((horizComp == i && vertComp == j) || (horizComp == j && vertComp == i))
      total += cr.sign;
  }
  if (total % 2 != 0)
    throw Error(Errc::ValidationError, "inter-component crossing sum is odd");
  return total / 2;
}

/**
 * Cyclic translation by (dRow, dCol): wraps rows and columns around the
 * grid. Expressible as a sequence of the elementary grid moves, so the link
 * type is unchanged.
 */
inline GridDiagram grid_translate(const GridDiagram& g, int dRow, int dCol) {
  const int n = g.size;
  auto wrap = [&](int v) { return ((v % n) + n) % n; };
  GridDiagram t = g;
  for (int r = 0; r < n; ++r) {
    t.xCol[static_cast<size_t>(wrap(r + dRow))] =
        wrap(g.xCol[static_cast<size_t>(r)] + dCol);
    t.yCol[static_cast<size_t>(wrap(r + dRow))] =
        wrap(g.yCol[static_cast<size_t>(r)] + dCol);
  }
  return t;
}

/** Same markings, opposite over-strand rule (the mirror link). */
inline GridDiagram mirror(const GridDiagram& g) {
  GridDiagram m = g;
  m.axisOrder = g.axisOrder == AxisOrder::Standard ? AxisOrder::Reversed
                                                   : AxisOrder::Standard;
  return m;
}

/** Which end of the row segment the stabilizing column is inserted next to. */
enum class StabilizeCorner { NearX, NearY };

/**
 * Row stabilization: splits row `rowIndex` and inserts a new column next to
 * the chosen marking, adding a unit corner that does not change the link.
 * Convention: the old X keeps the lower row, the old Y moves to the upper
 * row; the new X sits above the new Y in the inserted column.
 */
inline GridDiagram grid_stabilize(const GridDiagram& g, int rowIndex,
                                  StabilizeCorner corner) {
  if (rowIndex < 0 || rowIndex >= g.size)
    throw Error(Errc::InvalidRow, "row " + std::to_string(rowIndex) +
                                      " outside grid of size " +
                                      std::to_string(g.size));
  const int r = rowIndex;
  const int cx = g.xCol[r], cy = g.yCol[r];
  // The new column lands strictly between the segment's endpoints, adjacent
  // to the chosen marking.
  int cNew;
  if (corner == StabilizeCorner::NearX)
    cNew = cx < cy ? cx + 1 : cx;
  else
    cNew = cy < cx ? cy + 1 : cy;
  auto shiftCol = [cNew](int c) { return c >= cNew ? c + 1 : c; };

  const int n1 = g.size + 1;
  Perm xCol(static_cast<size_t>(n1)), yCol(static_cast<size_t>(n1));
  for (int s = 0; s < g.size; ++s) {
    int sNew = s > r ? s + 1 : s;
    if (s == r) continue;
    xCol[sNew] = shiftCol(g.xCol[s]);
    yCol[sNew] = shiftCol(g.yCol[s]);
  }
  xCol[r] = shiftCol(cx);  // old X keeps the lower half of the split row
  yCol[r] = cNew;          // new Y beside it
  xCol[r + 1] = cNew;      // new X above the new Y
  yCol[r + 1] = shiftCol(cy);  // old Y moves to the upper half
  return validate_grid(n1, std::move(xCol), std::move(yCol), g.axisOrder);
}

/**
 * A destabilizable corner: a unit segment whose removal (plus merging the
 * split line) undoes a stabilization. `vertical` names the unit segment's
 * direction: a vertical pattern is a column whose X and Y sit in adjacent
 * rows; a horizontal pattern is a row whose X and Y sit in adjacent columns.
 */
struct DestabilizePattern {
  bool vertical = true;
  int index = 0;  // column index (vertical) or row index (horizontal)

  friend bool operator==(const DestabilizePattern&,
                         const DestabilizePattern&) = default;
};

inline std::vector<DestabilizePattern> destabilize_candidates(
    const GridDiagram& g) {
  std::vector<DestabilizePattern> out;
  if (g.size <= 1) return out;
  Perm xRow = inverse_perm(g.xCol), yRow = inverse_perm(g.yCol);
  // A corner that closes a 2×2 component is excluded: removing it would erase
  // that component instead of undoing a stabilization.
  for (int c = 0; c < g.size; ++c)
    if (std::abs(xRow[c] - yRow[c]) == 1 &&
        g.xCol[yRow[c]] != g.yCol[xRow[c]])
      out.push_back(DestabilizePattern{true, c});
  for (int r = 0; r < g.size; ++r)
    if (std::abs(g.xCol[r] - g.yCol[r]) == 1 &&
        xRow[g.yCol[r]] != yRow[g.xCol[r]])
      out.push_back(DestabilizePattern{false, r});
  return out;
}

/** Removes a unit corner; exact inverse of a stabilization. */
inline GridDiagram grid_destabilize(const GridDiagram& g,
                                    DestabilizePattern p) {
  if (g.size <= 1)
    throw Error(Errc::InvalidRow, "cannot destabilize a size-1 grid");
  Perm xRow = inverse_perm(g.xCol), yRow = inverse_perm(g.yCol);
  const int n1 = g.size - 1;
  Perm xCol(static_cast<size_t>(n1)), yCol(static_cast<size_t>(n1));
  if (p.vertical) {
    const int c = p.index;
    if (c < 0 || c >= g.size || std::abs(xRow[c] - yRow[c]) != 1)
      throw Error(Errc::InvalidRow,
                  "column " + std::to_string(c) + " is not a unit corner");
    if (g.xCol[yRow[c]] == g.yCol[xRow[c]])
      throw Error(Errc::InvalidRow, "corner at column " + std::to_string(c) +
                                        " closes a 2x2 component");
    const int rX = xRow[c], rY = yRow[c];
    const int rLo = std::min(rX, rY);
    auto mapRow = [&](int r) { return r > rLo + 1 ? r - 1 : r; };
    auto mapCol = [&](int cc) { return cc > c ? cc - 1 : cc; };
    for (int s = 0; s < g.size; ++s) {
      if (s == rX || s == rY) continue;
      xCol[mapRow(s)] = mapCol(g.xCol[s]);
      yCol[mapRow(s)] = mapCol(g.yCol[s]);
    }
    // The merged row keeps the X of the row that lost only its Y, and vice
    // versa.
    xCol[rLo] = mapCol(g.xCol[rY]);
    yCol[rLo] = mapCol(g.yCol[rX]);
  } else {
    const int r = p.index;
    if (r < 0 || r >= g.size || std::abs(g.xCol[r] - g.yCol[r]) != 1)
      throw Error(Errc::InvalidRow,
                  "row " + std::to_string(r) + " is not a unit corner");
    if (xRow[g.yCol[r]] == yRow[g.xCol[r]])
      throw Error(Errc::InvalidRow, "corner at row " + std::to_string(r) +
                                        " closes a 2x2 component");
    const int cX = g.xCol[r], cY = g.yCol[r];
    const int cLo = std::min(cX, cY);
    auto mapRow = [&](int s) { return s > r ? s - 1 : s; };
    auto mapCol = [&](int cc) { return cc > cLo + 1 ? cc - 1 : cc; };
    std::vector<int> xColByRow(static_cast<size_t>(g.size), -1),
        yColByRow(static_cast<size_t>(g.size), -1);
    for (int s = 0; s < g.size; ++s) {
      if (s == r) continue;
      int cxs = g.xCol[s], cys = g.yCol[s];
      // The deleted row's markings vanish; the two merged columns each lose
      // one marking, and the survivors land in the merged column cLo.
      xColByRow[s] = mapCol(cxs == cX || cxs == cY ? cLo : cxs);
      yColByRow[s] = mapCol(cys == cX || cys == cY ? cLo : cys);
    }
    for (int s = 0; s < g.size; ++s) {
      if (s == r) continue;
      xCol[mapRow(s)] = xColByRow[s];
      yCol[mapRow(s)] = yColByRow[s];
    }
  }
  return validate_grid(n1, std::move(xCol), std::move(yCol), g.axisOrder);
}

enum class GridAxis { Columns, Rows };

/**
 * Interchange of adjacent rows (or columns). Legal when the two segments'
 * projections onto the shared axis are disjoint, nested, or touch in a
 * single point; strictly interleaved extents are rejected.
 */
inline GridDiagram grid_commute(const GridDiagram& g, int index,
                                GridAxis axis) {
  if (index < 0 || index + 1 >= g.size)
    throw Error(Errc::InvalidRow, "no adjacent pair at index " +
                                      std::to_string(index) + " in size " +
                                      std::to_string(g.size));
  int l1, r1, l2, r2;
  if (axis == GridAxis::Rows) {
    l1 = std::min(g.xCol[index], g.yCol[index]);
    r1 = std::max(g.xCol[index], g.yCol[index]);
    l2 = std::min(g.xCol[index + 1], g.yCol[index + 1]);
    r2 = std::max(g.xCol[index + 1], g.yCol[index + 1]);
  } else {
    Perm xRow = inverse_perm(g.xCol), yRow = inverse_perm(g.yCol);
    l1 = std::min(xRow[index], yRow[index]);
    r1 = std::max(xRow[index], yRow[index]);
    l2 = std::min(xRow[index + 1], yRow[index + 1]);
    r2 = std::max(xRow[index + 1], yRow[index + 1]);
  }
  const bool interleaved = (l1 < l2 && l2 < r1 && r1 < r2) ||
                           (l2 < l1 && l1 < r2 && r2 < r1);
  if (interleaved)
    throw Error(Errc::IllegalCommutation,
                "extents [" + std::to_string(l1) + "," + std::to_string(r1) +
                    "] and [" + std::to_string(l2) + "," + std::to_string(r2) +
                    "] strictly interleave");
  GridDiagram out = g;
  if (axis == GridAxis::Rows) {
    std::swap(out.xCol[index], out.xCol[index + 1]);
    std::swap(out.yCol[index], out.yCol[index + 1]);
  } else {
    for (int r = 0; r < g.size; ++r) {
      auto flip = [&](int c) {
        if (c == index) return index + 1;
        if (c == index + 1) return index;
        return c;
      };
      out.xCol[r] = flip(out.xCol[r]);
      out.yCol[r] = flip(out.yCol[r]);
    }
  }
  return out;
}

/**
 * Deterministic ASCII picture. Rows print top-down from row n−1; markings are
 * X/Y; segments are `-` and `|`; at a crossing the over-strand's glyph wins.
 */
inline std::string render_grid_ascii(const GridDiagram& g) {
  const int n = g.size;
  const int w = 2 * n - 1, h = 2 * n - 1;
  std::vector<std::string> canvas(static_cast<size_t>(h),
                                  std::string(static_cast<size_t>(w), ' '));
  auto cx = [](int col) { return 2 * col; };
  auto cy = [n](int row) { return 2 * (n - 1 - row); };
  for (int r = 0; r < n; ++r) {
    int lo = std::min(g.xCol[r], g.yCol[r]), hi = std::max(g.xCol[r], g.yCol[r]);
    for (int x = cx(lo) + 1; x < cx(hi); ++x) canvas[cy(r)][x] = '-';
  }
  Perm xRow = inverse_perm(g.xCol), yRow = inverse_perm(g.yCol);
  for (int c = 0; c < n; ++c) {
    int lo = std::min(xRow[c], yRow[c]), hi = std::max(xRow[c], yRow[c]);
    for (int r2 = cy(hi) + 1; r2 < cy(lo); ++r2) {
      char& ch = canvas[r2][cx(c)];
      if (ch == '-')  // transverse crossing: over-strand glyph wins
        ch = g.axisOrder == AxisOrder::Standard ? '|' : '-';
      else
        ch = '|';
    }
  }
  for (int r = 0; r < n; ++r) {
    canvas[cy(r)][cx(g.xCol[r])] = 'X';
    canvas[cy(r)][cx(g.yCol[r])] = 'Y';
  }
  std::string out;
  for (auto& line : canvas) {
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace hyperkube
