#pragma once

// The hypercube moves: stabilization at a W (or, by swap conjugation, at a
// Y) marking, destabilization of a unit chain, commutation of adjacent
// levels on one axis, the swap SW(w,x,y,z) = (y,z,w,x), and the component
// swap on split block-form diagrams. Legality is decided by validating the
// moved diagram.

#include <algorithm>
#include <string>
#include <vector>

#include "hyperkube/errors.hpp"
#include "hyperkube/hypercube.hpp"

namespace hyperkube {

namespace detail {

inline int axis_index(char axis) {
  switch (axis) {
    case 'w': return 0;
    case 'x': return 1;
    case 'y': return 2;
    case 'z': return 3;
  }
  throw Error(Errc::BadIndex, std::string("no axis named '") + axis + "'");
}

inline HypercubeDiagram revalidate(HypercubeDiagram h) {
  return validate_hypercube(h.size, std::move(h.W), std::move(h.X),
                            std::move(h.Y), std::move(h.Z));
}

}  // namespace detail

/** Coordinates permuted by (w,x,y,z) → (y,z,w,x). */
inline Cell4 swap_cell(const Cell4& p) { return {p[2], p[3], p[0], p[1]}; }

/**
 * The swap move: permute coordinates by SW and relabel W↔Y, X↔Z. Exchanges
 * the wx and yz grid projections and the xy and zw projections.
 */
inline HypercubeDiagram hyper_swap(const HypercubeDiagram& h) {
  auto mapped = [](const std::vector<Cell4>& fam) {
    std::vector<Cell4> out;
    out.reserve(fam.size());
    for (const auto& p : fam) out.push_back(swap_cell(p));
    return out;
  };
  return detail::revalidate(HypercubeDiagram{
      h.size, mapped(h.Y), mapped(h.Z), mapped(h.W), mapped(h.X), {}, {}, {},
      {}});
}

/**
 * Stabilization at W[index]: inserts one level next to the marking on each
 * axis — on the side each of the four onward chain segments (W→X ∥ w,
 * X→Y ∥ x, Y→Z ∥ y, Z→W ∥ z) points toward — and threads a new unit chain
 * W→X→Y→Z→W through the freed cells, a miniature of that corner. Grows the
 * size by one; every grid projection undergoes a grid stabilization.
 */
inline HypercubeDiagram hyper_stabilize(const HypercubeDiagram& h,
                                        int wIndex) {
  const int n = h.size;
  if (wIndex < 0 || wIndex >= n)
    throw Error(Errc::BadIndex, "no W marking " + std::to_string(wIndex));
  const Cell4 v = h.W[wIndex];
  const int iX = h.wxPair[wIndex];
  const int iY = h.xyPair[iX];
  const int iZ = h.yzPair[iY];
  const int iWb = h.zwPair[iZ];
  // One sign per axis: the direction of the chain segment parallel to it.
  const bool forward[4] = {h.X[iX][0] > v[0], h.Y[iY][1] > v[1],
                           h.Z[iZ][2] > v[2], h.W[iWb][3] > v[3]};
  Cell4 newLevel, stayLevel;  // the freed level and the split-off old level
  for (int axis = 0; axis < 4; ++axis) {
    newLevel[axis] = v[axis] + (forward[axis] ? 1 : 0);
    stayLevel[axis] = v[axis] + (forward[axis] ? 0 : 1);
  }

  HypercubeDiagram out;
  out.size = n + 1;
  out.W = h.W;
  out.X = h.X;
  out.Y = h.Y;
  out.Z = h.Z;
  for (auto* fam : {&out.W, &out.X, &out.Y, &out.Z})
    for (auto& p : *fam)
      for (int axis = 0; axis < 4; ++axis)
        if (p[axis] >= newLevel[axis]) ++p[axis];
  // The chain continuation claims the freed level on every axis it shares
  // with the stabilized marking, so the counts close up again.
  out.X[iX][1] = newLevel[1];
  out.X[iX][2] = newLevel[2];
  out.X[iX][3] = newLevel[3];
  out.Y[iY][2] = newLevel[2];
  out.Y[iY][3] = newLevel[3];
  out.Z[iZ][3] = newLevel[3];
  out.X.push_back({newLevel[0], stayLevel[1], stayLevel[2], stayLevel[3]});
  out.Y.push_back({newLevel[0], newLevel[1], stayLevel[2], stayLevel[3]});
  out.Z.push_back({newLevel[0], newLevel[1], newLevel[2], stayLevel[3]});
  out.W.push_back({newLevel[0], newLevel[1], newLevel[2], newLevel[3]});
  return detail::revalidate(std::move(out));
}

/** Stabilization at Y[index]: the same move conjugated by the swap. */
inline HypercubeDiagram hyper_stabilize_y(const HypercubeDiagram& h,
                                          int yIndex) {
  if (yIndex < 0 || yIndex >= h.size)
    throw Error(Errc::BadIndex, "no Y marking " + std::to_string(yIndex));
  return hyper_swap(hyper_stabilize(hyper_swap(h), yIndex));
}

/**
 * Destabilization: removes the unit chain starting at W[wIndex] (all four
 * outgoing segments of length one) and glues the split levels back
 * together. The exact inverse of hyper_stabilize.
 */
inline HypercubeDiagram hyper_destabilize(const HypercubeDiagram& h,
                                          int wIndex) {
  const int n = h.size;
  if (wIndex < 0 || wIndex >= n)
    throw Error(Errc::BadIndex, "no W marking " + std::to_string(wIndex));
  const int iX = h.wxPair[wIndex];
  const int iY = h.xyPair[iX];
  const int iZ = h.yzPair[iY];
  const int iWb = h.zwPair[iZ];
  const Cell4 cells[5] = {h.W[wIndex], h.X[iX], h.Y[iY], h.Z[iZ], h.W[iWb]};
  for (int step = 0; step < 4; ++step) {
    int delta = 0;
    for (int axis = 0; axis < 4; ++axis)
      delta += std::abs(cells[step + 1][axis] - cells[step][axis]);
    if (delta != 1)
      throw Error(Errc::NoUnitChain,
                  "chain from W " + std::to_string(wIndex) +
                      " is not made of unit segments");
  }
  auto link = trace_hyperlink(h);
  if (link.markingCount[link.componentOfW[wIndex]] <= 2)
    throw Error(Errc::NoUnitChain,
                "removing the chain would erase its whole component");
  Cell4 low = cells[0];
  for (const auto& c : cells)
    for (int axis = 0; axis < 4; ++axis) low[axis] = std::min(low[axis], c[axis]);

  HypercubeDiagram out;
  out.size = n - 1;
  for (int i = 0; i < n; ++i) {
    if (i != iWb) out.W.push_back(h.W[i]);
    if (i != iX) out.X.push_back(h.X[i]);
    if (i != iY) out.Y.push_back(h.Y[i]);
    if (i != iZ) out.Z.push_back(h.Z[i]);
  }
  for (auto* fam : {&out.W, &out.X, &out.Y, &out.Z})
    for (auto& p : *fam)
      for (int axis = 0; axis < 4; ++axis)
        if (p[axis] > low[axis]) --p[axis];
  try {
    return detail::revalidate(std::move(out));
  } catch (const Error& e) {
    throw Error(Errc::NoUnitChain,
                std::string("chain removal does not destabilize: ") +
                    e.what());
  }
}

/**
 * Commutation: exchange the two adjacent levels k, k+1 of one axis. Legal
 * exactly when the exchanged diagram still validates; exactly the two grid
 * projections involving that axis change, each by a grid commutation.
 */
inline HypercubeDiagram hyper_commute(const HypercubeDiagram& h, char axis,
                                      int level) {
  const int a = detail::axis_index(axis);
  if (level < 0 || level + 1 >= h.size)
    throw Error(Errc::BadIndex, "no adjacent pair at level " +
                                    std::to_string(level));
  HypercubeDiagram out = h;
  for (auto* fam : {&out.W, &out.X, &out.Y, &out.Z})
    for (auto& p : *fam) {
      if (p[a] == level)
        p[a] = level + 1;
      else if (p[a] == level + 1)
        p[a] = level;
    }
  try {
    return detail::revalidate(std::move(out));
  } catch (const Error& e) {
    throw Error(Errc::IllegalCommutation,
                std::string("commuting ") + axis + "-levels " +
                    std::to_string(level) + "," + std::to_string(level + 1) +
                    " breaks the diagram: " + e.what());
  }
}

/**
 * Component swap on a split block-form diagram: every marking inside
 * [0,a)⁴ or [a,n)⁴ and all four grid projections split at a. Applies SW to
 * the lower block only.
 */
inline HypercubeDiagram component_swap(const HypercubeDiagram& h, int split) {
  const int n = h.size;
  if (split <= 0 || split >= n)
    throw Error(Errc::NotBlockForm,
                "split " + std::to_string(split) + " leaves an empty block");
  auto blockOf = [&](const Cell4& p) {
    bool lo = true, hi = true;
    for (int c : p) {
      lo = lo && c < split;
      hi = hi && c >= split;
    }
    return lo ? 0 : hi ? 1 : -1;
  };
  for (const auto* fam : {&h.W, &h.X, &h.Y, &h.Z})
    for (const auto& p : *fam)
      if (blockOf(p) < 0)
        throw Error(Errc::NotBlockForm, "a marking straddles the blocks");
  for (auto plane : {HyperPlane::WX, HyperPlane::YZ, HyperPlane::XY,
                     HyperPlane::ZW}) {
    auto g = hyper_project_grid(h, plane);
    for (int r = 0; r < n; ++r)
      for (int col : {g.xCol[r], g.yCol[r]})
        if ((col < split) != (r < split))
          throw Error(Errc::NotBlockForm,
                      "projection " + to_string(plane) +
                          " is not split at " + std::to_string(split));
  }
  HypercubeDiagram out;
  out.size = n;
  struct FamilyMap {
    const std::vector<Cell4>* src;
    std::vector<Cell4>* lowTarget;  // where the swapped low block lands
    std::vector<Cell4>* highTarget;
  };
  const FamilyMap fams[4] = {{&h.W, &out.Y, &out.W},
                             {&h.X, &out.Z, &out.X},
                             {&h.Y, &out.W, &out.Y},
                             {&h.Z, &out.X, &out.Z}};
  for (const auto& fm : fams)
    for (const auto& p : *fm.src) {
      if (blockOf(p) == 0)
        fm.lowTarget->push_back(swap_cell(p));
      else
        fm.highTarget->push_back(p);
    }
  return detail::revalidate(std::move(out));
}

enum class MoveKind { Stabilize, Destabilize, Commute, Swap, ComponentSwap };

struct Move {
  MoveKind kind = MoveKind::Swap;
  char family = 'w';  // Stabilize: 'w' or 'y'
  int index = 0;      // Stabilize / Destabilize marking index
  char axis = 'w';    // Commute
  int level = 0;      // Commute
  int split = 0;      // ComponentSwap

  friend bool operator==(const Move&, const Move&) = default;
};

inline HypercubeDiagram apply_move(const HypercubeDiagram& h, const Move& m) {
  switch (m.kind) {
    case MoveKind::Stabilize:
      if (m.family == 'w') return hyper_stabilize(h, m.index);
      if (m.family == 'y') return hyper_stabilize_y(h, m.index);
      throw Error(Errc::BadIndex,
                  std::string("no stabilization family '") + m.family + "'");
    case MoveKind::Destabilize: return hyper_destabilize(h, m.index);
    case MoveKind::Commute: return hyper_commute(h, m.axis, m.level);
    case MoveKind::Swap: return hyper_swap(h);
    case MoveKind::ComponentSwap: return component_swap(h, m.split);
  }
  throw Error(Errc::BadIndex, "unknown move kind");
}

/** Every move accepted at h, found by trial application, in a fixed order. */
inline std::vector<Move> legal_moves(const HypercubeDiagram& h) {
  std::vector<Move> accepted;
  auto tryMove = [&](Move m) {
    try {
      apply_move(h, m);
      accepted.push_back(m);
    } catch (const Error&) {
    }
  };
  for (char family : {'w', 'y'})
    for (int i = 0; i < h.size; ++i)
      tryMove(Move{MoveKind::Stabilize, family, i, 'w', 0, 0});
  for (int i = 0; i < h.size; ++i)
    tryMove(Move{MoveKind::Destabilize, 'w', i, 'w', 0, 0});
  for (char axis : {'w', 'x', 'y', 'z'})
    for (int level = 0; level + 1 < h.size; ++level)
      tryMove(Move{MoveKind::Commute, 'w', 0, axis, level, 0});
  tryMove(Move{MoveKind::Swap, 'w', 0, 'w', 0, 0});
  for (int split = 1; split < h.size; ++split)
    tryMove(Move{MoveKind::ComponentSwap, 'w', 0, 'w', 0, split});
  return accepted;
}

}  // namespace hyperkube
