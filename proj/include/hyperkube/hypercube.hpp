#pragma once

// 4-dimensional hypercube diagrams: W, X, Y, Z marking families with one of
// each per cube, chain segments W→X ∥ w, X→Y ∥ x, Y→Z ∥ y, Z→W ∥ z, and
// crossing conditions imposed on the four planar projections G_wx, G_yz,
// G_xy, G_zw through the two merged 3-dimensional structures C_xyz, C_wxz.

#include <array>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyperkube/cube.hpp"
#include "hyperkube/errors.hpp"
#include "hyperkube/grid.hpp"
#include "hyperkube/permutation.hpp"

namespace hyperkube {

using Cell4 = std::array<int, 4>;

enum class HyperPlane { WX, YZ, XY, ZW };

inline std::string to_string(HyperPlane p) {
  switch (p) {
    case HyperPlane::WX: return "wx";
    case HyperPlane::YZ: return "yz";
    case HyperPlane::XY: return "xy";
    case HyperPlane::ZW: return "zw";
  }
  return "?";
}

struct HypercubeDiagram {
  int size = 0;
  std::vector<Cell4> W, X, Y, Z;  // cell coordinates, one family index each

  // Segment pairing maps, filled in by validation: the chain successor index.
  Perm wxPair;  // W[i] → X[wxPair[i]] parallel to the w-axis
  Perm xyPair;  // X[i] → Y[xyPair[i]] parallel to the x-axis
  Perm yzPair;  // Y[i] → Z[yzPair[i]] parallel to the y-axis
  Perm zwPair;  // Z[i] → W[zwPair[i]] parallel to the z-axis

  friend bool operator==(const HypercubeDiagram& a,
                         const HypercubeDiagram& b) {
    return a.size == b.size && a.W == b.W && a.X == b.X && a.Y == b.Y &&
           a.Z == b.Z;
  }
};

struct Hyperlink {
  std::vector<std::vector<int>> components;  // cycles of W-marking indices
  std::vector<int> markingCount;             // per-component count per family
  std::vector<int> componentOfW;             // W index → component id
  int count() const { return static_cast<int>(components.size()); }
};

namespace detail {

inline void check_hyper_shapes(int size, const std::vector<Cell4>& W,
                               const std::vector<Cell4>& X,
                               const std::vector<Cell4>& Y,
                               const std::vector<Cell4>& Z) {
  if (size <= 0) throw Error(Errc::ParseError, "size must be positive");
  for (const auto* fam : {&W, &X, &Y, &Z}) {
    if (static_cast<int>(fam->size()) != size)
      throw Error(Errc::ParseError, "each family needs exactly size markings");
    for (const auto& p : *fam)
      for (int c : p)
        if (c < 0 || c >= size)
          throw Error(Errc::ParseError, "marking coordinate out of range");
  }
}

/**
 * Pairs each tail marking with the unique head differing only in `axis`.
 * The chain successor along that axis; UnpairedMarking when absent/ambiguous.
 */
inline Perm pair_hyper_segments(const std::vector<Cell4>& tails,
                                const std::vector<Cell4>& heads, int axis,
                                const char* what) {
  Perm out(tails.size(), -1);
  for (int i = 0; i < static_cast<int>(tails.size()); ++i) {
    for (int j = 0; j < static_cast<int>(heads.size()); ++j) {
      bool match = true;
      for (int c = 0; c < 4; ++c)
        if (c != axis && heads[j][c] != tails[i][c]) {
          match = false;
          break;
        }
      if (!match) continue;
      if (out[i] >= 0)
        throw Error(Errc::UnpairedMarking,
                    std::string(what) + ": marking " + std::to_string(i) +
                        " has two chain partners");
      out[i] = j;
    }
    if (out[i] < 0)
      throw Error(Errc::UnpairedMarking,
                  std::string(what) + ": marking " + std::to_string(i) +
                      " has no chain partner");
  }
  return out;
}

}  // namespace detail

/**
 * Merges the W–X pairs (dropping w) into the X family of a 3-dimensional
 * structure on (x,y,z); Y and Z carry over. The result satisfies the cube
 * marking conditions whenever the input is marking-valid.
 */
inline CubeDiagram hyper_project_cube_xyz(const HypercubeDiagram& h) {
  CubeDiagram c;
  c.size = h.size;
  for (const auto& p : h.W) c.X.push_back({p[1], p[2], p[3]});
  for (const auto& p : h.Y) c.Y.push_back({p[1], p[2], p[3]});
  for (const auto& p : h.Z) c.Z.push_back({p[1], p[2], p[3]});
  return c;
}

/**
 * Merges the Y–Z pairs (dropping y) into a structure on (w,x,z). In cube
 * coordinates (w,x,z) the chain runs W→X ∥ w, X→merged ∥ x, merged→W ∥ z,
 * so W plays the cube X role, X plays Y, and the merged Y–Z pair plays Z.
 */
inline CubeDiagram hyper_project_cube_wxz(const HypercubeDiagram& h) {
  CubeDiagram c;
  c.size = h.size;
  for (const auto& p : h.W) c.X.push_back({p[0], p[1], p[3]});
  for (const auto& p : h.X) c.Y.push_back({p[0], p[1], p[3]});
  for (const auto& p : h.Y) c.Z.push_back({p[0], p[1], p[3]});
  return c;
}

/** One of the two 3-dimensional merged projections (drop w or drop y). */
inline CubeDiagram hyper_project_cube(const HypercubeDiagram& h, char axis) {
  if (axis == 'w') return hyper_project_cube_xyz(h);
  if (axis == 'y') return hyper_project_cube_wxz(h);
  throw Error(Errc::ParseError, "projected-out axis must be 'w' or 'y'");
}

/**
 * One of the four planar grid projections, as the composite of the matching
 * merged 3-dimensional structure and a planar cube projection. The marking
 * pair collapsed along the way lands on the grid's X family.
 */
inline GridDiagram hyper_project_grid(const HypercubeDiagram& h,
                                      HyperPlane plane) {
  switch (plane) {
    case HyperPlane::WX:
      return cube_project_grid(hyper_project_cube_wxz(h), CubePlane::XY);
    case HyperPlane::ZW:
      return cube_project_grid(hyper_project_cube_wxz(h), CubePlane::ZX);
    case HyperPlane::XY:
      return cube_project_grid(hyper_project_cube_xyz(h), CubePlane::XY);
    case HyperPlane::YZ:
      return cube_project_grid(hyper_project_cube_xyz(h), CubePlane::YZ);
  }
  throw Error(Errc::ParseError, "bad plane");
}

/**
 * Checks the full hypercube conditions: every cube holds one marking of each
 * family; every marking has its chain partner; and at each planar double
 * point of G_yz, G_xy, G_wx, G_zw the correct strand passes over (in G_yz
 * z-parallel segments have the larger x, in G_xy y-parallel the larger z,
 * in G_wx x-parallel the larger z, in G_zw w-parallel the larger x).
 */
inline HypercubeDiagram validate_hypercube(int size, std::vector<Cell4> W,
                                           std::vector<Cell4> X,
                                           std::vector<Cell4> Y,
                                           std::vector<Cell4> Z) {
  detail::check_hyper_shapes(size, W, X, Y, Z);
  const char* axisName = "wxyz";
  const char* famName = "WXYZ";
  const std::vector<Cell4>* fams[4] = {&W, &X, &Y, &Z};
  // Cube counts: fixing any one coordinate singles out one of each family.
  for (int axis = 0; axis < 4; ++axis) {
    for (int f = 0; f < 4; ++f) {
      std::vector<int> seen(static_cast<size_t>(size), 0);
      for (const auto& p : *fams[f]) ++seen[p[axis]];
      for (int level = 0; level < size; ++level)
        if (seen[level] != 1)
          throw Error(Errc::CubeCountViolation,
                      std::string("cube ") + axisName[axis] + "=" +
                          std::to_string(level) + " holds " +
                          std::to_string(seen[level]) + " " + famName[f] +
                          " markings");
    }
  }
  HypercubeDiagram h;
  h.size = size;
  h.W = std::move(W);
  h.X = std::move(X);
  h.Y = std::move(Y);
  h.Z = std::move(Z);
  h.wxPair = detail::pair_hyper_segments(h.W, h.X, 0, "W-X");
  h.xyPair = detail::pair_hyper_segments(h.X, h.Y, 1, "X-Y");
  h.yzPair = detail::pair_hyper_segments(h.Y, h.Z, 2, "Y-Z");
  h.zwPair = detail::pair_hyper_segments(h.Z, h.W, 3, "Z-W");

  // Crossing conditions via the two merged 3-dimensional structures.
  struct Check {
    CubeDiagram cube;
    CubePlane cubePlane;
    HyperPlane reportAs;
  };
  CubeDiagram cxyz = hyper_project_cube_xyz(h);
  CubeDiagram cwxz = hyper_project_cube_wxz(h);
  const Check checks[4] = {{cxyz, CubePlane::YZ, HyperPlane::YZ},
                          {cxyz, CubePlane::XY, HyperPlane::XY},
                          {cwxz, CubePlane::XY, HyperPlane::WX},
                          {cwxz, CubePlane::ZX, HyperPlane::ZW}};
  for (const auto& chk : checks) {
    auto report = check_cube_crossings(chk.cube, {chk.cubePlane});
    if (!report.ok()) {
      const auto& v = report.violations.front();
      throw Error(Errc::CrossingViolation,
                  "wrong strand over in G_" + to_string(chk.reportAs) +
                      " at cell (" + std::to_string(v.cell[0]) + "," +
                      std::to_string(v.cell[1]) + "), segments " +
                      std::to_string(v.firstSegment) + "/" +
                      std::to_string(v.secondSegment));
    }
  }
  return h;
}

/**
 * Follows the chain W→X→Y→Z→W to its closed loops. Requires the pairing
 * maps filled in by validation; OpenChain flags corrupted pairing data.
 */
inline Hyperlink trace_hyperlink(const HypercubeDiagram& h) {
  const int n = h.size;
  for (const Perm* p : {&h.wxPair, &h.xyPair, &h.yzPair, &h.zwPair})
    if (static_cast<int>(p->size()) != n || !is_permutation_vec(*p))
      throw Error(Errc::OpenChain, "chain pairing data is not one-to-one");
  // Successor on W indices after one full turn of the chain.
  Perm next(n);
  for (int i = 0; i < n; ++i)
    next[i] = h.zwPair[h.yzPair[h.xyPair[h.wxPair[i]]]];
  Hyperlink link;
  link.componentOfW.assign(n, -1);
  for (int start = 0; start < n; ++start) {
    if (link.componentOfW[start] >= 0) continue;
    std::vector<int> cycle;
    int at = start;
    while (link.componentOfW[at] < 0) {
      link.componentOfW[at] = link.count();
      cycle.push_back(at);
      at = next[at];
    }
    if (at != start) throw Error(Errc::OpenChain, "chain does not close");
    link.markingCount.push_back(static_cast<int>(cycle.size()));
    link.components.push_back(std::move(cycle));
  }
  return link;
}

/**
 * Marking set from column parameters: the yz-flat through (c[r], r) holds a
 * W at in-flat position (a[r], b[r]); the X shifts to column kappa[r]; Y and
 * Z close each chain's right angles. Marking conditions hold whenever c,
 * kappa, a, b are permutations with kappa[r] ≠ c[r] for every r; crossing
 * conditions are the caller's problem.
 */
inline HypercubeDiagram markings_from_params(const Perm& c, const Perm& kappa,
                                             const Perm& a, const Perm& b) {
  const int n = static_cast<int>(c.size());
  Perm cInv = inverse_perm(c);
  Perm tau(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) tau[r] = cInv[kappa[r]];
  Perm tauInv = inverse_perm(tau);
  HypercubeDiagram h;
  h.size = n;
  for (int r = 0; r < n; ++r) {
    h.W.push_back({c[r], r, a[r], b[r]});
    h.X.push_back({kappa[r], r, a[r], b[r]});
    h.Y.push_back({c[r], r, a[tauInv[r]], b[tauInv[r]]});
    h.Z.push_back({c[r], r, a[r], b[tauInv[r]]});
  }
  return h;
}

/**
 * Randomized marking-set construction: choose the (w,x) columns of the
 * yz-flats, the X columns, and the in-flat positions uniformly; place Y and
 * Z to close each right angle. Marking conditions hold by construction;
 * crossing conditions are the caller's problem.
 */
inline HypercubeDiagram generate_markings(int n, std::uint64_t seed) {
  if (n < 2) throw Error(Errc::ParseError, "size must be at least 2");
  std::mt19937_64 rng(seed);
  Perm c = random_perm(n, rng);
  Perm kappa;
  do {
    kappa = random_perm(n, rng);
  } while ([&] {
    for (int r = 0; r < n; ++r)
      if (kappa[r] == c[r]) return true;
    return false;
  }());
  Perm a = random_perm(n, rng);
  Perm b = random_perm(n, rng);
  return markings_from_params(c, kappa, a, b);
}

/**
 * Panel text: one n×n panel per (w,x) with y horizontal (ascending) and z
 * vertical (largest on top); panel rows ordered by descending x, panels in a
 * row by ascending w, two spaces between panels, blank line between rows.
 */
inline std::string render_schematic(const HypercubeDiagram& h) {
  const int n = h.size;
  auto blank = std::vector<std::string>(
      static_cast<size_t>(n), std::string(static_cast<size_t>(n), '.'));
  std::vector<std::vector<std::vector<std::string>>> panel(
      static_cast<size_t>(n),
      std::vector<std::vector<std::string>>(static_cast<size_t>(n), blank));
  const std::vector<Cell4>* fams[4] = {&h.W, &h.X, &h.Y, &h.Z};
  const char glyph[4] = {'W', 'X', 'Y', 'Z'};
  for (int f = 0; f < 4; ++f)
    for (const auto& p : *fams[f])
      panel[p[0]][p[1]][n - 1 - p[3]][p[2]] = glyph[f];
  std::string out;
  for (int x = n - 1; x >= 0; --x) {
    for (int line = 0; line < n; ++line) {
      for (int w = 0; w < n; ++w) {
        if (w > 0) out += "  ";
        out += panel[w][x][line];
      }
      out += '\n';
    }
    if (x > 0) out += '\n';
  }
  return out;
}

/** Inverse of render_schematic; the result is not yet validated. */
inline HypercubeDiagram parse_schematic(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  // n panel rows of n lines each, separated by single blank lines.
  std::vector<std::vector<std::string>> groups(1);
  for (const auto& line : lines) {
    if (line.empty())
      groups.emplace_back();
    else
      groups.back().push_back(line);
  }
  const int n = static_cast<int>(groups.size());
  if (n == 0 || groups[0].empty())
    throw Error(Errc::MalformedSchematic, "no panel rows");
  HypercubeDiagram h;
  h.size = n;
  for (int g = 0; g < n; ++g) {
    const int x = n - 1 - g;
    if (static_cast<int>(groups[g].size()) != n)
      throw Error(Errc::MalformedSchematic,
                  "panel row " + std::to_string(g) + " has " +
                      std::to_string(groups[g].size()) + " lines, want " +
                      std::to_string(n));
    for (int line = 0; line < n; ++line) {
      const std::string& s = groups[g][line];
      const int want = n * n + 2 * (n - 1);
      if (static_cast<int>(s.size()) != want)
        throw Error(Errc::MalformedSchematic,
                    "line width " + std::to_string(s.size()) + ", want " +
                        std::to_string(want));
      const int z = n - 1 - line;
      for (int w = 0; w < n; ++w) {
        for (int y = 0; y < n; ++y) {
          char ch = s[static_cast<size_t>(w * (n + 2) + y)];
          Cell4 cell{w, x, y, z};
          switch (ch) {
            case '.': break;
            case 'W': h.W.push_back(cell); break;
            case 'X': h.X.push_back(cell); break;
            case 'Y': h.Y.push_back(cell); break;
            case 'Z': h.Z.push_back(cell); break;
            default:
              throw Error(Errc::MalformedSchematic,
                          std::string("unexpected glyph '") + ch + "'");
          }
        }
        if (w + 1 < n) {
          size_t gap = static_cast<size_t>(w * (n + 2) + n);
          if (s[gap] != ' ' || s[gap + 1] != ' ')
            throw Error(Errc::MalformedSchematic,
                        "panels must be separated by two spaces");
        }
      }
    }
  }
  return h;
}

}  // namespace hyperkube
