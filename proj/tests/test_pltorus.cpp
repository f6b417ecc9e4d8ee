#include "hyperkube/pltorus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "hyper_fixtures.hpp"
#include "hyperkube/hmoves.hpp"
#include "testutil.hpp"

namespace hk = hyperkube;
using testutil::code_of;

namespace {

/** Marking-valid samples from the generator that also pass crossings. */
std::vector<hk::HypercubeDiagram> valid_samples(int n, int howMany,
                                                std::uint64_t seed0 = 0) {
  std::vector<hk::HypercubeDiagram> out;
  for (std::uint64_t seed = seed0; static_cast<int>(out.size()) < howMany;
       ++seed) {
    if (seed > seed0 + 100000) break;  // safety stop
    auto h = hk::generate_markings(n, seed);
    try {
      out.push_back(hk::validate_hypercube(h.size, h.W, h.X, h.Y, h.Z));
    } catch (const hk::Error&) {
    }
  }
  return out;
}

// Three size-3 diagrams with known double-point behaviour, found by a
// random scan and kept as regression anchors.
hk::HypercubeDiagram immersed3() {
  return hk::validate_hypercube(
      3, {{0, 0, 1, 0}, {2, 1, 2, 2}, {1, 2, 0, 1}},
      {{2, 0, 1, 0}, {1, 1, 2, 2}, {0, 2, 0, 1}},
      {{0, 0, 0, 1}, {2, 1, 1, 0}, {1, 2, 2, 2}},
      {{0, 0, 1, 1}, {2, 1, 2, 0}, {1, 2, 0, 2}});
}

hk::HypercubeDiagram embedded3_vertical() {
  return hk::validate_hypercube(
      3, {{1, 0, 0, 0}, {0, 1, 2, 2}, {2, 2, 1, 1}},
      {{2, 0, 0, 0}, {1, 1, 2, 2}, {0, 2, 1, 1}},
      {{1, 0, 2, 2}, {0, 1, 1, 1}, {2, 2, 0, 0}},
      {{1, 0, 0, 2}, {0, 1, 2, 1}, {2, 2, 1, 0}});
}

hk::HypercubeDiagram embedded3_horizontal() {
  return hk::validate_hypercube(
      3, {{1, 0, 1, 1}, {2, 1, 2, 0}, {0, 2, 0, 2}},
      {{0, 0, 1, 1}, {1, 1, 2, 0}, {2, 2, 0, 2}},
      {{1, 0, 2, 0}, {2, 1, 0, 2}, {0, 2, 1, 1}},
      {{1, 0, 1, 0}, {2, 1, 2, 2}, {0, 2, 0, 1}});
}

/** A broad mix of diagrams exercising every classification outcome. */
std::vector<hk::HypercubeDiagram> mixed_bag() {
  std::vector<hk::HypercubeDiagram> bag = {
      fixtures::standard_torus2(), fixtures::two_torus4(),
      fixtures::hopf_pair8(),      immersed3(),
      embedded3_vertical(),        embedded3_horizontal()};
  for (auto& h : valid_samples(3, 10)) bag.push_back(h);
  for (auto& h : valid_samples(4, 6)) bag.push_back(h);
  return bag;
}

/**
 * Directed boundary edges of a face taken with its assigned sign:
 * counterclockwise in the plane frame for +1, clockwise for -1.
 */
std::array<std::pair<hk::Cell4, hk::Cell4>, 4> boundary_walk(
    const hk::Rectangle& f) {
  auto [A, B] = hk::plane_axes(f.plane);
  hk::Cell4 ll = {f.span[0].lo, f.span[1].lo, f.span[2].lo, f.span[3].lo};
  hk::Cell4 hl = ll, hh = ll, lh = ll;
  hl[A] = f.span[A].hi;
  hh[A] = f.span[A].hi;
  hh[B] = f.span[B].hi;
  lh[B] = f.span[B].hi;
  std::array<hk::Cell4, 4> cyc = {ll, hl, hh, lh};
  if (f.sign < 0) std::reverse(cyc.begin(), cyc.end());
  std::array<std::pair<hk::Cell4, hk::Cell4>, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = {cyc[i], cyc[(i + 1) % 4]};
  return out;
}

/** Every undirected edge must be traversed once in each direction. */
void expect_globally_oriented(const hk::RectangleComplex& rc) {
  std::map<std::pair<hk::Cell4, hk::Cell4>, int> walked;
  for (const auto& f : rc.faces) {
    ASSERT_NE(f.sign, 0);
    for (const auto& e : boundary_walk(f)) ++walked[e];
  }
  for (const auto& [edge, count] : walked) {
    EXPECT_EQ(count, 1);
    auto reversed = walked.find({edge.second, edge.first});
    ASSERT_NE(reversed, walked.end());
    EXPECT_EQ(reversed->second, 1);
  }
}

using Point4 = std::array<int, 4>;

/** All doubled-lattice points lying in at least two open faces. */
std::set<Point4> doubled_double_points(const hk::RectangleComplex& rc) {
  std::map<Point4, int> cover;
  for (const auto& f : rc.faces) {
    auto [A, B] = hk::plane_axes(f.plane);
    Point4 q;
    for (int axis = 0; axis < 4; ++axis) q[axis] = 2 * f.span[axis].lo;
    for (int a = 2 * f.span[A].lo + 1; a < 2 * f.span[A].hi; ++a)
      for (int b = 2 * f.span[B].lo + 1; b < 2 * f.span[B].hi; ++b) {
        q[A] = a;
        q[B] = b;
        ++cover[q];
      }
  }
  std::set<Point4> out;
  for (const auto& [q, count] : cover)
    if (count >= 2) out.insert(q);
  return out;
}

/** The doubled-lattice interior of the circle segments the builder found. */
std::set<Point4> doubled_segment_points(
    const std::vector<hk::DoublePointCircle>& circles) {
  std::set<Point4> out;
  for (const auto& circle : circles)
    for (const auto& s : circle.segments) {
      Point4 q;
      for (int axis = 0; axis < 4; ++axis) q[axis] = 2 * s.box[axis].lo;
      for (int v = 2 * s.box[s.axis].lo + 1; v < 2 * s.box[s.axis].hi; ++v) {
        q[s.axis] = v;
        out.insert(q);
      }
    }
  return out;
}

/** Integer points covered by the closed boxes of one circle class. */
std::set<Point4> integer_class_points(
    const std::vector<hk::DoublePointCircle>& circles, hk::CircleClass cls) {
  std::set<Point4> out;
  for (const auto& circle : circles) {
    if (circle.cls != cls) continue;
    for (const auto& s : circle.segments) {
      Point4 q = {s.box[0].lo, s.box[1].lo, s.box[2].lo, s.box[3].lo};
      for (int v = s.box[s.axis].lo; v <= s.box[s.axis].hi; ++v) {
        q[s.axis] = v;
        out.insert(q);
      }
    }
  }
  return out;
}

/** Re-walk a circle and check that consecutive pieces share endpoints. */
void expect_closed_circle(const hk::DoublePointCircle& circle) {
  ASSERT_GE(circle.segments.size(), 2u);
  // Each piece must touch the next at one shared end; the walk must return
  // to where it started.
  hk::Cell4 at = circle.segments.front().lowEnd();
  hk::Cell4 from = at;
  for (const auto& s : circle.segments) {
    if (s.lowEnd() == at) {
      at = s.highEnd();
    } else {
      ASSERT_EQ(s.highEnd(), at);
      at = s.lowEnd();
    }
  }
  EXPECT_EQ(at, from);
}

/** (class, panel, inner, piece count) keys of a circle list, sorted. */
std::vector<std::tuple<int, int, int, int>> circle_keys(
    const std::vector<hk::DoublePointCircle>& circles, bool flip = false) {
  std::vector<std::tuple<int, int, int, int>> keys;
  for (const auto& c : circles)
    keys.emplace_back(static_cast<int>(c.cls),
                      flip ? c.innerCoord : c.panelCoord,
                      flip ? c.panelCoord : c.innerCoord,
                      static_cast<int>(c.segments.size()));
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

// ---------------------------------------------------------------------------
// Building the complex
// ---------------------------------------------------------------------------

TEST(Build, PanelRectanglesFollowTheChain) {
  for (const auto& h : mixed_bag()) {
    const int n = h.size;
    hk::RectangleComplex rc = hk::build_rectangles(h);
    ASSERT_EQ(rc.size, n);
    ASSERT_EQ(static_cast<int>(rc.faces.size()), 4 * n * n);

    // Column/row extents come straight off the segment chain.
    hk::Perm yzInv = hk::inverse_perm(h.yzPair);
    for (int j = 0; j < n; ++j) {
      const hk::Cell4& Z = h.Z[j];
      const hk::Cell4& Y = h.Y[yzInv[j]];
      const hk::Cell4& Wb = h.W[h.zwPair[j]];
      EXPECT_EQ(rc.columnYSpan[Z[0]], hk::Interval::span(Y[2], Z[2]));
      EXPECT_EQ(rc.rowZSpan[Z[1]], hk::Interval::span(Z[3], Wb[3]));
    }

    // Each level value ends the extent of exactly two columns (rows).
    for (int value = 0; value < n; ++value) {
      std::vector<int> cols, rows;
      for (int i = 0; i < n; ++i) {
        if (rc.columnYSpan[i].lo == value || rc.columnYSpan[i].hi == value)
          cols.push_back(i);
        if (rc.rowZSpan[i].lo == value || rc.rowZSpan[i].hi == value)
          rows.push_back(i);
      }
      ASSERT_EQ(cols.size(), 2u);
      ASSERT_EQ(rows.size(), 2u);
      EXPECT_EQ(rc.columnsPairingY[value], (std::array<int, 2>{cols[0], cols[1]}));
      EXPECT_EQ(rc.rowsPairingZ[value], (std::array<int, 2>{rows[0], rows[1]}));
    }

    // The four blocks: panels, row connectors, column connectors, corners.
    for (int w = 0; w < n; ++w)
      for (int x = 0; x < n; ++x) {
        const hk::Rectangle& f = rc.faces[rc.panelFace(w, x)];
        EXPECT_EQ(f.plane, hk::RectPlane::YZ);
        EXPECT_EQ(f.span[0], hk::Interval::point(w));
        EXPECT_EQ(f.span[1], hk::Interval::point(x));
        EXPECT_EQ(f.span[2], rc.columnYSpan[w]);
        EXPECT_EQ(f.span[3], rc.rowZSpan[x]);
      }
    for (int x = 0; x < n; ++x)
      for (int c = 0; c < n; ++c) {
        const hk::Rectangle& f = rc.faces[rc.rowConnectorFace(x, c)];
        EXPECT_EQ(f.plane, hk::RectPlane::ZW);
        EXPECT_EQ(f.span[0],
                  (hk::Interval{rc.columnsPairingY[c][0], rc.columnsPairingY[c][1]}));
        EXPECT_EQ(f.span[1], hk::Interval::point(x));
        EXPECT_EQ(f.span[2], hk::Interval::point(c));
        EXPECT_EQ(f.span[3], rc.rowZSpan[x]);
      }
    for (int w = 0; w < n; ++w)
      for (int d = 0; d < n; ++d) {
        const hk::Rectangle& f = rc.faces[rc.columnConnectorFace(w, d)];
        EXPECT_EQ(f.plane, hk::RectPlane::XY);
        EXPECT_EQ(f.span[0], hk::Interval::point(w));
        EXPECT_EQ(f.span[1],
                  (hk::Interval{rc.rowsPairingZ[d][0], rc.rowsPairingZ[d][1]}));
        EXPECT_EQ(f.span[2], rc.columnYSpan[w]);
        EXPECT_EQ(f.span[3], hk::Interval::point(d));
      }
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d) {
        const hk::Rectangle& f = rc.faces[rc.cornerFace(c, d)];
        EXPECT_EQ(f.plane, hk::RectPlane::WX);
        EXPECT_EQ(f.span[0],
                  (hk::Interval{rc.columnsPairingY[c][0], rc.columnsPairingY[c][1]}));
        EXPECT_EQ(f.span[1],
                  (hk::Interval{rc.rowsPairingZ[d][0], rc.rowsPairingZ[d][1]}));
        EXPECT_EQ(f.span[2], hk::Interval::point(c));
        EXPECT_EQ(f.span[3], hk::Interval::point(d));
      }
  }
}

TEST(Build, StandardTorusComplexByHand) {
  // For the size-2 torus every extent is [0,1], so the complex is the flat
  // torus made of all sixteen unit squares on the four carrier planes, and
  // its vertices are exactly the sixteen points of {0,1}⁴.
  hk::RectangleComplex rc = hk::build_rectangles(fixtures::standard_torus2());
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(rc.columnYSpan[i], (hk::Interval{0, 1}));
    EXPECT_EQ(rc.rowZSpan[i], (hk::Interval{0, 1}));
    EXPECT_EQ(rc.columnsPairingY[i], (std::array<int, 2>{0, 1}));
    EXPECT_EQ(rc.rowsPairingZ[i], (std::array<int, 2>{0, 1}));
  }
  std::vector<hk::Cell4> expectVertices;
  for (int w = 0; w < 2; ++w)
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z) expectVertices.push_back({w, x, y, z});
  std::sort(expectVertices.begin(), expectVertices.end());
  EXPECT_EQ(rc.cells.vertices, expectVertices);
  EXPECT_EQ(rc.faceComponents, 1);
}

TEST(Build, OrientationSignsAreConsistent) {
  for (const auto& h : mixed_bag())
    expect_globally_oriented(hk::build_rectangles(h));
}

TEST(Build, HandComputedStandardTorusSigns) {
  // Signs derived by hand from the segment chain of the standard torus:
  // the chain turns counterclockwise through both panels and both corner
  // rectangles, the row connectors ride against their attaching segments
  // (which flips them back to +1), and the column connectors come out
  // clockwise.
  hk::RectangleComplex rc = hk::build_rectangles(fixtures::standard_torus2());
  EXPECT_EQ(rc.faces[rc.panelFace(0, 0)].sign, +1);
  EXPECT_EQ(rc.faces[rc.panelFace(1, 1)].sign, +1);
  EXPECT_EQ(rc.faces[rc.rowConnectorFace(0, 0)].sign, +1);
  EXPECT_EQ(rc.faces[rc.rowConnectorFace(1, 1)].sign, +1);
  EXPECT_EQ(rc.faces[rc.columnConnectorFace(1, 0)].sign, -1);
  EXPECT_EQ(rc.faces[rc.columnConnectorFace(0, 1)].sign, -1);
  EXPECT_EQ(rc.faces[rc.cornerFace(0, 0)].sign, +1);
  EXPECT_EQ(rc.faces[rc.cornerFace(1, 1)].sign, +1);
}

// ---------------------------------------------------------------------------
// Cell counts
// ---------------------------------------------------------------------------

TEST(CwCounts, FormulaOnFixturesAndSamples) {
  auto expectCounts = [](const hk::HypercubeDiagram& h) {
    const std::int64_t n = h.size;
    hk::RectangleComplex rc = hk::build_rectangles(h);
    hk::CwCounts counts = hk::cw_euler_characteristic(rc);
    EXPECT_EQ(counts, (hk::CwCounts{4 * n * n, 8 * n * n, 4 * n * n}));
    EXPECT_EQ(counts.euler(), 0);
    for (const auto& faces : rc.cells.edgeFaces) EXPECT_EQ(faces.size(), 2u);
    for (const auto& edges : rc.cells.vertexEdges) EXPECT_EQ(edges.size(), 4u);
    for (const auto& faces : rc.cells.vertexFaces) EXPECT_EQ(faces.size(), 4u);
  };
  for (const auto& h : mixed_bag()) expectCounts(h);
  for (const auto& h : valid_samples(5, 4)) expectCounts(h);
}

TEST(CwCounts, SurfaceComponentsOfDisjointTori) {
  EXPECT_EQ(hk::torus_report(fixtures::standard_torus2()).surfaceComponents, 1);
  // Two diagonal blocks: each block contributes its own torus, and the
  // mixed panels pair up into two more closed components.
  EXPECT_EQ(hk::torus_report(fixtures::two_torus4()).surfaceComponents, 4);
}

TEST(CwCounts, BrokenComplexRejected) {
  hk::RectangleComplex rc = hk::build_rectangles(fixtures::standard_torus2());
  rc.faces.pop_back();
  EXPECT_EQ(code_of([&] { hk::cw_euler_characteristic(rc); }),
            hk::Errc::NonManifoldEdge);
}

// ---------------------------------------------------------------------------
// Double point circles
// ---------------------------------------------------------------------------

TEST(Circles, NoneOnUnknottedFixtures) {
  EXPECT_EQ(hk::classify_torus(fixtures::standard_torus2()),
            hk::TorusClass::EmbeddedLagrangian);
  EXPECT_EQ(hk::classify_torus(fixtures::two_torus4()),
            hk::TorusClass::EmbeddedLagrangian);
  // Stabilization ladders from the standard torus, at varied sites and in
  // both stabilization families, never acquire double points.
  for (int variant = 0; variant < 4; ++variant) {
    auto h = fixtures::standard_torus2();
    for (int step = 0; step < 4; ++step) {
      int index = (variant * 7 + step * 3) % h.size;
      h = variant % 2 == 0 ? hk::hyper_stabilize(h, index)
                           : hk::hyper_stabilize_y(h, index);
      auto report = hk::torus_report(h);
      EXPECT_TRUE(report.circles.empty());
      EXPECT_EQ(report.torusClass, hk::TorusClass::EmbeddedLagrangian);
      EXPECT_EQ(report.surfaceComponents, 1);
    }
  }
}

TEST(Circles, HalfIntegerLatticeOracleAgrees) {
  for (const auto& h : mixed_bag()) {
    hk::RectangleComplex rc = hk::build_rectangles(h);
    std::vector<hk::DoublePointCircle> circles = hk::double_point_circles(rc);

    // Independent oracle: a doubled-lattice point is a double point exactly
    // when it lies in the open interior of two different rectangles.  The
    // segments found by the builder must cover exactly those points.
    EXPECT_EQ(doubled_segment_points(circles), doubled_double_points(rc));

    for (const auto& circle : circles) {
      expect_closed_circle(circle);
      for (const auto& s : circle.segments) {
        // Piece direction matches the class, and the two coordinates the
        // schematic line fixes really are constant along the circle.
        if (circle.cls == hk::CircleClass::Horizontal) {
          EXPECT_TRUE(s.axis == 0 || s.axis == 2);
          EXPECT_EQ(s.box[1], hk::Interval::point(circle.panelCoord));
          EXPECT_EQ(s.box[3], hk::Interval::point(circle.innerCoord));
        } else {
          EXPECT_TRUE(s.axis == 1 || s.axis == 3);
          EXPECT_EQ(s.box[0], hk::Interval::point(circle.panelCoord));
          EXPECT_EQ(s.box[2], hk::Interval::point(circle.innerCoord));
        }
        // A genuine double point piece never degenerates.
        EXPECT_LT(s.box[s.axis].lo, s.box[s.axis].hi);
      }
    }

    // Classification oracle: immersed exactly when some horizontal and some
    // vertical piece share an (integer) point.
    std::set<Point4> horizontal =
        integer_class_points(circles, hk::CircleClass::Horizontal);
    std::set<Point4> vertical =
        integer_class_points(circles, hk::CircleClass::Vertical);
    std::vector<Point4> crossings;
    std::set_intersection(horizontal.begin(), horizontal.end(),
                          vertical.begin(), vertical.end(),
                          std::back_inserter(crossings));
    hk::TorusClass expected = circles.empty()
                                  ? hk::TorusClass::EmbeddedLagrangian
                              : crossings.empty() ? hk::TorusClass::Embedded
                                                  : hk::TorusClass::Immersed;
    EXPECT_EQ(hk::torus_report(h).torusClass, expected);
  }
}

TEST(Circles, LinkedPairIsEmbedded) {
  hk::HypercubeDiagram h = fixtures::hopf_pair8();
  hk::TorusReport report = hk::torus_report(h);
  EXPECT_EQ(report.counts, (hk::CwCounts{256, 512, 256}));
  EXPECT_EQ(report.surfaceComponents, 4);
  EXPECT_EQ(report.torusClass, hk::TorusClass::Embedded);
  ASSERT_EQ(report.circles.size(), 4u);
  // All four circles are horizontal, eight pieces each, two on each of the
  // schematic lines (x,z) = (1,1) and (4,5).
  std::vector<std::tuple<int, int, int, int>> expected = {
      {0, 1, 1, 8}, {0, 1, 1, 8}, {0, 4, 5, 8}, {0, 4, 5, 8}};
  EXPECT_EQ(circle_keys(report.circles), expected);
}

TEST(Circles, EdgeRunIsRejected) {
  // Two hand-made rectangles meeting along a segment that lies on the edge
  // of one but crosses the interior of the other: neither glued nor a clean
  // penetration.
  hk::RectangleComplex rc;
  rc.size = 3;
  rc.faces.push_back({hk::RectPlane::WX,
                      {hk::Interval{0, 2}, hk::Interval{0, 2},
                       hk::Interval::point(1), hk::Interval::point(1)},
                      +1});
  rc.faces.push_back({hk::RectPlane::ZW,
                      {hk::Interval{0, 2}, hk::Interval::point(0),
                       hk::Interval::point(1), hk::Interval{0, 2}},
                      +1});
  EXPECT_EQ(code_of([&] { hk::double_point_circles(rc); }),
            hk::Errc::UnclassifiableCircle);
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

TEST(Classify, FrozenSamples) {
  hk::TorusReport immersed = hk::torus_report(immersed3());
  EXPECT_EQ(immersed.torusClass, hk::TorusClass::Immersed);
  ASSERT_EQ(immersed.circles.size(), 2u);
  EXPECT_EQ(immersed.circles[0].cls, hk::CircleClass::Horizontal);
  EXPECT_EQ(immersed.circles[1].cls, hk::CircleClass::Vertical);

  hk::TorusReport vertical = hk::torus_report(embedded3_vertical());
  EXPECT_EQ(vertical.torusClass, hk::TorusClass::Embedded);
  ASSERT_EQ(vertical.circles.size(), 1u);
  EXPECT_EQ(vertical.circles[0].cls, hk::CircleClass::Vertical);

  hk::TorusReport horizontal = hk::torus_report(embedded3_horizontal());
  EXPECT_EQ(horizontal.torusClass, hk::TorusClass::Embedded);
  ASSERT_EQ(horizontal.circles.size(), 1u);
  EXPECT_EQ(horizontal.circles[0].cls, hk::CircleClass::Horizontal);
}

TEST(Classify, SwapKeepsTheReport) {
  // The coordinate swap (w,x,y,z) → (y,z,w,x) is a symmetry of the surface:
  // counts, components and classification survive, and each schematic line
  // (panel, inner) maps to the line (inner, panel) of the same class.
  for (const auto& h : mixed_bag()) {
    hk::TorusReport before = hk::torus_report(h);
    hk::TorusReport after = hk::torus_report(hk::hyper_swap(h));
    EXPECT_EQ(after.counts, before.counts);
    EXPECT_EQ(after.surfaceComponents, before.surfaceComponents);
    EXPECT_EQ(after.torusClass, before.torusClass);
    EXPECT_EQ(circle_keys(after.circles),
              circle_keys(before.circles, /*flip=*/true));
  }
}

// ---------------------------------------------------------------------------
// Smoothing patches
// ---------------------------------------------------------------------------

TEST(Patches, StayLagrangianUpToRounding) {
  EXPECT_LT(hk::lagrangian_patch_residual(hk::PatchKind::Edge, 0.1, 1000),
            1e-12);
  EXPECT_LT(hk::lagrangian_patch_residual(hk::PatchKind::Vertex, 0.05, 1000),
            1e-12);
}

TEST(Patches, BoundariesAgree) {
  EXPECT_LT(hk::patch_boundary_mismatch(0.1, 1000), 1e-12);
  EXPECT_LT(hk::patch_boundary_mismatch(0.03, 1000), 1e-12);
}

TEST(Patches, FramesMatchNumericalDerivatives) {
  const double eps = 0.1;
  const double h = 1e-5;
  const double tMax = eps * 3.14159265358979323846 / 2.0;
  for (int i = 1; i < 8; ++i) {
    double s = tMax * i / 8.0;
    for (int j = 1; j < 8; ++j) {
      double t = tMax * j / 8.0;
      auto edge = hk::edge_patch_frame(eps, t);
      auto vertex = hk::vertex_patch_frame(eps, s, t);
      for (int axis = 0; axis < 4; ++axis) {
        double dEs = (hk::edge_patch_point(eps, s + h, t)[axis] -
                      hk::edge_patch_point(eps, s - h, t)[axis]) /
                     (2 * h);
        double dEt = (hk::edge_patch_point(eps, s, t + h)[axis] -
                      hk::edge_patch_point(eps, s, t - h)[axis]) /
                     (2 * h);
        EXPECT_NEAR(dEs, edge[0][axis], 1e-7);
        EXPECT_NEAR(dEt, edge[1][axis], 1e-7);
        double dVs = (hk::vertex_patch_point(eps, s + h, t)[axis] -
                      hk::vertex_patch_point(eps, s - h, t)[axis]) /
                     (2 * h);
        double dVt = (hk::vertex_patch_point(eps, s, t + h)[axis] -
                      hk::vertex_patch_point(eps, s, t - h)[axis]) /
                     (2 * h);
        EXPECT_NEAR(dVs, vertex[0][axis], 1e-7);
        EXPECT_NEAR(dVt, vertex[1][axis], 1e-7);
      }
    }
  }
}

TEST(Patches, EdgePatchEndsOnTheFlatPieces) {
  const double eps = 0.1;
  const double tMax = eps * 3.14159265358979323846 / 2.0;
  for (double s : {eps, 0.3, 0.7}) {
    auto start = hk::edge_patch_point(eps, s, 0.0);
    EXPECT_NEAR(start[0], s, 1e-15);
    EXPECT_NEAR(start[1], 0.0, 1e-15);
    EXPECT_NEAR(start[2], 0.0, 1e-15);
    EXPECT_NEAR(start[3], eps, 1e-15);
    auto end = hk::edge_patch_point(eps, s, tMax);
    EXPECT_NEAR(end[0], s, 1e-15);
    EXPECT_NEAR(end[1], eps, 1e-15);
    EXPECT_NEAR(end[2], 0.0, 1e-15);
    EXPECT_NEAR(end[3], 0.0, 1e-12);
  }
}
