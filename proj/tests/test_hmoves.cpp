#include "hyperkube/hmoves.hpp"

#include <algorithm>
#include <vector>

#include <gtest/gtest.h>

#include "grid_fixtures.hpp"
#include "hyper_fixtures.hpp"
#include "hyperkube/json_io.hpp"
#include "testutil.hpp"

namespace hk = hyperkube;
using testutil::check_golden;
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

/** True when `after` undoes to `before` by removing some unit corner. */
bool is_grid_stabilization(const hk::GridDiagram& before,
                           const hk::GridDiagram& after) {
  if (after.size != before.size + 1) return false;
  for (auto p : hk::destabilize_candidates(after))
    if (hk::grid_destabilize(after, p) == before) return true;
  return false;
}

constexpr hk::HyperPlane kPlanes[4] = {hk::HyperPlane::WX, hk::HyperPlane::YZ,
                                       hk::HyperPlane::XY, hk::HyperPlane::ZW};

struct PlaneChange {
  hk::HyperPlane plane;
  hk::GridAxis gridAxis;
};

/** The two grid projections a commutation on `axis` passes through. */
std::vector<PlaneChange> planes_of_axis(char axis) {
  switch (axis) {
    case 'w':
      return {{hk::HyperPlane::WX, hk::GridAxis::Columns},
              {hk::HyperPlane::ZW, hk::GridAxis::Rows}};
    case 'x':
      return {{hk::HyperPlane::WX, hk::GridAxis::Rows},
              {hk::HyperPlane::XY, hk::GridAxis::Columns}};
    case 'y':
      return {{hk::HyperPlane::YZ, hk::GridAxis::Columns},
              {hk::HyperPlane::XY, hk::GridAxis::Rows}};
    case 'z':
      return {{hk::HyperPlane::YZ, hk::GridAxis::Rows},
              {hk::HyperPlane::ZW, hk::GridAxis::Columns}};
  }
  ADD_FAILURE() << "bad axis " << axis;
  return {};
}

/** Asserts the commutation contract between h and hyper_commute(h,axis,k). */
void expect_commute_contract(const hk::HypercubeDiagram& before,
                             const hk::HypercubeDiagram& after, char axis,
                             int level) {
  auto changed = planes_of_axis(axis);
  for (auto plane : kPlanes) {
    auto oldProj = hk::hyper_project_grid(before, plane);
    auto newProj = hk::hyper_project_grid(after, plane);
    auto it = std::find_if(changed.begin(), changed.end(),
                           [&](const PlaneChange& pc) {
                             return pc.plane == plane;
                           });
    if (it == changed.end()) {
      EXPECT_EQ(newProj, oldProj)
          << hk::to_string(plane) << " should not move under " << axis
          << "-commutation";
    } else {
      EXPECT_EQ(newProj, hk::grid_commute(oldProj, level, it->gridAxis))
          << hk::to_string(plane) << " should commute at level " << level;
    }
  }
}

}  // namespace

// Frozen by following the insertion rule by hand at both torus W markings:
// the first W points forward along w (levels split beyond it), the second
// points backward (the marking itself slides across the split).
TEST(Stabilize, TorusHandComputedResults) {
  auto h = fixtures::standard_torus2();
  auto sPos = hk::hyper_stabilize(h, 0);
  auto expectPos = hk::validate_hypercube(
      3, {{0, 0, 0, 0}, {2, 2, 2, 2}, {1, 1, 1, 1}},
      {{2, 1, 1, 1}, {0, 2, 2, 2}, {1, 0, 0, 0}},
      {{0, 0, 2, 2}, {2, 2, 1, 1}, {1, 1, 0, 0}},
      {{0, 0, 0, 2}, {2, 2, 2, 1}, {1, 1, 1, 0}});
  EXPECT_EQ(sPos, expectPos);

  auto sNeg = hk::hyper_stabilize(h, 1);
  auto expectNeg = hk::validate_hypercube(
      3, {{0, 0, 0, 0}, {2, 2, 2, 2}, {1, 1, 1, 1}},
      {{2, 0, 0, 0}, {0, 1, 1, 1}, {1, 2, 2, 2}},
      {{0, 0, 1, 1}, {2, 2, 0, 0}, {1, 1, 2, 2}},
      {{0, 0, 0, 1}, {2, 2, 2, 0}, {1, 1, 1, 2}});
  EXPECT_EQ(sNeg, expectNeg);
}

TEST(Stabilize, GrowsSizeAndStabilizesEveryProjection) {
  std::vector<hk::HypercubeDiagram> fixturesList = {
      fixtures::standard_torus2(), fixtures::two_torus4()};
  for (auto& extra : valid_samples(4, 3)) fixturesList.push_back(extra);
  for (const auto& h : fixturesList) {
    const int components = hk::trace_hyperlink(h).count();
    for (char family : {'w', 'y'}) {
      for (int i = 0; i < h.size; ++i) {
        auto s = family == 'w' ? hk::hyper_stabilize(h, i)
                               : hk::hyper_stabilize_y(h, i);
        EXPECT_EQ(s.size, h.size + 1);
        EXPECT_EQ(hk::trace_hyperlink(s).count(), components);
        for (auto plane : kPlanes) {
          EXPECT_TRUE(is_grid_stabilization(hk::hyper_project_grid(h, plane),
                                            hk::hyper_project_grid(s, plane)))
              << hk::to_string(plane) << " at " << family << " " << i;
        }
      }
    }
  }
}

TEST(Destabilize, ExactlyInvertsStabilization) {
  std::vector<hk::HypercubeDiagram> fixturesList = {
      fixtures::standard_torus2(), fixtures::two_torus4()};
  for (auto& extra : valid_samples(4, 3)) fixturesList.push_back(extra);
  for (const auto& h : fixturesList) {
    for (int i = 0; i < h.size; ++i) {
      EXPECT_EQ(hk::hyper_destabilize(hk::hyper_stabilize(h, i), i), h);
      // A stabilization at Y unwinds through the swapped diagram.
      auto sy = hk::hyper_stabilize_y(h, i);
      EXPECT_EQ(hk::hyper_swap(hk::hyper_destabilize(hk::hyper_swap(sy), i)),
                h);
    }
  }
}

TEST(Destabilize, RefusesToEraseATwoMarkingComponent) {
  auto h = fixtures::standard_torus2();
  // Both chains of the torus are unit chains, but each is its component's
  // entire marking set.
  for (int i = 0; i < 2; ++i)
    EXPECT_EQ(code_of([&] { hk::hyper_destabilize(h, i); }),
              hk::Errc::NoUnitChain)
        << "W " << i;
}

TEST(Destabilize, RefusesNonUnitChains) {
  auto two = fixtures::two_torus4();
  for (int i = 0; i < two.size; ++i)
    EXPECT_EQ(code_of([&] { hk::hyper_destabilize(two, i); }),
              hk::Errc::NoUnitChain);
  EXPECT_EQ(code_of([&] { hk::hyper_destabilize(two, 99); }),
            hk::Errc::BadIndex);
}

// After stabilizing the torus at the W marking at (1,1,1,1), the x-levels
// 0,1 commute and then the w-levels 0,1 commute; that exact sequence is
// illegal on the other W's stabilization, which pins down the marking. The
// snapshots freeze both stages.
TEST(Commute, StabilizedTorusSequence) {
  auto s = hk::hyper_stabilize(fixtures::standard_torus2(), 1);
  check_golden("hyper_torus3_stab.txt", hk::render_schematic(s));

  auto c1 = hk::hyper_commute(s, 'x', 0);
  expect_commute_contract(s, c1, 'x', 0);
  auto c2 = hk::hyper_commute(c1, 'w', 0);
  expect_commute_contract(c1, c2, 'w', 0);
  EXPECT_EQ(hk::trace_hyperlink(c2).count(), 1);
  check_golden("hyper_torus3_commuted.txt", hk::render_schematic(c2));
}

TEST(Commute, LegalInterchangesActOnExactlyTwoProjections) {
  int legal = 0, illegal = 0;
  std::vector<hk::HypercubeDiagram> fixturesList = {
      fixtures::standard_torus2(), fixtures::two_torus4()};
  for (auto& extra : valid_samples(4, 4)) fixturesList.push_back(extra);
  for (const auto& h : fixturesList) {
    for (char axis : {'w', 'x', 'y', 'z'}) {
      for (int level = 0; level + 1 < h.size; ++level) {
        hk::HypercubeDiagram after;
        try {
          after = hk::hyper_commute(h, axis, level);
        } catch (const hk::Error& e) {
          EXPECT_EQ(e.code(), hk::Errc::IllegalCommutation);
          ++illegal;
          continue;
        }
        ++legal;
        expect_commute_contract(h, after, axis, level);
      }
    }
  }
  EXPECT_GT(legal, 0);
  EXPECT_GT(illegal, 0) << "expected some strictly interleaved pair";
}

TEST(Commute, OutOfRangeLevelRejected) {
  auto h = fixtures::standard_torus2();
  EXPECT_EQ(code_of([&] { hk::hyper_commute(h, 'x', 1); }),
            hk::Errc::BadIndex);
  EXPECT_EQ(code_of([&] { hk::hyper_commute(h, 'q', 0); }),
            hk::Errc::BadIndex);
}

TEST(Swap, InvolutionThatExchangesProjectionPairs) {
  std::vector<hk::HypercubeDiagram> fixturesList = {
      fixtures::standard_torus2(), fixtures::two_torus4()};
  for (auto& extra : valid_samples(4, 4)) fixturesList.push_back(extra);
  for (const auto& h : fixturesList) {
    auto sw = hk::hyper_swap(h);
    EXPECT_EQ(hk::hyper_swap(sw), h);
    EXPECT_EQ(hk::hyper_project_grid(sw, hk::HyperPlane::WX),
              hk::hyper_project_grid(h, hk::HyperPlane::YZ));
    EXPECT_EQ(hk::hyper_project_grid(sw, hk::HyperPlane::YZ),
              hk::hyper_project_grid(h, hk::HyperPlane::WX));
    EXPECT_EQ(hk::hyper_project_grid(sw, hk::HyperPlane::XY),
              hk::hyper_project_grid(h, hk::HyperPlane::ZW));
    EXPECT_EQ(hk::hyper_project_grid(sw, hk::HyperPlane::ZW),
              hk::hyper_project_grid(h, hk::HyperPlane::XY));
  }
}

TEST(Swap, TorusMarkingSetActuallyMoves) {
  auto h = fixtures::standard_torus2();
  auto sw = hk::hyper_swap(h);
  // The swapped torus is a valid diagram of the same link but not the same
  // marking set: SW carries X = {1000, 0111} to the Z positions {0010, 1101},
  // which the torus does not occupy.
  EXPECT_FALSE(fixtures::same_marking_sets(sw, h));
}

TEST(ComponentSwap, ActsOnTheLowerBlockOnly) {
  auto two = fixtures::two_torus4();
  auto cs = hk::component_swap(two, 2);
  EXPECT_EQ(cs.size, 4);
  EXPECT_EQ(hk::trace_hyperlink(cs).count(), 2);
  EXPECT_FALSE(fixtures::same_marking_sets(cs, two));
  EXPECT_TRUE(fixtures::same_marking_sets(hk::component_swap(cs, 2), two));

  auto upperHalf = [](const std::vector<hk::Cell4>& fam) {
    std::vector<hk::Cell4> out;
    for (const auto& p : fam)
      if (p[0] >= 2) out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
  };
  EXPECT_EQ(upperHalf(cs.W), upperHalf(two.W));
  EXPECT_EQ(upperHalf(cs.X), upperHalf(two.X));
  // The lower block's W markings come from the original Y markings, carried
  // through the coordinate cycle.
  std::vector<hk::Cell4> lowW;
  for (const auto& p : cs.W)
    if (p[0] < 2) lowW.push_back(p);
  std::vector<hk::Cell4> wantLowW;
  for (const auto& p : two.Y)
    if (p[0] < 2) wantLowW.push_back(hk::swap_cell(p));
  std::sort(lowW.begin(), lowW.end());
  std::sort(wantLowW.begin(), wantLowW.end());
  EXPECT_EQ(lowW, wantLowW);
}

TEST(ComponentSwap, RejectsDiagramsThatAreNotInBlockForm) {
  EXPECT_EQ(code_of([&] {
              hk::component_swap(fixtures::standard_torus2(), 1);
            }),
            hk::Errc::NotBlockForm);
  auto two = fixtures::two_torus4();
  for (int split : {0, 1, 3, 4})
    EXPECT_EQ(code_of([&] { hk::component_swap(two, split); }),
              hk::Errc::NotBlockForm)
        << "split " << split;
}

TEST(LegalMoves, TorusCatalogue) {
  auto h = fixtures::standard_torus2();
  auto moves = hk::legal_moves(h);
  EXPECT_EQ(moves, hk::legal_moves(h)) << "catalogue must be deterministic";

  auto contains = [&](const hk::Move& m) {
    return std::find(moves.begin(), moves.end(), m) != moves.end();
  };
  for (char family : {'w', 'y'})
    for (int i = 0; i < 2; ++i)
      EXPECT_TRUE(contains(hk::Move{hk::MoveKind::Stabilize, family, i, 'w',
                                    0, 0}))
          << family << i;
  EXPECT_TRUE(contains(hk::Move{hk::MoveKind::Swap, 'w', 0, 'w', 0, 0}));
  for (const auto& m : moves) {
    EXPECT_NE(m.kind, hk::MoveKind::Destabilize);
    EXPECT_NE(m.kind, hk::MoveKind::ComponentSwap);
    EXPECT_NO_THROW(hk::apply_move(h, m));
  }
  // Size-2 diagrams have no crossings, so every one-axis interchange is
  // legal too: 4 stabilizations + 4 commutations + the swap.
  EXPECT_EQ(moves.size(), 9u);
}

TEST(LegalMoves, EveryListedMoveApplies) {
  for (const auto& h : valid_samples(4, 3)) {
    auto moves = hk::legal_moves(h);
    EXPECT_FALSE(moves.empty());
    for (const auto& m : moves) EXPECT_NO_THROW(hk::apply_move(h, m));
  }
}

TEST(MoveJson, RoundTripsEveryKind) {
  std::vector<hk::Move> all = {
      {hk::MoveKind::Stabilize, 'w', 1, 'w', 0, 0},
      {hk::MoveKind::Stabilize, 'y', 0, 'w', 0, 0},
      {hk::MoveKind::Destabilize, 'w', 2, 'w', 0, 0},
      {hk::MoveKind::Commute, 'w', 0, 'z', 3, 0},
      {hk::MoveKind::Swap, 'w', 0, 'w', 0, 0},
      {hk::MoveKind::ComponentSwap, 'w', 0, 'w', 0, 2},
  };
  for (const auto& m : all)
    EXPECT_EQ(hk::move_from_json(hk::move_to_json(m)), m);
  EXPECT_EQ(code_of([] { hk::move_from_json({{"kind", "teleport"}}); }),
            hk::Errc::ParseError);
  EXPECT_EQ(code_of([] {
              hk::move_from_json({{"kind", "commute"}, {"axis", "v"},
                                  {"level", 0}});
            }),
            hk::Errc::ParseError);
  EXPECT_EQ(code_of([] {
              hk::move_from_json({{"kind", "stabilize"}, {"family", "x"},
                                  {"index", 0}});
            }),
            hk::Errc::ParseError);
}
