// Deterministic fixture generator.  Writes the JSON diagrams used by the
// test-suite and the command-line examples into the given directory
// (default: fixtures).  Every diagram is either constructed explicitly,
// found by a fixed-seed search, or repaired from the known-corrupt marking
// table; reruns always produce identical files.

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperkube/json_io.hpp"
#include "hyperkube/search.hpp"

namespace hk = hyperkube;

namespace {

void write(const std::string& dir, const std::string& name,
           const hk::json& j, const std::string& note) {
  hk::save_json_file(dir + "/" + name, j);
  std::printf("  %-28s %s\n", name.c_str(), note.c_str());
}

std::string class_note(const hk::HypercubeDiagram& h) {
  hk::TorusReport rep = hk::torus_report(h);
  int horiz = 0, vert = 0;
  for (const auto& c : rep.circles)
    (c.cls == hk::CircleClass::Horizontal ? horiz : vert)++;
  return std::string(hk::to_string(rep.torusClass)) + ", circles " +
         std::to_string(horiz) + "h/" + std::to_string(vert) + "v";
}

/** The corrupt size-8 Hopf-pair marking table as printed in its source,
 * including its three transcription errors (a duplicated w in X row 3, a
 * duplicated x in X row 4, and a y in Z row 5 that breaks the Z–W pairing).
 * Kept verbatim so the repair pipeline has a real job to do. */
hk::HypercubeDiagram corrupt_hopf_table() {
  hk::HypercubeDiagram h;
  h.size = 8;
  h.W = {{3,0,7,7},{5,1,0,0},{6,2,3,1},{2,3,1,4},
         {7,4,2,2},{4,5,4,6},{1,6,5,5},{0,7,6,3}};
  h.X = {{3,2,3,1},{5,3,1,4},{7,4,2,2},{2,7,5,5},
         {7,5,4,6},{4,0,7,7},{1,7,6,3},{0,1,0,0}};
  h.Y = {{3,0,3,1},{5,1,1,4},{6,2,2,2},{2,3,5,5},
         {7,4,4,6},{4,5,7,7},{1,6,6,3},{0,7,0,0}};
  h.Z = {{3,0,7,1},{5,1,0,4},{6,2,3,2},{2,3,1,5},
         {7,4,3,6},{4,5,4,7},{1,6,5,3},{0,7,6,0}};
  return h;
}

}  // namespace

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "fixtures";
  std::printf("writing fixtures to %s/\n", dir.c_str());

  // Grid diagrams used as search targets and command-line inputs.
  hk::GridDiagram unknot2 = hk::validate_grid(2, {0, 1}, {1, 0});
  hk::GridDiagram trefoil5 =
      hk::validate_grid(5, {0, 1, 2, 3, 4}, {3, 4, 0, 1, 2});
  hk::GridDiagram hopf4 = hk::validate_grid(4, {0, 1, 2, 3}, {2, 3, 0, 1});
  hk::GridDiagram trefoil7 =
      hk::validate_grid(7, {1, 2, 4, 3, 5, 6, 0}, {6, 5, 0, 2, 1, 4, 3});
  hk::GridDiagram fig8_52 =
      hk::validate_grid(7, {1, 4, 2, 3, 5, 6, 0}, {5, 0, 6, 1, 2, 4, 3});
  write(dir, "grid_unknot_n2.json", hk::grid_to_json(unknot2), "unknot");
  write(dir, "grid_trefoil_n5.json", hk::grid_to_json(trefoil5),
        "trefoil, diagonal");
  write(dir, "grid_hopf_n4.json", hk::grid_to_json(hopf4), "Hopf link");
  write(dir, "grid_trefoil_n7.json", hk::grid_to_json(trefoil7),
        "trefoil, amalgamation presentation");
  write(dir, "grid_52_n7.json", hk::grid_to_json(fig8_52), "5_2 knot");

  // Standard torus and its disjoint double.
  hk::HypercubeDiagram torus2 = hk::validate_hypercube(
      2, {{0,0,0,0},{1,1,1,1}}, {{1,0,0,0},{0,1,1,1}},
      {{0,0,1,1},{1,1,0,0}}, {{0,0,0,1},{1,1,1,0}});
  write(dir, "hyper_torus_n2.json", hk::hyper_to_json(torus2),
        class_note(torus2));

  hk::HypercubeDiagram doubleTorus = hk::validate_hypercube(
      4,
      {{0,0,0,0},{1,1,1,1},{2,2,2,2},{3,3,3,3}},
      {{1,0,0,0},{0,1,1,1},{3,2,2,2},{2,3,3,3}},
      {{0,0,1,1},{1,1,0,0},{2,2,3,3},{3,3,2,2}},
      {{0,0,0,1},{1,1,1,0},{2,2,2,3},{3,3,3,2}});
  write(dir, "hyper_double_torus_n4.json", hk::hyper_to_json(doubleTorus),
        class_note(doubleTorus));

  // First random marking set at size 3 that happens to be fully valid.
  hk::HypercubeDiagram gen3 = [] {
    for (std::uint64_t seed = 0;; ++seed) {
      try {
        hk::HypercubeDiagram h = hk::generate_markings(3, seed);
        return hk::validate_hypercube(3, h.W, h.X, h.Y, h.Z);
      } catch (const hk::Error&) {
      }
    }
  }();
  write(dir, "hyper_generated_n3.json", hk::hyper_to_json(gen3),
        class_note(gen3));

  // Trefoil torus: embedded lift over the diagonal trefoil grid.
  {
    hk::SearchSpec spec;
    spec.size = 5;
    spec.wx.exact = trefoil5;
    spec.filter = hk::ClassFilter::Embedded;
    spec.budget = 20000;
    spec.seed = 1;
    hk::SearchResult res = hk::search_lifts(spec);
    if (res.found.empty())
      throw std::runtime_error("no embedded trefoil lift found");
    write(dir, "hyper_trefoil_n5.json", hk::hyper_to_json(res.found.front()),
          class_note(res.found.front()));
  }

  // Once-linked pair: Hopf link in wx, two split unknots in yz.
  {
    hk::SearchSpec spec;
    spec.size = 4;
    spec.wx.exact = hopf4;
    spec.yz.predicate = "split2";
    spec.filter = hk::ClassFilter::Embedded;
    spec.budget = 5000;
    spec.seed = 1;
    hk::SearchResult res = hk::search_lifts(spec);
    if (res.found.empty())
      throw std::runtime_error("no once-linked lift found");
    write(dir, "hyper_once_linked_n4.json",
          hk::hyper_to_json(res.found.front()), class_note(res.found.front()));
  }

  // Hopf-linked pair at size 8: the corrupt printed table, then its unique
  // three-edit repair.
  hk::HypercubeDiagram corrupt = corrupt_hopf_table();
  write(dir, "hyper_hopf_corrupt_n8.json", hk::hyper_to_json(corrupt),
        "known-bad marking table (3 wrong entries)");
  {
    std::vector<hk::HypercubeDiagram> fixed = hk::repair_fixture(corrupt, 3);
    if (fixed.size() != 1)
      throw std::runtime_error("expected a unique repair");
    write(dir, "hyper_hopf_n8.json", hk::hyper_to_json(fixed.front()),
          class_note(fixed.front()));
  }

  // Immersed amalgamation: trefoil in wx, 5_2 in yz.  Both projections are
  // pinned, so the lift comes from the forced conjugacy enumeration.
  {
    hk::SearchSpec spec;
    spec.size = 7;
    spec.wx.exact = trefoil7;
    spec.yz.exact = fig8_52;
    hk::SearchResult res = hk::search_lifts(spec);
    const hk::HypercubeDiagram* pick = nullptr;
    for (const auto& h : res.found) {
      hk::TorusReport rep = hk::torus_report(h);
      int horiz = 0, vert = 0;
      for (const auto& c : rep.circles)
        (c.cls == hk::CircleClass::Horizontal ? horiz : vert)++;
      if (rep.torusClass == hk::TorusClass::Immersed && horiz > 0 && vert > 0) {
        pick = &h;
        break;
      }
    }
    if (!pick)
      throw std::runtime_error("no immersed trefoil/5_2 amalgamation found");
    write(dir, "hyper_trefoil52_n7.json", hk::hyper_to_json(*pick),
          class_note(*pick));
  }

  std::puts("done");
  return 0;
}
