#pragma once

// Search for hypercube diagrams with prescribed grid projections, repair of
// corrupted marking tables, and one-shot diagnostic reports.
//
// Search strategy: candidates come from the randomized marking generator;
// when the wx projection is pinned to an exact grid its column parameters
// are fixed and only the flat positions are drawn. When BOTH projections
// are pinned the flat positions are forced up to conjugation, so the
// candidate list is enumerated exactly instead of sampled. Crossing
// conditions are always checked by full validation (rejection, no
// backtracking).

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hyperkube/errors.hpp"
#include "hyperkube/floer_grid.hpp"
#include "hyperkube/floer_hyper.hpp"
#include "hyperkube/grid.hpp"
#include "hyperkube/hmoves.hpp"
#include "hyperkube/hypercube.hpp"
#include "hyperkube/permutation.hpp"
#include "hyperkube/pltorus.hpp"

namespace hyperkube {

// ---------------------------------------------------------------------------
// Specs and results
// ---------------------------------------------------------------------------

enum class ClassFilter { Any, Embedded, Lagrangian };

inline ClassFilter class_filter_from_string(const std::string& s) {
  if (s == "any") return ClassFilter::Any;
  if (s == "embedded") return ClassFilter::Embedded;
  if (s == "lagrangian") return ClassFilter::Lagrangian;
  throw Error(Errc::ParseError,
              "class filter must be any, embedded, or lagrangian; got \"" +
                  s + "\"");
}

inline bool class_passes(TorusClass c, ClassFilter f) {
  switch (f) {
    case ClassFilter::Any: return true;
    case ClassFilter::Embedded: return c != TorusClass::Immersed;
    case ClassFilter::Lagrangian: return c == TorusClass::EmbeddedLagrangian;
  }
  return false;
}

/**
 * Constraint on one grid projection: either an exact marking set, or a named
 * link-invariant predicate ("unknot", "hopf", "split2"), or nothing.
 */
struct GridTarget {
  std::optional<GridDiagram> exact;
  std::string predicate;

  bool constrained() const { return exact.has_value() || !predicate.empty(); }
};

struct SearchSpec {
  int size = 0;
  GridTarget wx;
  GridTarget yz;
  ClassFilter filter = ClassFilter::Any;
  long long budget = 10000;  // max candidates examined
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct SearchStats {
  long long tried = 0;
  long long markingValid = 0;
  long long crossingValid = 0;
  std::map<std::string, long long> classHistogram;
};

struct SearchResult {
  std::vector<HypercubeDiagram> found;  // validated, duplicates removed
  SearchStats stats;
  bool budgetExhausted = false;  // budget consumed without a single hit
};

// ---------------------------------------------------------------------------
// Grid predicates
// ---------------------------------------------------------------------------

/** Same size and marking columns (projections always use standard order). */
inline bool grid_equal_markings(const GridDiagram& a, const GridDiagram& b) {
  return a.size == b.size && a.xCol == b.xCol && a.yCol == b.yCol;
}

/** Total rank of the reduced (binomial-tower-free) homology table. */
inline long long grid_hat_total_rank(const GridDiagram& g, int sizeBound = 8) {
  LinkComponents lc = trace_components(g);
  HomologyTable full = homology_table(build_grid_tilde_complex(g, sizeBound));
  std::vector<int> exps(lc.markingCount.size());
  for (std::size_t i = 0; i < exps.size(); ++i)
    exps[i] = lc.markingCount[i] - 1;
  HomologyTable hat = hat_extract(full, lc.count(), exps);
  long long total = 0;
  for (const auto& [bg, r] : hat) total += r;
  return total;
}

/**
 * Invariant-based link predicates (deliberately not exact-diagram matching,
 * so stabilized representatives qualify):
 *   unknot — one component, reduced rank 1;
 *   hopf   — two components, linking ±1, reduced rank 4;
 *   split2 — two components, linking 0, reduced rank 2.
 */
inline bool grid_matches_predicate(const GridDiagram& g,
                                   const std::string& name,
                                   int sizeBound = 8) {
  LinkComponents lc = trace_components(g);
  if (name == "unknot")
    return lc.count() == 1 && grid_hat_total_rank(g, sizeBound) == 1;
  if (name == "hopf")
    return lc.count() == 2 && std::abs(linking_number(g, 0, 1)) == 1 &&
           grid_hat_total_rank(g, sizeBound) == 4;
  if (name == "split2")
    return lc.count() == 2 && linking_number(g, 0, 1) == 0 &&
           grid_hat_total_rank(g, sizeBound) == 2;
  throw Error(Errc::ParseError,
              "predicate must be unknot, hopf, or split2; got \"" + name +
                  "\"");
}

// ---------------------------------------------------------------------------
// Internals
// ---------------------------------------------------------------------------

namespace detail {

/** Stateless per-candidate seed (splitmix64 of seed ⊕ scrambled index). */
inline std::uint64_t split_seed(std::uint64_t seed, long long index) {
  std::uint64_t z = seed ^ (0x9E3779B97F4A7C15ULL *
                            (static_cast<std::uint64_t>(index) + 1));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::string serialize_markings(const HypercubeDiagram& h) {
  auto sorted = [](std::vector<Cell4> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  std::string out = std::to_string(h.size);
  for (const auto* fam : {&h.W, &h.X, &h.Y, &h.Z}) {
    out += '|';
    for (const Cell4& p : sorted(*fam))
      for (int c = 0; c < 4; ++c) {
        out += std::to_string(p[c]);
        out += ',';
      }
  }
  return out;
}

/** Canonical key identifying a diagram up to the swap move. */
inline std::string swap_canonical_key(const HypercubeDiagram& h) {
  return std::min(serialize_markings(h), serialize_markings(hyper_swap(h)));
}

/**
 * Every permutation b with b∘tau∘b⁻¹ = sigma: match cycles of equal length
 * in all ways and try every rotation of each matched cycle. Empty when the
 * cycle types differ.
 */
inline std::vector<Perm> conjugating_perms(const Perm& tau,
                                           const Perm& sigma) {
  const int n = static_cast<int>(tau.size());
  auto byLength = [](const Perm& p) {
    std::map<int, std::vector<std::vector<int>>> groups;
    for (auto& cyc : perm_cycles(p))
      groups[static_cast<int>(cyc.size())].push_back(cyc);
    return groups;
  };
  auto tg = byLength(tau), sg = byLength(sigma);
  if (tg.size() != sg.size()) return {};
  for (const auto& [len, cycles] : tg) {
    auto it = sg.find(len);
    if (it == sg.end() || it->second.size() != cycles.size()) return {};
  }

  std::vector<Perm> out;
  Perm b(static_cast<std::size_t>(n), -1);
  // Assign length classes one at a time; within a class, a permutation of
  // target cycles plus a rotation offset per matched pair.
  std::vector<int> lengths;
  for (const auto& [len, cycles] : tg) lengths.push_back(len);

  std::function<void(std::size_t)> assignClass = [&](std::size_t li) {
    if (li == lengths.size()) {
      out.push_back(b);
      return;
    }
    const int len = lengths[li];
    const auto& tc = tg[len];
    const auto& sc = sg[len];
    std::vector<std::size_t> order(tc.size());
    std::iota(order.begin(), order.end(), 0);
    // For the current matching `order` (tau-cycle k ↦ sigma-cycle order[k]),
    // iterate all rotation offsets with an odometer.
    do {
      std::vector<int> offset(tc.size(), 0);
      for (;;) {
        for (std::size_t k = 0; k < tc.size(); ++k) {
          const auto& from = tc[k];
          const auto& to = sc[order[k]];
          for (std::size_t i = 0; i < from.size(); ++i)
            b[static_cast<std::size_t>(from[i])] =
                to[(i + static_cast<std::size_t>(offset[k])) % to.size()];
        }
        assignClass(li + 1);
        std::size_t bump = 0;
        while (bump < offset.size() && ++offset[bump] == len) {
          offset[bump] = 0;
          ++bump;
        }
        if (bump == offset.size()) break;
      }
    } while (std::next_permutation(order.begin(), order.end()));
  };
  assignClass(0);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// search_lifts
// ---------------------------------------------------------------------------

inline SearchResult search_lifts(const SearchSpec& spec) {
  if (spec.size < 2)
    throw Error(Errc::ParseError, "search size must be at least 2");
  if (spec.budget < 0)
    throw Error(Errc::ParseError, "search budget must be nonnegative");
  if (spec.jobs < 1)
    throw Error(Errc::ParseError, "jobs must be at least 1");
  for (const GridTarget* t : {&spec.wx, &spec.yz}) {
    if (t->exact && t->exact->size != spec.size)
      throw Error(Errc::ParseError,
                  "exact projection targets must match the search size");
    if (!t->predicate.empty())
      grid_matches_predicate(GridDiagram{2, {0, 1}, {1, 0}},
                             t->predicate);  // reject unknown names early
  }

  const bool wxPinned = spec.wx.exact.has_value();
  const bool bothPinned = wxPinned && spec.yz.exact.has_value();
  const int n = spec.size;

  // Pinned column parameters (rows of G_wx are x-coordinates, columns w).
  Perm c, kappa;
  if (wxPinned) {
    c = spec.wx.exact->xCol;
    kappa = spec.wx.exact->yCol;
  }

  // With both projections pinned the flat positions satisfy a = p∘b and
  // b∘tau∘b⁻¹ = p⁻¹∘q, so the candidates are exactly the conjugating b's.
  std::vector<std::pair<Perm, Perm>> forcedPairs;
  if (bothPinned) {
    Perm tau = compose_perm(inverse_perm(c), kappa);
    const Perm& p = spec.yz.exact->xCol;
    const Perm& q = spec.yz.exact->yCol;
    Perm sigma = compose_perm(inverse_perm(p), q);
    for (const Perm& b : detail::conjugating_perms(tau, sigma))
      forcedPairs.emplace_back(compose_perm(p, b), b);
  }

  const long long total =
      bothPinned ? std::min<long long>(
                       spec.budget, static_cast<long long>(forcedPairs.size()))
                 : spec.budget;

  struct WorkerOut {
    SearchStats stats;
    std::vector<std::pair<long long, HypercubeDiagram>> hits;
  };
  std::vector<WorkerOut> outs(static_cast<std::size_t>(spec.jobs));

  auto runWorker = [&](int worker) {
    WorkerOut& out = outs[static_cast<std::size_t>(worker)];
    for (long long i = worker; i < total; i += spec.jobs) {
      ++out.stats.tried;
      HypercubeDiagram raw;
      if (bothPinned) {
        const auto& [a, b] = forcedPairs[static_cast<std::size_t>(i)];
        raw = markings_from_params(c, kappa, a, b);
      } else if (wxPinned) {
        std::mt19937_64 rng(detail::split_seed(spec.seed, i));
        Perm a = random_perm(n, rng);
        Perm b = random_perm(n, rng);
        raw = markings_from_params(c, kappa, a, b);
      } else {
        raw = generate_markings(n, detail::split_seed(spec.seed, i));
      }
      ++out.stats.markingValid;  // the generator only emits marking-valid sets

      HypercubeDiagram h;
      try {
        h = validate_hypercube(raw.size, raw.W, raw.X, raw.Y, raw.Z);
      } catch (const Error&) {
        continue;
      }
      ++out.stats.crossingValid;

      try {
        if (spec.wx.exact) {
          if (!grid_equal_markings(hyper_project_grid(h, HyperPlane::WX),
                                   *spec.wx.exact))
            continue;
        } else if (!spec.wx.predicate.empty()) {
          if (!grid_matches_predicate(hyper_project_grid(h, HyperPlane::WX),
                                      spec.wx.predicate))
            continue;
        }
        if (spec.yz.exact) {
          if (!grid_equal_markings(hyper_project_grid(h, HyperPlane::YZ),
                                   *spec.yz.exact))
            continue;
        } else if (!spec.yz.predicate.empty()) {
          if (!grid_matches_predicate(hyper_project_grid(h, HyperPlane::YZ),
                                      spec.yz.predicate))
            continue;
        }

        TorusClass cls = classify_torus(h);
        ++out.stats.classHistogram[std::string(to_string(cls))];
        if (!class_passes(cls, spec.filter)) continue;
      } catch (const Error&) {
        ++out.stats.classHistogram["error"];
        continue;
      }
      out.hits.emplace_back(i, std::move(h));
    }
  };

  if (spec.jobs == 1) {
    runWorker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < spec.jobs; ++t) pool.emplace_back(runWorker, t);
    for (auto& th : pool) th.join();
  }

  // Deterministic merge by candidate index, then swap-dedupe in that order.
  SearchResult result;
  std::vector<std::pair<long long, HypercubeDiagram>> merged;
  for (auto& out : outs) {
    result.stats.tried += out.stats.tried;
    result.stats.markingValid += out.stats.markingValid;
    result.stats.crossingValid += out.stats.crossingValid;
    for (const auto& [k, v] : out.stats.classHistogram)
      result.stats.classHistogram[k] += v;
    for (auto& hit : out.hits) merged.push_back(std::move(hit));
  }
  std::sort(merged.begin(), merged.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::set<std::string> seen;
  for (auto& [idx, h] : merged)
    if (seen.insert(detail::swap_canonical_key(h)).second)
      result.found.push_back(std::move(h));
  result.budgetExhausted = result.found.empty();
  return result;
}

// ---------------------------------------------------------------------------
// repair_fixture
// ---------------------------------------------------------------------------

namespace detail {

struct RepairTable {
  int size = 0;
  std::array<std::vector<Cell4>*, 4> fams;
};

/** First marking violation of the table, with the edits that could fix it. */
struct RepairBranches {
  bool violated = false;
  // Each branch is one entry edit: (family, index, coord, newValue).
  std::vector<std::array<int, 4>> edits;
};

inline RepairBranches first_violation(int n,
                                      const std::array<std::vector<Cell4>, 4>& fam) {
  RepairBranches out;
  // 1. Entries outside [0, n).
  for (int f = 0; f < 4; ++f)
    for (int i = 0; i < n; ++i)
      for (int cc = 0; cc < 4; ++cc)
        if (fam[f][static_cast<std::size_t>(i)][cc] < 0 ||
            fam[f][static_cast<std::size_t>(i)][cc] >= n) {
          out.violated = true;
          for (int v = 0; v < n; ++v)
            out.edits.push_back({f, i, cc, v});
          return out;
        }
  // 2. Each family's coordinate column must be a permutation: duplicated
  //    values may move to any missing value.
  for (int f = 0; f < 4; ++f)
    for (int cc = 0; cc < 4; ++cc) {
      std::vector<int> count(static_cast<std::size_t>(n), 0);
      for (int i = 0; i < n; ++i)
        ++count[static_cast<std::size_t>(fam[f][static_cast<std::size_t>(i)][cc])];
      std::vector<int> missing;
      for (int v = 0; v < n; ++v)
        if (count[static_cast<std::size_t>(v)] == 0) missing.push_back(v);
      if (missing.empty()) continue;
      out.violated = true;
      for (int i = 0; i < n; ++i)
        if (count[static_cast<std::size_t>(
                fam[f][static_cast<std::size_t>(i)][cc])] > 1)
          for (int v : missing) out.edits.push_back({f, i, cc, v});
      return out;
    }
  // 3. Pairings W→X, X→Y, Y→Z, Z→W: partners share the three off-axis
  //    coordinates and differ on the axis.
  static constexpr int axisOf[4] = {0, 1, 2, 3};  // pairing p runs along axis p
  for (int p = 0; p < 4; ++p) {
    const auto& F = fam[static_cast<std::size_t>(p)];
    const auto& G = fam[static_cast<std::size_t>((p + 1) % 4)];
    const int axis = axisOf[p];
    std::array<int, 3> shared{};
    for (int cc = 0, k = 0; cc < 4; ++cc)
      if (cc != axis) shared[static_cast<std::size_t>(k++)] = cc;

    auto matches = [&](const Cell4& a, const Cell4& b) {
      for (int cc : shared)
        if (a[cc] != b[cc]) return false;
      return true;
    };
    std::vector<int> partner(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (matches(F[static_cast<std::size_t>(i)],
                    G[static_cast<std::size_t>(j)])) {
          partner[static_cast<std::size_t>(i)] = j;
          used[static_cast<std::size_t>(j)] = 1;
          break;
        }
    // Zero-length segments first: fully coincident partners may move either
    // endpoint along the axis.
    for (int i = 0; i < n; ++i) {
      int j = partner[static_cast<std::size_t>(i)];
      if (j < 0) continue;
      if (F[static_cast<std::size_t>(i)][axis] ==
          G[static_cast<std::size_t>(j)][axis]) {
        out.violated = true;
        for (int v = 0; v < n; ++v) {
          if (v != F[static_cast<std::size_t>(i)][axis])
            out.edits.push_back({p, i, axis, v});
          if (v != G[static_cast<std::size_t>(j)][axis])
            out.edits.push_back({(p + 1) % 4, j, axis, v});
        }
        return out;
      }
    }
    // Unmatched cells: align one shared coordinate with some unmatched cell
    // on the other side, in either direction.
    for (int i = 0; i < n; ++i) {
      if (partner[static_cast<std::size_t>(i)] >= 0) continue;
      out.violated = true;
      for (int j = 0; j < n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        for (int cc : shared) {
          const int fv = F[static_cast<std::size_t>(i)][cc];
          const int gv = G[static_cast<std::size_t>(j)][cc];
          if (fv == gv) continue;
          out.edits.push_back({p, i, cc, gv});
          out.edits.push_back({(p + 1) % 4, j, cc, fv});
        }
      }
      return out;
    }
  }
  return out;
}

}  // namespace detail

/**
 * Constraint repair of a possibly-invalid marking table: entries involved in
 * no violation stay fixed; each recursion step spends one entry edit on the
 * first violation found (out-of-range entry, duplicated column value, or
 * broken pairing). Violation-free tables are accepted only if they pass full
 * validation, so crossing conditions act as a final filter rather than a
 * branching point. Returns every distinct completion reachable within
 * `editBudget` single-entry edits, cheapest first; throws
 * NoRepairWithinBudget when there are none and BudgetExhausted if the
 * exploration cap is hit first.
 */
inline std::vector<HypercubeDiagram> repair_fixture(
    const HypercubeDiagram& raw, int editBudget,
    long long nodeCap = 1000000) {
  const int n = raw.size;
  if (n < 2 || raw.W.size() != static_cast<std::size_t>(n) ||
      raw.X.size() != static_cast<std::size_t>(n) ||
      raw.Y.size() != static_cast<std::size_t>(n) ||
      raw.Z.size() != static_cast<std::size_t>(n))
    throw Error(Errc::NoRepairWithinBudget,
                "table is not 4 complete families of size " +
                    std::to_string(n) + "; entry edits cannot restore shape");

  std::array<std::vector<Cell4>, 4> fam = {raw.W, raw.X, raw.Y, raw.Z};
  // Re-expansion is allowed when a table is reached again with more budget
  // left, so recorded edit counts are minimal over all routes.
  std::map<std::string, int> bestLeft;
  std::map<std::string, std::pair<int, HypercubeDiagram>> completions;
  long long nodes = 0;

  auto serialize = [&]() {
    HypercubeDiagram h;
    h.size = n;
    h.W = fam[0];
    h.X = fam[1];
    h.Y = fam[2];
    h.Z = fam[3];
    return detail::serialize_markings(h);
  };

  std::function<void(int)> explore = [&](int editsLeft) {
    if (++nodes > nodeCap)
      throw Error(Errc::BudgetExhausted,
                  "repair explored more than " + std::to_string(nodeCap) +
                      " tables");
    std::string key = serialize();
    auto seen = bestLeft.find(key);
    if (seen != bestLeft.end() && seen->second >= editsLeft) return;
    bestLeft.insert_or_assign(key, editsLeft);

    detail::RepairBranches br = detail::first_violation(n, fam);
    if (!br.violated) {
      try {
        HypercubeDiagram h = validate_hypercube(n, fam[0], fam[1], fam[2], fam[3]);
        int used = editBudget - editsLeft;
        auto it = completions.find(key);
        if (it == completions.end() || used < it->second.first)
          completions.insert_or_assign(key, std::make_pair(used, std::move(h)));
      } catch (const Error&) {
        // marking-consistent but crossing-invalid: dead end
      }
      return;
    }
    if (editsLeft == 0) return;
    for (const auto& e : br.edits) {
      int& slot = fam[static_cast<std::size_t>(e[0])]
                     [static_cast<std::size_t>(e[1])][e[2]];
      const int old = slot;
      slot = e[3];
      explore(editsLeft - 1);
      slot = old;
    }
  };
  explore(editBudget);

  if (completions.empty())
    throw Error(Errc::NoRepairWithinBudget,
                "no valid completion within " + std::to_string(editBudget) +
                    " entry edits");
  std::vector<std::pair<int, HypercubeDiagram>> ranked;
  for (auto& [key, v] : completions)
    ranked.emplace_back(v.first, std::move(v.second));
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<HypercubeDiagram> out;
  for (auto& [edits, h] : ranked) out.push_back(std::move(h));
  return out;
}

// ---------------------------------------------------------------------------
// fixture_report
// ---------------------------------------------------------------------------

/** One projected grid with its link data. */
struct GridSummary {
  GridDiagram grid{2, {0, 1}, {1, 0}, AxisOrder::Standard};
  LinkComponents components;
  std::optional<int> linking;  // set for two-component projections
};

/** Everything the pipeline can say about one diagram, computed in one shot. */
struct FixtureReport {
  int size = 0;
  Hyperlink link;
  GridSummary wx, yz, xy, zw;
  TorusReport torus;
  int horizontalCircles = 0;
  int verticalCircles = 0;
  bool homologyComputed = false;  // false when size exceeds the bound
  HomologyTable tilde;            // via the projected-grid tensor route
  HomologyTable hat;
  long long tildeTotalRank = 0;
  long long hatTotalRank = 0;
  LaurentPoly euler{1};  // Euler characteristic of the reduced table
};

inline GridSummary summarize_projection(const HypercubeDiagram& h,
                                        HyperPlane plane) {
  GridSummary s;
  s.grid = hyper_project_grid(h, plane);
  s.components = trace_components(s.grid);
  if (s.components.count() == 2) s.linking = linking_number(s.grid, 0, 1);
  return s;
}

inline FixtureReport fixture_report(const HypercubeDiagram& h,
                                    int gridSizeBound = 5) {
  FixtureReport r;
  r.size = h.size;
  r.link = trace_hyperlink(h);
  r.wx = summarize_projection(h, HyperPlane::WX);
  r.yz = summarize_projection(h, HyperPlane::YZ);
  r.xy = summarize_projection(h, HyperPlane::XY);
  r.zw = summarize_projection(h, HyperPlane::ZW);
  r.torus = torus_report(h);
  for (const DoublePointCircle& c : r.torus.circles)
    (c.cls == CircleClass::Horizontal ? r.horizontalCircles
                                      : r.verticalCircles)++;
  if (h.size <= gridSizeBound) {
    r.homologyComputed = true;
    r.tilde = hyper_tensor_homology(h, gridSizeBound);
    r.hat = hat_extract(r.tilde, r.link.count(), hyper_hat_exponents(r.link));
    for (const auto& [bg, rank] : r.tilde) r.tildeTotalRank += rank;
    for (const auto& [bg, rank] : r.hat) r.hatTotalRank += rank;
    r.euler = euler_characteristic(r.hat, r.link.count());
  }
  return r;
}

}  // namespace hyperkube
