#pragma once

// Bigraded homology of hypercube diagrams.  Generators are 4D states — n
// lattice points (w_k, k, y_k, k) whose wx- and yz-projections are grid
// states — and the differential moves one projection at a time through empty,
// marking-free rectangles.  The resulting complex is the graded tensor
// product of the two projected grid complexes, which the size-capped direct
// construction lets us verify at small n and exploit at large n.

#include <algorithm>
#include <string>
#include <vector>

#include "hyperkube/errors.hpp"
#include "hyperkube/floer_grid.hpp"
#include "hyperkube/hypercube.hpp"

namespace hyperkube {

/**
 * A 4D state: point k sits at (w[k], k, y[k], k), so the x- and z-coordinates
 * agree and each projection uses every line exactly once.  `w` is the
 * wx-projected grid state and `y` the yz-projected one, both indexed by the
 * shared x = z value.
 */
struct HyperState {
  Perm w, y;

  std::vector<Cell4> points() const {
    std::vector<Cell4> out;
    out.reserve(w.size());
    for (std::size_t k = 0; k < w.size(); ++k)
      out.push_back(Cell4{w[k], static_cast<int>(k), y[k], static_cast<int>(k)});
    return out;
  }

  friend bool operator==(const HyperState&, const HyperState&) = default;
};

/** Pairs two grid states (wx and yz) into the 4D state they determine. */
inline HyperState hyper_state_combine(Perm wxState, Perm yzState) {
  if (wxState.size() != yzState.size())
    throw Error(Errc::ValidationError, "projected states disagree on size");
  return HyperState{std::move(wxState), std::move(yzState)};
}

inline const Perm& hyper_state_wx(const HyperState& s) { return s.w; }
inline const Perm& hyper_state_yz(const HyperState& s) { return s.y; }

/** All (n!)² 4D states, ordered by (wx rank, yz rank) lexicographically. */
inline std::vector<HyperState> hyper_state_space(int n, int sizeBound = 5) {
  if (n > sizeBound)
    throw Error(Errc::SizeBound, "state space bound exceeded at size " +
                                     std::to_string(n));
  std::vector<Perm> perms = all_perms(n);
  std::vector<HyperState> out;
  out.reserve(perms.size() * perms.size());
  for (const Perm& a : perms)
    for (const Perm& b : perms) out.push_back(HyperState{a, b});
  return out;
}

/**
 * The two grid projections of a hypercube diagram together with link
 * component labels numbered consistently on both sides: grid row components
 * are indexed by the 4D link component that passes through them.
 */
struct AlignedProjections {
  GridDiagram wx, yz;
  LinkComponents wxLabels, yzLabels;
  Hyperlink link;
};

namespace detail {

/** Checks that two row partitions of {0..n-1} are equal up to renumbering. */
inline void check_same_partition(const std::vector<int>& a,
                                 const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if ((a[i] == a[j]) != (b[i] == b[j]))
        throw Error(Errc::ValidationError,
                    "component labels transported from 4D disagree with the "
                    "projected diagram's own components");
}

inline LinkComponents labels_from_rows(const std::vector<int>& componentOfRow,
                                       const std::vector<int>& markingCount) {
  LinkComponents out;
  out.componentOfRow = componentOfRow;
  out.markingCount = markingCount;
  out.components.resize(markingCount.size());
  for (std::size_t r = 0; r < componentOfRow.size(); ++r)
    out.components[static_cast<std::size_t>(componentOfRow[r])].push_back(
        static_cast<int>(r));
  return out;
}

}  // namespace detail

inline AlignedProjections hyper_aligned_projections(const HypercubeDiagram& h) {
  AlignedProjections out;
  out.wx = hyper_project_grid(h, HyperPlane::WX);
  out.yz = hyper_project_grid(h, HyperPlane::YZ);
  out.link = trace_hyperlink(h);

  const int n = h.size;
  std::vector<int> wxRows(static_cast<std::size_t>(n), -1);
  std::vector<int> yzRows(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    // the wx grid is indexed by x-coordinates; W[i] sits in row W[i][1]
    wxRows[static_cast<std::size_t>(h.W[static_cast<std::size_t>(i)][1])] =
        out.link.componentOfW[static_cast<std::size_t>(i)];
  }
  for (int j = 0; j < n; ++j) {
    // the yz grid is indexed by z-coordinates; follow Y[j] through the chain
    // to the W marking on the same loop
    int wIndex = h.zwPair[static_cast<std::size_t>(
        h.yzPair[static_cast<std::size_t>(j)])];
    yzRows[static_cast<std::size_t>(h.Y[static_cast<std::size_t>(j)][3])] =
        out.link.componentOfW[static_cast<std::size_t>(wIndex)];
  }
  for (int v : wxRows)
    if (v < 0)
      throw Error(Errc::ValidationError, "x-coordinates do not cover all rows");
  for (int v : yzRows)
    if (v < 0)
      throw Error(Errc::ValidationError, "z-coordinates do not cover all rows");

  detail::check_same_partition(trace_components(out.wx).componentOfRow, wxRows);
  detail::check_same_partition(trace_components(out.yz).componentOfRow, yzRows);

  out.wxLabels = detail::labels_from_rows(wxRows, out.link.markingCount);
  out.yzLabels = detail::labels_from_rows(yzRows, out.link.markingCount);
  return out;
}

/** Sum of the two projected gradings, components matched through 4D. */
inline Bigrading hyper_gradings(const HypercubeDiagram& h, const HyperState& s) {
  AlignedProjections p = hyper_aligned_projections(h);
  Bigrading a = grid_gradings(p.wx, p.wxLabels, s.w);
  Bigrading b = grid_gradings(p.yz, p.yzLabels, s.y);
  Bigrading out{a.maslov + b.maslov, a.alexander2};
  for (std::size_t i = 0; i < out.alexander2.size(); ++i)
    out.alexander2[i] += b.alexander2[i];
  return out;
}

/**
 * Direct 4D complex: generators are all (n!)² states, and the boundary moves
 * either the wx-projection or the yz-projection through an empty rectangle
 * free of both marking families on that side, leaving the other projection
 * fixed.  State index = (wx state rank)·n! + (yz state rank); the stored
 * state vectors are the concatenation w ⧺ y.  Throws SizeBound above
 * `sizeBound` (default 5, i.e. 14400 generators).
 */
inline GradedComplex build_hyper_tilde_complex(const HypercubeDiagram& h,
                                               int sizeBound = 5) {
  if (h.size > sizeBound)
    throw Error(Errc::SizeBound,
                "hypercube size " + std::to_string(h.size) +
                    " exceeds the direct-computation bound " +
                    std::to_string(sizeBound));
  AlignedProjections p = hyper_aligned_projections(h);
  GradedComplex cw = build_grid_tilde_complex(p.wx, p.wxLabels, sizeBound);
  GradedComplex cy = build_grid_tilde_complex(p.yz, p.yzLabels, sizeBound);
  const std::size_t F = cy.states.size();

  GradedComplex out;
  out.size = h.size;
  out.variant = "hyper-tilde";
  out.componentCount = p.link.count();
  out.markingCounts = p.link.markingCount;
  out.states.reserve(cw.states.size() * F);
  out.gradings.reserve(cw.states.size() * F);
  out.boundary.resize(cw.states.size() * F);
  for (std::size_t i = 0; i < cw.states.size(); ++i)
    for (std::size_t j = 0; j < F; ++j) {
      Perm cat = cw.states[i];
      cat.insert(cat.end(), cy.states[j].begin(), cy.states[j].end());
      out.states.push_back(std::move(cat));
      Bigrading bg{cw.gradings[i].maslov + cy.gradings[j].maslov,
                   cw.gradings[i].alexander2};
      for (std::size_t c = 0; c < bg.alexander2.size(); ++c)
        bg.alexander2[c] += cy.gradings[j].alexander2[c];
      out.gradings.push_back(std::move(bg));

      std::vector<int>& bd = out.boundary[i * F + j];
      for (int i2 : cw.boundary[i])
        bd.push_back(static_cast<int>(static_cast<std::size_t>(i2) * F + j));
      for (int j2 : cy.boundary[j])
        bd.push_back(static_cast<int>(i * F + static_cast<std::size_t>(j2)));
      std::sort(bd.begin(), bd.end());
    }
  detail::check_squared_zero(out.boundary);
  return out;
}

/**
 * Homology of the 4D complex computed through the graded tensor product of
 * the two projected grid tables; valid at any size the grid computation can
 * reach, and checked against the direct construction at small n.
 */
inline HomologyTable hyper_tensor_homology(const HypercubeDiagram& h,
                                           int gridSizeBound = 8) {
  AlignedProjections p = hyper_aligned_projections(h);
  HomologyTable tw =
      homology_table(build_grid_tilde_complex(p.wx, p.wxLabels, gridSizeBound));
  HomologyTable ty =
      homology_table(build_grid_tilde_complex(p.yz, p.yzLabels, gridSizeBound));
  return tensor_tables(tw, ty);
}

/** V-factor exponents for reducing a 4D table: 2·n_i − 2 per component. */
inline std::vector<int> hyper_hat_exponents(const Hyperlink& link) {
  std::vector<int> out(link.markingCount.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = 2 * link.markingCount[i] - 2;
  return out;
}

/** Reduced 4D homology table, via the tensor route. */
inline HomologyTable hyper_hat_table(const HypercubeDiagram& h,
                                     int gridSizeBound = 8) {
  Hyperlink link = trace_hyperlink(h);
  return hat_extract(hyper_tensor_homology(h, gridSizeBound), link.count(),
                     hyper_hat_exponents(link));
}

/**
 * Weighted 4D differential over one variable per W marking (slots 0..n-1 by
 * grid row) and per Y marking (slots n..2n-1): every empty wx-rectangle
 * contributes with its covered W markings, every empty yz-rectangle with its
 * covered Y markings.
 */
inline MinusModel hyper_minus_differential(const HypercubeDiagram& h,
                                           int sizeBound = 5) {
  if (h.size > sizeBound)
    throw Error(Errc::SizeBound,
                "hypercube size " + std::to_string(h.size) +
                    " exceeds the direct-computation bound " +
                    std::to_string(sizeBound));
  AlignedProjections p = hyper_aligned_projections(h);
  const int n = h.size;
  if (4 * 2 * n > 48)
    throw Error(Errc::ValidationError,
                "too many marking variables for packed monomials");
  MinusModel wxModel = grid_minus_differential(p.wx, sizeBound);
  MinusModel yzModel = grid_minus_differential(p.yz, sizeBound);

  MinusModel out;
  out.varCount = 2 * n;
  const std::size_t F = yzModel.stateCount;
  out.stateCount = wxModel.stateCount * F;
  for (const MinusTransition& t : wxModel.terms)
    for (std::size_t j = 0; j < F; ++j)
      out.terms.push_back(MinusTransition{
          static_cast<int>(static_cast<std::size_t>(t.from) * F + j),
          static_cast<int>(static_cast<std::size_t>(t.to) * F + j), t.monomial});
  for (std::size_t i = 0; i < wxModel.stateCount; ++i)
    for (const MinusTransition& t : yzModel.terms)
      out.terms.push_back(
          MinusTransition{static_cast<int>(i * F + static_cast<std::size_t>(t.from)),
                          static_cast<int>(i * F + static_cast<std::size_t>(t.to)),
                          t.monomial << (4 * n)});
  return out;
}

/** Builds the weighted 4D differential and checks it squares to zero. */
inline bool verify_minus_d_squared(const HypercubeDiagram& h,
                                   int sizeBound = 5) {
  return d_squared_zero(hyper_minus_differential(h, sizeBound));
}

}  // namespace hyperkube
