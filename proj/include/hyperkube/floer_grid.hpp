#pragma once

// Combinatorial bigraded homology of oriented grid diagrams.  Generators are
// permutation states (one point on each horizontal and vertical grid line),
// graded by an integer Maslov degree and one half-integer Alexander degree
// per link component; the differential counts empty rectangles.  Everything
// is exact: Alexander degrees are stored doubled, coefficients live in GF(2),
// and Euler characteristics come out as Laurent polynomials.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperkube/errors.hpp"
#include "hyperkube/grid.hpp"
#include "hyperkube/permutation.hpp"
#include "hyperkube/poly.hpp"

namespace hyperkube {

/** Maslov degree plus one doubled Alexander degree per link component. */
struct Bigrading {
  int maslov = 0;
  std::vector<int> alexander2;  // doubled: value 2A_i at index i

  friend bool operator==(const Bigrading&, const Bigrading&) = default;
  friend bool operator<(const Bigrading& a, const Bigrading& b) {
    if (a.alexander2 != b.alexander2) return a.alexander2 < b.alexander2;
    return a.maslov < b.maslov;
  }
};

/** Planar point with doubled coordinates (integer lattice = even values). */
using DPoint = std::array<int, 2>;

/** #{(a,b) in A×B : a is strictly south-west of b in both coordinates}. */
inline long long pair_count_below(const std::vector<DPoint>& A,
                                  const std::vector<DPoint>& B) {
  long long count = 0;
  for (const DPoint& a : A)
    for (const DPoint& b : B)
      if (a[0] < b[0] && a[1] < b[1]) ++count;
  return count;
}

/** Symmetrised count: pair_count_below(A,B) + pair_count_below(B,A). */
inline long long pair_count_sym(const std::vector<DPoint>& A,
                                const std::vector<DPoint>& B) {
  return pair_count_below(A, B) + pair_count_below(B, A);
}

/** State points (intersection of grid lines) in doubled coordinates. */
inline std::vector<DPoint> state_points(const Perm& s) {
  std::vector<DPoint> pts;
  pts.reserve(s.size());
  for (std::size_t r = 0; r < s.size(); ++r)
    pts.push_back({2 * s[r], 2 * static_cast<int>(r)});
  return pts;
}

/** Cell centres of one marking family in doubled coordinates. */
inline std::vector<DPoint> marking_points(const Perm& cols) {
  std::vector<DPoint> pts;
  pts.reserve(cols.size());
  for (std::size_t r = 0; r < cols.size(); ++r)
    pts.push_back({2 * cols[r] + 1, 2 * static_cast<int>(r) + 1});
  return pts;
}

/** Marking cell centres restricted to the rows of one link component. */
inline std::vector<DPoint> marking_points_of_component(
    const Perm& cols, const LinkComponents& labels, int comp) {
  std::vector<DPoint> pts;
  for (std::size_t r = 0; r < cols.size(); ++r)
    if (labels.componentOfRow[r] == comp)
      pts.push_back({2 * cols[r] + 1, 2 * static_cast<int>(r) + 1});
  return pts;
}

/**
 * Maslov degree of a state, computed from south-west pair counts against the
 * X markings:  M(s) = I(s,s) - I(s,X) - I(X,s) + I(X,X) + 1.
 */
inline int grid_maslov(const GridDiagram& g, const Perm& s) {
  std::vector<DPoint> sp = state_points(s);
  std::vector<DPoint> xp = marking_points(g.xCol);
  long long m = pair_count_below(sp, sp) - pair_count_below(sp, xp) -
                pair_count_below(xp, sp) + pair_count_below(xp, xp) + 1;
  return static_cast<int>(m);
}

/**
 * Doubled Alexander degree of a state for each link component, via the
 * symmetrised pair count of s - (X+Y)/2 against Y^i - X^i, shifted by
 * (n_i - 1)/2.  The arithmetic stays in integers by working with four times
 * the degree, which is provably even.
 */
inline std::vector<int> grid_alexander2(const GridDiagram& g,
                                        const LinkComponents& labels,
                                        const Perm& s) {
  std::vector<DPoint> sp = state_points(s);
  std::vector<DPoint> xAll = marking_points(g.xCol);
  std::vector<DPoint> yAll = marking_points(g.yCol);
  std::vector<int> out(static_cast<std::size_t>(labels.count()));
  for (int i = 0; i < labels.count(); ++i) {
    std::vector<DPoint> xi = marking_points_of_component(g.xCol, labels, i);
    std::vector<DPoint> yi = marking_points_of_component(g.yCol, labels, i);
    long long quad = 2 * (pair_count_sym(sp, yi) - pair_count_sym(sp, xi)) -
                     (pair_count_sym(xAll, yi) - pair_count_sym(xAll, xi) +
                      pair_count_sym(yAll, yi) - pair_count_sym(yAll, xi)) -
                     2 * (labels.markingCount[static_cast<std::size_t>(i)] - 1);
    if (quad % 2 != 0)
      throw Error(Errc::ValidationError,
                  "Alexander degree fell off the half-integer lattice");
    out[static_cast<std::size_t>(i)] = static_cast<int>(quad / 2);
  }
  return out;
}

inline Bigrading grid_gradings(const GridDiagram& g,
                               const LinkComponents& labels, const Perm& s) {
  return Bigrading{grid_maslov(g, s), grid_alexander2(g, labels, s)};
}

/**
 * One of the two rectangles connecting a pair of states that differ by a
 * transposition.  Geometry is cyclic: interior cells occupy rows
 * row0..row0+rowSpan-1 (mod n) and columns col0..col0+colSpan-1 (mod n).
 */
struct GridRect {
  int row0 = 0, rowSpan = 0, col0 = 0, colSpan = 0;
  bool stateEmpty = false;    // no state point strictly inside
  std::vector<int> xRows;     // rows whose X marking lies in the interior
  std::vector<int> yRows;     // rows whose Y marking lies in the interior
};

/**
 * The rectangles leading from state s to state t.  Empty unless the states
 * differ in exactly two rows; then exactly two rectangles are returned (the
 * complementary pair), with s at their lower-left and upper-right corners.
 */
inline std::vector<GridRect> grid_rectangles(const GridDiagram& g,
                                             const Perm& s, const Perm& t) {
  const int n = g.size;
  int r1 = -1, r2 = -1;
  for (int r = 0; r < n; ++r) {
    if (s[r] == t[r]) continue;
    if (r1 < 0)
      r1 = r;
    else if (r2 < 0)
      r2 = r;
    else
      return {};
  }
  if (r2 < 0) return {};
  if (s[r1] != t[r2] || s[r2] != t[r1]) return {};

  const int a = s[r1], b = s[r2];
  auto makeRect = [&](int row0, int rowSpan, int col0, int colSpan) {
    GridRect rect{row0, rowSpan, col0, colSpan, true, {}, {}};
    for (int r = 0; r < n; ++r) {
      if (r == r1 || r == r2) continue;
      int dr = ((r - row0) % n + n) % n;
      int dc = ((s[r] - col0) % n + n) % n;
      if (dr > 0 && dr < rowSpan && dc > 0 && dc < colSpan)
        rect.stateEmpty = false;
    }
    for (int d = 0; d < rowSpan; ++d) {
      int row = (row0 + d) % n;
      if (((g.xCol[row] - col0) % n + n) % n < colSpan)
        rect.xRows.push_back(row);
      if (((g.yCol[row] - col0) % n + n) % n < colSpan)
        rect.yRows.push_back(row);
    }
    return rect;
  };

  const int spanA = ((b - a) % n + n) % n;
  return {makeRect(r1, r2 - r1, a, spanA),
          makeRect(r2, n - (r2 - r1), b, n - spanA)};
}

/**
 * A finite GF(2) chain complex on permutation states with one bigrading per
 * state.  boundary[i] lists the target indices of ∂(state i), already
 * reduced mod 2 and sorted.
 */
struct GradedComplex {
  int size = 0;           // grid size / permutation length
  std::string variant;    // "grid-tilde" or "hyper-tilde"
  std::vector<Perm> states;
  std::vector<Bigrading> gradings;
  std::vector<std::vector<int>> boundary;
  int componentCount = 0;
  std::vector<int> markingCounts;  // markings per link component
};

namespace detail {

/** Sorts, then keeps the entries that occur an odd number of times. */
inline void reduce_mod2(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(v[i]);
    i = j;
  }
  v = std::move(out);
}

inline void check_squared_zero(const std::vector<std::vector<int>>& boundary) {
  std::vector<int> twice;
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    twice.clear();
    for (int j : boundary[i])
      twice.insert(twice.end(), boundary[static_cast<std::size_t>(j)].begin(),
                   boundary[static_cast<std::size_t>(j)].end());
    reduce_mod2(twice);
    if (!twice.empty())
      throw Error(Errc::ValidationError,
                  "differential does not square to zero at state " +
                      std::to_string(i));
  }
}

}  // namespace detail

/**
 * Full rectangle complex of the diagram: every permutation state, with the
 * differential counting empty rectangles containing no marking of either
 * family.  The Maslov degree drops by exactly one and every Alexander degree
 * is preserved across each differential term, and ∂² = 0 is verified.
 * Throws SizeBound when the grid exceeds `sizeBound` (n! states).
 */
inline GradedComplex build_grid_tilde_complex(const GridDiagram& g,
                                              const LinkComponents& labels,
                                              int sizeBound = 8) {
  if (g.size > sizeBound)
    throw Error(Errc::SizeBound,
                "grid size " + std::to_string(g.size) +
                    " exceeds the state-space bound " +
                    std::to_string(sizeBound));
  GradedComplex c;
  c.size = g.size;
  c.variant = "grid-tilde";
  c.states = all_perms(g.size);
  c.componentCount = labels.count();
  c.markingCounts = labels.markingCount;
  c.gradings.reserve(c.states.size());
  for (const Perm& s : c.states) c.gradings.push_back(grid_gradings(g, labels, s));

  c.boundary.resize(c.states.size());
  for (std::size_t i = 0; i < c.states.size(); ++i) {
    const Perm& s = c.states[i];
    std::vector<int>& out = c.boundary[i];
    for (int r1 = 0; r1 < g.size; ++r1)
      for (int r2 = r1 + 1; r2 < g.size; ++r2) {
        Perm t = s;
        std::swap(t[r1], t[r2]);
        for (const GridRect& rect : grid_rectangles(g, s, t))
          if (rect.stateEmpty && rect.xRows.empty() && rect.yRows.empty())
            out.push_back(static_cast<int>(perm_lex_rank(t)));
      }
    detail::reduce_mod2(out);
    for (int j : out) {
      const Bigrading& a = c.gradings[i];
      const Bigrading& b = c.gradings[static_cast<std::size_t>(j)];
      if (a.maslov != b.maslov + 1 || a.alexander2 != b.alexander2)
        throw Error(Errc::ValidationError,
                    "rectangle differential is not homogeneous of degree -1");
    }
  }
  detail::check_squared_zero(c.boundary);
  return c;
}

inline GradedComplex build_grid_tilde_complex(const GridDiagram& g,
                                              int sizeBound = 8) {
  return build_grid_tilde_complex(g, trace_components(g), sizeBound);
}

/** Rank of a GF(2) matrix given as bit-packed rows. */
inline int gf2_rank(std::vector<std::vector<std::uint64_t>> rows) {
  if (rows.empty()) return 0;
  const std::size_t words = rows[0].size();
  int rank = 0;
  std::size_t pivotRow = 0;
  for (std::size_t w = 0; w < words && pivotRow < rows.size(); ++w)
    for (int bit = 0; bit < 64 && pivotRow < rows.size(); ++bit) {
      const std::uint64_t mask = std::uint64_t{1} << bit;
      std::size_t found = pivotRow;
      while (found < rows.size() && !(rows[found][w] & mask)) ++found;
      if (found == rows.size()) continue;
      std::swap(rows[pivotRow], rows[found]);
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (r != pivotRow && (rows[r][w] & mask))
          for (std::size_t k = w; k < words; ++k) rows[r][k] ^= rows[pivotRow][k];
      ++pivotRow;
      ++rank;
    }
  return rank;
}

/** Homology ranks by bigrading: rank > 0 entries only. */
using HomologyTable = std::map<Bigrading, long long>;

/**
 * GF(2) homology of a graded complex.  States are blocked by their Alexander
 * degrees (which the differential preserves), and within each block the rank
 * of each Maslov-graded boundary map is computed by Gaussian elimination.
 */
inline HomologyTable homology_table(const GradedComplex& c) {
  std::map<std::vector<int>, std::map<int, std::vector<int>>> blocks;
  for (std::size_t i = 0; i < c.states.size(); ++i)
    blocks[c.gradings[i].alexander2][c.gradings[i].maslov].push_back(
        static_cast<int>(i));

  HomologyTable table;
  for (const auto& [alex, byMaslov] : blocks) {
    std::map<int, int> boundaryRank;  // maslov m -> rank of ∂ : C_m -> C_{m-1}
    for (const auto& [m, statesAtM] : byMaslov) {
      auto below = byMaslov.find(m - 1);
      if (below == byMaslov.end()) continue;
      std::unordered_map<int, int> columnOf;
      for (std::size_t k = 0; k < below->second.size(); ++k)
        columnOf[below->second[k]] = static_cast<int>(k);
      const std::size_t words = (below->second.size() + 63) / 64;
      std::vector<std::vector<std::uint64_t>> rows(
          statesAtM.size(), std::vector<std::uint64_t>(words, 0));
      bool any = false;
      for (std::size_t r = 0; r < statesAtM.size(); ++r)
        for (int j : c.boundary[static_cast<std::size_t>(statesAtM[r])]) {
          int col = columnOf.at(j);
          rows[r][static_cast<std::size_t>(col) / 64] ^=
              std::uint64_t{1} << (col % 64);
          any = true;
        }
      if (any) boundaryRank[m] = gf2_rank(std::move(rows));
    }
    for (const auto& [m, statesAtM] : byMaslov) {
      auto rk = [&](int mm) {
        auto it = boundaryRank.find(mm);
        return it == boundaryRank.end() ? 0 : it->second;
      };
      long long rank =
          static_cast<long long>(statesAtM.size()) - rk(m) - rk(m + 1);
      if (rank < 0)
        throw Error(Errc::ValidationError, "negative homology rank");
      if (rank > 0) table[Bigrading{m, alex}] = rank;
    }
  }
  return table;
}

/**
 * Poincaré polynomial of a homology table in variables q, a_1..a_ℓ.  All
 * exponents are doubled: the q-exponent of a term is 2·maslov and the
 * a_i-exponent is the doubled Alexander degree itself.
 */
inline LaurentPoly poincare_polynomial(const HomologyTable& table,
                                       int componentCount) {
  LaurentPoly p(1 + componentCount);
  for (const auto& [bg, rank] : table) {
    std::vector<int> e(static_cast<std::size_t>(1 + componentCount), 0);
    e[0] = 2 * bg.maslov;
    for (int i = 0; i < componentCount; ++i)
      e[static_cast<std::size_t>(1 + i)] = bg.alexander2[static_cast<std::size_t>(i)];
    p.add(e, rank);
  }
  return p;
}

/** Graded tensor product: Maslov degrees add, Alexander degrees add. */
inline HomologyTable tensor_tables(const HomologyTable& a,
                                   const HomologyTable& b) {
  HomologyTable out;
  for (const auto& [ga, ra] : a)
    for (const auto& [gb, rb] : b) {
      if (ga.alexander2.size() != gb.alexander2.size())
        throw Error(Errc::ValidationError,
                    "tensor factors disagree on component count");
      Bigrading g{ga.maslov + gb.maslov, ga.alexander2};
      for (std::size_t i = 0; i < g.alexander2.size(); ++i)
        g.alexander2[i] += gb.alexander2[i];
      out[g] += ra * rb;
    }
  return out;
}

/**
 * Removes `factorExponents[i]` tensor factors of the two-dimensional piece
 * spanned by degrees (0,0) and (-1, -e_i) from a homology table; the input
 * must factor exactly (positive integer ranks), else InexactDivision.
 */
inline HomologyTable hat_extract(const HomologyTable& table, int componentCount,
                                 const std::vector<int>& factorExponents) {
  LaurentPoly p = poincare_polynomial(table, componentCount);
  for (int i = 0; i < componentCount; ++i) {
    std::vector<int> e(static_cast<std::size_t>(1 + componentCount), 0);
    e[0] = -2;
    e[static_cast<std::size_t>(1 + i)] = -2;
    LaurentPoly factor = LaurentPoly::constant(1 + componentCount, 1) +
                         LaurentPoly::monomial(std::move(e), 1);
    p = p.dividedBy(factor.pow(factorExponents[static_cast<std::size_t>(i)]));
  }
  HomologyTable out;
  for (const auto& [e, coeff] : p.terms()) {
    if (coeff < 0 || e[0] % 2 != 0)
      throw Error(Errc::InexactDivision,
                  "homology table does not factor through the stabilisation "
                  "pieces");
    Bigrading bg{e[0] / 2, std::vector<int>(e.begin() + 1, e.end())};
    out[bg] = coeff;
  }
  return out;
}

/**
 * Graded Euler characteristic Σ (-1)^maslov · rank · t^alexander as a Laurent
 * polynomial in t_1..t_ℓ with doubled exponents.
 */
inline LaurentPoly euler_characteristic(const HomologyTable& table,
                                        int componentCount) {
  LaurentPoly p(componentCount);
  for (const auto& [bg, rank] : table)
    p.add(bg.alexander2, bg.maslov % 2 == 0 ? rank : -rank);
  return p;
}

/** Chain-level Euler characteristic straight from the generator gradings. */
inline LaurentPoly euler_characteristic(const GradedComplex& c) {
  LaurentPoly p(c.componentCount);
  for (const Bigrading& bg : c.gradings)
    p.add(bg.alexander2, bg.maslov % 2 == 0 ? 1 : -1);
  return p;
}

/**
 * Alexander polynomial of the link encoded by the grid, normalised to be
 * symmetric under inverting the variables with positive leading coefficient.
 * For a single component this is the Euler characteristic of the reduced
 * homology; for several, that Euler characteristic additionally divides by
 * one factor of (t_i^{1/2} - t_i^{-1/2}) per component.
 */
inline LaurentPoly grid_alexander_polynomial(const GridDiagram& g,
                                             int sizeBound = 8) {
  LinkComponents labels = trace_components(g);
  GradedComplex c = build_grid_tilde_complex(g, labels, sizeBound);
  HomologyTable full = homology_table(c);
  std::vector<int> vexp(labels.markingCount.size());
  for (std::size_t i = 0; i < vexp.size(); ++i)
    vexp[i] = labels.markingCount[i] - 1;
  HomologyTable hat = hat_extract(full, labels.count(), vexp);
  LaurentPoly chi = euler_characteristic(hat, labels.count());
  if (labels.count() > 1) {
    for (int i = 0; i < labels.count(); ++i) {
      std::vector<int> up(static_cast<std::size_t>(labels.count()), 0);
      std::vector<int> down = up;
      up[static_cast<std::size_t>(i)] = 1;
      down[static_cast<std::size_t>(i)] = -1;
      LaurentPoly factor = LaurentPoly::monomial(std::move(up), 1) -
                           LaurentPoly::monomial(std::move(down), 1);
      chi = chi.dividedBy(factor);
    }
  }
  return chi.zero() ? chi : chi.normalizedSymmetric();
}

/** One monomial-weighted differential term between two states. */
struct MinusTransition {
  int from = 0;
  int to = 0;
  std::uint64_t monomial = 0;  // 4-bit packed exponent per variable

  friend bool operator==(const MinusTransition&, const MinusTransition&) = default;
};

/** Symbolic differential with polynomial weights over the marking variables. */
struct MinusModel {
  std::size_t stateCount = 0;
  int varCount = 0;
  std::vector<MinusTransition> terms;
};

/**
 * Weighted rectangle differential: every empty rectangle contributes, with
 * monomial recording which X markings it covers (one variable per row).
 * Throws SizeBound above `sizeBound`, and ValidationError when the packed
 * monomial representation cannot hold the variables.
 */
inline MinusModel grid_minus_differential(const GridDiagram& g,
                                          int sizeBound = 5) {
  if (g.size > sizeBound)
    throw Error(Errc::SizeBound,
                "grid size " + std::to_string(g.size) +
                    " exceeds the state-space bound " +
                    std::to_string(sizeBound));
  if (4 * g.size > 48)
    throw Error(Errc::ValidationError,
                "too many marking variables for packed monomials");
  MinusModel model;
  model.varCount = g.size;
  std::vector<Perm> states = all_perms(g.size);
  model.stateCount = states.size();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Perm& s = states[i];
    for (int r1 = 0; r1 < g.size; ++r1)
      for (int r2 = r1 + 1; r2 < g.size; ++r2) {
        Perm t = s;
        std::swap(t[r1], t[r2]);
        for (const GridRect& rect : grid_rectangles(g, s, t)) {
          if (!rect.stateEmpty) continue;
          std::uint64_t mono = 0;
          for (int row : rect.xRows)
            mono += std::uint64_t{1} << (4 * row);
          model.terms.push_back(MinusTransition{
              static_cast<int>(i), static_cast<int>(perm_lex_rank(t)), mono});
        }
      }
  }
  return model;
}

/**
 * Checks ∂² = 0 for a monomial-weighted GF(2) differential: every composite
 * (target state, product monomial) must occur an even number of times.
 */
inline bool d_squared_zero(const MinusModel& model) {
  int stateBits = 1;
  while ((std::size_t{1} << stateBits) < model.stateCount) ++stateBits;
  if (4 * model.varCount + stateBits > 64)
    throw Error(Errc::ValidationError,
                "state/monomial key does not fit in 64 bits");
  std::vector<std::vector<std::pair<int, std::uint64_t>>> outgoing(
      model.stateCount);
  for (const MinusTransition& term : model.terms)
    outgoing[static_cast<std::size_t>(term.from)].emplace_back(term.to,
                                                               term.monomial);
  std::unordered_map<std::uint64_t, int> parity;
  for (std::size_t s = 0; s < model.stateCount; ++s) {
    parity.clear();
    for (const auto& [t, m1] : outgoing[s])
      for (const auto& [u, m2] : outgoing[static_cast<std::size_t>(t)]) {
        // exponents per variable are at most 1 per rectangle, so adding the
        // packed monomials cannot carry between 4-bit fields
        std::uint64_t key =
            (static_cast<std::uint64_t>(u) << (4 * model.varCount)) |
            (m1 + m2);
        ++parity[key];
      }
    for (const auto& [key, count] : parity)
      if (count % 2 != 0) return false;
  }
  return true;
}

/** Builds the weighted differential for the grid and checks it squares to 0. */
inline bool verify_minus_d_squared(const GridDiagram& g, int sizeBound = 5) {
  return d_squared_zero(grid_minus_differential(g, sizeBound));
}

}  // namespace hyperkube
