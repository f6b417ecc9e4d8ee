#pragma once

// Small permutation helpers used across diagrams (marking columns, hyperlink
// traversal, state enumeration). A permutation of {0..n-1} is stored as a
// vector `p` with p[i] = image of i.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace hyperkube {

using Perm = std::vector<int>;

inline bool is_permutation_vec(const Perm& p) {
  const int n = static_cast<int>(p.size());
  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (int v : p) {
    if (v < 0 || v >= n || seen[static_cast<size_t>(v)]) return false;
    seen[static_cast<size_t>(v)] = 1;
  }
  return true;
}

inline Perm identity_perm(int n) {
  Perm p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Perm inverse_perm(const Perm& p) {
  Perm q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[static_cast<size_t>(p[i])] = static_cast<int>(i);
  return q;
}

/** Composition (f∘g)(i) = f[g[i]]. */
inline Perm compose_perm(const Perm& f, const Perm& g) {
  Perm r(g.size());
  for (size_t i = 0; i < g.size(); ++i) r[i] = f[static_cast<size_t>(g[i])];
  return r;
}

/** Cycle decomposition; each cycle lists its elements in traversal order. */
inline std::vector<std::vector<int>> perm_cycles(const Perm& p) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(p.size(), 0);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> cyc;
    int j = static_cast<int>(i);
    while (!seen[static_cast<size_t>(j)]) {
      seen[static_cast<size_t>(j)] = 1;
      cyc.push_back(j);
      j = p[static_cast<size_t>(j)];
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

/**
 * Rank of `p` among all permutations of its length in lexicographic order
 * (the order produced by all_perms / std::next_permutation from identity).
 */
inline std::size_t perm_lex_rank(const Perm& p) {
  const std::size_t n = p.size();
  std::size_t fact = 1;
  for (std::size_t k = 2; k < n; ++k) fact *= k;  // (n-1)!
  std::size_t rank = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t smallerRight = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (p[j] < p[i]) ++smallerRight;
    rank += smallerRight * fact;
    fact /= n - 1 - i;
  }
  return rank;
}

inline Perm random_perm(int n, std::mt19937_64& rng) {
  Perm p = identity_perm(n);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/** Enumerate all permutations of {0..n-1} in lexicographic order. */
inline std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = identity_perm(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace hyperkube
