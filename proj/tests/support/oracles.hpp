#pragma once

// Independent reference computations. None of these call the library
// routine they are compared against; they trade speed for obviousness.

#include "polytope/integer.hpp"
#include "polytope/max_flow.hpp"
#include "polytope/polytope_codec.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace polytope::testing {

/// Leibniz expansion over all permutations.
inline Integer leibniz_determinant(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Integer total = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Integer term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += inversions % 2 == 0 ? term : Integer(-term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Cross product of the two rows of a 2 x 3 matrix.
inline IntVector cross_product(const IntMatrix& m) {
  return {m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1), m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2),
          m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)};
}

/// Minimum s-t cut by enumerating every vertex subset containing s.
inline std::int64_t brute_min_cut(const FlowNetwork& net, std::size_t s, std::size_t t) {
  const std::size_t n = net.vertex_count();
  std::int64_t best = -1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (!((mask >> s) & 1U) || ((mask >> t) & 1U)) continue;
    std::int64_t cut = 0;
    for (const auto& e : net.edges())
      if (((mask >> e.from) & 1U) && !((mask >> e.to) & 1U)) cut += e.capacity;
    if (best < 0 || cut < best) best = cut;
  }
  return best;
}

struct BruteTrusted {
  std::vector<std::size_t> clique_members;
  std::vector<std::size_t> trusted;
};

/// Decoder steps by definition: every subset of looped vertices of size at
/// least N - T that is a clique contributes its members to V'; V* keeps the
/// members of V' adjacent to every other member.
inline BruteTrusted brute_trusted_set(const SyndromeGraph& g, std::size_t t) {
  const std::size_t n = g.vertex_count();
  std::uint64_t members = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) < n - t) continue;
    bool clique = true;
    for (std::size_t a = 0; a < n && clique; ++a) {
      if (!((mask >> a) & 1U)) continue;
      if (!g.has_loop(a)) clique = false;
      for (std::size_t b = a + 1; b < n && clique; ++b)
        if (((mask >> b) & 1U) && !g.has_edge(a, b)) clique = false;
    }
    if (clique) members |= mask;
  }
  BruteTrusted out;
  for (std::size_t v = 0; v < n; ++v)
    if ((members >> v) & 1U) out.clique_members.push_back(v);
  for (std::size_t v : out.clique_members) {
    bool all = true;
    for (std::size_t u : out.clique_members)
      if (u != v && !g.has_edge(u, v)) all = false;
    if (all) out.trusted.push_back(v);
  }
  return out;
}

/// Straight line through (x0, y0) and (x1, y1) evaluated at x.
inline Rational line_through(const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1,
                             const Rational& x) {
  Rational v = y0 + (y1 - y0) * (x - x0) / (x1 - x0);
  v.canonicalize();
  return v;
}

/// Smallest e with k^e >= x by repeated multiplication.
inline std::size_t ceil_log_by_powers(unsigned k, const Integer& x) {
  std::size_t e = 0;
  Integer p = 1;
  while (p < x) {
    p *= k;
    ++e;
  }
  return e;
}

/// Per-packet symbols of one layer: N0 codeword entries of K0 +
/// ceil(log_K(alpha_max (N - T))) digits, then (N-T)(N-T+1)/2 Gram entries of
/// 2 K0 + ceil(log_K N0) digits; rate divides by the K0 N0 (N - T) source
/// symbols carried per layer.
inline Rational expanded_rate(std::size_t n, std::size_t t, unsigned k, std::size_t k0, std::size_t n0,
                              const Integer& alpha_max) {
  const std::size_t m = n - t;
  const std::size_t entry = k0 + ceil_log_by_powers(k, alpha_max * static_cast<unsigned long>(m));
  const std::size_t gram = 2 * k0 + ceil_log_by_powers(k, Integer(static_cast<unsigned long>(n0)));
  const std::size_t total = n0 * entry + (m * (m + 1) / 2) * gram;
  Rational r(static_cast<unsigned long>(total), static_cast<unsigned long>(k0 * n0 * m));
  r.canonicalize();
  return r;
}

}  // namespace polytope::testing
