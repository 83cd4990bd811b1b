#pragma once

// Single-layer polytope code: integer linear encoding with Gram side
// information, majority recovery of the Gram table, and the syndrome-graph
// decoder that certifies a subset of received packets as unaltered.

#include "polytope/genmatrix.hpp"
#include "polytope/gram.hpp"
#include "polytope/integer.hpp"
#include "polytope/source_packets.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace polytope {

/// F(T) = T + floor(T^2 / 4) + 1: the decoder certifies at least N - F(T)
/// packets whenever at most T are altered and N >= F(T) + 1.
[[nodiscard]] constexpr std::size_t max_untrusted(std::size_t t) { return t + t * t / 4 + 1; }

/// What travels on one path: a codeword and a copy of the source Gram table.
struct Packet {
  IntVector codeword;
  GramTable gram;

  friend bool operator==(const Packet&, const Packet&) = default;
};

struct TransmittedBundle {
  GeneratorMatrix generator;
  GramTable gram;        // source rows, (N-T) x (N-T)
  IntMatrix codewords;   // N x N0, row i is y_i = sum_j A_ij x_j

  [[nodiscard]] std::vector<Packet> packets() const;
};

struct ReceivedBundle {
  std::vector<Packet> packets;
};

[[nodiscard]] TransmittedBundle encode(const IntMatrix& source_rows, const GeneratorMatrix& a);
[[nodiscard]] TransmittedBundle encode(const SourceBlock& x, const GeneratorMatrix& a);

/// The bundle as received with no interference.
[[nodiscard]] ReceivedBundle deliver(const TransmittedBundle& bundle);

/// Entry-wise strict majority over Gram copies. Copies of the wrong size
/// count as votes for nothing. Throws BudgetViolation if some entry has no
/// strict majority.
[[nodiscard]] GramTable majority_gram(std::span<const GramTable> copies, std::size_t size);

/// Majority-recovers the source Gram table and extends it to all packets via
/// A F A^T. Requires N >= 2T + 1.
[[nodiscard]] GramTable recover_gram(const ReceivedBundle& received, const GeneratorMatrix& a);

/// Graph on received packets. Vertices are limited to 64.
class SyndromeGraph {
 public:
  SyndromeGraph() = default;
  explicit SyndromeGraph(std::size_t vertices);

  [[nodiscard]] std::size_t vertex_count() const noexcept { return vertices_; }
  [[nodiscard]] bool has_loop(std::size_t v) const { return (loops_ >> v) & 1U; }
  [[nodiscard]] bool has_edge(std::size_t a, std::size_t b) const { return (adjacency_[a] >> b) & 1U; }
  [[nodiscard]] std::uint64_t neighbours(std::size_t v) const { return adjacency_[v]; }
  [[nodiscard]] std::uint64_t loop_mask() const noexcept { return loops_; }

  void set_loop(std::size_t v, bool present = true);
  void set_edge(std::size_t a, std::size_t b, bool present = true);

  /// Keeps an edge or loop only if present in both graphs.
  [[nodiscard]] SyndromeGraph intersect(const SyndromeGraph& other) const;

  friend bool operator==(const SyndromeGraph&, const SyndromeGraph&) = default;

 private:
  std::size_t vertices_ = 0;
  std::uint64_t loops_ = 0;
  std::vector<std::uint64_t> adjacency_;
};

/// Edge (i, j), i != j, iff <y_i, y_j> = F_ij; self-loop iff ||y_i||^2 = F_ii.
[[nodiscard]] SyndromeGraph build_syndrome_graph(const ReceivedBundle& received, const GramTable& extended);

/// Generic form: `consistent(i, j)` for i <= j decides the loop (i == j) or edge.
template <typename Consistent>
[[nodiscard]] SyndromeGraph build_syndrome_graph(std::size_t n, Consistent&& consistent) {
  SyndromeGraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (consistent(i, j)) {
        if (i == j) g.set_loop(i);
        else g.set_edge(i, j);
      }
  return g;
}

struct TrustedSet {
  std::vector<std::size_t> looped;          // vertices surviving loop deletion
  std::vector<std::size_t> clique_members;  // V': in a clique of size >= N - T
  std::vector<std::size_t> trusted;         // V*: adjacent to every member of V'
  bool no_clique = false;                   // V' empty (only under budget violation)
};

/// Decoder steps on the syndrome graph: delete loopless vertices, collect
/// members of cliques of size >= N - T, keep those adjacent to all of them.
/// Clique membership is an exhaustive search with core pruning, exponential
/// in the worst case; N is the number of paths and stays small.
[[nodiscard]] TrustedSet trusted_set(const SyndromeGraph& g, std::size_t t);

/// True iff some clique of size `size` inside `allowed` contains `v`.
[[nodiscard]] bool in_clique_of_size(const SyndromeGraph& g, std::uint64_t allowed, std::size_t v,
                                     std::size_t size);

struct DecodeReport {
  GramTable gram;  // extended over all N packets
  SyndromeGraph graph;
  TrustedSet trusted;
};

[[nodiscard]] DecodeReport decode(const ReceivedBundle& received, const GeneratorMatrix& a);

}  // namespace polytope
