#include "polytope/polytope_codec.hpp"

#include "polytope/error.hpp"

#include <bit>
#include <string>

namespace polytope {

namespace {

constexpr std::size_t kMaxVertices = 64;

std::uint64_t bit(std::size_t v) { return std::uint64_t{1} << v; }

std::uint64_t all_bits(std::size_t n) { return n == kMaxVertices ? ~std::uint64_t{0} : bit(n) - 1; }

// Depth-first search for `need` more vertices of `cand` forming a clique
// with whatever has been chosen so far (cand is already restricted to common
// neighbours of the chosen vertices).
bool has_clique(const SyndromeGraph& g, std::uint64_t cand, std::size_t need) {
  if (need == 0) return true;
  while (cand != 0) {
    if (static_cast<std::size_t>(std::popcount(cand)) < need) return false;
    const auto u = static_cast<std::size_t>(std::countr_zero(cand));
    cand &= cand - 1;
    if (has_clique(g, cand & g.neighbours(u), need - 1)) return true;
  }
  return false;
}

// Iteratively drops vertices with fewer than size - 1 neighbours inside the
// mask; no clique of `size` can use them.
std::uint64_t core_prune(const SyndromeGraph& g, std::uint64_t mask, std::size_t size) {
  if (size <= 1) return mask;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(rest));
      if (static_cast<std::size_t>(std::popcount(g.neighbours(v) & mask)) + 1 < size) {
        mask &= ~bit(v);
        changed = true;
      }
    }
  }
  return mask;
}

std::vector<std::size_t> members(std::uint64_t mask) {
  std::vector<std::size_t> out;
  for (; mask != 0; mask &= mask - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
  return out;
}

}  // namespace

std::vector<Packet> TransmittedBundle::packets() const {
  std::vector<Packet> out;
  out.reserve(codewords.rows());
  for (std::size_t i = 0; i < codewords.rows(); ++i) out.push_back({codewords.row_vector(i), gram});
  return out;
}

TransmittedBundle encode(const IntMatrix& source_rows, const GeneratorMatrix& a) {
  if (a.rows.cols() != source_rows.rows())
    throw ParameterError("encode: generator has " + std::to_string(a.rows.cols()) + " columns but source has " +
                         std::to_string(source_rows.rows()) + " rows");
  return {a, GramTable::of_rows(source_rows), multiply(a.rows, source_rows)};
}

TransmittedBundle encode(const SourceBlock& x, const GeneratorMatrix& a) { return encode(x.rows, a); }

ReceivedBundle deliver(const TransmittedBundle& bundle) { return {bundle.packets()}; }

GramTable majority_gram(std::span<const GramTable> copies, std::size_t size) {
  GramTable out(size);
  const std::size_t n = copies.size();
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i; j < size; ++j) {
      // Boyer-Moore vote, then confirm the candidate holds a strict majority.
      const Integer* candidate = nullptr;
      std::size_t weight = 0;
      for (const auto& c : copies) {
        if (c.size() != size) continue;
        const Integer& v = c.at(i, j);
        if (weight == 0) {
          candidate = &v;
          weight = 1;
        } else if (*candidate == v) {
          ++weight;
        } else {
          --weight;
        }
      }
      std::size_t votes = 0;
      if (candidate != nullptr)
        for (const auto& c : copies)
          if (c.size() == size && c.at(i, j) == *candidate) ++votes;
      if (2 * votes <= n)
        throw BudgetViolation("no strict majority on Gram entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ")");
      out.set(i, j, *candidate);
    }
  }
  return out;
}

GramTable recover_gram(const ReceivedBundle& received, const GeneratorMatrix& a) {
  if (received.packets.size() != a.n_packets) throw ParameterError("recover_gram: packet count differs from N");
  if (a.n_packets < 2 * a.redundancy() + 1) throw ParameterError("recover_gram: requires N >= 2T + 1");
  std::vector<GramTable> copies;
  copies.reserve(received.packets.size());
  for (const auto& p : received.packets) copies.push_back(p.gram);
  return majority_gram(copies, a.dimension).extended(a.rows);
}

SyndromeGraph::SyndromeGraph(std::size_t vertices) : vertices_(vertices), adjacency_(vertices, 0) {
  if (vertices > kMaxVertices) throw ParameterError("SyndromeGraph: at most 64 vertices supported");
}

void SyndromeGraph::set_loop(std::size_t v, bool present) {
  if (present) loops_ |= bit(v);
  else loops_ &= ~bit(v);
}

void SyndromeGraph::set_edge(std::size_t a, std::size_t b, bool present) {
  if (a == b) throw ParameterError("SyndromeGraph: use set_loop for self-loops");
  if (present) {
    adjacency_[a] |= bit(b);
    adjacency_[b] |= bit(a);
  } else {
    adjacency_[a] &= ~bit(b);
    adjacency_[b] &= ~bit(a);
  }
}

SyndromeGraph SyndromeGraph::intersect(const SyndromeGraph& other) const {
  if (other.vertices_ != vertices_) throw ParameterError("SyndromeGraph::intersect: vertex counts differ");
  SyndromeGraph out(vertices_);
  out.loops_ = loops_ & other.loops_;
  for (std::size_t v = 0; v < vertices_; ++v) out.adjacency_[v] = adjacency_[v] & other.adjacency_[v];
  return out;
}

SyndromeGraph build_syndrome_graph(const ReceivedBundle& received, const GramTable& extended) {
  const std::size_t n = received.packets.size();
  if (extended.size() != n) throw ParameterError("build_syndrome_graph: Gram table must cover every packet");
  return build_syndrome_graph(n, [&](std::size_t i, std::size_t j) {
    const auto& yi = received.packets[i].codeword;
    const auto& yj = received.packets[j].codeword;
    return yi.size() == yj.size() && dot(yi, yj) == extended.at(i, j);
  });
}

bool in_clique_of_size(const SyndromeGraph& g, std::uint64_t allowed, std::size_t v, std::size_t size) {
  if (((allowed >> v) & 1U) == 0) return false;
  if (size <= 1) return true;
  return has_clique(g, allowed & g.neighbours(v) & ~bit(v), size - 1);
}

TrustedSet trusted_set(const SyndromeGraph& g, std::size_t t) {
  const std::size_t n = g.vertex_count();
  if (t >= n) throw ParameterError("trusted_set: requires T < N");
  const std::size_t size = n - t;

  TrustedSet out;
  const std::uint64_t looped = g.loop_mask() & all_bits(n);
  out.looped = members(looped);

  const std::uint64_t core = core_prune(g, looped, size);
  std::uint64_t clique = 0;
  for (std::uint64_t rest = core; rest != 0; rest &= rest - 1) {
    const auto v = static_cast<std::size_t>(std::countr_zero(rest));
    if (in_clique_of_size(g, core, v, size)) clique |= bit(v);
  }
  out.clique_members = members(clique);
  out.no_clique = clique == 0;

  std::uint64_t trusted = 0;
  for (std::uint64_t rest = clique; rest != 0; rest &= rest - 1) {
    const auto v = static_cast<std::size_t>(std::countr_zero(rest));
    if (((g.neighbours(v) | bit(v)) & clique) == clique) trusted |= bit(v);
  }
  out.trusted = members(trusted);
  return out;
}

DecodeReport decode(const ReceivedBundle& received, const GeneratorMatrix& a) {
  DecodeReport report;
  report.gram = recover_gram(received, a);
  report.graph = build_syndrome_graph(received, report.gram);
  report.trusted = trusted_set(report.graph, a.redundancy());
  return report;
}

}  // namespace polytope
