#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace polytope {

/// Directed capacitated graph with Dinic max-flow. Capacities are exact
/// 64-bit integers; the caller keeps the total below 2^62.
class FlowNetwork {
 public:
  struct Edge {
    std::size_t from;
    std::size_t to;
    std::int64_t capacity;
  };

  explicit FlowNetwork(std::size_t vertices = 0) : vertices_(vertices) {}

  std::size_t add_vertex() { return vertices_++; }
  void add_edge(std::size_t from, std::size_t to, std::int64_t capacity);

  [[nodiscard]] std::size_t vertex_count() const noexcept { return vertices_; }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
  [[nodiscard]] std::int64_t total_capacity() const noexcept;

  /// Value of a maximum flow from `source` to `sink`; the network is left
  /// unchanged.
  [[nodiscard]] std::int64_t max_flow(std::size_t source, std::size_t sink) const;

 private:
  std::size_t vertices_;
  std::vector<Edge> edges_;
};

}  // namespace polytope
