#include "polytope/max_flow.hpp"

#include "polytope/error.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace polytope {

namespace {

struct Residual {
  std::size_t to;
  std::size_t reverse;
  std::int64_t capacity;
};

class Dinic {
 public:
  Dinic(std::size_t n, const std::vector<FlowNetwork::Edge>& edges) : graph_(n), level_(n), next_(n) {
    for (const auto& e : edges) {
      graph_[e.from].push_back({e.to, graph_[e.to].size(), e.capacity});
      graph_[e.to].push_back({e.from, graph_[e.from].size() - 1, 0});
    }
  }

  std::int64_t run(std::size_t s, std::size_t t) {
    std::int64_t flow = 0;
    while (levels(s, t)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (std::int64_t pushed = augment(s, t, std::numeric_limits<std::int64_t>::max())) flow += pushed;
    }
    return flow;
  }

 private:
  bool levels(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (const auto& e : graph_[v])
        if (e.capacity > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[v] + 1;
          q.push(e.to);
        }
    }
    return level_[t] >= 0;
  }

  std::int64_t augment(std::size_t v, std::size_t t, std::int64_t limit) {
    if (v == t) return limit;
    for (std::size_t& i = next_[v]; i < graph_[v].size(); ++i) {
      Residual& e = graph_[v][i];
      if (e.capacity <= 0 || level_[e.to] != level_[v] + 1) continue;
      if (std::int64_t pushed = augment(e.to, t, std::min(limit, e.capacity))) {
        e.capacity -= pushed;
        graph_[e.to][e.reverse].capacity += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<std::vector<Residual>> graph_;
  std::vector<long> level_;
  std::vector<std::size_t> next_;
};

}  // namespace

void FlowNetwork::add_edge(std::size_t from, std::size_t to, std::int64_t capacity) {
  if (from >= vertices_ || to >= vertices_) throw ParameterError("FlowNetwork: edge endpoint out of range");
  if (capacity < 0) throw ParameterError("FlowNetwork: negative capacity");
  edges_.push_back({from, to, capacity});
}

std::int64_t FlowNetwork::total_capacity() const noexcept {
  std::int64_t total = 0;
  for (const auto& e : edges_) total += e.capacity;
  return total;
}

std::int64_t FlowNetwork::max_flow(std::size_t source, std::size_t sink) const {
  if (source >= vertices_ || sink >= vertices_) throw ParameterError("FlowNetwork: terminal out of range");
  if (source == sink) throw ParameterError("FlowNetwork: source equals sink");
  return Dinic(vertices_, edges_).run(source, sink);
}

}  // namespace polytope
