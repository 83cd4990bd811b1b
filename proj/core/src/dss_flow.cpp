#include "polytope/dss.hpp"

#include "polytope/error.hpp"

#include <algorithm>

namespace polytope {

namespace {

std::size_t in_vertex(std::size_t node) { return 1 + 2 * node; }
std::size_t out_vertex(std::size_t node) { return 2 + 2 * node; }

bool contains(const std::vector<std::size_t>& v, std::size_t x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

struct FlowGraphBuilder {
  const DssSystem& system;
  std::int64_t infinity = 0;

  explicit FlowGraphBuilder(const DssSystem& s) : system(s) {
    const auto& p = s.params();
    std::int64_t finite = static_cast<std::int64_t>(s.nodes_created() * p.alpha);
    for (const auto& e : s.history())
      if (e.kind == DssEventKind::repair) finite += static_cast<std::int64_t>(e.nodes.size() * p.beta);
    infinity = finite + 1;
  }

  // Pruned graph; links into `restored` from honest helpers are kept too.
  // Returns the network and the collector vertex of every read event.
  FlowNetwork build(std::optional<std::size_t> restored, std::vector<std::size_t>& collectors) const {
    const auto& p = system.params();
    FlowNetwork net(1 + 2 * system.nodes_created());
    for (std::size_t v = 0; v < system.nodes_created(); ++v) {
      if (v < p.n) net.add_edge(0, in_vertex(v), infinity);
      net.add_edge(in_vertex(v), out_vertex(v), static_cast<std::int64_t>(p.alpha));
    }
    collectors.clear();
    for (const auto& e : system.history()) {
      if (e.kind == DssEventKind::repair) {
        for (std::size_t h : e.nodes) {
          const bool keep = contains(e.trusted, h) || (restored == e.node && !contains(e.adversaries, h));
          if (keep) net.add_edge(out_vertex(h), in_vertex(e.node), static_cast<std::int64_t>(p.beta));
        }
      } else if (e.kind == DssEventKind::dc_read) {
        const std::size_t dc = net.add_vertex();
        collectors.push_back(dc);
        for (std::size_t v : e.trusted) net.add_edge(out_vertex(v), dc, infinity);
      }
    }
    return net;
  }
};

}  // namespace

bool FlowReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const FlowCheck& c) { return c.passed(); });
}

FlowReport verify_flow_conditions(const DssSystem& system) {
  const auto& p = system.params();
  const Rational alpha = static_cast<long>(p.alpha);
  const Rational beta = static_cast<long>(p.beta);
  const long f = p.t == 0 ? 0 : static_cast<long>(max_untrusted(p.t));
  const Rational read_bound =
      cutset_sum(static_cast<long>(p.k) - f, static_cast<long>(p.d) - f, alpha, beta);
  const Rational repair_bound = repair_cut_bound(p.d, p.t, alpha, beta);
  const Rational r = static_cast<long>(p.rows);

  FlowGraphBuilder builder(system);
  std::vector<std::size_t> collectors;
  const FlowNetwork pruned = builder.build(std::nullopt, collectors);

  FlowReport report;
  const auto& history = system.history();
  std::size_t read = 0;
  for (std::size_t i = 0; i < history.size(); ++i) {
    const auto& e = history[i];
    FlowCheck c;
    c.kind = e.kind;
    c.event = i;
    c.rank = e.rank;
    if (e.kind == DssEventKind::dc_read) {
      c.target = read;
      c.min_cut = pruned.max_flow(0, collectors[read]);
      c.closed_form = read_bound;
      ++read;
    } else if (e.kind == DssEventKind::repair) {
      std::vector<std::size_t> unused;
      c.target = e.node;
      c.min_cut = builder.build(e.node, unused).max_flow(0, in_vertex(e.node));
      c.closed_form = repair_bound;
    } else {
      continue;
    }
    c.cut_at_least_r = Rational(c.min_cut) >= r;
    c.cut_at_least_bound = Rational(c.min_cut) >= c.closed_form;
    c.rank_at_least_r = c.rank >= p.rows;
    report.checks.push_back(c);
  }
  return report;
}

FlowGraph worst_case_flow_graph(std::size_t k, std::size_t d, std::int64_t alpha, std::int64_t beta) {
  if (k > d || d == 0) throw ParameterError("worst_case_flow_graph: requires 1 <= d and k <= d");
  // Vertices: S, then (in, out) for d initial and k new nodes, then the collector.
  const std::size_t nodes = d + k;
  FlowGraph g{FlowNetwork(1 + 2 * nodes + 1), 0, 1 + 2 * nodes};
  const std::int64_t infinity = static_cast<std::int64_t>(nodes) * alpha + static_cast<std::int64_t>(k * d) * beta + 1;
  for (std::size_t v = 0; v < nodes; ++v) {
    if (v < d) g.network.add_edge(g.source, in_vertex(v), infinity);
    g.network.add_edge(in_vertex(v), out_vertex(v), alpha);
  }
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t node = d + i;
    for (std::size_t prev = 0; prev < i; ++prev) g.network.add_edge(out_vertex(d + prev), in_vertex(node), beta);
    for (std::size_t old = 0; old < d - i; ++old) g.network.add_edge(out_vertex(old), in_vertex(node), beta);
    g.network.add_edge(out_vertex(node), g.sink, infinity);
  }
  return g;
}

}  // namespace polytope
