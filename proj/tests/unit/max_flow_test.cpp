#include "polytope/dss.hpp"
#include "polytope/error.hpp"
#include "polytope/max_flow.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace polytope {
namespace {

TEST(MaxFlow, TwoDisjointPaths) {
  FlowNetwork net(4);
  net.add_edge(0, 1, 3);
  net.add_edge(1, 3, 2);
  net.add_edge(0, 2, 1);
  net.add_edge(2, 3, 5);
  EXPECT_EQ(net.max_flow(0, 3), 3);
  EXPECT_EQ(net.edges().size(), 4U);
}

TEST(MaxFlow, ParallelEdgesAddUp) {
  FlowNetwork net(2);
  net.add_edge(0, 1, 2);
  net.add_edge(0, 1, 5);
  EXPECT_EQ(net.max_flow(0, 1), 7);
  EXPECT_EQ(net.max_flow(1, 0), 0);
}

TEST(MaxFlow, MatchesBruteForceMinCut) {
  testing::for_each_case(51, 300, [](std::mt19937_64& rng) {
    const auto n = static_cast<std::size_t>(testing::uniform(rng, 2, 10));
    FlowNetwork net(n);
    const auto edges = testing::uniform(rng, 0, 30);
    for (long e = 0; e < edges; ++e) {
      const auto a = static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<long>(n) - 1));
      const auto b = static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<long>(n) - 1));
      if (a != b) net.add_edge(a, b, testing::uniform(rng, 0, 9));
    }
    EXPECT_EQ(net.max_flow(0, n - 1), testing::brute_min_cut(net, 0, n - 1));
  });
}

TEST(WorstCaseFlowGraph, MinCutEqualsCutsetSum) {
  for (std::size_t d = 1; d <= 7; ++d)
    for (std::size_t k = 1; k <= d; ++k)
      for (std::int64_t beta : {1, 2})
        for (std::int64_t alpha : {beta, 2 * beta, 3 * beta, static_cast<std::int64_t>(d) * beta}) {
          const auto g = worst_case_flow_graph(k, d, alpha, beta);
          EXPECT_EQ(Rational(g.network.max_flow(g.source, g.sink)),
                    cutset_sum(static_cast<long>(k), static_cast<long>(d), alpha, beta))
              << "k=" << k << " d=" << d << " alpha=" << alpha << " beta=" << beta;
        }
}

TEST(WorstCaseFlowGraph, SmallInstancesAgreeWithBruteForce) {
  for (std::size_t d = 1; d <= 3; ++d)
    for (std::size_t k = 1; k <= d; ++k) {
      const auto g = worst_case_flow_graph(k, d, 2, 1);
      ASSERT_LE(g.network.vertex_count(), 22U);
      EXPECT_EQ(g.network.max_flow(g.source, g.sink), testing::brute_min_cut(g.network, g.source, g.sink));
    }
  EXPECT_THROW((void)worst_case_flow_graph(3, 2, 1, 1), ParameterError);
}

}  // namespace
}  // namespace polytope
