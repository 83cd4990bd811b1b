#include "polytope/dss.hpp"
#include "polytope/error.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

namespace polytope {
namespace {

DssParams scenario_params(std::size_t ab = 1) {
  DssParams p;
  p.alpha = ab;
  p.beta = ab;
  p.n = 8;
  p.k = 7;
  p.d = 7;
  p.t = 1;
  p.lifetime = 40;
  p.rows = 5;
  p.alphabet = 2;
  p.group_len = 2;
  p.columns = 3;
  return p;
}

TEST(Validate, NamesTheViolatedCondition) {
  auto expect_error = [](DssParams p, const std::string& fragment) {
    try {
      validate(p);
      ADD_FAILURE() << "accepted parameters that violate " << fragment;
    } catch (const ParameterError& e) {
      EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
  };
  EXPECT_NO_THROW(validate(scenario_params()));
  auto p = scenario_params();
  p.beta = 2;
  expect_error(p, "beta <= alpha");
  p = scenario_params();
  p.k = 2;
  p.t = 1;
  expect_error(p, "2T + 1");
  p = scenario_params();
  p.n = 12;
  p.k = 11;
  p.d = 11;
  p.t = 5;
  p.rows = 1;
  expect_error(p, "k - F(T) > 0");
  p = scenario_params();
  p.d = 8;
  p.k = 8;
  expect_error(p, "d <= N - 1");
  p = scenario_params();
  p.rows = 6;
  expect_error(p, "exceeds the achievable bound");
  p = scenario_params();
  p.lifetime = 7;
  expect_error(p, "lifetime");
}

TEST(CapacityBounds, MbrAndMsrPoints) {
  const auto mbr = dss_capacity_bounds(7, 7, 1, 5, 1);
  EXPECT_EQ(mbr.upper, 15);
  EXPECT_EQ(mbr.mbr_alpha, 5);
  EXPECT_EQ(mbr.mbr_capacity, 15);
  const auto msr = dss_capacity_bounds(7, 7, 1, 3, 3);
  EXPECT_EQ(msr.msr_alpha, 3);
  EXPECT_EQ(msr.msr_capacity, 15);
  EXPECT_EQ(msr.upper, 15);
  EXPECT_EQ(msr.lower, msr.upper);
}

TEST(CapacityBounds, NoAdversaryMeansLowerEqualsUpper) {
  for (std::size_t k = 1; k <= 6; ++k)
    for (std::size_t d = k; d <= 7; ++d) {
      const auto b = dss_capacity_bounds(k, d, 0, 3, 1);
      EXPECT_EQ(b.lower, b.upper);
      EXPECT_EQ(b.upper, cutset_sum(static_cast<long>(k), static_cast<long>(d), 3, 1));
    }
}

TEST(CapacityBounds, LowerNeverExceedsUpper) {
  for (std::size_t t = 1; t <= 3; ++t)
    for (std::size_t k = max_untrusted(t) + 1; k <= 10; ++k)
      for (std::size_t d = k; d <= 10; ++d)
        for (long a = 1; a <= 8; ++a) {
          const auto b = dss_capacity_bounds(k, d, t, a, 1);
          EXPECT_LE(b.lower, b.upper);
        }
  EXPECT_THROW((void)dss_capacity_bounds(3, 2, 0, 1, 1), ParameterError);
}

TEST(CutsetSum, HandValues) {
  EXPECT_EQ(cutset_sum(3, 3, 2, 1), 2 + 2 + 1);
  EXPECT_EQ(cutset_sum(0, 5, 2, 1), 0);
  EXPECT_EQ(cutset_sum(2, 4, Rational(1, 2), Rational(1, 3)), Rational(1));
}

TEST(RepairCutBound, ReachesFileSizeForScenario) {
  EXPECT_GE(repair_cut_bound(7, 1, 1, 1), 5);
  EXPECT_EQ(repair_cut_bound(7, 0, 1, 1), 7);
}

TEST(DssSystem, ExplicitStorageMatrixExample) {
  DssParams p;
  p.n = 4;
  p.k = 2;
  p.d = 3;
  p.t = 0;
  p.lifetime = 6;
  p.rows = 2;
  p.alphabet = 5;
  p.group_len = 1;
  p.columns = 2;
  p.q = 8;
  const IntMatrix storage{{1, 0}, {0, 1}, {1, 1}, {1, 2}};
  DssSystem s(IntMatrix{{1, 2}, {3, 4}}, p, 1, storage);
  EXPECT_EQ(s.stored(2).data, (IntMatrix{{4, 6}}));
  EXPECT_EQ(s.stored(3).data, (IntMatrix{{7, 10}}));
  const std::vector<std::size_t> read{2, 3};
  EXPECT_EQ(s.dc_read(read), (IntMatrix{{1, 2}, {3, 4}}));
}

TEST(DssSystem, RejectsSingularStorageAndBadFiles) {
  DssParams p;
  p.n = 3;
  p.k = 2;
  p.d = 2;
  p.lifetime = 3;
  p.rows = 2;
  p.alphabet = 5;
  p.columns = 2;
  p.q = 4;
  EXPECT_THROW(DssSystem(IntMatrix{{1, 2}, {3, 4}}, p, 1, IntMatrix{{1, 0}, {2, 0}, {0, 1}}), ParameterError);
  EXPECT_THROW(DssSystem(IntMatrix{{0, 2}, {3, 4}}, p, 1), ParameterError);
  EXPECT_THROW(DssSystem(IntMatrix{{1, 2}}, p, 1), ParameterError);
}

TEST(DssSystem, CoefficientStreamsAreKeyed) {
  const auto p = scenario_params();
  std::mt19937_64 rng(3);
  const auto f = random_file(p, rng);
  DssSystem a(f, p, 11), b(f, p, 11), c(f, p, 12);
  EXPECT_EQ(a.q(), 256UL);
  EXPECT_EQ(a.transfer_coefficients(1, 8), b.transfer_coefficients(1, 8));
  EXPECT_NE(a.transfer_coefficients(1, 8), a.transfer_coefficients(2, 8));
  EXPECT_NE(a.transfer_coefficients(1, 8), c.transfer_coefficients(1, 8));
  const std::vector<std::size_t> v{0, 1, 2};
  EXPECT_EQ(a.combine_coefficients(8, v), b.combine_coefficients(8, v));
  EXPECT_EQ(a.combine_coefficients(8, v).cols(), 3U);
}

TEST(DssSystem, HonestRepairTrustsEveryHelper) {
  const auto p = scenario_params();
  std::mt19937_64 rng(4);
  DssSystem s(random_file(p, rng), p, 4);
  s.fail(7);
  const std::vector<std::size_t> helpers{0, 1, 2, 3, 4, 5, 6};
  EXPECT_EQ(s.repair(helpers), 8U);
  const auto& e = s.history().back();
  EXPECT_EQ(e.trusted, helpers);
  EXPECT_EQ(e.rank, 5U);
  EXPECT_TRUE(s.honest_data_invariant());
}

TEST(DssSystem, GarbageHelperIsExcludedReplayIsKept) {
  const auto p = scenario_params();
  std::mt19937_64 rng(5);
  const auto f = random_file(p, rng);
  const std::vector<std::size_t> helpers{0, 1, 2, 3, 4, 5, 6};
  {
    DssSystem s(f, p, 5);
    s.set_adversaries({3}, DssAttack::garbage);
    s.fail(7);
    (void)s.repair(helpers);
    const auto& trusted = s.history().back().trusted;
    EXPECT_EQ(std::count(trusted.begin(), trusted.end(), 3U), 0);
    EXPECT_GE(trusted.size(), 7U - max_untrusted(1));
    EXPECT_TRUE(s.honest_data_invariant());
  }
  {
    DssSystem s(f, p, 5);
    s.set_adversaries({3}, DssAttack::replay);
    s.fail(7);
    (void)s.repair(helpers);
    EXPECT_EQ(s.history().back().trusted, helpers);
  }
}

TEST(DssSystem, EveryAttackLeavesReadsExact) {
  const auto p = scenario_params();
  std::mt19937_64 rng(6);
  const auto f = random_file(p, rng);
  for (auto attack : all_dss_attacks()) {
    SCOPED_TRACE(std::string(to_string(attack)));
    DssSystem s(f, p, 6);
    s.set_adversaries({0}, attack);
    s.fail(7);
    (void)s.repair(std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6});
    EXPECT_EQ(s.dc_read(std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 8}), f);
    EXPECT_TRUE(s.honest_data_invariant());
  }
}

TEST(DssSystem, RejectsInvalidOperations) {
  const auto p = scenario_params();
  std::mt19937_64 rng(7);
  DssSystem s(random_file(p, rng), p, 7);
  EXPECT_THROW((void)s.repair(std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6}), ParameterError);
  EXPECT_THROW(s.set_adversaries({0, 1}), ParameterError);
  s.fail(2);
  EXPECT_THROW(s.fail(2), ParameterError);
  EXPECT_THROW((void)s.repair(std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6}), ParameterError);
  EXPECT_THROW((void)s.dc_read(std::vector<std::size_t>{0, 1, 3}), ParameterError);
}

TEST(DssSystem, UnitCoefficientRangeCollapsesRank) {
  // With q = 1 every helper sends the sum of its alpha rows, so the d
  // transmissions span too little to rebuild a node.
  auto p = scenario_params(2);
  p.rows = 10;
  p.q = 1;
  std::mt19937_64 rng(8);
  DssSystem s(random_file(p, rng), p, 8);
  s.fail(7);
  EXPECT_THROW((void)s.repair(std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6}), ProtocolError);
}

TEST(Scenario, RoamingScriptShape) {
  const auto p = scenario_params();
  const auto script = roaming_adversary_script(p, 10, 9);
  ASSERT_EQ(script.events.size(), 50U);
  EXPECT_EQ(script.events[0].kind, DssEventKind::adversary);
  EXPECT_EQ(script.events[0].nodes.size(), 1U);
  EXPECT_EQ(script.events[3].kind, DssEventKind::repair);
  EXPECT_EQ(script.events[3].nodes.size(), 7U);
  EXPECT_EQ(roaming_adversary_script(p, 10, 9).events.size(), script.events.size());
  EXPECT_THROW((void)roaming_adversary_script(p, 33, 9), ParameterError);
}

void run_many(DssParams p, std::size_t seeds, std::size_t repairs) {
  p.lifetime = p.n + repairs;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    SCOPED_TRACE(seed);
    auto rng = testing::case_rng(77, seed);
    const auto f = random_file(p, rng);
    const auto r = run_scenario(f, p, seed, roaming_adversary_script(p, repairs, seed));
    ASSERT_TRUE(r.passed()) << r.failures.front();
    EXPECT_EQ(r.exact_reads, r.reads);
    EXPECT_EQ(r.reads, 2 * repairs);
    EXPECT_TRUE(r.invariant_held);
  }
}

TEST(Scenario, SevenNodesOneAdversary) {
  DssParams p;
  p.n = 7;
  p.k = 5;
  p.d = 5;
  p.t = 1;
  p.rows = 3;
  p.group_len = 2;
  p.columns = 2;
  run_many(p, 10, 6);
}

TEST(Scenario, TenNodesTwoAdversaries) {
  DssParams p;
  p.n = 10;
  p.k = 7;
  p.d = 7;
  p.t = 2;
  p.rows = 3;
  p.columns = 2;
  run_many(p, 5, 6);
}

TEST(Scenario, LargerNodesAtTheBound) {
  auto p = scenario_params(2);
  const auto bound = dss_capacity_bounds(7, 7, 1, 2, 2).lower;
  p.rows = static_cast<std::size_t>(bound.get_num().get_ui());
  EXPECT_EQ(p.rows, 10U);
  run_many(p, 3, 4);
}

TEST(FlowConditions, HonestRunPassesEveryCheck) {
  const auto p = scenario_params();
  std::mt19937_64 rng(10);
  DssSystem s(random_file(p, rng), p, 10);
  s.fail(7);
  (void)s.repair(std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6});
  (void)s.dc_read(std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 8});
  const auto report = verify_flow_conditions(s);
  ASSERT_EQ(report.checks.size(), 2U);
  for (const auto& c : report.checks) {
    EXPECT_TRUE(c.passed());
    EXPECT_GE(c.min_cut, 5);
  }
}

}  // namespace
}  // namespace polytope
