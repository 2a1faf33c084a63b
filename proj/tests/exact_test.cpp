#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "nfp/exact.hpp"
#include "test_support.hpp"

namespace {

using nfp::BoundRule;
using nfp::kMbps;
namespace nt = nfp::testing;

std::vector<std::vector<double>> filled(std::size_t n, std::size_t m, double v) {
  return std::vector<std::vector<double>>(n, std::vector<double>(m, v));
}

TEST(Exact, SingleLinkPicksLargerRate) {
  auto inst = nt::make_instance(filled(2, 1, 10.0), filled(2, 1, 1e6), {100 * kMbps, 50 * kMbps});
  inst.hub_link_caps = {1};
  for (auto rule : {BoundRule::rate_budget, BoundRule::tightened}) {
    const auto sol = nfp::solve_exact(inst, nfp::kDefaultNodeBudget, rule);
    EXPECT_EQ(sol.report.sum_rate_bps, 100 * kMbps);
    EXPECT_EQ(sol.assoc(0, 0), 1);
    EXPECT_TRUE(sol.report.optimal);
    EXPECT_EQ(sol.report.method, "exact");
  }
}

TEST(Exact, ZeroBackhaulGivesEmpty) {
  auto inst = nt::make_instance(filled(3, 2, 10.0), filled(3, 2, 1e6),
                                {30 * kMbps, 60 * kMbps, 90 * kMbps});
  inst.backhaul_cap_bps = 0;
  const auto sol = nfp::solve_exact(inst);
  EXPECT_EQ(sol.report.sum_rate_bps, 0);
  EXPECT_EQ(sol.assoc, inst.empty_association());
}

TEST(Exact, OneCellOneHub) {
  auto inst = nt::make_instance({{0.0}}, {{1e6}}, {60 * kMbps});
  EXPECT_EQ(nfp::solve_exact(inst).report.sum_rate_bps, 60 * kMbps);
}

TEST(Exact, NoAdmissibleSinr) {
  auto inst = nt::make_instance(filled(4, 3, -10.0), filled(4, 3, 1e6),
                                std::vector<nfp::bps>(4, 90 * kMbps));
  const auto sol = nfp::solve_exact(inst);
  EXPECT_EQ(sol.report.sum_rate_bps, 0);
  EXPECT_TRUE(sol.report.feasible);
}

TEST(Exact, BackhaulKnapsack) {
  // R = 180 with rates {150, 90, 90}: the optimum skips the largest cell.
  auto inst = nt::make_instance(filled(3, 1, 10.0), filled(3, 1, 1e6),
                                {150 * kMbps, 90 * kMbps, 90 * kMbps});
  inst.backhaul_cap_bps = 180 * kMbps;
  const auto sol = nfp::solve_exact(inst);
  EXPECT_EQ(sol.report.sum_rate_bps, 180 * kMbps);
  EXPECT_EQ(sol.assoc(0, 0), 0);
}

TEST(Exact, MatchesEnumerationOnRandomInstances) {
  nfp::Rng rng(2024);
  for (int k = 0; k < 300; ++k) {
    const nt::InstanceShape shape{1 + rng.below(8), 1 + rng.below(3), rng.below(4) != 0};
    const auto inst = nt::random_instance(rng, shape);
    const auto brute = nfp::enumerate_all(inst);
    for (auto rule : {BoundRule::rate_budget, BoundRule::tightened}) {
      const auto sol = nfp::solve_exact(inst, nfp::kDefaultNodeBudget, rule);
      ASSERT_EQ(sol.report.sum_rate_bps, brute.objective) << "instance " << k;
      ASSERT_TRUE(nfp::check_feasible(inst, sol.assoc).ok);
      ASSERT_LE(sol.report.node_count, brute.candidates);
    }
  }
}

TEST(Exact, QosOnlyMatchesEnumeration) {
  nfp::Rng rng(9);
  for (int k = 0; k < 100; ++k) {
    auto inst = nt::random_instance(rng, {1 + rng.below(7), 1 + rng.below(3), true});
    inst.constraints = nfp::ConstraintSet::qos_only();
    ASSERT_EQ(nfp::solve_exact(inst).report.sum_rate_bps, nfp::enumerate_all(inst).objective);
  }
}

TEST(Exact, PrunesBelowFullTree) {
  nfp::Rng rng(5);
  int strictly_smaller = 0;
  for (int k = 0; k < 50; ++k) {
    const auto inst = nt::random_instance(rng, {8, 3, true});
    const auto sol = nfp::solve_exact(inst);
    const auto full = static_cast<std::uint64_t>(std::pow(4, 8));
    ASSERT_LE(sol.report.node_count, full);
    if (sol.report.node_count < full) ++strictly_smaller;
  }
  EXPECT_EQ(strictly_smaller, 50);
}

TEST(Exact, TightenedExpandsNoMoreOnAverage) {
  nfp::Rng rng(12);
  std::uint64_t plain = 0, tight = 0;
  for (int k = 0; k < 50; ++k) {
    const auto inst = nt::random_instance(rng, {12, 3, true});
    plain += nfp::solve_exact(inst, nfp::kDefaultNodeBudget, BoundRule::rate_budget).report.op_count;
    tight += nfp::solve_exact(inst, nfp::kDefaultNodeBudget, BoundRule::tightened).report.op_count;
  }
  EXPECT_LE(tight, plain);
}

TEST(Exact, BudgetExceededCarriesIncumbent) {
  nfp::Rng rng(3);
  const auto inst = nt::random_instance(rng, {14, 4, false});
  try {
    nfp::solve_exact(inst, 50);
    FAIL() << "expected budget_exceeded";
  } catch (const nfp::budget_exceeded& e) {
    EXPECT_FALSE(e.incumbent().report.optimal);
    EXPECT_TRUE(nfp::check_feasible(inst, e.incumbent().assoc).ok);
  }
  EXPECT_THROW(nfp::solve_exact(inst, 50), nfp::guard_error);
}

TEST(Enumerate, GuardAndCount) {
  nfp::Rng rng(1);
  const auto small = nt::random_instance(rng, {5, 2, true});
  EXPECT_EQ(nfp::enumerate_all(small).candidates, 243u);
  const auto big = nt::random_instance(rng, {15, 3, true});  // 4^15 > 1e7
  EXPECT_THROW(nfp::enumerate_all(big), nfp::guard_error);
}

TEST(Enumerate, EmptyInstance) {
  auto inst = nt::make_instance({}, {}, {});
  const auto res = nfp::enumerate_all(inst);
  EXPECT_EQ(res.objective, 0);
  EXPECT_EQ(res.candidates, 1u);
}

}  // namespace
