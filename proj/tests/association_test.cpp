#include <gtest/gtest.h>

#include <vector>

#include "nfp/association.hpp"
#include "test_support.hpp"

namespace {

using nfp::AssociationMatrix;
using nfp::ConstraintId;
using nfp::kMbps;
namespace nt = nfp::testing;

std::vector<std::vector<double>> filled(std::size_t n, std::size_t m, double v) {
  return std::vector<std::vector<double>>(n, std::vector<double>(m, v));
}

TEST(GreedyStep1, BelowThresholdStaysEmpty) {
  auto inst = nt::make_instance({{-6.0, -7.0}}, filled(1, 2, 1e6), {30 * kMbps});
  const auto a = nfp::greedy_step1(inst);
  EXPECT_EQ(a(0, 0), 0);
  EXPECT_EQ(a(0, 1), 0);
}

TEST(GreedyStep1, PicksMaxSinr) {
  auto inst = nt::make_instance({{3.0, 7.0, 5.0}}, filled(1, 3, 1e6), {30 * kMbps});
  const auto a = nfp::greedy_step1(inst);
  EXPECT_EQ(a(0, 0), 0);
  EXPECT_EQ(a(0, 1), 1);
  EXPECT_EQ(a(0, 2), 0);
}

TEST(GreedyStep1, TieGoesToLowerIndex) {
  auto inst = nt::make_instance({{4.0, 4.0}}, filled(1, 2, 1e6), {30 * kMbps});
  const auto a = nfp::greedy_step1(inst);
  EXPECT_EQ(a(0, 0), 1);
  EXPECT_EQ(a(0, 1), 0);
}

TEST(GreedyStep1, ExactlyAtThresholdQualifies) {
  auto inst = nt::make_instance({{-5.0}}, filled(1, 1, 1e6), {30 * kMbps});
  EXPECT_EQ(nfp::greedy_step1(inst)(0, 0), 1);
}

nfp::ProblemInstance packing_instance(std::int64_t link_cap) {
  auto inst = nt::make_instance(filled(3, 1, 10.0), {{20e6}, {25e6}, {10e6}},
                                {150 * kMbps, 150 * kMbps, 30 * kMbps});
  inst.hub_bandwidth_caps = {40e6};
  inst.hub_link_caps = {link_cap};
  return inst;
}

TEST(GreedyStep2, SkipsBandwidthRejectsAndKeepsGoing) {
  // Sorted: cell 0 (150, 20 MHz), cell 1 (150, 25 MHz), cell 2 (30, 10 MHz).
  // Cell 1 would exceed 40 MHz and is discarded; cell 2 still fits.
  auto inst = packing_instance(2);
  const auto a = nfp::greedy_step2(inst, nfp::greedy_step1(inst));
  EXPECT_EQ(a(0, 0), 1);
  EXPECT_EQ(a(1, 0), 0);
  EXPECT_EQ(a(2, 0), 1);
}

TEST(GreedyStep2, LinkCapStopsPacking) {
  auto inst = packing_instance(1);
  const auto a = nfp::greedy_step2(inst, nfp::greedy_step1(inst));
  EXPECT_EQ(nfp::links_per_hub(a), (std::vector<std::int64_t>{1}));
  EXPECT_EQ(a(0, 0), 1);
}

TEST(GreedyStep2, ZeroLinkCapAcceptsNothing) {
  auto inst = packing_instance(0);
  const auto a = nfp::greedy_step2(inst, nfp::greedy_step1(inst));
  EXPECT_EQ(nfp::objective(inst, a), 0);
}

TEST(GreedyStep2, RateTieBrokenBySmallerBandwidth) {
  auto inst = nt::make_instance(filled(2, 1, 10.0), {{30e6}, {20e6}}, {90 * kMbps, 90 * kMbps});
  inst.hub_link_caps = {1};
  const auto a = nfp::greedy_step2(inst, nfp::greedy_step1(inst));
  EXPECT_EQ(a(0, 0), 0);
  EXPECT_EQ(a(1, 0), 1);
}

// Hub 0 serves one 30 Mbps cell, hub 1 serves 60 and 90.
nfp::ProblemInstance trim_instance(nfp::bps cap) {
  auto inst = nt::make_instance({{10.0, 0.0}, {0.0, 10.0}, {0.0, 10.0}}, filled(3, 2, 1e6),
                                {30 * kMbps, 60 * kMbps, 90 * kMbps});
  inst.backhaul_cap_bps = cap;
  return inst;
}

TEST(GreedyStep3, FewestLinksHubLosesFirst) {
  auto inst = trim_instance(150 * kMbps);
  const auto packed = nfp::greedy_step2(inst, nfp::greedy_step1(inst));
  const auto res = nfp::greedy_step3(inst, packed);
  EXPECT_EQ(res.assoc(0, 0), 0);
  EXPECT_EQ(res.assoc(1, 1), 1);
  EXPECT_EQ(res.assoc(2, 1), 1);
  EXPECT_EQ(res.hubs_in_use, 1);
  EXPECT_EQ(nfp::objective(inst, res.assoc), 150 * kMbps);
}

TEST(GreedyStep3, RemovesSmallestSufficientCell) {
  // Total 180, R = 100: hub 0 only has 30, which is not enough, so it goes; then hub 1
  // (150 total, excess 50) drops 60, the smallest rate >= 50.
  auto inst = trim_instance(100 * kMbps);
  const auto res = nfp::greedy_step3(inst, nfp::greedy_step2(inst, nfp::greedy_step1(inst)));
  EXPECT_EQ(res.assoc(0, 0), 0);
  EXPECT_EQ(res.assoc(1, 1), 0);
  EXPECT_EQ(res.assoc(2, 1), 1);
  EXPECT_EQ(res.hubs_in_use, 1);
}

TEST(GreedyStep3, ZeroBackhaulClearsAll) {
  auto inst = trim_instance(0);
  const auto res = nfp::greedy_step3(inst, nfp::greedy_step2(inst, nfp::greedy_step1(inst)));
  EXPECT_EQ(nfp::objective(inst, res.assoc), 0);
  EXPECT_EQ(res.hubs_in_use, 0);
}

TEST(GreedyStep3, UnderCapIsUntouched) {
  auto inst = trim_instance(180 * kMbps);
  const auto packed = nfp::greedy_step2(inst, nfp::greedy_step1(inst));
  EXPECT_EQ(nfp::greedy_step3(inst, packed).assoc, packed);
}

TEST(Objective, SumsAssociatedRates) {
  auto inst = trim_instance(1000 * kMbps);
  auto a = inst.empty_association();
  EXPECT_EQ(nfp::objective(inst, a), 0);
  a(0, 0) = 1;
  a(2, 1) = 1;
  EXPECT_EQ(nfp::objective(inst, a), 120 * kMbps);
  EXPECT_THROW(nfp::objective(inst, AssociationMatrix(2, 2, 0)), nfp::domain_error);
}

TEST(CheckFeasible, EmptyIsFeasible) {
  auto inst = trim_instance(0);
  EXPECT_TRUE(nfp::check_feasible(inst, inst.empty_association()).ok);
}

TEST(CheckFeasible, FlagsEachConstraint) {
  auto inst = trim_instance(50 * kMbps);
  inst.hub_bandwidth_caps = {1.5e6, 1e12};
  auto a = inst.empty_association();
  a(1, 0) = 1;  // SINR 0 dB is fine, but hub 0 gets 1 MHz
  a(0, 0) = 1;  // second 1 MHz pushes hub 0 over 1.5 MHz
  a(2, 0) = 1;
  a(2, 1) = 1;  // two hubs on one cell
  const auto rep = nfp::check_feasible(inst, a);
  EXPECT_FALSE(rep.ok);
  EXPECT_TRUE(rep.violates(ConstraintId::backhaul));
  EXPECT_TRUE(rep.violates(ConstraintId::bandwidth));
  EXPECT_TRUE(rep.violates(ConstraintId::single_assoc));
  EXPECT_FALSE(rep.violates(ConstraintId::sinr));
}

TEST(CheckFeasible, SinrOnlyOnAssociatedEntries) {
  auto inst = nt::make_instance({{-20.0, 5.0}}, filled(1, 2, 1e6), {30 * kMbps});
  auto a = inst.empty_association();
  a(0, 1) = 1;
  EXPECT_TRUE(nfp::check_feasible(inst, a).ok);
  a(0, 1) = 0;
  a(0, 0) = 1;
  EXPECT_TRUE(nfp::check_feasible(inst, a).violates(ConstraintId::sinr));
}

TEST(CheckFeasible, EightCellsOverSevenLinks) {
  auto inst = nt::make_instance(filled(8, 1, 10.0), filled(8, 1, 1e6),
                                std::vector<nfp::bps>(8, 30 * kMbps));
  inst.hub_link_caps = {7};
  AssociationMatrix a(8, 1, 1);
  EXPECT_TRUE(nfp::check_feasible(inst, a).violates(ConstraintId::links));
  a(7, 0) = 0;
  EXPECT_TRUE(nfp::check_feasible(inst, a).ok);
}

TEST(CheckFeasible, InactiveConstraintsIgnored) {
  auto inst = trim_instance(0);
  inst.constraints = nfp::ConstraintSet::qos_only();
  AssociationMatrix a(3, 2, 0);
  a(0, 0) = a(1, 1) = a(2, 1) = 1;
  EXPECT_TRUE(nfp::check_feasible(inst, a).ok);
}

TEST(SolveGreedy, ReportFields) {
  auto inst = trim_instance(150 * kMbps);
  const auto sol = nfp::solve_greedy(inst);
  EXPECT_EQ(sol.report.method, "greedy");
  EXPECT_EQ(sol.report.sum_rate_bps, 150 * kMbps);
  EXPECT_EQ(sol.report.n_associated, 2);
  EXPECT_EQ(sol.report.per_hub_links, (std::vector<std::int64_t>{0, 2}));
  EXPECT_EQ(sol.report.hubs_in_use, 1);
  EXPECT_TRUE(sol.report.feasible);
  EXPECT_GT(sol.report.op_count, 0u);
}

TEST(SolveGreedy, NoHubs) {
  auto inst = nt::make_instance({{}, {}}, {{}, {}}, {30 * kMbps, 60 * kMbps});
  inst.links = nfp::LinkTable{nfp::Matrix<double>(2, 0), nfp::Matrix<double>(2, 0),
                              nfp::Matrix<double>(2, 0), nfp::Matrix<double>(2, 0)};
  EXPECT_EQ(nfp::solve_greedy(inst).report.sum_rate_bps, 0);
}

TEST(SolveGreedy, RandomInstancesFeasibleAndDeterministic) {
  nfp::Rng rng(77);
  for (int k = 0; k < 1000; ++k) {
    const nt::InstanceShape shape{1 + rng.below(40), 1 + rng.below(6), rng.below(2) == 1};
    const auto inst = nt::random_instance(rng, shape);
    const auto a = nfp::solve_greedy(inst);
    const auto b = nfp::solve_greedy(inst);
    ASSERT_TRUE(nfp::check_feasible(inst, a.assoc).ok) << "instance " << k;
    ASSERT_EQ(a.assoc, b.assoc);
    ASSERT_EQ(a.report.op_count, b.report.op_count);
    for (std::size_t i = 0; i < inst.n_cells(); ++i) {
      auto j = nfp::hub_of(a.assoc, i);
      if (!j) continue;
      // step 1 only ever picks the row maximum
      for (std::size_t h = 0; h < inst.n_hubs(); ++h)
        ASSERT_LE(inst.sinr_db(i, h), inst.sinr_db(i, *j));
    }
  }
}

}  // namespace
