#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "powerdown/errors.h"
#include "powerdown/flow.h"
#include "powerdown/volume.h"
#include "testing/oracles.h"

namespace powerdown {
namespace {

const Supply kC1 = {{0, 1}, {4, 6}, {7, 8}};
const Supply kC2 = {{0, 3}, {5, 8}};

TEST(Flow, MaxFlowExamples) {
  const Instance gap = IntegralityGapInstance();
  auto net = FlowNetwork::Build(gap, {{0, 8}});
  EXPECT_EQ(net.MaxFlow(), 5);
  EXPECT_TRUE(net.saturated());

  auto empty = FlowNetwork::Build(Instance::Create({}, 1, 0), {});
  EXPECT_EQ(empty.MaxFlow(), 0);
}

TEST(Flow, MinimalCutOnInfeasibleCandidate) {
  const Instance gap = IntegralityGapInstance();
  auto net = FlowNetwork::Build(gap, kC1);
  EXPECT_EQ(net.MaxFlow(), 4);
  const Cut cut = net.MinimalMinCut();
  EXPECT_EQ(cut.capacity, 4);
  EXPECT_EQ(Deficiency(gap, kC1, cut.witness), 1);
  EXPECT_EQ(cut.capacity + Deficiency(gap, kC1, cut.witness), gap.total_volume());
}

TEST(Flow, MinimalCutOnEmptySupply) {
  const Instance one = Instance::Create({{0, 0, 2, 2}}, 1, 0);
  const FeasibilityResult result = CheckFeasible(one, {});
  EXPECT_FALSE(result.feasible);
  EXPECT_EQ(result.witness, DisjointIntervalSet::Create({{0, 2}}));
  EXPECT_EQ(result.deficiency, 2);
}

TEST(Flow, FeasibleCutHasEmptyWitness) {
  const Instance gap = IntegralityGapInstance();
  auto net = FlowNetwork::Build(gap, kC2);
  net.MaxFlow();
  const Cut cut = net.MinimalMinCut();
  EXPECT_TRUE(cut.witness.empty());
  EXPECT_EQ(cut.capacity, 5);
}

TEST(Flow, CheckFeasibleExamples) {
  const Instance gap = IntegralityGapInstance();
  EXPECT_TRUE(CheckFeasible(gap, kC2).feasible);
  const FeasibilityResult c1 = CheckFeasible(gap, kC1);
  EXPECT_FALSE(c1.feasible);
  EXPECT_EQ(c1.deficiency, 1);
  EXPECT_TRUE(CheckFeasible(gap, FullAvailability(gap)).feasible);
}

TEST(Flow, AugmentStepsRaiseFlowByOne) {
  const Instance one = Instance::Create({{0, 0, 2, 2}}, 1, 0);
  auto net = FlowNetwork::Build(one, {});
  EXPECT_EQ(net.MaxFlow(), 0);
  EXPECT_EQ(net.AugmentStep().flow_value, 1);
  EXPECT_EQ(net.AugmentStep().flow_value, 2);
  EXPECT_THROW(net.AugmentStep(), DomainError);
}

TEST(Flow, AugmentationTakesExactlyDeficitStepsAndShrinksSourceSide) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 2);
    const Instance instance = testing::RandomInstance(rng, 5, 8, m, 1);
    if (!CheckFeasible(instance, FullAvailability(instance)).feasible) continue;
    auto net = FlowNetwork::Build(instance, testing::RandomSupply(rng, instance.horizon(), m, 3));
    const std::int64_t start = net.MaxFlow();
    std::vector<bool> previous = net.MinimalMinCut().in_source;
    std::int64_t steps = 0;
    while (!net.saturated()) {
      const std::int64_t before = net.flow_value();
      EXPECT_EQ(net.AugmentStep().flow_value, before + 1);
      ++steps;
      const std::vector<bool> current = net.MinimalMinCut().in_source;
      for (std::size_t v = 0; v < current.size(); ++v) {
        if (current[v]) EXPECT_TRUE(previous[v]) << "source side grew at node " << v;
      }
      previous = current;
    }
    EXPECT_EQ(steps, instance.total_volume() - start);
  }
}

TEST(Flow, MaxFlowMatchesCutEnumeration) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 2);
    const Instance instance = testing::RandomInstance(rng, 5, 7, m, 0);
    const Supply supply = testing::RandomSupply(rng, instance.horizon(), m, 4);
    auto net = FlowNetwork::Build(instance, supply);
    const std::int64_t flow = net.MaxFlow();
    EXPECT_EQ(flow, testing::MinCutByEnumeration(instance, supply));
    const Cut cut = net.MinimalMinCut();
    EXPECT_EQ(cut.capacity, flow);
    EXPECT_EQ(net.CutCapacity(cut.in_source), flow);
    EXPECT_EQ(cut.capacity + Deficiency(instance, supply, cut.witness), instance.total_volume());
    if (flow < instance.total_volume()) EXPECT_FALSE(cut.witness.empty());
  }
}

TEST(Flow, CutInequalityHoldsForEveryJobSubset) {
  // deficiency(Q(S)) + c(S) >= P for every cut whose slot side is chosen
  // optimally for its job side.
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance instance = testing::RandomInstance(rng, 4, 6, 2, 0);
    const Supply supply = testing::RandomSupply(rng, instance.horizon(), 2, 3);
    auto net = FlowNetwork::Build(instance, supply);
    const std::size_t n = instance.size();
    const auto slots = static_cast<std::size_t>(instance.horizon());
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      for (std::uint32_t slot_mask = 0; slot_mask < (1u << slots); slot_mask += 1 + (rng() % 5)) {
        std::vector<bool> in_source(static_cast<std::size_t>(net.num_nodes()), false);
        in_source[FlowNetwork::kSource] = true;
        std::vector<bool> marked(slots, false);
        for (std::size_t i = 0; i < n; ++i) in_source[net.JobNode(i)] = (mask >> i & 1) != 0;
        for (std::size_t k = 0; k < slots; ++k) {
          marked[k] = (slot_mask >> k & 1) != 0;
          in_source[net.SlotNode(k)] = marked[k];
        }
        const auto q = DisjointIntervalSet::FromSlots(marked);
        EXPECT_GE(net.CutCapacity(in_source) + Deficiency(instance, supply, q), instance.total_volume());
      }
    }
  }
}

TEST(Flow, CheckFeasibleAgreesWithSlotAssignmentSearch) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 600; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 2);
    const Instance instance = testing::RandomInstance(rng, 4, 6, m, 0);
    const Supply supply = testing::RandomSupply(rng, instance.horizon(), m, 4);
    const FeasibilityResult result = CheckFeasible(instance, supply);
    EXPECT_EQ(result.feasible, testing::BruteFeasible(instance, supply));
    if (!result.feasible) {
      EXPECT_EQ(result.deficiency, instance.total_volume() - result.flow_value);
      EXPECT_EQ(Deficiency(instance, supply, result.witness), result.deficiency);
    }
  }
}

TEST(Flow, FlowValueIndependentOfJobOrder) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance instance = testing::RandomInstance(rng, 5, 8, 2, 0);
    const Supply supply = testing::RandomSupply(rng, instance.horizon(), 2, 4);
    std::vector<Job> jobs = instance.jobs();
    std::shuffle(jobs.begin(), jobs.end(), rng);
    const Instance shuffled = Instance::Create(jobs, 2, 0);
    Supply reversed = supply;
    std::reverse(reversed.begin(), reversed.end());
    EXPECT_EQ(CheckFeasible(instance, supply).flow_value, CheckFeasible(shuffled, reversed).flow_value);
  }
}

TEST(Flow, CoarseGridWithAllPointsIsTheUnitNetwork) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance instance = testing::RandomInstance(rng, 5, 8, 2, 0);
    const Supply supply = testing::RandomSupply(rng, instance.horizon(), 2, 4);
    std::vector<Time> points;
    for (Time t = 0; t <= instance.horizon(); ++t) points.push_back(t);
    auto coarse = BuildCoarse(instance, supply, points);
    auto unit = FlowNetwork::Build(instance, supply);
    EXPECT_TRUE(coarse.grid().is_unit());
    EXPECT_EQ(coarse.MaxFlow(), unit.MaxFlow());
    for (std::size_t k = 0; k < unit.grid().num_slots(); ++k) {
      EXPECT_EQ(coarse.SinkCapacity(k), unit.SinkCapacity(k));
    }
  }
}

TEST(Flow, CoarseSlotCapacities) {
  const Instance instance = Instance::Create({{0, 0, 4, 3}, {1, 0, 4, 3}, {2, 0, 4, 2}}, 2, 0);
  auto net = BuildCoarse(instance, {{0, 4}, {0, 4}}, {0, 4});
  EXPECT_EQ(net.SinkCapacity(0), 8);
  EXPECT_EQ(net.MaxFlow(), 8);

  // the job arc carries only the part of the window inside the slot
  const Instance inside = Instance::Create({{0, 1, 3, 2}, {1, 0, 4, 1}}, 1, 0);
  auto single = BuildCoarse(inside, {{0, 4}}, {0, 4});
  EXPECT_EQ(single.MaxFlow(), 3);
}

TEST(Flow, CoarseFeasibilityMatchesUnitGrid) {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 2);
    const Instance instance = testing::RandomInstance(rng, 5, 10, m, 0);
    const Supply supply = testing::RandomSupply(rng, instance.horizon(), m, 4);
    auto coarse = FlowNetwork::Build(instance, supply, SlotGrid::Aligned(instance, supply));
    EXPECT_EQ(coarse.MaxFlow(), CheckFeasible(instance, supply).flow_value);
  }
}

TEST(Flow, GridRejectsBadPoints) {
  EXPECT_THROW(SlotGrid::FromPoints({1, 4}, 4), DomainError);
  EXPECT_THROW(SlotGrid::FromPoints({0, 3}, 4), DomainError);
  const Instance instance = Instance::Create({{0, 0, 4, 1}}, 1, 0);
  EXPECT_THROW(FlowNetwork::Build(instance, {{1, 3}}, SlotGrid::FromPoints({0, 2, 4}, 4)), DomainError);
}

}  // namespace
}  // namespace powerdown
