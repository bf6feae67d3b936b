#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "powerdown/errors.h"
#include "powerdown/extend.h"
#include "powerdown/flow.h"
#include "powerdown/pipeline.h"
#include "powerdown/volume.h"
#include "testing/oracles.h"

namespace powerdown {
namespace {

bool Contains(const Interval& outer, const Interval& inner) {
  return outer.start <= inner.start && inner.end <= outer.end;
}

Time MaxCoverage(const Supply& supply, Time horizon) {
  const auto coverage = SlotCoverage(supply, horizon);
  return coverage.empty() ? 0 : *std::max_element(coverage.begin(), coverage.end());
}

// Decomposition candidates of random feasible instances, as the pipeline
// produces them (modified for m > 1).
struct Case {
  Instance instance;
  Supply candidate;
};

std::vector<Case> Candidates(std::uint64_t seed, int instances, int max_jobs, Time horizon, int machines) {
  std::mt19937_64 rng(seed);
  std::vector<Case> out;
  int made = 0;
  while (made < instances) {
    Instance instance = testing::RandomInstance(rng, max_jobs, horizon, machines, static_cast<Time>(rng() % 4));
    if (!CheckFeasible(instance, FullAvailability(instance)).feasible) continue;
    ++made;
    SolveOptions options;
    options.mode = IntervalMode::kFull;
    const SolveReport report = Solve(instance, options);
    for (const CandidateReport& c : report.candidates) {
      out.push_back({instance, machines == 1 ? c.candidate : c.modified});
    }
  }
  return out;
}

TEST(ExtendSingle, GapCandidate) {
  const Instance gap = IntegralityGapInstance();
  const RepairResult result = ExtendSingle(gap, {{0, 1}, {4, 6}, {7, 8}});
  EXPECT_TRUE(CheckFeasible(gap, result.supply).feasible);
  EXPECT_EQ(result.added_length, 1);
  EXPECT_EQ(TotalLength(result.supply), 5);
  EXPECT_LE(result.supply.size(), 3u);
}

TEST(ExtendSingle, FeasibleCandidateIsUnchanged) {
  const Instance gap = IntegralityGapInstance();
  const RepairResult result = ExtendSingle(gap, {{0, 3}, {5, 8}});
  EXPECT_EQ(result.supply, (Supply{{0, 3}, {5, 8}}));
  EXPECT_EQ(result.added_length, 0);
  EXPECT_TRUE(result.steps.empty());
}

TEST(ExtendSingle, MergesTouchingIntervals) {
  const Instance one = Instance::Create({{0, 0, 4, 4}}, 1, 1);
  const RepairResult result = ExtendSingle(one, {{0, 2}, {2, 4}});
  EXPECT_EQ(result.supply, (Supply{{0, 4}}));
  EXPECT_EQ(result.added_length, 0);
}

TEST(ExtendSingle, RejectsBadInput) {
  const Instance gap = IntegralityGapInstance();
  EXPECT_THROW(ExtendSingle(gap, {{0, 3}, {2, 5}}), DomainError);
  const Instance two = Instance::Create({{0, 0, 2, 1}}, 2, 1);
  EXPECT_THROW(ExtendSingle(two, {{0, 1}}), DomainError);
}

TEST(ExtendSingle, RepairsDecompositionCandidates) {
  for (const Case& c : Candidates(61, 80, 6, 10, 1)) {
    const RepairResult result = ExtendSingle(c.instance, c.candidate);
    const Supply& out = result.supply;
    EXPECT_TRUE(testing::BruteFeasible(c.instance, out));
    EXPECT_LE(result.added_length, c.instance.total_volume());
    EXPECT_EQ(TotalLength(out), TotalLength(c.candidate) + result.added_length);
    EXPECT_LE(out.size(), c.candidate.size());
    for (std::size_t k = 1; k < out.size(); ++k) EXPECT_LT(out[k - 1].end, out[k].start);
    for (const Interval& interval : c.candidate) {
      EXPECT_TRUE(std::any_of(out.begin(), out.end(), [&](const Interval& o) { return Contains(o, interval); }));
    }
  }
}

TEST(ModifyMulti, StretchOrCopyExamples) {
  const ModifyOptions literal{ModifyRule::kStretchOrCopy};
  EXPECT_EQ(ModifyMulti({{0, 2}, {1, 3}}, 2, literal), (Supply{{0, 3}, {1, 3}}));
  EXPECT_EQ(ModifyMulti({{0, 1}, {3, 4}}, 2, literal), (Supply{{0, 1}, {0, 1}, {3, 4}, {3, 4}}));
}

TEST(ModifyMulti, StretchOrCopyCanBreakTheClaim) {
  const ModifyOptions literal{ModifyRule::kStretchOrCopy};
  EXPECT_GT(MaxCoverage(ModifyMulti({{0, 2}, {1, 4}, {3, 5}}, 2, literal), 5), 2);
  const Supply before = {{0, 6}, {4, 7}};
  const Supply after = ModifyMulti(before, 2, literal);
  EXPECT_EQ(OverlapCount(before, {0, 1}), 1);
  EXPECT_EQ(OverlapCount(after, {0, 1}), 1);
}

TEST(ModifyMulti, CoverRunsExamples) {
  EXPECT_EQ(ModifyMulti({{0, 2}, {1, 3}}, 2), (Supply{{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(ModifyMulti({{0, 4}, {0, 4}}, 2), (Supply{{0, 4}, {0, 4}}));
  EXPECT_EQ(ModifyMulti({}, 2), Supply{});
}

TEST(ModifyMulti, CoverRunsSatisfiesTheClaimExhaustively) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 3000; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 3);
    const Time horizon = 2 + static_cast<Time>(rng() % 9);
    const Supply before = testing::RandomSupply(rng, horizon, m, 6);
    const Supply after = ModifyMulti(before, m);
    ASSERT_TRUE(std::is_sorted(after.begin(), after.end()));
    EXPECT_LE(TotalLength(after), 2 * TotalLength(before));
    EXPECT_LE(after.size(), 2 * before.size());
    EXPECT_LE(MaxCoverage(after, horizon), m);
    for (Time a = 0; a <= horizon; ++a) {
      for (Time b = a; b <= horizon; ++b) {
        const int l = OverlapCount(before, {a, b});
        if (0 < l && l < m) EXPECT_GE(OverlapCount(after, {a, b}), l + 1) << a << " " << b;
      }
    }
    // every original interval survives
    for (const Interval& interval : before) {
      EXPECT_GE(std::count(after.begin(), after.end(), interval), std::count(before.begin(), before.end(), interval));
    }
  }
}

TEST(ExtendMulti, TwoMachineExample) {
  const Instance twin = Instance::Create({{0, 0, 2, 2}, {1, 0, 2, 2}}, 2, 1);
  for (bool batched : {false, true}) {
    const RepairResult result = ExtendMulti(twin, {{0, 2}, {0, 1}}, {batched});
    EXPECT_EQ(result.supply, (Supply{{0, 2}, {0, 2}}));
    EXPECT_EQ(result.added_length, 1);
  }
}

TEST(ExtendMulti, RepairsModifiedCandidates) {
  for (const Case& c : Candidates(63, 60, 6, 9, 2)) {
    auto net = FlowNetwork::Build(c.instance, c.candidate);
    const std::int64_t flow = net.MaxFlow();
    const Time volume = c.instance.total_volume();
    RepairResult unit = ExtendMulti(c.instance, c.candidate, {false});
    RepairResult batched = ExtendMulti(c.instance, c.candidate, {true});
    for (const RepairResult* r : {&unit, &batched}) {
      EXPECT_TRUE(testing::BruteFeasible(c.instance, r->supply));
      EXPECT_EQ(r->added_length, volume - flow);
      EXPECT_EQ(TotalLength(r->supply), TotalLength(c.candidate) + r->added_length);
      EXPECT_LE(MaxCoverage(r->supply, c.instance.horizon()), c.instance.machines());
      ASSERT_EQ(r->supply.size(), c.candidate.size());
      for (std::size_t k = 0; k < c.candidate.size(); ++k) EXPECT_TRUE(Contains(r->supply[k], c.candidate[k]));
      Time steps = 0;
      for (const ExtensionStep& step : r->steps) {
        EXPECT_EQ(step.flow_after - step.flow_before, step.amount);
        steps += step.amount;
      }
      EXPECT_EQ(steps, r->added_length);
    }
    EXPECT_EQ(unit.added_length, batched.added_length);
    for (const ExtensionStep& step : unit.steps) EXPECT_EQ(step.amount, 1);
  }
}

TEST(ExtendMulti, WitnessesShrinkDuringUnitRepair) {
  for (const Case& c : Candidates(64, 40, 6, 9, 2)) {
    const RepairResult result = ExtendMulti(c.instance, c.candidate, {false});
    for (std::size_t k = 1; k < result.steps.size(); ++k) {
      for (const Interval& part : result.steps[k].witness.intervals()) {
        EXPECT_TRUE(std::any_of(result.steps[k - 1].witness.intervals().begin(),
                                result.steps[k - 1].witness.intervals().end(),
                                [&](const Interval& prev) { return Contains(prev, part); }));
      }
    }
  }
}

// A batch stops where one more slot would not raise the flow; that side of
// the interval is never extended again. The other side may still be.
TEST(ExtendMulti, BatchedRepairNeverResumesAStoppedSide) {
  for (int m : {2, 3}) {
    for (const Case& c : Candidates(65 + m, 150, 8, 14, m)) {
      const RepairResult result = ExtendMulti(c.instance, c.candidate, {true});
      for (std::size_t k = 0; k < result.steps.size(); ++k) {
        for (std::size_t j = k + 1; j < result.steps.size(); ++j) {
          EXPECT_FALSE(result.steps[j].index == result.steps[k].index &&
                       result.steps[j].direction == result.steps[k].direction);
        }
      }
    }
  }
}

TEST(ExtendMulti, FeasibleSupplyIsUnchanged) {
  const Instance gap = IntegralityGapInstance();
  const RepairResult result = ExtendMulti(gap, {{0, 3}, {5, 8}});
  EXPECT_EQ(result.supply, (Supply{{0, 3}, {5, 8}}));
  EXPECT_EQ(result.added_length, 0);
}

}  // namespace
}  // namespace powerdown
