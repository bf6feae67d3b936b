#include "powerdown/extend.h"

#include <algorithm>
#include <optional>

#include "powerdown/errors.h"
#include "powerdown/flow.h"
#include "powerdown/volume.h"

namespace powerdown {
namespace {

void CheckRange(const Instance& instance, const Supply& supply) {
  for (const Interval& interval : supply) {
    if (interval.start < 0 || interval.start >= interval.end || interval.end > instance.horizon()) {
      throw DomainError("interval " + ToString(interval) + " outside [0,D]");
    }
  }
}

class SingleRepair {
 public:
  SingleRepair(const Instance& instance, const Supply& candidate)
      : instance_(instance), active_(static_cast<std::size_t>(instance.horizon()), false) {
    for (const Interval& interval : candidate) {
      for (Time u = interval.start; u < interval.end; ++u) {
        if (active_[u]) throw DomainError("single machine candidate intervals must be disjoint");
        active_[u] = true;
      }
    }
    for (const Job& job : instance.jobs()) {
      releases_.push_back(job.release);
      deadlines_.push_back(job.deadline);
    }
    for (auto* times : {&releases_, &deadlines_}) {
      std::sort(times->begin(), times->end());
      times->erase(std::unique(times->begin(), times->end()), times->end());
    }
  }

  RepairResult Run() {
    RepairResult result;
    for (Time t : deadlines_) {
      std::optional<Time> a1;
      for (Time a : releases_) {
        if (a < t && Deficient(a, t)) a1 = a;
      }
      if (!a1) continue;
      Time due = 0;
      for (const Job& job : instance_.jobs()) {
        if (job.deadline == t) due += job.ptime;
      }
      ExtensionStep step;
      step.witness = DisjointIntervalSet::Create({{*a1, t}});
      step.amount = Extend(*a1, t, step);
      if (step.amount > due) {
        throw InvariantViolation("extension for deadline " + std::to_string(t) + " added " +
                                 std::to_string(step.amount) + " > " + std::to_string(due) + " slots");
      }
      for (Time a : releases_) {
        if (a < t && Deficient(a, t)) {
          throw InfeasibleError("window [" + std::to_string(a) + "," + std::to_string(t) +
                                "] holds more volume than its length");
        }
      }
      result.added_length += step.amount;
      result.steps.push_back(std::move(step));
    }
    result.supply = DisjointIntervalSet::FromSlots(active_).intervals();
    return result;
  }

 private:
  Time Active(Time a, Time b) const {
    return std::count(active_.begin() + a, active_.begin() + b, true);
  }
  bool Deficient(Time a, Time t) const { return TotalVolume(instance_, a, t) > Active(a, t); }
  bool Settled(Time t) const {
    return std::none_of(releases_.begin(), releases_.end(),
                        [&](Time a) { return a < t && Deficient(a, t); });
  }

  // Grows an interval meeting [a1, t] and returns the number of slots added.
  Time Extend(Time a1, Time t, ExtensionStep& step) {
    const auto runs = DisjointIntervalSet::FromSlots(active_).intervals();
    std::optional<std::size_t> chosen;
    for (std::size_t k = 0; k < runs.size(); ++k) {
      if (runs[k].start < t && runs[k].end >= a1) chosen = k;
    }
    if (!chosen) {
      for (std::size_t k = 0; k < runs.size(); ++k) {
        if (runs[k].start == t) chosen = k;
      }
    }
    if (!chosen) {
      throw InvariantViolation("no interval meets the deficient window [" + std::to_string(a1) +
                               "," + std::to_string(t) + "]");
    }
    step.index = *chosen;
    Time added = 0;
    const auto fill = [&](Time u) {
      if (active_[u]) return false;
      active_[u] = true;
      ++added;
      return Settled(t);
    };
    step.direction = Direction::kLeft;
    for (Time u = runs[*chosen].end; u < t; ++u) {
      step.direction = Direction::kRight;
      if (fill(u)) return added;
    }
    for (Time u = t - 1; u >= 0; --u) {
      if (fill(u)) return added;
    }
    return added;
  }

  const Instance& instance_;
  std::vector<bool> active_;
  std::vector<Time> releases_;
  std::vector<Time> deadlines_;
};

struct Choice {
  std::size_t index;
  Direction direction;
  Time slot;  // first slot to add
};

std::optional<Choice> ChooseExtension(const Supply& supply, const std::vector<Time>& coverage,
                                      const DisjointIntervalSet& witness, int machines) {
  for (const Interval& q : witness.intervals()) {
    for (std::size_t k = 0; k < supply.size(); ++k) {
      const Interval& interval = supply[k];
      if (!interval.Overlaps(q) || interval.Contains(q)) continue;
      if (interval.end < q.end && interval.end >= q.start && coverage[interval.end] < machines) {
        return Choice{k, Direction::kRight, interval.end};
      }
      if (interval.start > q.start && interval.start <= q.end &&
          coverage[interval.start - 1] < machines) {
        return Choice{k, Direction::kLeft, interval.start - 1};
      }
    }
  }
  return std::nullopt;
}

void Grow(Interval& interval, Direction direction, Time amount) {
  if (direction == Direction::kRight) {
    interval.end += amount;
  } else {
    interval.start -= amount;
  }
}

std::int64_t AlignedFlow(const Instance& instance, const Supply& supply) {
  FlowNetwork net = FlowNetwork::Build(instance, supply, SlotGrid::Aligned(instance, supply));
  return net.MaxFlow();
}

[[noreturn]] void Stuck(const DisjointIntervalSet& witness, std::int64_t flow, std::int64_t total) {
  throw InvariantViolation("no interval can grow into " + ToString(witness) + " (flow " +
                           std::to_string(flow) + " of " + std::to_string(total) + ")");
}

RepairResult ExtendUnit(const Instance& instance, Supply supply, std::vector<Time> coverage) {
  RepairResult result;
  FlowNetwork net = FlowNetwork::Build(instance, supply);
  net.MaxFlow();
  while (!net.saturated()) {
    Cut cut = net.MinimalMinCut();
    const auto choice = ChooseExtension(supply, coverage, cut.witness, instance.machines());
    if (!choice) Stuck(cut.witness, net.flow_value(), net.total_demand());
    ExtensionStep step;
    step.index = choice->index;
    step.direction = choice->direction;
    step.amount = 1;
    step.witness = std::move(cut.witness);
    step.flow_before = net.flow_value();
    Grow(supply[choice->index], choice->direction, 1);
    ++coverage[choice->slot];
    step.flow_after = net.AugmentSlot(static_cast<std::size_t>(choice->slot)).flow_value;
    if (step.flow_after != step.flow_before + 1) {
      throw InvariantViolation("extending into slot " + std::to_string(choice->slot) +
                               " did not raise the flow");
    }
    ++result.added_length;
    result.steps.push_back(std::move(step));
  }
  result.supply = std::move(supply);
  return result;
}

RepairResult ExtendBatched(const Instance& instance, Supply supply, std::vector<Time> coverage) {
  RepairResult result;
  const std::int64_t total = instance.total_volume();
  const int machines = instance.machines();
  for (;;) {
    FlowNetwork net = FlowNetwork::Build(instance, supply, SlotGrid::Aligned(instance, supply));
    const std::int64_t flow = net.MaxFlow();
    if (flow == total) break;
    Cut cut = net.MinimalMinCut();
    const auto choice = ChooseExtension(supply, coverage, cut.witness, machines);
    if (!choice) Stuck(cut.witness, flow, total);

    // Room: consecutive slots below full coverage, capped by the missing flow.
    const int dir = choice->direction == Direction::kRight ? 1 : -1;
    Time room = 0;
    for (Time u = choice->slot; u >= 0 && u < instance.horizon() && coverage[u] < machines &&
                                room < total - flow;
         u += dir) {
      ++room;
    }
    const auto gains_fully = [&](Time delta) {
      Supply trial = supply;
      Grow(trial[choice->index], choice->direction, delta);
      return AlignedFlow(instance, trial) == flow + delta;
    };
    if (!gains_fully(1)) {
      throw InvariantViolation("extending " + ToString(supply[choice->index]) +
                               " by one slot did not raise the flow");
    }
    Time lo = 1;
    Time hi = room;
    while (lo < hi) {
      const Time mid = lo + (hi - lo + 1) / 2;
      if (gains_fully(mid)) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    ExtensionStep step;
    step.index = choice->index;
    step.direction = choice->direction;
    step.amount = lo;
    step.witness = std::move(cut.witness);
    step.flow_before = flow;
    step.flow_after = flow + lo;
    for (Time k = 0; k < lo; ++k) ++coverage[choice->slot + dir * k];
    Grow(supply[choice->index], choice->direction, lo);
    result.added_length += lo;
    result.steps.push_back(std::move(step));
  }
  result.supply = std::move(supply);
  return result;
}

Supply StretchOrCopy(const Supply& sorted, int machines) {
  const std::size_t n = sorted.size();
  const std::size_t m = static_cast<std::size_t>(machines);
  // I(k) is I_k for 1 <= k <= n.
  const auto I = [&](std::size_t k) -> const Interval& { return sorted[k - 1]; };
  const auto overlaps = [&](std::size_t k, std::size_t l) { return l <= n && I(k).Overlaps(I(l)); };
  Supply out;
  if (n > 0 && !overlaps(1, m)) out.push_back(I(1));
  for (std::size_t j = 1; j <= n; ++j) {
    if (j < n && overlaps(j, j + 1)) {
      out.push_back({I(j).start, std::max(I(j).end, I(j + 1).end)});
      continue;
    }
    out.push_back(I(j));
    if (j < n && !overlaps(j + 1, j + m)) out.push_back(I(j + 1));
  }
  return out;
}

Supply CoverRuns(const Supply& sorted, int machines) {
  Time horizon = 0;
  for (const Interval& interval : sorted) horizon = std::max(horizon, interval.end);
  const std::vector<Time> coverage = SlotCoverage(sorted, horizon);
  std::vector<bool> partial(coverage.size());
  for (std::size_t t = 0; t < coverage.size(); ++t) partial[t] = coverage[t] >= 1 && coverage[t] < machines;
  Supply out = sorted;
  const DisjointIntervalSet runs = DisjointIntervalSet::FromSlots(partial);
  out.insert(out.end(), runs.intervals().begin(), runs.intervals().end());
  return out;
}

}  // namespace

RepairResult ExtendSingle(const Instance& instance, const Supply& candidate) {
  if (instance.machines() != 1) throw DomainError("single machine repair needs m = 1");
  CheckRange(instance, candidate);
  return SingleRepair(instance, candidate).Run();
}

Supply ModifyMulti(const Supply& candidate, int machines, const ModifyOptions& options) {
  if (machines < 1) throw DomainError("machines must be positive");
  Supply sorted = candidate;
  std::sort(sorted.begin(), sorted.end());
  Supply out = options.rule == ModifyRule::kCoverRuns ? CoverRuns(sorted, machines)
                                                      : StretchOrCopy(sorted, machines);
  std::sort(out.begin(), out.end());
  return out;
}

RepairResult ExtendMulti(const Instance& instance, const Supply& candidate, const ExtendOptions& options) {
  CheckRange(instance, candidate);
  std::vector<Time> coverage = SlotCoverage(candidate, instance.horizon());
  for (Time u = 0; u < instance.horizon(); ++u) {
    if (coverage[u] > instance.machines()) {
      throw DomainError("slot " + std::to_string(u) + " is covered " + std::to_string(coverage[u]) +
                        " times, more than m");
    }
  }
  return options.batched ? ExtendBatched(instance, candidate, std::move(coverage))
                         : ExtendUnit(instance, candidate, std::move(coverage));
}

}  // namespace powerdown
