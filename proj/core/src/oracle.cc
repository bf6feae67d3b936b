#include "powerdown/oracle.h"

#include <algorithm>
#include <functional>
#include <limits>

#include "powerdown/errors.h"
#include "powerdown/volume.h"

namespace powerdown {
namespace {

// Jobs with demands, unit slots with capacities; job i may use slot t once
// when r_i <= t < d_i. Plain augmenting paths on an adjacency matrix.
class SmallFlow {
 public:
  SmallFlow(int jobs, int slots) : jobs_(jobs), slots_(slots), n_(jobs + slots + 2), cap_(n_ * n_, 0) {}

  void Demand(int job, Time amount) { cap_[Index(Source(), JobNode(job))] = amount; }
  void Allow(int job, int slot) { cap_[Index(JobNode(job), SlotNode(slot))] = 1; }
  void Capacity(int slot, Time amount) { cap_[Index(SlotNode(slot), Sink())] = amount; }

  Time Run() {
    Time total = 0;
    std::vector<int> parent(n_);
    for (;;) {
      std::fill(parent.begin(), parent.end(), -1);
      parent[Source()] = Source();
      std::vector<int> queue{Source()};
      for (std::size_t head = 0; head < queue.size() && parent[Sink()] < 0; ++head) {
        const int u = queue[head];
        for (int v = 0; v < n_; ++v) {
          if (parent[v] < 0 && cap_[Index(u, v)] > 0) {
            parent[v] = u;
            queue.push_back(v);
          }
        }
      }
      if (parent[Sink()] < 0) return total;
      Time push = std::numeric_limits<Time>::max();
      for (int v = Sink(); v != Source(); v = parent[v]) push = std::min(push, cap_[Index(parent[v], v)]);
      for (int v = Sink(); v != Source(); v = parent[v]) {
        cap_[Index(parent[v], v)] -= push;
        cap_[Index(v, parent[v])] += push;
      }
      total += push;
    }
  }

 private:
  int Source() const { return 0; }
  int Sink() const { return 1; }
  int JobNode(int job) const { return 2 + job; }
  int SlotNode(int slot) const { return 2 + jobs_ + slot; }
  std::size_t Index(int u, int v) const { return static_cast<std::size_t>(u) * n_ + v; }

  int jobs_;
  int slots_;
  int n_;
  std::vector<Time> cap_;
};

// Can every job run its volume forced into [0, prefix) there, using the
// coverage of the first `prefix` slots?
bool PrefixFeasible(const Instance& instance, const std::vector<Time>& coverage, Time prefix) {
  const int n = static_cast<int>(instance.size());
  SmallFlow flow(n, static_cast<int>(prefix));
  Time need = 0;
  for (int i = 0; i < n; ++i) {
    const Job& job = instance.jobs()[i];
    const Time forced = prefix == 0 ? 0 : ForcedVolume(job, Interval{0, prefix});
    flow.Demand(i, forced);
    need += forced;
    for (Time t = job.release; t < std::min(job.deadline, prefix); ++t) flow.Allow(i, static_cast<int>(t));
  }
  for (Time t = 0; t < prefix; ++t) flow.Capacity(static_cast<int>(t), coverage[t]);
  return need == 0 || flow.Run() == need;
}

}  // namespace

Supply SupplyFromProfile(const std::vector<Time>& coverage) {
  Supply supply;
  const Time top = coverage.empty() ? 0 : *std::max_element(coverage.begin(), coverage.end());
  for (Time level = 1; level <= top; ++level) {
    std::vector<bool> slots(coverage.size());
    for (std::size_t t = 0; t < coverage.size(); ++t) slots[t] = coverage[t] >= level;
    const DisjointIntervalSet runs = DisjointIntervalSet::FromSlots(slots);
    supply.insert(supply.end(), runs.intervals().begin(), runs.intervals().end());
  }
  std::sort(supply.begin(), supply.end());
  return supply;
}

std::optional<ExactResult> ExactOpt(const Instance& instance, const ExactLimits& limits) {
  if (instance.size() > limits.max_jobs || instance.horizon() > limits.max_horizon ||
      instance.machines() > limits.max_machines) {
    throw LimitExceededError("exact search limited to n <= " + std::to_string(limits.max_jobs) +
                             ", D <= " + std::to_string(limits.max_horizon) +
                             ", m <= " + std::to_string(limits.max_machines));
  }
  const Time horizon = instance.horizon();
  const Time m = instance.machines();
  const Time q = instance.wakeup();

  // Volume that must still run in slots t.. for each t.
  std::vector<Time> forced_after(static_cast<std::size_t>(horizon) + 1, 0);
  for (Time t = 0; t < horizon; ++t) forced_after[t] = TotalForcedVolume(instance, Interval{t, horizon});

  std::vector<Time> coverage(static_cast<std::size_t>(horizon), 0);
  std::optional<std::vector<Time>> best_profile;
  Time best = std::numeric_limits<Time>::max();

  std::function<void(Time, Time, Time)> search = [&](Time t, Time previous, Time energy) {
    if (energy + forced_after[t] >= best && best_profile) return;
    if (!PrefixFeasible(instance, coverage, t)) return;
    if (t == horizon) {
      best = energy;
      best_profile = coverage;
      return;
    }
    for (Time c = 0; c <= m; ++c) {
      coverage[t] = c;
      search(t + 1, c, energy + c + q * std::max<Time>(0, c - previous));
    }
    coverage[t] = 0;
  };
  search(0, 0, 0);
  if (!best_profile) return std::nullopt;

  ExactResult result;
  result.energy = best;
  result.supply = SupplyFromProfile(*best_profile);
  result.schedule = AssignJobs(instance, result.supply);
  if (result.schedule.energy != best) {
    throw InvariantViolation("layered supply energy differs from the profile energy");
  }
  return result;
}

}  // namespace powerdown
