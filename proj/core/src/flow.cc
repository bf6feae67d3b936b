#include "powerdown/flow.h"

#include <algorithm>
#include <limits>
#include <queue>

#include "powerdown/errors.h"

namespace powerdown {

SlotGrid SlotGrid::Unit(Time horizon) {
  SlotGrid grid;
  grid.points_.resize(static_cast<std::size_t>(horizon) + 1);
  for (Time t = 0; t <= horizon; ++t) grid.points_[t] = t;
  return grid;
}

SlotGrid SlotGrid::FromPoints(std::vector<Time> points, Time horizon) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.empty() || points.front() != 0 || points.back() != horizon) {
    throw DomainError("grid points must include 0 and D=" + std::to_string(horizon) +
                      " and lie inside [0,D]");
  }
  SlotGrid grid;
  grid.points_ = std::move(points);
  return grid;
}

SlotGrid SlotGrid::Aligned(const Instance& instance, const Supply& supply) {
  std::vector<Time> points = instance.EventTimes();
  points.push_back(0);
  points.push_back(instance.horizon());
  for (const Interval& interval : supply) {
    points.push_back(interval.start);
    points.push_back(interval.end);
  }
  return FromPoints(std::move(points), instance.horizon());
}

bool SlotGrid::is_unit() const {
  for (std::size_t k = 0; k < num_slots(); ++k) {
    if (points_[k + 1] - points_[k] != 1) return false;
  }
  return true;
}

int FlowNetwork::AddEdge(int from, int to, std::int64_t capacity) {
  const int id = static_cast<int>(edges_.size());
  edges_.push_back({to, capacity, 0});
  edges_.push_back({from, 0, 0});
  adjacency_[from].push_back(id);
  adjacency_[to].push_back(id + 1);
  return id;
}

FlowNetwork FlowNetwork::Build(const Instance& instance, const Supply& supply, SlotGrid grid) {
  if (grid.horizon() != instance.horizon()) {
    throw DomainError("grid horizon does not match the instance");
  }
  FlowNetwork net;
  net.num_jobs_ = instance.size();
  const std::size_t slots = grid.num_slots();
  net.adjacency_.resize(2 + net.num_jobs_ + slots);
  net.job_edges_.resize(net.num_jobs_);
  net.sink_edge_.resize(slots);

  const auto& points = grid.points();
  for (const Interval& interval : supply) {
    if (interval.start < 0 || interval.end > instance.horizon() || interval.start >= interval.end) {
      throw DomainError("supply interval " + ToString(interval) + " outside [0,D]");
    }
    if (!std::binary_search(points.begin(), points.end(), interval.start) ||
        !std::binary_search(points.begin(), points.end(), interval.end)) {
      throw DomainError("supply interval " + ToString(interval) + " not aligned to the grid");
    }
  }

  for (std::size_t i = 0; i < net.num_jobs_; ++i) {
    const Job& job = instance.jobs()[i];
    net.AddEdge(kSource, net.JobNode(i), job.ptime);
    net.total_demand_ += job.ptime;
    for (std::size_t k = 0; k < slots; ++k) {
      const Time overlap = OverlapLength(job.window(), grid.slot(k));
      if (overlap > 0) {
        net.job_edges_[i].emplace_back(k, net.AddEdge(net.JobNode(i), net.SlotNode(k), overlap));
      }
    }
  }
  for (std::size_t k = 0; k < slots; ++k) {
    const Interval slot = grid.slot(k);
    std::int64_t covering = 0;
    for (const Interval& interval : supply) {
      if (interval.Contains(slot)) ++covering;
    }
    net.sink_edge_[k] = net.AddEdge(net.SlotNode(k), kSink, covering * slot.length());
  }
  net.grid_ = std::move(grid);
  net.is_max_ = net.total_demand_ == 0;
  return net;
}

FlowNetwork FlowNetwork::Build(const Instance& instance, const Supply& supply) {
  return Build(instance, supply, SlotGrid::Unit(instance.horizon()));
}

bool FlowNetwork::BuildLevels() {
  level_.assign(adjacency_.size(), -1);
  std::queue<int> queue;
  level_[kSource] = 0;
  queue.push(kSource);
  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop();
    for (int e : adjacency_[node]) {
      const int to = edges_[e].to;
      if (level_[to] < 0 && Residual(e) > 0) {
        level_[to] = level_[node] + 1;
        queue.push(to);
      }
    }
  }
  return level_[kSink] >= 0;
}

std::int64_t FlowNetwork::PushBlocking(int node, std::int64_t limit) {
  if (node == kSink) return limit;
  for (std::size_t& k = cursor_[node]; k < adjacency_[node].size(); ++k) {
    const int e = adjacency_[node][k];
    const int to = edges_[e].to;
    if (level_[to] != level_[node] + 1 || Residual(e) <= 0) continue;
    const std::int64_t pushed = PushBlocking(to, std::min(limit, Residual(e)));
    if (pushed > 0) {
      edges_[e].flow += pushed;
      edges_[e ^ 1].flow -= pushed;
      return pushed;
    }
  }
  return 0;
}

std::int64_t FlowNetwork::MaxFlow() {
  if (is_max_) return flow_value_;
  while (BuildLevels()) {
    cursor_.assign(adjacency_.size(), 0);
    while (const std::int64_t pushed =
               PushBlocking(kSource, std::numeric_limits<std::int64_t>::max())) {
      flow_value_ += pushed;
    }
  }
  is_max_ = true;
  return flow_value_;
}

std::vector<bool> FlowNetwork::ResidualReachable() const {
  std::vector<bool> seen(adjacency_.size(), false);
  std::queue<int> queue;
  seen[kSource] = true;
  queue.push(kSource);
  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop();
    for (int e : adjacency_[node]) {
      const int to = edges_[e].to;
      if (!seen[to] && Residual(e) > 0) {
        seen[to] = true;
        queue.push(to);
      }
    }
  }
  return seen;
}

std::int64_t FlowNetwork::CutCapacity(const std::vector<bool>& in_source) const {
  std::int64_t capacity = 0;
  for (std::size_t node = 0; node < adjacency_.size(); ++node) {
    if (!in_source[node]) continue;
    for (int e : adjacency_[node]) {
      if ((e & 1) == 0 && !in_source[edges_[e].to]) capacity += edges_[e].capacity;
    }
  }
  return capacity;
}

Cut FlowNetwork::MinimalMinCut() {
  MaxFlow();
  Cut cut;
  cut.in_source = ResidualReachable();
  cut.capacity = CutCapacity(cut.in_source);
  if (cut.capacity != flow_value_) {
    throw InvariantViolation("residual cut capacity differs from the max-flow value");
  }
  cut.slots.resize(grid_.num_slots());
  std::vector<Interval> runs;
  for (std::size_t k = 0; k < grid_.num_slots(); ++k) {
    cut.slots[k] = cut.in_source[SlotNode(k)];
    if (!cut.slots[k]) continue;
    const Interval slot = grid_.slot(k);
    if (!runs.empty() && runs.back().end == slot.start) {
      runs.back().end = slot.end;
    } else {
      runs.push_back(slot);
    }
  }
  cut.witness = DisjointIntervalSet::Create(std::move(runs));
  return cut;
}

bool FlowNetwork::AugmentOnePath() {
  std::vector<int> parent_edge(adjacency_.size(), -1);
  std::vector<bool> seen(adjacency_.size(), false);
  std::queue<int> queue;
  seen[kSource] = true;
  queue.push(kSource);
  while (!queue.empty() && !seen[kSink]) {
    const int node = queue.front();
    queue.pop();
    for (int e : adjacency_[node]) {
      const int to = edges_[e].to;
      if (!seen[to] && Residual(e) > 0) {
        seen[to] = true;
        parent_edge[to] = e;
        queue.push(to);
      }
    }
  }
  if (!seen[kSink]) return false;
  for (int node = kSink; node != kSource;) {
    const int e = parent_edge[node];
    edges_[e].flow += 1;
    edges_[e ^ 1].flow -= 1;
    node = edges_[e ^ 1].to;
  }
  ++flow_value_;
  return true;
}

AugmentResult FlowNetwork::AugmentSlot(std::size_t slot) {
  if (slot >= grid_.num_slots()) throw DomainError("slot index out of range");
  MaxFlow();
  edges_[sink_edge_[slot]].capacity += 1;
  // Capacity grew by one, so a single path restores maximality.
  AugmentOnePath();
  is_max_ = true;
  return {slot, flow_value_};
}

AugmentResult FlowNetwork::AugmentStep() {
  MaxFlow();
  if (saturated()) throw DomainError("network already routes all demand");
  const Cut cut = MinimalMinCut();
  const auto it = std::find(cut.slots.begin(), cut.slots.end(), true);
  if (it == cut.slots.end()) {
    throw InvariantViolation("minimum cut below P has no slot node on the source side");
  }
  const std::int64_t before = flow_value_;
  AugmentResult result = AugmentSlot(static_cast<std::size_t>(it - cut.slots.begin()));
  if (result.flow_value != before + 1) {
    throw InvariantViolation("raising a source-side sink arc did not increase the flow");
  }
  return result;
}

std::int64_t FlowNetwork::SinkCapacity(std::size_t slot) const {
  return edges_[sink_edge_[slot]].capacity;
}

std::int64_t FlowNetwork::JobSlotFlow(std::size_t job, std::size_t slot) const {
  for (const auto& [k, e] : job_edges_[job]) {
    if (k == slot) return edges_[e].flow;
  }
  return 0;
}

FeasibilityResult CheckFeasible(const Instance& instance, const Supply& supply) {
  FlowNetwork net = FlowNetwork::Build(instance, supply);
  FeasibilityResult result;
  result.flow_value = net.MaxFlow();
  result.feasible = net.saturated();
  if (!result.feasible) {
    Cut cut = net.MinimalMinCut();
    result.witness = std::move(cut.witness);
    result.deficiency = net.total_demand() - cut.capacity;
  }
  return result;
}

Supply FullAvailability(const Instance& instance) {
  if (instance.horizon() == 0) return {};
  return Supply(static_cast<std::size_t>(instance.machines()), Interval{0, instance.horizon()});
}

FlowNetwork BuildCoarse(const Instance& instance, const Supply& supply, const std::vector<Time>& w) {
  return FlowNetwork::Build(instance, supply, SlotGrid::FromPoints(w, instance.horizon()));
}

}  // namespace powerdown
