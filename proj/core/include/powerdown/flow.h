#ifndef POWERDOWN_FLOW_H_
#define POWERDOWN_FLOW_H_

#include <cstdint>
#include <vector>

#include "powerdown/instance.h"
#include "powerdown/interval.h"

namespace powerdown {

// Partition of [0, D] into consecutive slots. The unit grid has one slot per
// time unit; a coarse grid merges runs of unit slots between chosen points.
class SlotGrid {
 public:
  static SlotGrid Unit(Time horizon);
  // `points` must contain 0 and `horizon` and lie inside [0, horizon];
  // duplicates are removed. Throws DomainError otherwise.
  static SlotGrid FromPoints(std::vector<Time> points, Time horizon);
  // Coarsest grid on which every job window and every supply endpoint is aligned.
  static SlotGrid Aligned(const Instance& instance, const Supply& supply);

  std::size_t num_slots() const { return points_.empty() ? 0 : points_.size() - 1; }
  Interval slot(std::size_t k) const { return {points_[k], points_[k + 1]}; }
  const std::vector<Time>& points() const { return points_; }
  Time horizon() const { return points_.empty() ? 0 : points_.back(); }
  bool is_unit() const;

 private:
  std::vector<Time> points_;
};

struct Cut {
  std::vector<bool> in_source;  // indexed by node id
  std::int64_t capacity = 0;
  std::vector<bool> slots;       // slot k of the grid lies on the source side
  DisjointIntervalSet witness;   // Q(S): maximal runs of source-side slots
};

struct AugmentResult {
  std::size_t slot = 0;
  std::int64_t flow_value = 0;
};

// The feasibility network for deadline scheduling on supply intervals:
//
//   source -> job i      capacity p_i
//   job i  -> slot k     capacity |[r_i, d_i] ∩ slot k|   (1 on the unit grid)
//   slot k -> sink       capacity n_k * |slot k|
//
// where n_k is the number of supply intervals covering slot k. The instance
// is feasible for the supply iff the maximum flow equals P.
//
// Node ids: 0 is the source, 1 the sink, 2 + i job i, 2 + n + k slot k.
// A network owns its flow state; MaxFlow() resumes from the current flow.
class FlowNetwork {
 public:
  static constexpr int kSource = 0;
  static constexpr int kSink = 1;

  // Throws DomainError when a supply interval is not aligned to the grid.
  static FlowNetwork Build(const Instance& instance, const Supply& supply, SlotGrid grid);
  static FlowNetwork Build(const Instance& instance, const Supply& supply);  // unit grid

  std::int64_t MaxFlow();
  std::int64_t flow_value() const { return flow_value_; }
  std::int64_t total_demand() const { return total_demand_; }
  bool saturated() const { return flow_value_ == total_demand_; }

  // S = nodes reachable from the source in the residual graph of a maximum
  // flow; the unique minimum cut with an inclusion-minimal source side.
  Cut MinimalMinCut();

  // Raises the sink capacity of the leftmost slot in the minimal source side
  // by one and re-optimizes with a single augmenting-path search. Throws
  // DomainError if the flow already equals P.
  AugmentResult AugmentStep();
  // Same, for a caller-chosen slot. The flow grows by one iff the slot lies
  // on the minimal source side.
  AugmentResult AugmentSlot(std::size_t slot);

  std::int64_t CutCapacity(const std::vector<bool>& in_source) const;

  const SlotGrid& grid() const { return grid_; }
  std::size_t num_jobs() const { return num_jobs_; }
  int num_nodes() const { return static_cast<int>(adjacency_.size()); }
  int JobNode(std::size_t job) const { return 2 + static_cast<int>(job); }
  int SlotNode(std::size_t slot) const { return 2 + static_cast<int>(num_jobs_ + slot); }
  std::int64_t SinkCapacity(std::size_t slot) const;
  // Flow routed from job `job` (position in the instance) through `slot`.
  std::int64_t JobSlotFlow(std::size_t job, std::size_t slot) const;

 private:
  struct Edge {
    int to;
    std::int64_t capacity;
    std::int64_t flow;
  };

  int AddEdge(int from, int to, std::int64_t capacity);
  std::int64_t Residual(int edge) const { return edges_[edge].capacity - edges_[edge].flow; }
  bool BuildLevels();
  std::int64_t PushBlocking(int node, std::int64_t limit);
  bool AugmentOnePath();
  std::vector<bool> ResidualReachable() const;

  SlotGrid grid_;
  std::size_t num_jobs_ = 0;
  std::int64_t total_demand_ = 0;
  std::int64_t flow_value_ = 0;
  bool is_max_ = false;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> sink_edge_;                     // per slot
  std::vector<std::vector<std::pair<std::size_t, int>>> job_edges_;  // per job: (slot, edge)
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

struct FeasibilityResult {
  bool feasible = false;
  std::int64_t flow_value = 0;
  // Populated when infeasible: Q(S) of the minimal minimum cut and its
  // deficiency P - c(S).
  DisjointIntervalSet witness;
  std::int64_t deficiency = 0;
};

/** Feasibility of scheduling the instance inside the (integral) supply. */
FeasibilityResult CheckFeasible(const Instance& instance, const Supply& supply);

/** m copies of [0, D]: every machine always active. */
Supply FullAvailability(const Instance& instance);

/** Coarse-slot network on the points `w` (which must contain 0 and D). */
FlowNetwork BuildCoarse(const Instance& instance, const Supply& supply, const std::vector<Time>& w);

}  // namespace powerdown

#endif  // POWERDOWN_FLOW_H_
