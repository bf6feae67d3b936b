#ifndef POWERDOWN_EXTEND_H_
#define POWERDOWN_EXTEND_H_

#include <cstdint>
#include <vector>

#include "powerdown/instance.h"
#include "powerdown/interval.h"

namespace powerdown {

enum class Direction { kLeft, kRight };

// One extension applied during a repair: `index` is the position of the
// interval in the returned supply, `amount` the number of slots added.
struct ExtensionStep {
  std::size_t index = 0;
  Direction direction = Direction::kRight;
  Time amount = 0;
  DisjointIntervalSet witness;  // minimal maximum-deficiency set before the step
  std::int64_t flow_before = 0;
  std::int64_t flow_after = 0;
};

struct RepairResult {
  Supply supply;
  Time added_length = 0;
  std::vector<ExtensionStep> steps;
};

// Single machine repair of a set of disjoint intervals. Touching intervals
// are merged first. Then, while some window has V(a, t) above its active
// time, take the least such t and the largest such a, pick an interval
// meeting [a, t], extend it right up to t and then left, absorbing other
// intervals, until every window ending at t is covered. The returned supply
// is disjoint and never has more intervals than the input.
//
// Throws DomainError if m != 1 or the input intervals overlap, and
// InvariantViolation if no interval meets a deficient window (which the LP
// cover rows rule out for decomposition candidates).
RepairResult ExtendSingle(const Instance& instance, const Supply& candidate);

enum class ModifyRule {
  // The stretch-or-copy rules, applied as stated:
  //   j = 0:     copy I_1 unless it overlaps I_m
  //   j >= 1:    if I_j overlaps I_{j+1}, replace I_j by [s_j, e_{j+1}];
  //              otherwise copy I_{j+1} unless it overlaps I_{j+m}
  // (a missing I_k never overlaps; overlap includes shared endpoints).
  // Can leave a slot covered m + 1 times, e.g. {[0,2], [1,4], [3,5]} with
  // m = 2, and can leave a window meeting l < m intervals still meeting only
  // l, e.g. [0,1] against {[0,6], [4,7]} with m = 2.
  kStretchOrCopy,
  // Keeps every interval and adds one interval per maximal run of slots
  // covered between 1 and m - 1 times. Coverage stays at most m, added
  // length is at most the original length, and a window meeting 0 < l < m
  // intervals contains or touches such a run, so it meets at least l + 1.
  kCoverRuns,
};

struct ModifyOptions {
  ModifyRule rule = ModifyRule::kCoverRuns;
};

// Multi machine modification of a candidate; the result is sorted by
// (start, end).
Supply ModifyMulti(const Supply& candidate, int machines, const ModifyOptions& options = {});

struct ExtendOptions {
  // Extend the chosen interval by the largest delta that still raises the
  // maximum flow by delta (binary search on the aligned coarse grid) instead
  // of one unit slot at a time.
  bool batched = true;
};

// Multi machine repair. While the maximum flow F is below P, take the
// minimal maximum-deficiency set Q from the minimal minimum cut, its leftmost
// part Q_i for which some interval I' overlaps Q_i without containing it, and
// the first such I' (in supply order) that can grow into Q_i through a slot
// covered fewer than m times. Its end grows if e < end(Q_i), else its start
// shrinks. Each unit raises F by exactly one, so the added length is P - F.
// Interval positions are preserved; nothing is merged.
//
// Throws InvariantViolation when no interval can be extended while F < P.
RepairResult ExtendMulti(const Instance& instance, const Supply& candidate,
                         const ExtendOptions& options = {});

}  // namespace powerdown

#endif  // POWERDOWN_EXTEND_H_
