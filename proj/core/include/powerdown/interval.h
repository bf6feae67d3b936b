#ifndef POWERDOWN_INTERVAL_H_
#define POWERDOWN_INTERVAL_H_

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "powerdown/rational.h"

namespace powerdown {

using Time = std::int64_t;

// Closed interval [start, end] on the integer time line; slot t is [t, t+1].
//
// Two intervals that only share an endpoint *overlap* (they have a common
// point). Use SharesSlot() when the question is whether they compete for a
// unit of machine time. The defaulted ordering is start time, then end time,
// which is the order used everywhere intervals are sorted.
struct Interval {
  Time start = 0;
  Time end = 0;

  Time length() const { return end - start; }
  bool Overlaps(const Interval& other) const {
    return start <= other.end && other.start <= end;
  }
  bool SharesSlot(const Interval& other) const {
    return start < other.end && other.start < end;
  }
  bool Contains(const Interval& other) const {
    return start <= other.start && other.end <= end;
  }
  bool StrictlyContains(const Interval& other) const {
    return start < other.start && other.end < end;
  }
  bool CoversSlot(Time t) const { return start <= t && t + 1 <= end; }
  bool ContainsPoint(Time t) const { return start <= t && t <= end; }

  auto operator<=>(const Interval&) const = default;
};

std::string ToString(const Interval& interval);

/** Length of the common part of two intervals (0 when disjoint). */
Time OverlapLength(const Interval& a, const Interval& b);

/** An integral multiset of intervals; repetition encodes multiplicity. */
using Supply = std::vector<Interval>;

/** Number of supply intervals covering each slot [t, t+1], 0 <= t < horizon. */
std::vector<Time> SlotCoverage(const Supply& supply, Time horizon);

Time TotalLength(const Supply& supply);

/** Number of intervals of `supply` that overlap `window` (shared endpoints count). */
int OverlapCount(const Supply& supply, const Interval& window);

struct WeightedInterval {
  Interval interval;
  Rational weight;

  bool operator==(const WeightedInterval&) const = default;
};

/** Weighted multiset of intervals, e.g. the support of a fractional solution. */
using IntervalMultiset = std::vector<WeightedInterval>;

/** Checks 0 < weight, 0 <= start < end <= horizon, and per-slot weight <= machines. */
void ValidateMultiset(const IntervalMultiset& entries, int machines, Time horizon);

/** Pointwise weighted coverage of each slot. */
std::vector<Rational> SlotCoverage(const IntervalMultiset& entries, Time horizon);

/** Sorted, pairwise disjoint intervals; neighbours do not even share an endpoint. */
class DisjointIntervalSet {
 public:
  DisjointIntervalSet() = default;

  /** Sorts `intervals` and validates disjointness; throws DomainError. */
  static DisjointIntervalSet Create(std::vector<Interval> intervals);

  /** Maximal runs of the marked slots, i.e. the minimal interval cover. */
  static DisjointIntervalSet FromSlots(const std::vector<bool>& slots);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }
  Time TotalLength() const;
  bool CoversSlot(Time t) const;
  /** Set inclusion of the covered time, not of the interval lists. */
  bool IsSubsetOf(const DisjointIntervalSet& other) const;

  bool operator==(const DisjointIntervalSet&) const = default;

 private:
  std::vector<Interval> intervals_;
};

std::string ToString(const DisjointIntervalSet& set);

}  // namespace powerdown

#endif  // POWERDOWN_INTERVAL_H_
