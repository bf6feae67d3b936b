#include "powerdown/interval.h"

#include <algorithm>
#include <sstream>

#include "powerdown/errors.h"

namespace powerdown {

std::string ToString(const Interval& interval) {
  std::ostringstream out;
  out << "[" << interval.start << "," << interval.end << "]";
  return out.str();
}

Time OverlapLength(const Interval& a, const Interval& b) {
  return std::max<Time>(0, std::min(a.end, b.end) - std::max(a.start, b.start));
}

std::vector<Time> SlotCoverage(const Supply& supply, Time horizon) {
  std::vector<Time> delta(static_cast<std::size_t>(horizon) + 1, 0);
  for (const Interval& interval : supply) {
    const Time a = std::clamp<Time>(interval.start, 0, horizon);
    const Time b = std::clamp<Time>(interval.end, 0, horizon);
    if (a >= b) continue;
    ++delta[a];
    --delta[b];
  }
  std::vector<Time> coverage(static_cast<std::size_t>(horizon), 0);
  Time running = 0;
  for (Time t = 0; t < horizon; ++t) {
    running += delta[t];
    coverage[t] = running;
  }
  return coverage;
}

Time TotalLength(const Supply& supply) {
  Time total = 0;
  for (const Interval& interval : supply) total += interval.length();
  return total;
}

int OverlapCount(const Supply& supply, const Interval& window) {
  return static_cast<int>(std::count_if(supply.begin(), supply.end(),
                                        [&](const Interval& i) { return i.Overlaps(window); }));
}

void ValidateMultiset(const IntervalMultiset& entries, int machines, Time horizon) {
  for (const auto& [interval, weight] : entries) {
    if (interval.start < 0 || interval.start >= interval.end || interval.end > horizon) {
      throw DomainError("interval " + ToString(interval) + " outside [0," +
                        std::to_string(horizon) + "]");
    }
    if (weight <= 0) throw DomainError("non-positive weight on " + ToString(interval));
  }
  const auto coverage = SlotCoverage(entries, horizon);
  for (Time t = 0; t < horizon; ++t) {
    if (coverage[t] > machines) {
      throw DomainError("slot " + std::to_string(t) + " covered with weight " +
                        FormatRational(coverage[t]) + " > m");
    }
  }
}

std::vector<Rational> SlotCoverage(const IntervalMultiset& entries, Time horizon) {
  std::vector<Rational> coverage(static_cast<std::size_t>(std::max<Time>(horizon, 0)));
  for (const auto& [interval, weight] : entries) {
    for (Time t = std::max<Time>(interval.start, 0); t < std::min(interval.end, horizon); ++t) {
      coverage[t] += weight;
    }
  }
  return coverage;
}

DisjointIntervalSet DisjointIntervalSet::Create(std::vector<Interval> intervals) {
  std::sort(intervals.begin(), intervals.end());
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    if (intervals[k].start >= intervals[k].end) {
      throw DomainError("empty interval " + ToString(intervals[k]));
    }
    if (k > 0 && intervals[k - 1].Overlaps(intervals[k])) {
      throw DomainError("intervals " + ToString(intervals[k - 1]) + " and " +
                        ToString(intervals[k]) + " are not disjoint");
    }
  }
  DisjointIntervalSet set;
  set.intervals_ = std::move(intervals);
  return set;
}

DisjointIntervalSet DisjointIntervalSet::FromSlots(const std::vector<bool>& slots) {
  DisjointIntervalSet set;
  const Time n = static_cast<Time>(slots.size());
  for (Time t = 0; t < n;) {
    if (!slots[t]) {
      ++t;
      continue;
    }
    Time end = t;
    while (end < n && slots[end]) ++end;
    set.intervals_.push_back({t, end});
    t = end;
  }
  return set;
}

Time DisjointIntervalSet::TotalLength() const {
  Time total = 0;
  for (const Interval& interval : intervals_) total += interval.length();
  return total;
}

bool DisjointIntervalSet::CoversSlot(Time t) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [t](const Interval& i) { return i.CoversSlot(t); });
}

bool DisjointIntervalSet::IsSubsetOf(const DisjointIntervalSet& other) const {
  return std::all_of(intervals_.begin(), intervals_.end(), [&](const Interval& mine) {
    return std::any_of(other.intervals_.begin(), other.intervals_.end(),
                       [&](const Interval& theirs) { return theirs.Contains(mine); });
  });
}

std::string ToString(const DisjointIntervalSet& set) {
  std::string out = "{";
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (k > 0) out += ",";
    out += ToString(set.intervals()[k]);
  }
  return out + "}";
}

}  // namespace powerdown
