#include "powerdown/volume.h"

#include <algorithm>

#include "powerdown/errors.h"

namespace powerdown {
namespace {

void CheckWindow(const Instance& instance, Time a, Time b) {
  if (a < 0 || a >= b || b > instance.horizon()) {
    throw DomainError("window [" + std::to_string(a) + "," + std::to_string(b) +
                      "] outside [0," + std::to_string(instance.horizon()) + "]");
  }
}

}  // namespace

Time TotalVolume(const Instance& instance, Time a, Time b) {
  CheckWindow(instance, a, b);
  Time volume = 0;
  for (const Job& job : instance.jobs()) {
    if (a <= job.release && job.deadline <= b) volume += job.ptime;
  }
  return volume;
}

Time ForcedVolume(const Job& job, const Interval& window) {
  const Time outside = (job.deadline - job.release) - OverlapLength(job.window(), window);
  return std::max<Time>(0, job.ptime - outside);
}

Time ForcedVolume(const Instance& instance, const Job& job, const Interval& window) {
  CheckWindow(instance, window.start, window.end);
  return ForcedVolume(job, window);
}

Time ForcedVolume(const Job& job, const DisjointIntervalSet& q) {
  Time inside = 0;
  for (const Interval& piece : q.intervals()) inside += OverlapLength(job.window(), piece);
  const Time outside = (job.deadline - job.release) - inside;
  return std::max<Time>(0, job.ptime - outside);
}

Time TotalForcedVolume(const Instance& instance, const DisjointIntervalSet& q) {
  Time total = 0;
  for (const Job& job : instance.jobs()) total += ForcedVolume(job, q);
  return total;
}

Time TotalForcedVolume(const Instance& instance, const Interval& window) {
  Time total = 0;
  for (const Job& job : instance.jobs()) total += ForcedVolume(job, window);
  return total;
}

Time Deficiency(const Instance& instance, const Supply& supply, const DisjointIntervalSet& q) {
  const Time forced = TotalForcedVolume(instance, q);
  Time capacity = 0;
  for (const Interval& piece : q.intervals()) {
    for (const Interval& interval : supply) capacity += OverlapLength(piece, interval);
  }
  return std::max<Time>(0, forced - capacity);
}

Time Energy(const Supply& supply, Time wakeup) {
  Time total = 0;
  for (const Interval& interval : supply) total += interval.length() + wakeup;
  return total;
}

Rational Energy(const IntervalMultiset& entries, Time wakeup) {
  Rational total = 0;
  for (const auto& [interval, weight] : entries) {
    total += weight * Rational(static_cast<long>(interval.length() + wakeup));
  }
  return total;
}

}  // namespace powerdown
