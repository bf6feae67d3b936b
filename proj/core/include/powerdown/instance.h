#ifndef POWERDOWN_INSTANCE_H_
#define POWERDOWN_INSTANCE_H_

#include <cstdint>
#include <vector>

#include "powerdown/interval.h"

namespace powerdown {

struct Job {
  int id = 0;  // index of the job in its source file
  Time release = 0;
  Time deadline = 0;
  Time ptime = 0;

  Interval window() const { return {release, deadline}; }
  Time slack() const { return deadline - release - ptime; }

  bool operator==(const Job&) const = default;
};

// A validated scheduling instance: jobs, m identical machines and the
// wake-up cost Q. Times are shifted so that the earliest release is zero;
// offset() is the amount that was subtracted and is added back on output.
class Instance {
 public:
  Instance() = default;

  // Validates and normalizes raw jobs. Jobs with zero processing time are
  // dropped. Throws DomainError for malformed jobs (negative times,
  // release >= deadline, machines < 1, negative wake-up cost) and
  // TriviallyInfeasibleError when p > d - r for some job.
  static Instance Create(std::vector<Job> jobs, int machines, Time wakeup);

  const std::vector<Job>& jobs() const { return jobs_; }
  std::size_t size() const { return jobs_.size(); }
  int machines() const { return machines_; }
  Time wakeup() const { return wakeup_; }
  /** D, the largest deadline after normalization. */
  Time horizon() const { return horizon_; }
  Time offset() const { return offset_; }
  /** P, the total processing volume. */
  Time total_volume() const { return total_volume_; }

  /** Same jobs, different machine count or wake-up cost. */
  Instance WithMachines(int machines) const;
  Instance WithWakeup(Time wakeup) const;

  /** Sorted distinct release and deadline times (the set T). */
  std::vector<Time> EventTimes() const;

  bool operator==(const Instance&) const = default;

 private:
  std::vector<Job> jobs_;
  int machines_ = 1;
  Time wakeup_ = 0;
  Time horizon_ = 0;
  Time offset_ = 0;
  Time total_volume_ = 0;
};

/** The instance used as a running example throughout the tests: five unit jobs, m = 1, Q = 1. */
Instance IntegralityGapInstance();

}  // namespace powerdown

#endif  // POWERDOWN_INSTANCE_H_
