#ifndef POWERDOWN_SCHEDULE_H_
#define POWERDOWN_SCHEDULE_H_

#include <string>
#include <vector>

#include "powerdown/flow.h"
#include "powerdown/instance.h"
#include "powerdown/interval.h"

namespace powerdown {

struct Assignment {
  Time slot = 0;     // unit slot [slot, slot + 1]
  int machine = 0;
  std::size_t job = 0;  // position in Instance::jobs()

  auto operator<=>(const Assignment&) const = default;
};

struct Schedule {
  std::vector<std::vector<Interval>> machine_intervals;  // one list per machine, sorted
  std::vector<Assignment> assignments;                   // sorted by (slot, machine)
  Time energy = 0;

  bool operator==(const Schedule&) const = default;
};

// First fit in order of start time: each interval goes to the lowest machine
// whose last interval ends no later than it starts. Uses max slot coverage
// machines, so it throws DomainError only when some slot is covered more
// than `machines` times.
std::vector<std::vector<Interval>> AssignIntervalsToMachines(const Supply& supply, int machines);

// Reads a schedule off an integral maximum flow on the unit grid. In every
// slot the jobs with flow there go to the active machines of that slot in
// job order. Energy is Energy(supply, Q). Throws InfeasibleError when the
// flow falls short of P.
Schedule AssignJobs(const Instance& instance, const Supply& supply);

// Job volumes per coarse slot: volume[job][k] units of job `job` run inside
// slot [points[k], points[k+1]].
struct CoarseFlow {
  std::vector<Time> points;
  std::vector<std::vector<Time>> volume;
};

/** Volumes of a coarse network whose maximum flow has been computed. */
CoarseFlow ReadCoarseFlow(const FlowNetwork& network);

// Unit-slot schedule from a coarse flow. In a slot of length L crossed by
// n intervals, jobs are laid end to end on positions 0..nL-1 and position q
// runs on the (q / L)-th crossing machine at time start + q mod L; since no
// job has more than L units in the slot, no job runs twice at once. Every
// supply interval must be aligned to the points and every job window must be
// a union of coarse slots wherever the job has volume. Throws DomainError on
// a volume above the slot length, outside the job window, or above n L.
Schedule ExpandCoarse(const Instance& instance, const Supply& supply, const CoarseFlow& flow);

struct Violation {
  std::string kind;  // window, self-parallel, machine-busy, inactive, volume, overlap, machines, energy
  Time slot = -1;
  int machine = -1;
  int job = -1;
  std::string detail;
};

/** Every violated schedule property; empty means the schedule is valid. */
std::vector<Violation> Verify(const Instance& instance, const Schedule& schedule);

std::string ToString(const Violation& violation);

}  // namespace powerdown

#endif  // POWERDOWN_SCHEDULE_H_
