#include "powerdown/schedule.h"

#include <algorithm>
#include <set>

#include "powerdown/errors.h"
#include "powerdown/volume.h"

namespace powerdown {
namespace {

// Machines (ascending) whose intervals contain slot [t, t+1].
std::vector<std::vector<int>> ActiveMachines(const std::vector<std::vector<Interval>>& machines,
                                             Time horizon) {
  std::vector<std::vector<int>> active(static_cast<std::size_t>(horizon));
  for (std::size_t k = 0; k < machines.size(); ++k) {
    for (const Interval& interval : machines[k]) {
      for (Time t = std::max<Time>(interval.start, 0); t < std::min(interval.end, horizon); ++t) {
        active[t].push_back(static_cast<int>(k));
      }
    }
  }
  for (auto& list : active) std::sort(list.begin(), list.end());
  return active;
}

}  // namespace

std::vector<std::vector<Interval>> AssignIntervalsToMachines(const Supply& supply, int machines) {
  Supply sorted = supply;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::vector<Interval>> result(static_cast<std::size_t>(machines));
  for (const Interval& interval : sorted) {
    auto it = std::find_if(result.begin(), result.end(), [&](const std::vector<Interval>& list) {
      return list.empty() || list.back().end <= interval.start;
    });
    if (it == result.end()) {
      throw DomainError("more than " + std::to_string(machines) + " intervals share a slot at " +
                        ToString(interval));
    }
    it->push_back(interval);
  }
  return result;
}

Schedule AssignJobs(const Instance& instance, const Supply& supply) {
  FlowNetwork net = FlowNetwork::Build(instance, supply);
  net.MaxFlow();
  if (!net.saturated()) {
    throw InfeasibleError("supply carries only " + std::to_string(net.flow_value()) + " of " +
                          std::to_string(net.total_demand()) + " units");
  }
  Schedule schedule;
  schedule.machine_intervals = AssignIntervalsToMachines(supply, instance.machines());
  schedule.energy = Energy(supply, instance.wakeup());
  const auto active = ActiveMachines(schedule.machine_intervals, instance.horizon());
  for (Time t = 0; t < instance.horizon(); ++t) {
    std::size_t next = 0;
    for (std::size_t i = 0; i < instance.size(); ++i) {
      if (net.JobSlotFlow(i, static_cast<std::size_t>(t)) == 0) continue;
      if (next >= active[t].size()) {
        throw InvariantViolation("slot " + std::to_string(t) + " has more jobs than active machines");
      }
      schedule.assignments.push_back({t, active[t][next++], i});
    }
  }
  return schedule;
}

CoarseFlow ReadCoarseFlow(const FlowNetwork& network) {
  CoarseFlow flow;
  flow.points = network.grid().points();
  flow.volume.assign(network.num_jobs(), std::vector<Time>(network.grid().num_slots(), 0));
  for (std::size_t i = 0; i < network.num_jobs(); ++i) {
    for (std::size_t k = 0; k < network.grid().num_slots(); ++k) flow.volume[i][k] = network.JobSlotFlow(i, k);
  }
  return flow;
}

Schedule ExpandCoarse(const Instance& instance, const Supply& supply, const CoarseFlow& flow) {
  const SlotGrid grid = SlotGrid::FromPoints(flow.points, instance.horizon());
  if (flow.volume.size() != instance.size()) throw DomainError("coarse flow has the wrong job count");
  for (const Interval& interval : supply) {
    if (!std::binary_search(grid.points().begin(), grid.points().end(), interval.start) ||
        !std::binary_search(grid.points().begin(), grid.points().end(), interval.end)) {
      throw DomainError("supply interval " + ToString(interval) + " not aligned to the coarse points");
    }
  }
  Schedule schedule;
  schedule.machine_intervals = AssignIntervalsToMachines(supply, instance.machines());
  schedule.energy = Energy(supply, instance.wakeup());
  const auto active = ActiveMachines(schedule.machine_intervals, instance.horizon());

  for (std::size_t k = 0; k < grid.num_slots(); ++k) {
    const Interval slot = grid.slot(k);
    const Time length = slot.length();
    const std::vector<int>& crossing = active[slot.start];
    Time position = 0;
    for (std::size_t i = 0; i < instance.size(); ++i) {
      if (flow.volume[i].size() != grid.num_slots()) throw DomainError("coarse flow has the wrong slot count");
      const Time volume = flow.volume[i][k];
      if (volume == 0) continue;
      if (volume < 0 || volume > length) {
        throw DomainError("job volume " + std::to_string(volume) + " exceeds coarse slot " + ToString(slot));
      }
      if (!instance.jobs()[i].window().Contains(slot)) {
        throw DomainError("job " + std::to_string(instance.jobs()[i].id) + " has volume in " +
                          ToString(slot) + " outside its window");
      }
      if (position + volume > static_cast<Time>(crossing.size()) * length) {
        throw DomainError("coarse slot " + ToString(slot) + " holds more volume than its intervals");
      }
      for (Time q = position; q < position + volume; ++q) {
        schedule.assignments.push_back({slot.start + q % length, crossing[q / length], i});
      }
      position += volume;
    }
  }
  std::sort(schedule.assignments.begin(), schedule.assignments.end());
  return schedule;
}

std::vector<Violation> Verify(const Instance& instance, const Schedule& schedule) {
  std::vector<Violation> out;
  const int machines = static_cast<int>(schedule.machine_intervals.size());
  if (machines > instance.machines()) {
    out.push_back({"machines", -1, -1, -1,
                   std::to_string(machines) + " machines used, " + std::to_string(instance.machines()) +
                       " available"});
  }
  Time energy = 0;
  for (int k = 0; k < machines; ++k) {
    std::vector<Interval> list = schedule.machine_intervals[k];
    std::sort(list.begin(), list.end());
    for (std::size_t a = 0; a < list.size(); ++a) {
      energy += list[a].length() + instance.wakeup();
      if (list[a].start < 0 || list[a].end > instance.horizon() || list[a].start >= list[a].end) {
        out.push_back({"overlap", -1, k, -1, "interval " + ToString(list[a]) + " outside [0,D]"});
      }
      if (a > 0 && list[a - 1].SharesSlot(list[a])) {
        out.push_back({"overlap", list[a].start, k, -1,
                       ToString(list[a - 1]) + " and " + ToString(list[a]) + " share a slot"});
      }
    }
  }
  if (energy != schedule.energy) {
    out.push_back({"energy", -1, -1, -1,
                   "recorded " + std::to_string(schedule.energy) + ", intervals give " + std::to_string(energy)});
  }

  std::vector<Time> processed(instance.size(), 0);
  std::set<std::pair<Time, int>> busy;
  std::set<std::pair<Time, std::size_t>> running;
  for (const Assignment& a : schedule.assignments) {
    const int job_id = a.job < instance.size() ? instance.jobs()[a.job].id : -1;
    if (a.machine < 0 || a.machine >= machines) {
      out.push_back({"machines", a.slot, a.machine, job_id, "no such machine"});
      continue;
    }
    if (a.job >= instance.size()) {
      out.push_back({"volume", a.slot, a.machine, -1, "no such job"});
      continue;
    }
    const Job& job = instance.jobs()[a.job];
    ++processed[a.job];
    if (a.slot < job.release || a.slot + 1 > job.deadline) {
      out.push_back({"window", a.slot, a.machine, job.id, "outside " + ToString(job.window())});
    }
    const auto& list = schedule.machine_intervals[a.machine];
    if (std::none_of(list.begin(), list.end(), [&](const Interval& i) { return i.CoversSlot(a.slot); })) {
      out.push_back({"inactive", a.slot, a.machine, job.id, "machine is asleep"});
    }
    if (!busy.insert({a.slot, a.machine}).second) {
      out.push_back({"machine-busy", a.slot, a.machine, job.id, "machine runs two jobs"});
    }
    if (!running.insert({a.slot, a.job}).second) {
      out.push_back({"self-parallel", a.slot, a.machine, job.id, "job runs on two machines"});
    }
  }
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (processed[i] != instance.jobs()[i].ptime) {
      out.push_back({"volume", -1, -1, instance.jobs()[i].id,
                     std::to_string(processed[i]) + " of " + std::to_string(instance.jobs()[i].ptime) +
                         " units processed"});
    }
  }
  return out;
}

std::string ToString(const Violation& violation) {
  std::string text = violation.kind;
  if (violation.slot >= 0) text += " slot=" + std::to_string(violation.slot);
  if (violation.machine >= 0) text += " machine=" + std::to_string(violation.machine);
  if (violation.job >= 0) text += " job=" + std::to_string(violation.job);
  if (!violation.detail.empty()) text += ": " + violation.detail;
  return text;
}

}  // namespace powerdown
