#include "powerdown/instance.h"

#include <algorithm>
#include <limits>

#include "powerdown/errors.h"

namespace powerdown {

Instance Instance::Create(std::vector<Job> jobs, int machines, Time wakeup) {
  if (machines < 1) throw DomainError("machine count must be at least 1");
  if (wakeup < 0) throw DomainError("wake-up cost must be non-negative");
  for (const Job& job : jobs) {
    if (job.release < 0 || job.ptime < 0) {
      throw DomainError("job " + std::to_string(job.id) + " has a negative time");
    }
    if (job.release >= job.deadline) {
      throw DomainError("job " + std::to_string(job.id) + " has release >= deadline");
    }
    if (job.ptime > job.deadline - job.release) {
      throw TriviallyInfeasibleError("job " + std::to_string(job.id) +
                                     " needs more time than its window provides");
    }
  }
  std::erase_if(jobs, [](const Job& job) { return job.ptime == 0; });

  Instance instance;
  instance.machines_ = machines;
  instance.wakeup_ = wakeup;
  if (!jobs.empty()) {
    Time earliest = std::numeric_limits<Time>::max();
    for (const Job& job : jobs) earliest = std::min(earliest, job.release);
    instance.offset_ = earliest;
  }
  for (Job& job : jobs) {
    job.release -= instance.offset_;
    job.deadline -= instance.offset_;
    instance.horizon_ = std::max(instance.horizon_, job.deadline);
    instance.total_volume_ += job.ptime;
  }
  instance.jobs_ = std::move(jobs);
  return instance;
}

Instance Instance::WithMachines(int machines) const {
  if (machines < 1) throw DomainError("machine count must be at least 1");
  Instance copy = *this;
  copy.machines_ = machines;
  return copy;
}

Instance Instance::WithWakeup(Time wakeup) const {
  if (wakeup < 0) throw DomainError("wake-up cost must be non-negative");
  Instance copy = *this;
  copy.wakeup_ = wakeup;
  return copy;
}

std::vector<Time> Instance::EventTimes() const {
  std::vector<Time> times;
  for (const Job& job : jobs_) {
    times.push_back(job.release);
    times.push_back(job.deadline);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

Instance IntegralityGapInstance() {
  std::vector<Job> jobs = {
      {0, 0, 1, 1}, {1, 1, 7, 1}, {2, 2, 4, 1}, {3, 4, 6, 1}, {4, 7, 8, 1},
  };
  return Instance::Create(std::move(jobs), 1, 1);
}

}  // namespace powerdown
