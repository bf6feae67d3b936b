#include "testing/oracles.h"

#include <algorithm>
#include <limits>

namespace powerdown::testing {
namespace {

std::vector<Time> Coverage(const Supply& supply, Time horizon) {
  std::vector<Time> cap(static_cast<std::size_t>(horizon), 0);
  for (const Interval& interval : supply) {
    for (Time t = std::max<Time>(interval.start, 0); t < std::min(interval.end, horizon); ++t) ++cap[t];
  }
  return cap;
}

bool PlaceJobs(const std::vector<Job>& jobs, std::size_t i, std::vector<Time>& cap);

// Chooses `left` more slots for jobs[i] among window slots >= t.
bool PlaceUnits(const std::vector<Job>& jobs, std::size_t i, Time t, Time left, std::vector<Time>& cap) {
  if (left == 0) return PlaceJobs(jobs, i + 1, cap);
  const Job& job = jobs[i];
  for (Time s = t; s + left <= job.deadline; ++s) {
    if (cap[s] == 0) continue;
    --cap[s];
    const bool ok = PlaceUnits(jobs, i, s + 1, left - 1, cap);
    ++cap[s];
    if (ok) return true;
  }
  return false;
}

bool PlaceJobs(const std::vector<Job>& jobs, std::size_t i, std::vector<Time>& cap) {
  if (i == jobs.size()) return true;
  return PlaceUnits(jobs, i, jobs[i].release, jobs[i].ptime, cap);
}

void MinInside(const Job& job, const std::vector<bool>& inside, Time t, Time left, Time count, Time& best) {
  if (count >= best) return;
  if (left == 0) {
    best = count;
    return;
  }
  for (Time s = t; s + left <= job.deadline; ++s) {
    MinInside(job, inside, s + 1, left - 1, count + (inside[s] ? 1 : 0), best);
  }
}

struct Search {
  const Instance* instance;
  std::vector<Interval> intervals;
  std::vector<Time> coverage;
  Supply chosen;
  Time energy = 0;
  std::optional<Time> best;

  void Run(std::size_t k) {
    if (best && energy >= *best) return;
    if (k == intervals.size()) {
      if (BruteFeasible(*instance, chosen)) best = energy;
      return;
    }
    Run(k + 1);
    const Interval& interval = intervals[k];
    int added = 0;
    while (added < instance->machines()) {
      bool fits = true;
      for (Time t = interval.start; t < interval.end; ++t) fits = fits && coverage[t] < instance->machines();
      if (!fits) break;
      for (Time t = interval.start; t < interval.end; ++t) ++coverage[t];
      chosen.push_back(interval);
      energy += interval.length() + instance->wakeup();
      ++added;
      Run(k + 1);
    }
    for (; added > 0; --added) {
      for (Time t = interval.start; t < interval.end; ++t) --coverage[t];
      chosen.pop_back();
      energy -= interval.length() + instance->wakeup();
    }
  }
};

Time WindowVolume(const Instance& instance, Time a, Time b) {
  Time total = 0;
  for (const Job& job : instance.jobs()) {
    if (a <= job.release && job.deadline <= b) total += job.ptime;
  }
  return total;
}

}  // namespace

bool BruteFeasible(const Instance& instance, const Supply& supply) {
  std::vector<Time> cap = Coverage(supply, instance.horizon());
  return PlaceJobs(instance.jobs(), 0, cap);
}

Time BruteForcedVolume(const Job& job, const std::vector<Interval>& q) {
  Time end = job.deadline;
  for (const Interval& piece : q) end = std::max(end, piece.end);
  std::vector<bool> inside(static_cast<std::size_t>(end), false);
  for (const Interval& piece : q) {
    for (Time t = piece.start; t < piece.end; ++t) inside[t] = true;
  }
  Time best = std::numeric_limits<Time>::max();
  MinInside(job, inside, job.release, job.ptime, 0, best);
  return best;
}

std::int64_t MinCutByEnumeration(const Instance& instance, const Supply& supply) {
  const std::vector<Time> cap = Coverage(supply, instance.horizon());
  const std::size_t n = instance.size();
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::int64_t value = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) value += instance.jobs()[i].ptime;
    }
    for (Time t = 0; t < instance.horizon(); ++t) {
      std::int64_t arcs = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const Job& job = instance.jobs()[i];
        if ((mask >> i & 1) && job.release <= t && t < job.deadline) ++arcs;
      }
      value += std::min<std::int64_t>(cap[t], arcs);
    }
    best = std::min(best, value);
  }
  return best;
}

std::optional<Time> BruteOptimum(const Instance& instance) {
  Search search;
  search.instance = &instance;
  for (Time a = 0; a < instance.horizon(); ++a) {
    for (Time b = a + 1; b <= instance.horizon(); ++b) search.intervals.push_back({a, b});
  }
  search.coverage.assign(static_cast<std::size_t>(instance.horizon()), 0);
  search.Run(0);
  return search.best;
}

Rational SingleLpViolation(const Instance& instance, const IntervalMultiset& x) {
  Rational worst = 0;
  const auto note = [&worst](const Rational& v) {
    if (v > worst) worst = v;
  };
  const Time horizon = instance.horizon();
  for (const WeightedInterval& entry : x) note(entry.weight - 1);
  for (Time t = 0; t <= horizon; ++t) {
    Rational load = 0;
    for (const WeightedInterval& entry : x) {
      if (entry.interval.start <= t && t <= entry.interval.end) load += entry.weight;
    }
    note(load - 1);
  }
  for (Time a = 0; a < horizon; ++a) {
    for (Time b = a + 1; b <= horizon; ++b) {
      Rational supplied = 0;
      for (const WeightedInterval& entry : x) {
        const Time common = std::min(b, entry.interval.end) - std::max(a, entry.interval.start);
        if (common > 0) supplied += entry.weight * common;
      }
      note(Rational(WindowVolume(instance, a, b)) - supplied);
    }
  }
  for (const Job& job : instance.jobs()) {
    Rational cover = 0;
    for (const WeightedInterval& entry : x) {
      if (entry.interval.start <= job.deadline && job.release <= entry.interval.end) cover += entry.weight;
    }
    note(1 - cover);
  }
  return worst;
}

Instance RandomInstance(std::mt19937_64& rng, int max_jobs, Time horizon, int machines, Time wakeup) {
  std::uniform_int_distribution<int> count(1, max_jobs);
  const int n = count(rng);
  std::vector<Job> jobs;
  for (int i = 0; i < n; ++i) {
    const Time r = std::uniform_int_distribution<Time>(0, horizon - 1)(rng);
    const Time d = std::uniform_int_distribution<Time>(r + 1, horizon)(rng);
    const Time p = std::uniform_int_distribution<Time>(1, std::min<Time>(d - r, 3))(rng);
    jobs.push_back({i, r, d, p});
  }
  return Instance::Create(std::move(jobs), machines, wakeup);
}

Supply RandomSupply(std::mt19937_64& rng, Time horizon, int machines, int max_intervals) {
  Supply supply;
  std::vector<Time> coverage(static_cast<std::size_t>(horizon), 0);
  const int tries = std::uniform_int_distribution<int>(0, max_intervals)(rng);
  for (int k = 0; k < tries; ++k) {
    const Time a = std::uniform_int_distribution<Time>(0, horizon - 1)(rng);
    const Time b = std::uniform_int_distribution<Time>(a + 1, horizon)(rng);
    bool fits = true;
    for (Time t = a; t < b; ++t) fits = fits && coverage[t] < machines;
    if (!fits) continue;
    for (Time t = a; t < b; ++t) ++coverage[t];
    supply.push_back({a, b});
  }
  std::sort(supply.begin(), supply.end());
  return supply;
}

}  // namespace powerdown::testing
