#include "powerdown/generator.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "powerdown/errors.h"
#include "powerdown/flow.h"

namespace powerdown {
namespace {

Time Uniform(std::mt19937_64& rng, Time lo, Time hi) {
  return lo + static_cast<Time>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

Instance GenerateInstance(const GenOptions& options) {
  if (options.jobs < 0 || options.machines < 1 || options.wakeup < 0 ||
      (options.jobs > 0 && options.horizon < 1) || !(options.density > 0 && options.density <= 1) ||
      options.max_attempts < 1) {
    throw DomainError("generator needs jobs >= 0, machines >= 1, horizon >= 1, Q >= 0, 0 < density <= 1");
  }
  if (options.jobs == 0) return Instance::Create({}, options.machines, options.wakeup);

  const double target = options.density * options.machines * static_cast<double>(options.horizon);
  const Time cap = std::max<Time>(1, static_cast<Time>(std::ceil(2 * target / options.jobs)) - 1);
  std::mt19937_64 rng(options.seed);
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    std::vector<Job> jobs;
    for (int i = 0; i < options.jobs; ++i) {
      const Time r = Uniform(rng, 0, options.horizon - 1);
      const Time d = Uniform(rng, r + 1, options.horizon);
      const Time p = Uniform(rng, 1, std::min(d - r, cap));
      jobs.push_back({i, r, d, p});
    }
    Instance instance = Instance::Create(std::move(jobs), options.machines, options.wakeup);
    if (CheckFeasible(instance, FullAvailability(instance)).feasible) return instance;
  }
  throw Error("no feasible instance in " + std::to_string(options.max_attempts) + " attempts");
}

}  // namespace powerdown
