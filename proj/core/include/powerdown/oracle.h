#ifndef POWERDOWN_ORACLE_H_
#define POWERDOWN_ORACLE_H_

#include <optional>

#include "powerdown/instance.h"
#include "powerdown/schedule.h"

namespace powerdown {

struct ExactLimits {
  std::size_t max_jobs = 6;
  Time max_horizon = 12;
  int max_machines = 2;
};

struct ExactResult {
  Time energy = 0;
  Supply supply;
  Schedule schedule;
};

// Minimum energy by exhaustive search over slot coverage profiles
// c(0..D-1) in {0..m}. A profile needs at least sum_t max(0, c(t) - c(t-1))
// intervals (stack the coverage into layers), so its energy is
//   sum_t c(t) + Q * sum_t max(0, c(t) - c(t-1)),
// and feasibility depends on the profile only. Branches are cut by the
// volume still forced after the current slot and by a prefix feasibility
// check. Feasibility uses its own small max-flow, not FlowNetwork.
//
// Returns nullopt when the instance is infeasible. Throws
// LimitExceededError when the instance exceeds `limits`.
std::optional<ExactResult> ExactOpt(const Instance& instance, const ExactLimits& limits = {});

/** Layered supply with the given slot coverage profile. */
Supply SupplyFromProfile(const std::vector<Time>& coverage);

}  // namespace powerdown

#endif  // POWERDOWN_ORACLE_H_
