#ifndef POWERDOWN_GENERATOR_H_
#define POWERDOWN_GENERATOR_H_

#include <cstdint>

#include "powerdown/instance.h"

namespace powerdown {

struct GenOptions {
  std::uint64_t seed = 1;
  int jobs = 5;
  int machines = 1;
  Time horizon = 10;
  Time wakeup = 1;
  // Target load P / (m D), in (0, 1].
  double density = 0.5;
  int max_attempts = 1000;
};

// Draws instances until one is feasible with every machine always active.
// Windows are uniform in [0, horizon]; processing times are uniform in
// [1, min(d - r, cap)] with cap chosen so that the expected load is about
// `density`. The same options always give the same instance (the draws use
// mt19937_64 with a fixed reduction, independent of the standard library).
// Throws DomainError for bad options and Error when no feasible instance is
// found within max_attempts draws.
Instance GenerateInstance(const GenOptions& options);

}  // namespace powerdown

#endif  // POWERDOWN_GENERATOR_H_
