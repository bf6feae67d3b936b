#ifndef POWERDOWN_PIPELINE_H_
#define POWERDOWN_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "powerdown/errors.h"
#include "powerdown/instance.h"
#include "powerdown/interval.h"
#include "powerdown/lp.h"
#include "powerdown/rational.h"
#include "powerdown/schedule.h"

namespace powerdown {

/** Raised by Solve() when even full availability cannot fit the jobs. */
class InfeasibleInstanceError : public InfeasibleError {
 public:
  InfeasibleInstanceError(DisjointIntervalSet witness, std::int64_t deficiency);
  const DisjointIntervalSet& witness() const { return witness_; }
  std::int64_t deficiency() const { return deficiency_; }

 private:
  DisjointIntervalSet witness_;
  std::int64_t deficiency_;
};

struct SolveOptions {
  // nullopt: full when D <= 200, restricted otherwise.
  std::optional<IntervalMode> mode;
  Rational epsilon{1, 4};
  bool batched = true;
  LpBuildOptions lp;
  SimplexOptions simplex;
};

struct CandidateReport {
  Rational weight;
  Supply candidate;  // as decomposed
  Supply modified;   // after ModifyMulti (equal to candidate for m = 1)
  Supply repaired;
  Time candidate_energy = 0;
  Time modified_energy = 0;
  Time added_length = 0;
  Time energy = 0;  // of the repaired supply
  std::size_t extension_steps = 0;
};

struct StageTimes {
  double lp = 0;
  double decompose = 0;
  double repair = 0;
  double schedule = 0;
};

struct SolveReport {
  IntervalMode mode = IntervalMode::kFull;
  Rational epsilon;
  std::vector<Time> points;  // LP grid ({0..D} or W)
  std::size_t lp_rows = 0;
  std::size_t lp_variables = 0;
  std::size_t simplex_iterations = 0;
  Rational lp_objective;
  IntervalMultiset support;  // uncrossed
  std::vector<CandidateReport> candidates;
  std::size_t chosen = 0;
  Schedule schedule;
  Time energy = 0;
  Rational bound;  // LP + P (m = 1) or 2 LP + P
  StageTimes seconds;
};

// LP, uncrossing, decomposition, repair of every candidate, cheapest repaired
// candidate scheduled and verified. Throws InfeasibleInstanceError when the
// instance is infeasible and InvariantViolation when the produced schedule
// fails Verify().
SolveReport Solve(const Instance& instance, const SolveOptions& options = {});

IntervalMode ResolveMode(const Instance& instance, const SolveOptions& options);

}  // namespace powerdown

#endif  // POWERDOWN_PIPELINE_H_
