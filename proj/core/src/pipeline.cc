#include "powerdown/pipeline.h"

#include <algorithm>
#include <chrono>

#include "powerdown/decompose.h"
#include "powerdown/extend.h"
#include "powerdown/flow.h"
#include "powerdown/volume.h"

namespace powerdown {
namespace {

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

InfeasibleInstanceError::InfeasibleInstanceError(DisjointIntervalSet witness, std::int64_t deficiency)
    : InfeasibleError("instance infeasible: " + ToString(witness) + " has deficiency " +
                      std::to_string(deficiency)),
      witness_(std::move(witness)),
      deficiency_(deficiency) {}

IntervalMode ResolveMode(const Instance& instance, const SolveOptions& options) {
  if (options.mode) return *options.mode;
  return instance.horizon() > 200 ? IntervalMode::kRestricted : IntervalMode::kFull;
}

SolveReport Solve(const Instance& instance, const SolveOptions& options) {
  const FeasibilityResult check = CheckFeasible(instance, FullAvailability(instance));
  if (!check.feasible) throw InfeasibleInstanceError(check.witness, check.deficiency);

  SolveReport report;
  report.mode = ResolveMode(instance, options);
  report.epsilon = options.epsilon;
  const Time total = instance.total_volume();
  const bool single = instance.machines() == 1;
  if (instance.size() == 0) {
    report.schedule.machine_intervals.resize(static_cast<std::size_t>(instance.machines()));
    return report;
  }

  auto start = Clock::now();
  if (report.mode == IntervalMode::kFull) {
    for (Time t = 0; t <= instance.horizon(); ++t) report.points.push_back(t);
  } else {
    report.points = BuildPointSet(instance, options.epsilon);
  }
  const auto intervals = EnumerateIntervals(report.points);
  const LpModel model = single ? BuildSingleMachineLp(instance, intervals, report.points, options.lp)
                               : BuildMultiMachineLp(instance, intervals, report.points, options.lp);
  report.lp_rows = model.rows.size();
  report.lp_variables = model.variables.size();
  const SimplexResult lp = RunSimplex(model, options.simplex);
  if (lp.status != LpStatus::kOptimal) {
    throw InvariantViolation("LP of a feasible instance is not optimal");
  }
  report.simplex_iterations = lp.iterations;
  report.lp_objective = lp.objective;
  IntervalMultiset support;
  for (std::size_t j = 0; j < model.variables.size(); ++j) {
    if (model.variables[j].kind == VariableKind::kInterval && lp.values[j] > 0) {
      support.push_back({model.variables[j].interval, lp.values[j]});
    }
  }
  report.bound = (single ? 1 : 2) * report.lp_objective + Rational(static_cast<long>(total));
  report.seconds.lp = Since(start);

  start = Clock::now();
  report.support = Uncross(std::move(support));
  const auto candidates = ConvexDecompose(report.support);
  report.seconds.decompose = Since(start);

  start = Clock::now();
  for (const CandidateSolution& c : candidates) {
    CandidateReport entry;
    entry.weight = c.weight;
    entry.candidate = c.intervals;
    entry.candidate_energy = Energy(c.intervals, instance.wakeup());
    RepairResult repair;
    if (single) {
      entry.modified = c.intervals;
      repair = ExtendSingle(instance, c.intervals);
    } else {
      entry.modified = ModifyMulti(c.intervals, instance.machines());
      repair = ExtendMulti(instance, entry.modified, {.batched = options.batched});
    }
    entry.modified_energy = Energy(entry.modified, instance.wakeup());
    entry.repaired = std::move(repair.supply);
    std::sort(entry.repaired.begin(), entry.repaired.end());
    entry.added_length = repair.added_length;
    entry.extension_steps = repair.steps.size();
    entry.energy = Energy(entry.repaired, instance.wakeup());
    report.candidates.push_back(std::move(entry));
  }
  for (std::size_t k = 1; k < report.candidates.size(); ++k) {
    if (report.candidates[k].energy < report.candidates[report.chosen].energy) report.chosen = k;
  }
  report.seconds.repair = Since(start);

  start = Clock::now();
  const Supply& supply = report.candidates[report.chosen].repaired;
  if (report.mode == IntervalMode::kFull) {
    report.schedule = AssignJobs(instance, supply);
  } else {
    FlowNetwork coarse = FlowNetwork::Build(instance, supply, SlotGrid::Aligned(instance, supply));
    if (coarse.MaxFlow() != total) throw InvariantViolation("repaired supply is not feasible");
    report.schedule = ExpandCoarse(instance, supply, ReadCoarseFlow(coarse));
  }
  report.energy = report.schedule.energy;
  const auto violations = Verify(instance, report.schedule);
  if (!violations.empty()) {
    throw InvariantViolation("schedule fails verification: " + ToString(violations.front()));
  }
  report.seconds.schedule = Since(start);
  return report;
}

}  // namespace powerdown
