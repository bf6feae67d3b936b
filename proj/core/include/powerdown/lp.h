#ifndef POWERDOWN_LP_H_
#define POWERDOWN_LP_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "powerdown/instance.h"
#include "powerdown/interval.h"
#include "powerdown/rational.h"

namespace powerdown {

enum class IntervalMode { kFull, kRestricted };

// Candidate interval endpoints for the restricted LP:
//   W = T ∪ {w in [0, D] : |t - w| = ceil((1+eps)^k) for some t in T, k >= 0} ∪ {0, D}
// where T is the set of release times and deadlines.
std::vector<Time> BuildPointSet(const Instance& instance, const Rational& epsilon);

/** All [a, b] with 0 <= a < b <= horizon, sorted. */
std::vector<Interval> EnumerateIntervals(Time horizon);
/** All [a, b] with a < b both taken from `points`, sorted. */
std::vector<Interval> EnumerateIntervals(const std::vector<Time>& points);

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

enum class VariableKind {
  kInterval,  // x(I)
  kActive,    // m_t, multi-machine only
  kFlow,      // f(i, t), multi-machine only
};

struct LpVariable {
  std::string name;
  VariableKind kind = VariableKind::kInterval;
  Rational cost;
  std::optional<Rational> upper;  // lower bound is always 0
  Interval interval;              // kInterval
  std::size_t job = 0;            // kFlow
  std::size_t slot = 0;           // kActive, kFlow
};

// Constraint families. Single machine: kPointCapacity, kWindowVolume,
// kJobCover. Multi machine: kActiveDefinition, kSlotFlow, kJobDemand,
// kOverlapCount (plus the m_t <= m and f <= len bounds on the variables).
enum class RowFamily {
  kPointCapacity,
  kWindowVolume,
  kJobCover,
  kActiveDefinition,
  kSlotFlow,
  kJobDemand,
  kOverlapCount,
};

struct LpTerm {
  int variable;
  Rational coefficient;
};

struct LpRow {
  std::string name;
  RowFamily family = RowFamily::kPointCapacity;
  std::vector<LpTerm> terms;
  RowSense sense = RowSense::kLessEqual;
  Rational rhs;
  Interval window;  // kWindowVolume, kOverlapCount
};

// minimize  sum_j cost_j x_j   subject to rows, 0 <= x_j <= upper_j.
struct LpModel {
  bool multi_machine = false;
  std::vector<Time> grid;  // slot boundaries used for m_t / f(i, t)
  std::vector<LpVariable> variables;
  std::vector<LpRow> rows;

  std::size_t CountRows(RowFamily family) const;
};

struct LpBuildOptions {
  // Drop window rows implied by a stronger row (same or larger right-hand
  // side on a sub-window) and rows with a zero right-hand side. Never changes
  // the optimum; disable to get the literal row set.
  bool eliminate_dominated_rows = true;
};

// Single machine LP:
//   min  sum_I x_I (|I| + Q)
//   s.t. sum_{I contains point t} x_I <= 1                for grid points t
//        sum_I x_I |I ∩ [a, b]| >= V(a, b)                for windows [a, b]
//        sum_{I overlaps [r_i, d_i]} x_I >= 1             for every job
//        0 <= x_I <= 1
// `intervals` are the candidate intervals (all of them, or those with
// endpoints in W); `grid` is {0..D} or W.
LpModel BuildSingleMachineLp(const Instance& instance, const std::vector<Interval>& intervals,
                             const std::vector<Time>& grid, const LpBuildOptions& options = {});

// Multi machine LP over the slots of `grid` (len_t = slot length):
//   min  sum_I x(I) (|I| + Q)
//   s.t. m_t = sum_{I contains slot t} x(I)
//        sum_i f(i, t) <= len_t * m_t
//        sum_t f(i, t) = p_i
//        sum_{I overlaps [a, b]} x(I) >= ceil(sum_i fv(j_i, [a, b]) / (b - a))
//        0 <= f(i, t) <= |[r_i, d_i] ∩ slot t|,  0 <= x(I), m_t <= m
LpModel BuildMultiMachineLp(const Instance& instance, const std::vector<Interval>& intervals,
                            const std::vector<Time>& grid, const LpBuildOptions& options = {});

struct FractionalSolution {
  IntervalMultiset support;  // x(I) > 0 only, sorted by interval
  Rational objective;
  std::vector<Rational> values;  // every model variable
};

struct SimplexOptions {
  enum class Pricing {
    kBland,
    // Largest reduced cost; falls back to Bland's rule after a run of
    // degenerate pivots and returns to it after a strict improvement.
    kDantzigWithBlandFallback,
  };
  Pricing pricing = Pricing::kDantzigWithBlandFallback;
  int degenerate_run_before_bland = 20;
  // Find a candidate basis in floating point first and certify it exactly;
  // the exact tableau runs only when the certificate fails.
  bool float_guided = true;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct SimplexResult {
  LpStatus status = LpStatus::kOptimal;
  std::vector<Rational> values;
  Rational objective;
  std::size_t iterations = 0;
  bool certified_float_basis = false;
};

/** Two-phase bounded-variable primal simplex over exact rationals. */
SimplexResult RunSimplex(const LpModel& model, const SimplexOptions& options = {});

// Optimal basic solution of the model. Throws InfeasibleError when the model
// has no feasible point and InvariantViolation when it is unbounded.
FractionalSolution SolveLp(const LpModel& model, const SimplexOptions& options = {});

/** Largest violation of any row or bound by `values` (0 when feasible). */
Rational MaxViolation(const LpModel& model, const std::vector<Rational>& values);

/** CPLEX-style LP text, for cross-checking with external solvers. */
std::string WriteLpText(const LpModel& model);

}  // namespace powerdown

#endif  // POWERDOWN_LP_H_
