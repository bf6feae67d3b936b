#ifndef POWERDOWN_VOLUME_H_
#define POWERDOWN_VOLUME_H_

#include "powerdown/instance.h"
#include "powerdown/interval.h"
#include "powerdown/rational.h"

namespace powerdown {

/** V(a, b): volume of the jobs whose whole window lies inside [a, b]. */
Time TotalVolume(const Instance& instance, Time a, Time b);

/**
 * Minimum volume of `job` that every feasible schedule runs inside `window`:
 * max(0, p - |[r, d] \ window|). Independent of any supply.
 */
Time ForcedVolume(const Job& job, const Interval& window);

/** As above, with the window range-checked against [0, D]. */
Time ForcedVolume(const Instance& instance, const Job& job, const Interval& window);

/** Forced volume with respect to a union of disjoint intervals. */
Time ForcedVolume(const Job& job, const DisjointIntervalSet& q);

/** Sum of ForcedVolume over all jobs. */
Time TotalForcedVolume(const Instance& instance, const DisjointIntervalSet& q);
Time TotalForcedVolume(const Instance& instance, const Interval& window);

/**
 * def(Q) = max(0, sum_i fv(j_i, Q) - sum_{slots t in Q} m_t), where m_t is the
 * number of supply intervals covering slot t.
 */
Time Deficiency(const Instance& instance, const Supply& supply, const DisjointIntervalSet& q);

/** sum over intervals of (|I| + Q). */
Time Energy(const Supply& supply, Time wakeup);

/** Fractional objective sum_I x_I (|I| + Q). */
Rational Energy(const IntervalMultiset& entries, Time wakeup);

}  // namespace powerdown

#endif  // POWERDOWN_VOLUME_H_
