#ifndef POWERDOWN_DECOMPOSE_H_
#define POWERDOWN_DECOMPOSE_H_

#include <vector>

#include "powerdown/interval.h"
#include "powerdown/rational.h"

namespace powerdown {

// Rewrites the support so that no interval strictly contains another
// (a < b <= c < d), keeping the weighted coverage of every point and the
// objective. For [a,d] with weight beta containing [b,c] with weight alpha:
//   alpha == beta:  [a,c], [b,d] with weight alpha
//   beta > alpha:   [a,d] with beta - alpha, [a,c] and [b,d] with alpha
//   alpha > beta:   [b,c] with alpha - beta, [a,c] and [b,d] with beta
// The result is sorted by (start, end) with equal intervals merged.
IntervalMultiset Uncross(IntervalMultiset support);

/** True if some entry strictly contains another. */
bool HasStrictContainment(const IntervalMultiset& support);

struct CandidateSolution {
  Supply intervals;  // sorted; repeated entries are separate copies
  Rational weight;
};

// Prefix-sum decomposition of an uncrossed support. With S_I the sum of the
// weights before I, the candidate for offset k in [0, 1) holds
//   #{z integer : S_I <= k + z < S_I + x_I}
// copies of I. Candidates are cut at the fractional parts of all prefix
// sums, so weights are positive and sum to 1, and
//   sum_j weight_j * (copies of I in C_j) = x_I   for every I.
// Throws DomainError when the support is unsorted or has strict containment.
std::vector<CandidateSolution> ConvexDecompose(const IntervalMultiset& support);

/** Copies of `interval` in `candidate`. */
int Multiplicity(const CandidateSolution& candidate, const Interval& interval);

}  // namespace powerdown

#endif  // POWERDOWN_DECOMPOSE_H_
