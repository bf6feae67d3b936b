#include "powerdown/decompose.h"

#include <algorithm>

#include "powerdown/errors.h"

namespace powerdown {
namespace {

void SortAndMerge(IntervalMultiset& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const WeightedInterval& a, const WeightedInterval& b) { return a.interval < b.interval; });
  IntervalMultiset merged;
  for (WeightedInterval& entry : entries) {
    if (sgn(entry.weight) == 0) continue;
    if (!merged.empty() && merged.back().interval == entry.interval) {
      merged.back().weight += entry.weight;
    } else {
      merged.push_back(std::move(entry));
    }
  }
  entries = std::move(merged);
}

// First (outer, inner) pair in sorted order, or (-1, -1).
std::pair<int, int> FindContainment(const IntervalMultiset& entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      if (entries[j].interval.start >= entries[i].interval.end) break;
      if (entries[i].interval.StrictlyContains(entries[j].interval)) {
        return {static_cast<int>(i), static_cast<int>(j)};
      }
    }
  }
  return {-1, -1};
}

}  // namespace

bool HasStrictContainment(const IntervalMultiset& support) {
  for (const auto& outer : support) {
    for (const auto& inner : support) {
      if (outer.interval.StrictlyContains(inner.interval)) return true;
    }
  }
  return false;
}

IntervalMultiset Uncross(IntervalMultiset support) {
  for (const auto& entry : support) {
    if (entry.weight < 0) throw DomainError("negative weight on " + ToString(entry.interval));
  }
  SortAndMerge(support);
  for (;;) {
    const auto [i, j] = FindContainment(support);
    if (i < 0) break;
    const Time a = support[i].interval.start;
    const Time d = support[i].interval.end;
    const Time b = support[j].interval.start;
    const Time c = support[j].interval.end;
    const Rational beta = support[i].weight;
    const Rational alpha = support[j].weight;
    const Rational both = std::min(alpha, beta);
    support[i].weight = beta - both;
    support[j].weight = alpha - both;
    support.push_back({{a, c}, both});
    support.push_back({{b, d}, both});
    SortAndMerge(support);
  }
  return support;
}

std::vector<CandidateSolution> ConvexDecompose(const IntervalMultiset& support) {
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i].weight <= 0) throw DomainError("decomposition needs positive weights");
    if (i > 0 && support[i].interval < support[i - 1].interval) {
      throw DomainError("decomposition needs the support sorted by (start, end)");
    }
  }
  if (HasStrictContainment(support)) throw DomainError("support must be uncrossed first");

  std::vector<Rational> prefix(support.size() + 1, Rational(0));
  for (std::size_t i = 0; i < support.size(); ++i) prefix[i + 1] = prefix[i] + support[i].weight;

  std::vector<Rational> cuts{Rational(0)};
  for (const Rational& s : prefix) cuts.push_back(FractionalPart(s));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<CandidateSolution> candidates;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    const Rational& k = cuts[c];
    CandidateSolution candidate;
    candidate.weight = (c + 1 < cuts.size() ? cuts[c + 1] : Rational(1)) - k;
    for (std::size_t i = 0; i < support.size(); ++i) {
      // integers z with prefix[i] - k <= z < prefix[i+1] - k
      const std::int64_t copies = Ceil(prefix[i + 1] - k) - Ceil(prefix[i] - k);
      for (std::int64_t z = 0; z < copies; ++z) candidate.intervals.push_back(support[i].interval);
    }
    candidates.push_back(std::move(candidate));
  }
  return candidates;
}

int Multiplicity(const CandidateSolution& candidate, const Interval& interval) {
  return static_cast<int>(std::count(candidate.intervals.begin(), candidate.intervals.end(), interval));
}

}  // namespace powerdown
