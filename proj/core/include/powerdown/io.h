#ifndef POWERDOWN_IO_H_
#define POWERDOWN_IO_H_

#include <string>
#include <string_view>

#include "powerdown/instance.h"
#include "powerdown/interval.h"
#include "powerdown/schedule.h"

namespace powerdown {

// Instance text:
//   m Q D
//   n
//   r d p        (n lines)
// Lines starting with '#' and blank lines are skipped. D must be at least
// the largest deadline. Job ids are the 0-based line order. Throws
// ParseError on malformed text; validation errors from Instance::Create
// propagate unchanged.
Instance ParseInstance(std::string_view text);
/** Writes times in the original (un-normalized) frame. */
std::string FormatInstance(const Instance& instance);

// Supply text: "k" then k lines "a b mult". Times are shifted by -offset.
Supply ParseSupply(std::string_view text, Time offset = 0);
std::string FormatSupply(const Supply& supply, Time offset = 0);

// Schedule text: "machine i: [a,b) [c,d) ..." for every machine, then one
// "t machine job" line per processed unit slot (job is the job id). Times
// are written in the original frame.
std::string FormatSchedule(const Instance& instance, const Schedule& schedule);
Schedule ParseSchedule(std::string_view text, const Instance& instance);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& contents);

}  // namespace powerdown

#endif  // POWERDOWN_IO_H_
