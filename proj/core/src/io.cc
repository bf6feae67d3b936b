#include "powerdown/io.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "powerdown/errors.h"

namespace powerdown {
namespace {

struct Line {
  int number;
  std::string text;
};

std::vector<Line> ContentLines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string line(text.substr(pos, end - pos));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] != '#') lines.push_back({number, line});
    pos = end + 1;
  }
  return lines;
}

std::vector<Time> Integers(const Line& line, std::size_t expected) {
  std::vector<Time> values;
  std::istringstream in(line.text);
  std::string token;
  while (in >> token) {
    Time value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ParseError("line " + std::to_string(line.number) + ": '" + token + "' is not an integer");
    }
    values.push_back(value);
  }
  if (values.size() != expected) {
    throw ParseError("line " + std::to_string(line.number) + ": expected " + std::to_string(expected) +
                     " integers, found " + std::to_string(values.size()));
  }
  return values;
}

void ExpectEnd(const std::vector<Line>& lines, std::size_t used) {
  if (used < lines.size()) {
    throw ParseError("line " + std::to_string(lines[used].number) + ": unexpected trailing content");
  }
}

const Line& At(const std::vector<Line>& lines, std::size_t k, const char* what) {
  if (k >= lines.size()) throw ParseError(std::string("unexpected end of input, expected ") + what);
  return lines[k];
}

}  // namespace

Instance ParseInstance(std::string_view text) {
  const auto lines = ContentLines(text);
  const auto header = Integers(At(lines, 0, "'m Q D'"), 3);
  const auto count = Integers(At(lines, 1, "job count"), 1)[0];
  if (count < 0) throw ParseError("negative job count");
  if (header[0] < 1 || header[0] > std::numeric_limits<int>::max()) {
    throw ParseError("machine count must be a positive integer");
  }
  std::vector<Job> jobs;
  Time latest = 0;
  for (Time i = 0; i < count; ++i) {
    const auto v = Integers(At(lines, 2 + i, "'r d p'"), 3);
    jobs.push_back({static_cast<int>(i), v[0], v[1], v[2]});
    latest = std::max(latest, v[1]);
  }
  ExpectEnd(lines, 2 + static_cast<std::size_t>(count));
  if (header[2] < latest) {
    throw ParseError("horizon D=" + std::to_string(header[2]) + " is before the last deadline " +
                     std::to_string(latest));
  }
  return Instance::Create(std::move(jobs), static_cast<int>(header[0]), header[1]);
}

std::string FormatInstance(const Instance& instance) {
  std::ostringstream out;
  const Time offset = instance.offset();
  out << instance.machines() << " " << instance.wakeup() << " " << instance.horizon() + offset << "\n";
  out << instance.size() << "\n";
  for (const Job& job : instance.jobs()) {
    out << job.release + offset << " " << job.deadline + offset << " " << job.ptime << "\n";
  }
  return out.str();
}

Supply ParseSupply(std::string_view text, Time offset) {
  const auto lines = ContentLines(text);
  const auto count = Integers(At(lines, 0, "interval count"), 1)[0];
  if (count < 0) throw ParseError("negative interval count");
  Supply supply;
  for (Time k = 0; k < count; ++k) {
    const Line& line = At(lines, 1 + k, "'a b mult'");
    const auto v = Integers(line, 3);
    const Interval interval{v[0] - offset, v[1] - offset};
    if (interval.start < 0 || interval.start >= interval.end || v[2] < 0) {
      throw ParseError("line " + std::to_string(line.number) + ": invalid interval or multiplicity");
    }
    supply.insert(supply.end(), static_cast<std::size_t>(v[2]), interval);
  }
  ExpectEnd(lines, 1 + static_cast<std::size_t>(count));
  return supply;
}

std::string FormatSupply(const Supply& supply, Time offset) {
  std::map<Interval, Time> counts;
  for (const Interval& interval : supply) ++counts[interval];
  std::ostringstream out;
  out << counts.size() << "\n";
  for (const auto& [interval, mult] : counts) {
    out << interval.start + offset << " " << interval.end + offset << " " << mult << "\n";
  }
  return out.str();
}

std::string FormatSchedule(const Instance& instance, const Schedule& schedule) {
  const Time offset = instance.offset();
  std::ostringstream out;
  for (std::size_t k = 0; k < schedule.machine_intervals.size(); ++k) {
    out << "machine " << k << ":";
    for (const Interval& interval : schedule.machine_intervals[k]) {
      out << " [" << interval.start + offset << "," << interval.end + offset << ")";
    }
    out << "\n";
  }
  for (const Assignment& a : schedule.assignments) {
    out << a.slot + offset << " " << a.machine << " " << instance.jobs().at(a.job).id << "\n";
  }
  return out.str();
}

Schedule ParseSchedule(std::string_view text, const Instance& instance) {
  const Time offset = instance.offset();
  std::map<int, std::size_t> position;
  for (std::size_t i = 0; i < instance.size(); ++i) position[instance.jobs()[i].id] = i;

  Schedule schedule;
  for (const Line& line : ContentLines(text)) {
    if (line.text.rfind("machine", 0) == 0) {
      const auto colon = line.text.find(':');
      if (colon == std::string::npos) throw ParseError("line " + std::to_string(line.number) + ": missing ':'");
      int index = -1;
      std::istringstream head(line.text.substr(7, colon - 7));
      if (!(head >> index) || index != static_cast<int>(schedule.machine_intervals.size())) {
        throw ParseError("line " + std::to_string(line.number) + ": machines must be listed in order");
      }
      std::vector<Interval> intervals;
      std::string rest = line.text.substr(colon + 1);
      std::istringstream in(rest);
      std::string token;
      while (in >> token) {
        Time a = 0;
        Time b = 0;
        char tail = 0;
        if (std::sscanf(token.c_str(), "[%ld,%ld%c", &a, &b, &tail) != 3 || tail != ')') {
          throw ParseError("line " + std::to_string(line.number) + ": bad interval '" + token + "'");
        }
        intervals.push_back({a - offset, b - offset});
        schedule.energy += b - a + instance.wakeup();
      }
      schedule.machine_intervals.push_back(std::move(intervals));
      continue;
    }
    const auto v = Integers(line, 3);
    const auto it = position.find(static_cast<int>(v[2]));
    if (it == position.end()) throw ParseError("line " + std::to_string(line.number) + ": unknown job");
    schedule.assignments.push_back({v[0] - offset, static_cast<int>(v[1]), it->second});
  }
  return schedule;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << contents)) throw ParseError("cannot write " + path);
}

}  // namespace powerdown
