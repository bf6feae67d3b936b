#include "powerdown/lp.h"

#include <algorithm>
#include <functional>
#include <sstream>

#include "powerdown/errors.h"
#include "powerdown/volume.h"

namespace powerdown {
namespace {

Rational R(Time value) { return Rational(static_cast<long>(value)); }

void CheckGrid(const Instance& instance, const std::vector<Time>& grid) {
  if (grid.size() < 2 || grid.front() != 0 || grid.back() != instance.horizon() ||
      !std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
    throw DomainError("LP grid must be strictly increasing from 0 to D");
  }
}

struct WindowRow {
  Interval window;
  Time rhs;
};

// Window rows whose left-hand side only grows with the window. A window is
// redundant when a proper sub-window (on the grid) carries at least the same
// right-hand side.
std::vector<WindowRow> SelectWindows(const std::vector<Time>& grid,
                                     const std::function<Time(Time, Time)>& rhs, bool eliminate) {
  const std::size_t k = grid.size();
  std::vector<WindowRow> rows;
  if (!eliminate) {
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) rows.push_back({{grid[a], grid[b]}, rhs(grid[a], grid[b])});
    }
    return rows;
  }
  // best[a][b]: largest right-hand side over sub-windows of [grid[a], grid[b]].
  std::vector<std::vector<Time>> value(k, std::vector<Time>(k, 0));
  std::vector<std::vector<Time>> best(k, std::vector<Time>(k, 0));
  for (std::size_t len = 1; len < k; ++len) {
    for (std::size_t a = 0; a + len < k; ++a) {
      const std::size_t b = a + len;
      value[a][b] = rhs(grid[a], grid[b]);
      Time inner = 0;
      if (len > 1) inner = std::max(best[a + 1][b], best[a][b - 1]);
      best[a][b] = std::max(value[a][b], inner);
      if (value[a][b] > 0 && value[a][b] > inner) rows.push_back({{grid[a], grid[b]}, value[a][b]});
    }
  }
  std::sort(rows.begin(), rows.end(),
            [](const WindowRow& x, const WindowRow& y) { return x.window < y.window; });
  return rows;
}

std::string IntervalName(const Interval& interval) {
  return "x_" + std::to_string(interval.start) + "_" + std::to_string(interval.end);
}

void CheckIntervals(const Instance& instance, const std::vector<Interval>& intervals) {
  for (const Interval& interval : intervals) {
    if (interval.start < 0 || interval.start >= interval.end || interval.end > instance.horizon()) {
      throw DomainError("candidate interval " + ToString(interval) + " outside [0,D]");
    }
  }
}

}  // namespace

std::vector<Time> BuildPointSet(const Instance& instance, const Rational& epsilon) {
  if (epsilon <= 0) throw DomainError("epsilon must be positive");
  const Time horizon = instance.horizon();
  std::vector<Time> points = instance.EventTimes();
  points.push_back(0);
  points.push_back(horizon);
  const Rational base = 1 + epsilon;
  std::vector<Time> offsets;
  for (Rational power = 1;; power *= base) {
    const Time offset = Ceil(power);
    if (offset > horizon) break;
    if (offsets.empty() || offsets.back() != offset) offsets.push_back(offset);
  }
  for (Time t : instance.EventTimes()) {
    for (Time offset : offsets) {
      if (t - offset >= 0) points.push_back(t - offset);
      if (t + offset <= horizon) points.push_back(t + offset);
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

std::vector<Interval> EnumerateIntervals(Time horizon) {
  std::vector<Interval> intervals;
  for (Time a = 0; a < horizon; ++a) {
    for (Time b = a + 1; b <= horizon; ++b) intervals.push_back({a, b});
  }
  return intervals;
}

std::vector<Interval> EnumerateIntervals(const std::vector<Time>& points) {
  std::vector<Time> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Interval> intervals;
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    for (std::size_t b = a + 1; b < sorted.size(); ++b) intervals.push_back({sorted[a], sorted[b]});
  }
  return intervals;
}

std::size_t LpModel::CountRows(RowFamily family) const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [&](const LpRow& row) { return row.family == family; }));
}

LpModel BuildSingleMachineLp(const Instance& instance, const std::vector<Interval>& intervals,
                             const std::vector<Time>& grid, const LpBuildOptions& options) {
  if (instance.machines() != 1) throw DomainError("single-machine LP needs m = 1");
  CheckGrid(instance, grid);
  CheckIntervals(instance, intervals);
  LpModel model;
  model.grid = grid;
  for (const Interval& interval : intervals) {
    LpVariable var;
    var.name = IntervalName(interval);
    var.kind = VariableKind::kInterval;
    var.cost = R(interval.length() + instance.wakeup());
    var.upper = Rational(1);
    var.interval = interval;
    model.variables.push_back(std::move(var));
  }
  const int n = static_cast<int>(intervals.size());

  // The machine is active in at most one interval at any point.
  for (Time t : grid) {
    LpRow row;
    row.name = "point_" + std::to_string(t);
    row.family = RowFamily::kPointCapacity;
    row.sense = RowSense::kLessEqual;
    row.rhs = 1;
    for (int j = 0; j < n; ++j) {
      if (intervals[j].ContainsPoint(t)) row.terms.push_back({j, Rational(1)});
    }
    if (row.terms.size() > 1 || !options.eliminate_dominated_rows) model.rows.push_back(std::move(row));
  }

  // Enough active time inside every window for the jobs confined to it.
  const auto windows = SelectWindows(
      grid, [&](Time a, Time b) { return TotalVolume(instance, a, b); },
      options.eliminate_dominated_rows);
  for (const auto& [window, volume] : windows) {
    LpRow row;
    row.name = "volume_" + std::to_string(window.start) + "_" + std::to_string(window.end);
    row.family = RowFamily::kWindowVolume;
    row.sense = RowSense::kGreaterEqual;
    row.rhs = R(volume);
    row.window = window;
    for (int j = 0; j < n; ++j) {
      const Time overlap = OverlapLength(intervals[j], window);
      if (overlap > 0) row.terms.push_back({j, R(overlap)});
    }
    model.rows.push_back(std::move(row));
  }

  // Some interval meets every job window.
  std::vector<Interval> job_windows;
  for (const Job& job : instance.jobs()) job_windows.push_back(job.window());
  std::sort(job_windows.begin(), job_windows.end());
  job_windows.erase(std::unique(job_windows.begin(), job_windows.end()), job_windows.end());
  for (const Interval& window : job_windows) {
    if (options.eliminate_dominated_rows &&
        std::any_of(job_windows.begin(), job_windows.end(), [&](const Interval& other) {
          return other != window && window.Contains(other);
        })) {
      continue;
    }
    LpRow row;
    row.name = "cover_" + std::to_string(window.start) + "_" + std::to_string(window.end);
    row.family = RowFamily::kJobCover;
    row.sense = RowSense::kGreaterEqual;
    row.rhs = 1;
    row.window = window;
    for (int j = 0; j < n; ++j) {
      if (intervals[j].Overlaps(window)) row.terms.push_back({j, Rational(1)});
    }
    model.rows.push_back(std::move(row));
  }
  return model;
}

LpModel BuildMultiMachineLp(const Instance& instance, const std::vector<Interval>& intervals,
                            const std::vector<Time>& grid, const LpBuildOptions& options) {
  CheckGrid(instance, grid);
  CheckIntervals(instance, intervals);
  const Rational machines(instance.machines());
  LpModel model;
  model.multi_machine = true;
  model.grid = grid;
  const std::size_t num_slots = grid.size() - 1;

  for (const Interval& interval : intervals) {
    LpVariable var;
    var.name = IntervalName(interval);
    var.kind = VariableKind::kInterval;
    var.cost = R(interval.length() + instance.wakeup());
    var.upper = machines;
    var.interval = interval;
    model.variables.push_back(std::move(var));
  }
  std::vector<int> active_var(num_slots);
  for (std::size_t t = 0; t < num_slots; ++t) {
    LpVariable var;
    var.name = "m_" + std::to_string(grid[t]);
    var.kind = VariableKind::kActive;
    var.cost = 0;
    var.upper = machines;
    var.slot = t;
    active_var[t] = static_cast<int>(model.variables.size());
    model.variables.push_back(std::move(var));
  }
  // flow_vars[t]: (job, variable) pairs feeding slot t.
  std::vector<std::vector<std::pair<std::size_t, int>>> flow_vars(num_slots);
  std::vector<std::vector<int>> job_vars(instance.size());
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const Job& job = instance.jobs()[i];
    for (std::size_t t = 0; t < num_slots; ++t) {
      const Time overlap = OverlapLength(job.window(), {grid[t], grid[t + 1]});
      if (overlap == 0) continue;
      LpVariable var;
      var.name = "f_" + std::to_string(job.id) + "_" + std::to_string(grid[t]);
      var.kind = VariableKind::kFlow;
      var.cost = 0;
      var.upper = R(overlap);
      var.job = i;
      var.slot = t;
      const int index = static_cast<int>(model.variables.size());
      flow_vars[t].emplace_back(i, index);
      job_vars[i].push_back(index);
      model.variables.push_back(std::move(var));
    }
  }

  for (std::size_t t = 0; t < num_slots; ++t) {
    const Interval slot{grid[t], grid[t + 1]};
    LpRow row;
    row.name = "active_" + std::to_string(slot.start);
    row.family = RowFamily::kActiveDefinition;
    row.sense = RowSense::kEqual;
    row.rhs = 0;
    row.terms.push_back({active_var[t], Rational(1)});
    for (std::size_t j = 0; j < intervals.size(); ++j) {
      if (intervals[j].Contains(slot)) row.terms.push_back({static_cast<int>(j), Rational(-1)});
    }
    model.rows.push_back(std::move(row));
  }
  for (std::size_t t = 0; t < num_slots; ++t) {
    if (flow_vars[t].empty() && options.eliminate_dominated_rows) continue;
    LpRow row;
    row.name = "slotflow_" + std::to_string(grid[t]);
    row.family = RowFamily::kSlotFlow;
    row.sense = RowSense::kLessEqual;
    row.rhs = 0;
    for (const auto& [job, var] : flow_vars[t]) row.terms.push_back({var, Rational(1)});
    row.terms.push_back({active_var[t], -R(grid[t + 1] - grid[t])});
    model.rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < instance.size(); ++i) {
    LpRow row;
    row.name = "demand_" + std::to_string(instance.jobs()[i].id);
    row.family = RowFamily::kJobDemand;
    row.sense = RowSense::kEqual;
    row.rhs = R(instance.jobs()[i].ptime);
    for (int var : job_vars[i]) row.terms.push_back({var, Rational(1)});
    model.rows.push_back(std::move(row));
  }

  // At least ceil(forced volume / window length) intervals meet the window.
  const auto windows = SelectWindows(
      grid,
      [&](Time a, Time b) {
        const Time forced = TotalForcedVolume(instance, Interval{a, b});
        return (forced + (b - a) - 1) / (b - a);
      },
      options.eliminate_dominated_rows);
  for (const auto& [window, count] : windows) {
    LpRow row;
    row.name = "overlap_" + std::to_string(window.start) + "_" + std::to_string(window.end);
    row.family = RowFamily::kOverlapCount;
    row.sense = RowSense::kGreaterEqual;
    row.rhs = R(count);
    row.window = window;
    for (std::size_t j = 0; j < intervals.size(); ++j) {
      if (intervals[j].Overlaps(window)) row.terms.push_back({static_cast<int>(j), Rational(1)});
    }
    model.rows.push_back(std::move(row));
  }
  return model;
}

FractionalSolution SolveLp(const LpModel& model, const SimplexOptions& options) {
  SimplexResult result = RunSimplex(model, options);
  if (result.status == LpStatus::kInfeasible) throw InfeasibleError("LP has no feasible solution");
  if (result.status == LpStatus::kUnbounded) {
    throw InvariantViolation("LP unbounded although the objective is bounded below by 0");
  }
  FractionalSolution solution;
  solution.objective = result.objective;
  for (std::size_t j = 0; j < model.variables.size(); ++j) {
    const LpVariable& var = model.variables[j];
    if (var.kind == VariableKind::kInterval && result.values[j] > 0) {
      solution.support.push_back({var.interval, result.values[j]});
    }
  }
  std::sort(solution.support.begin(), solution.support.end(),
            [](const WeightedInterval& a, const WeightedInterval& b) { return a.interval < b.interval; });
  solution.values = std::move(result.values);
  return solution;
}

Rational MaxViolation(const LpModel& model, const std::vector<Rational>& values) {
  Rational worst = 0;
  for (std::size_t j = 0; j < model.variables.size(); ++j) {
    worst = std::max(worst, Rational(-values[j]));
    if (model.variables[j].upper) worst = std::max(worst, Rational(values[j] - *model.variables[j].upper));
  }
  for (const LpRow& row : model.rows) {
    Rational lhs = 0;
    for (const LpTerm& term : row.terms) lhs += term.coefficient * values[term.variable];
    Rational gap = 0;
    switch (row.sense) {
      case RowSense::kLessEqual: gap = lhs - row.rhs; break;
      case RowSense::kGreaterEqual: gap = row.rhs - lhs; break;
      case RowSense::kEqual: gap = abs(lhs - row.rhs); break;
    }
    worst = std::max(worst, gap);
  }
  return worst;
}

std::string WriteLpText(const LpModel& model) {
  std::ostringstream out;
  const auto term = [&](const Rational& c, const std::string& name, bool first) {
    if (c < 0) {
      out << " - ";
    } else if (!first) {
      out << " + ";
    }
    const Rational magnitude = abs(c);
    if (magnitude != 1) out << FormatRational(magnitude) << " ";
    out << name;
  };
  out << "\\ " << (model.multi_machine ? "multi" : "single") << "-machine energy LP\n";
  out << "Minimize\n obj:";
  bool first = true;
  for (const LpVariable& var : model.variables) {
    if (var.cost == 0) continue;
    term(var.cost, var.name, first);
    first = false;
  }
  if (first) out << " 0";
  out << "\nSubject To\n";
  for (const LpRow& row : model.rows) {
    out << " " << row.name << ":";
    first = true;
    for (const LpTerm& t : row.terms) {
      term(t.coefficient, model.variables[t.variable].name, first);
      first = false;
    }
    if (first) out << " 0 " << model.variables.front().name;
    switch (row.sense) {
      case RowSense::kLessEqual: out << " <= "; break;
      case RowSense::kGreaterEqual: out << " >= "; break;
      case RowSense::kEqual: out << " = "; break;
    }
    out << FormatRational(row.rhs) << "\n";
  }
  out << "Bounds\n";
  for (const LpVariable& var : model.variables) {
    out << " 0 <= " << var.name;
    if (var.upper) out << " <= " << FormatRational(*var.upper);
    out << "\n";
  }
  out << "End\n";
  return out.str();
}

}  // namespace powerdown
