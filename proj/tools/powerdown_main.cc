// powerdown: energy-minimizing schedules for machines that can sleep.
//
//   powerdown solve instance.txt [--output schedule.txt] [--mode full|restricted]
//                   [--epsilon 1/4] [--exact] [--limits 6,12,2] [--report json|text]
//   powerdown check instance.txt supply.txt
//   powerdown gen --seed 7 --jobs 5 --machines 2 --horizon 10 --wakeup 1 --density 0.5
//   powerdown bench corpus/
//
// Exit codes: 0 success, 2 infeasible, 3 input error, 4 internal error.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "powerdown/errors.h"
#include "powerdown/flow.h"
#include "powerdown/generator.h"
#include "powerdown/io.h"
#include "powerdown/oracle.h"
#include "powerdown/pipeline.h"
#include "powerdown/rational.h"
#include "powerdown/volume.h"

namespace pd = powerdown;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kInfeasible = 2;
constexpr int kInputError = 3;
constexpr int kInternalError = 4;

struct SolveFlags {
  std::string instance_path;
  std::string output_path;
  std::string mode = "auto";
  std::string epsilon = "1/4";
  std::string limits = "6,12,2";
  std::string report = "text";
  bool exact = false;
  bool unit_steps = false;
};

pd::ExactLimits ParseLimits(const std::string& text) {
  pd::ExactLimits limits;
  std::istringstream in(text);
  std::string part;
  std::vector<long> values;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stol(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw pd::ParseError("--limits expects n,D,m");
    }
  }
  if (values.size() != 3 || std::any_of(values.begin(), values.end(), [](long v) { return v < 0; })) {
    throw pd::ParseError("--limits expects three non-negative integers n,D,m");
  }
  limits.max_jobs = static_cast<std::size_t>(values[0]);
  limits.max_horizon = values[1];
  limits.max_machines = static_cast<int>(values[2]);
  return limits;
}

pd::SolveOptions ToOptions(const SolveFlags& flags) {
  pd::SolveOptions options;
  if (flags.mode == "full") {
    options.mode = pd::IntervalMode::kFull;
  } else if (flags.mode == "restricted") {
    options.mode = pd::IntervalMode::kRestricted;
  }
  options.epsilon = pd::ParseRational(flags.epsilon);
  if (options.epsilon <= 0) throw pd::ParseError("--epsilon must be positive");
  options.batched = !flags.unit_steps;
  return options;
}

json IntervalsJson(const pd::Supply& supply, pd::Time offset) {
  json out = json::array();
  for (const auto& interval : supply) out.push_back({interval.start + offset, interval.end + offset});
  return out;
}

json RationalJson(const pd::Rational& value) {
  return {{"exact", pd::FormatRational(value)}, {"value", pd::ToDouble(value)}};
}

json WitnessJson(const pd::DisjointIntervalSet& witness, pd::Time offset) {
  return IntervalsJson(witness.intervals(), offset);
}

void PrintWitness(std::ostream& out, const pd::DisjointIntervalSet& witness, pd::Time offset,
                  std::int64_t deficiency) {
  out << "witness:";
  for (const auto& q : witness.intervals()) out << " [" << q.start + offset << "," << q.end + offset << "]";
  out << "\ndeficiency: " << deficiency << "\n";
}

int RunSolve(const SolveFlags& flags) {
  const pd::Instance instance = pd::ParseInstance(pd::ReadFile(flags.instance_path));
  const pd::SolveOptions options = ToOptions(flags);
  const pd::Time offset = instance.offset();
  const bool as_json = flags.report == "json";

  pd::SolveReport report;
  try {
    report = pd::Solve(instance, options);
  } catch (const pd::InfeasibleInstanceError& e) {
    if (as_json) {
      std::cout << json{{"status", "infeasible"},
                        {"witness", WitnessJson(e.witness(), offset)},
                        {"deficiency", e.deficiency()}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << "infeasible\n";
      PrintWitness(std::cout, e.witness(), offset, e.deficiency());
    }
    return kInfeasible;
  }

  std::optional<pd::Time> optimum;
  std::string exact_note;
  if (flags.exact) {
    try {
      if (auto exact = pd::ExactOpt(instance, ParseLimits(flags.limits))) optimum = exact->energy;
    } catch (const pd::LimitExceededError& e) {
      exact_note = e.what();
    }
  }

  const std::string schedule_text = pd::FormatSchedule(instance, report.schedule);
  if (!flags.output_path.empty()) pd::WriteFile(flags.output_path, schedule_text);

  if (as_json) {
    json out;
    out["status"] = "ok";
    out["mode"] = report.mode == pd::IntervalMode::kFull ? "full" : "restricted";
    if (report.mode == pd::IntervalMode::kRestricted) out["epsilon"] = pd::FormatRational(report.epsilon);
    out["jobs"] = instance.size();
    out["machines"] = instance.machines();
    out["wakeup"] = instance.wakeup();
    out["horizon"] = instance.horizon();
    out["total_volume"] = instance.total_volume();
    out["lp"] = {{"objective", RationalJson(report.lp_objective)},
                 {"rows", report.lp_rows},
                 {"variables", report.lp_variables},
                 {"iterations", report.simplex_iterations},
                 {"points", report.points.size()}};
    json candidates = json::array();
    for (const auto& c : report.candidates) {
      candidates.push_back({{"weight", pd::FormatRational(c.weight)},
                            {"energy_before", c.candidate_energy},
                            {"energy_modified", c.modified_energy},
                            {"added_length", c.added_length},
                            {"energy", c.energy},
                            {"intervals", IntervalsJson(c.repaired, offset)}});
    }
    out["candidates"] = candidates;
    out["chosen"] = report.chosen;
    out["energy"] = report.energy;
    out["bound"] = RationalJson(report.bound);
    out["seconds"] = {{"lp", report.seconds.lp},
                      {"decompose", report.seconds.decompose},
                      {"repair", report.seconds.repair},
                      {"schedule", report.seconds.schedule}};
    if (flags.exact) {
      if (optimum) {
        out["exact"] = {{"energy", *optimum},
                        {"ratio", *optimum == 0 ? 1.0 : static_cast<double>(report.energy) / *optimum}};
      } else {
        out["exact"] = {{"skipped", exact_note}};
      }
    }
    if (flags.output_path.empty()) out["schedule"] = schedule_text;
    std::cout << out.dump(2) << "\n";
    return kOk;
  }

  std::cout << "mode: " << (report.mode == pd::IntervalMode::kFull ? "full" : "restricted");
  if (report.mode == pd::IntervalMode::kRestricted) std::cout << " (epsilon " << report.epsilon << ")";
  std::cout << "\nlp objective: " << report.lp_objective << " (" << report.lp_rows << " rows, "
            << report.lp_variables << " variables, " << report.simplex_iterations << " pivots)\n";
  for (std::size_t k = 0; k < report.candidates.size(); ++k) {
    const auto& c = report.candidates[k];
    std::cout << "candidate " << k << ": weight " << c.weight << ", energy " << c.candidate_energy << " -> "
              << c.energy << " (+" << c.added_length << " slots)" << (k == report.chosen ? "  chosen" : "")
              << "\n";
  }
  std::cout << "energy: " << report.energy << "\nbound: " << report.bound << " ("
            << (instance.machines() == 1 ? "LP + P" : "2 LP + P") << ")\n";
  if (flags.exact) {
    if (optimum) {
      std::cout << "exact optimum: " << *optimum << "\nratio: "
                << (*optimum == 0 ? 1.0 : static_cast<double>(report.energy) / *optimum) << "\n";
    } else {
      std::cout << "exact optimum: skipped (" << exact_note << ")\n";
    }
  }
  if (flags.output_path.empty()) std::cout << "\n" << schedule_text;
  return kOk;
}

int RunCheck(const std::string& instance_path, const std::string& supply_path, const std::string& format) {
  const pd::Instance instance = pd::ParseInstance(pd::ReadFile(instance_path));
  const pd::Supply supply = pd::ParseSupply(pd::ReadFile(supply_path), instance.offset());
  for (const auto& interval : supply) {
    if (interval.end > instance.horizon()) throw pd::ParseError("supply interval ends after the horizon");
  }
  const pd::FeasibilityResult result = pd::CheckFeasible(instance, supply);
  if (format == "json") {
    json out{{"feasible", result.feasible}, {"flow", result.flow_value}, {"total_volume", instance.total_volume()}};
    if (!result.feasible) {
      out["witness"] = WitnessJson(result.witness, instance.offset());
      out["deficiency"] = result.deficiency;
    }
    std::cout << out.dump(2) << "\n";
  } else if (result.feasible) {
    std::cout << "feasible\n";
  } else {
    std::cout << "infeasible\n";
    PrintWitness(std::cout, result.witness, instance.offset(), result.deficiency);
  }
  return result.feasible ? kOk : kInfeasible;
}

int RunGen(const pd::GenOptions& options, const std::string& output_path) {
  const std::string text = pd::FormatInstance(pd::GenerateInstance(options));
  if (output_path.empty()) {
    std::cout << text;
  } else {
    pd::WriteFile(output_path, text);
  }
  return kOk;
}

int RunBench(const std::string& corpus, const SolveFlags& flags) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(corpus)) throw pd::ParseError(corpus + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  const pd::SolveOptions options = ToOptions(flags);
  const pd::ExactLimits limits = ParseLimits(flags.limits);

  std::cout << "file,n,m,D,Q,P,lp,alg,opt,alg_over_lp,alg_over_opt,bound,within_bound,"
               "lp_s,decompose_s,repair_s,schedule_s,status\n";
  for (const auto& path : files) {
    std::vector<std::string> row(18);
    row[0] = path.filename().string();
    try {
      const pd::Instance instance = pd::ParseInstance(pd::ReadFile(path.string()));
      row[1] = std::to_string(instance.size());
      row[2] = std::to_string(instance.machines());
      row[3] = std::to_string(instance.horizon());
      row[4] = std::to_string(instance.wakeup());
      row[5] = std::to_string(instance.total_volume());
      const pd::SolveReport report = pd::Solve(instance, options);
      const double lp = pd::ToDouble(report.lp_objective);
      row[6] = pd::FormatRational(report.lp_objective);
      row[7] = std::to_string(report.energy);
      if (lp > 0) row[9] = std::to_string(report.energy / lp);
      row[11] = pd::FormatRational(report.bound);
      row[12] = pd::Rational(report.energy) <= report.bound ? "yes" : "no";
      row[13] = std::to_string(report.seconds.lp);
      row[14] = std::to_string(report.seconds.decompose);
      row[15] = std::to_string(report.seconds.repair);
      row[16] = std::to_string(report.seconds.schedule);
      try {
        if (auto exact = pd::ExactOpt(instance, limits)) {
          row[8] = std::to_string(exact->energy);
          if (exact->energy > 0) row[10] = std::to_string(static_cast<double>(report.energy) / exact->energy);
        }
      } catch (const pd::LimitExceededError&) {
      }
      row[17] = "ok";
    } catch (const std::exception& e) {
      std::string message = e.what();
      std::replace(message.begin(), message.end(), ',', ';');
      row[17] = "error: " + message;
    }
    for (std::size_t k = 0; k < row.size(); ++k) std::cout << (k ? "," : "") << row[k];
    std::cout << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-minimizing schedules on machines with a power-down state"};
  app.require_subcommand(1);

  SolveFlags flags;
  const auto add_solve_flags = [&](CLI::App* cmd) {
    cmd->add_option("--mode", flags.mode, "Candidate intervals: full, restricted or auto")
        ->check(CLI::IsMember({"auto", "full", "restricted"}));
    cmd->add_option("--epsilon", flags.epsilon, "Restricted-mode precision as p/q");
    cmd->add_option("--limits", flags.limits, "Exact search limits n,D,m");
    cmd->add_flag("--unit-steps", flags.unit_steps, "Repair one slot at a time instead of batched");
  };

  CLI::App* solve = app.add_subcommand("solve", "Compute a schedule for an instance");
  solve->add_option("instance", flags.instance_path, "Instance file")->required();
  solve->add_option("-o,--output", flags.output_path, "Write the schedule here instead of stdout");
  solve->add_flag("--exact", flags.exact, "Also run the exhaustive oracle");
  solve->add_option("--report", flags.report, "Report format")->check(CLI::IsMember({"json", "text"}));
  add_solve_flags(solve);

  std::string check_instance;
  std::string check_supply;
  std::string check_format = "text";
  CLI::App* check = app.add_subcommand("check", "Test whether a supply of intervals is feasible");
  check->add_option("instance", check_instance, "Instance file")->required();
  check->add_option("supply", check_supply, "Supply file")->required();
  check->add_option("--report", check_format, "Report format")->check(CLI::IsMember({"json", "text"}));

  pd::GenOptions gen_options;
  std::string gen_output;
  CLI::App* gen = app.add_subcommand("gen", "Generate a random feasible instance");
  gen->add_option("--seed", gen_options.seed, "Random seed");
  gen->add_option("-n,--jobs", gen_options.jobs, "Number of jobs")->check(CLI::NonNegativeNumber);
  gen->add_option("-m,--machines", gen_options.machines, "Number of machines")->check(CLI::PositiveNumber);
  gen->add_option("-D,--horizon", gen_options.horizon, "Latest deadline")->check(CLI::PositiveNumber);
  gen->add_option("-Q,--wakeup", gen_options.wakeup, "Wake-up cost")->check(CLI::NonNegativeNumber);
  gen->add_option("--density", gen_options.density, "Target load P/(mD) in (0,1]");
  gen->add_option("-o,--output", gen_output, "Write the instance here instead of stdout");

  std::string corpus;
  CLI::App* bench = app.add_subcommand("bench", "Solve every instance in a directory and print CSV");
  bench->add_option("corpus", corpus, "Directory of instance files")->required();
  add_solve_flags(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve) return RunSolve(flags);
    if (*check) return RunCheck(check_instance, check_supply, check_format);
    if (*gen) return RunGen(gen_options, gen_output);
    if (*bench) return RunBench(corpus, flags);
  } catch (const pd::TriviallyInfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const pd::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const pd::DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const pd::InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternalError;
  }
  return kOk;
}
