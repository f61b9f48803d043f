// gtalloc command line: validate scenario files, solve them into allocation
// plans, and reproduce the bundled Kerala reference results.
//
// Exit codes: 0 feasible plan (or clean validate/reproduce), 1 validation or
// usage error, 2 infeasible plan, 3 reproduce mismatch.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gtalloc/allocation.hpp"
#include "gtalloc/errors.hpp"
#include "gtalloc/kerala.hpp"
#include "gtalloc/report.hpp"
#include "gtalloc/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitMismatch = 3;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void print_issues(const std::vector<gtalloc::ValidationIssue>& issues) {
  for (const auto& issue : issues)
    std::cerr << "error: " << issue.path << ": " << issue.message << "\n";
}

std::optional<gtalloc::AlphaWeights> parse_alphas(const std::string& text) {
  gtalloc::AlphaWeights alphas;
  char trailing = 0;
  const int matched = std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &alphas.time, &alphas.fuel,
                                  &alphas.penalty, &trailing);
  if (matched != 3) return std::nullopt;
  return alphas;
}

std::optional<gtalloc::Scenario> load_scenario(const std::string& path,
                                               const std::string& alphas_text) {
  const auto text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read scenario file " << path << "\n";
    return std::nullopt;
  }
  gtalloc::ValidationResult result = gtalloc::validate_scenario_text(*text);
  if (!result.ok()) {
    print_issues(result.issues);
    return std::nullopt;
  }
  gtalloc::Scenario scenario = std::move(*result.scenario);
  if (!alphas_text.empty()) {
    const auto alphas = parse_alphas(alphas_text);
    if (!alphas) {
      std::cerr << "error: --alphas expects three comma-separated numbers T,C,L\n";
      return std::nullopt;
    }
    scenario.alphas = *alphas;
  }
  try {
    gtalloc::validate(scenario.alphas);
  } catch (const gtalloc::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return std::nullopt;
  }
  return scenario;
}

void log_plan(const gtalloc::AllocationPlan& plan, int verbosity) {
  if (verbosity < 1) return;
  for (const auto& station : plan.stations) {
    std::cerr << "note: station " << station.station_id << ":";
    for (const auto& id : station.player_ids) std::cerr << " " << id;
    std::cerr << (station.game_played ? " (game)" : " (direct)");
    if (station.used_msne) std::cerr << " via mixed equilibrium";
    if (station.capacity_fallback) std::cerr << " with capacity fallback";
    std::cerr << "\n";
    if (verbosity >= 2 && station.game) {
      const gtalloc::CostGame& game = *station.game;
      for (std::size_t i = 0; i < game.rows(); ++i) {
        std::cerr << "note:  ";
        for (std::size_t j = 0; j < game.cols(); ++j) {
          char cell[80];
          std::snprintf(cell, sizeof cell, " (%d,%d)=%.5f/%.5f", game.strategies_p1()[i],
                        game.strategies_p2()[j], game.cost_p1(i, j), game.cost_p2(i, j));
          std::cerr << cell;
        }
        std::cerr << "\n";
      }
    }
  }
}

int emit_report(const std::string& rendered, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << rendered;
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file " << out_path << "\n";
    return kExitUsage;
  }
  out << rendered;
  return kExitOk;
}

int run_solve(const std::string& scenario_path, const std::string& alphas_text,
              const std::string& format_name, const std::string& out_path, int verbosity) {
  const auto scenario = load_scenario(scenario_path, alphas_text);
  if (!scenario) return kExitUsage;
  gtalloc::OutputFormat format = gtalloc::OutputFormat::table;
  try {
    format = gtalloc::parse_output_format(format_name);
    const gtalloc::AllocationPlan plan = gtalloc::solve(*scenario);
    log_plan(plan, verbosity);
    const int emit = emit_report(gtalloc::render_report(plan, format), out_path);
    if (emit != kExitOk) return emit;
    if (!plan.feasible) {
      std::cerr << "error: plan infeasible, backup shortfall of " << plan.backup_shortfall
                << " unit(s)\n";
      return kExitInfeasible;
    }
    return kExitOk;
  } catch (const gtalloc::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int run_validate(const std::string& scenario_path) {
  const auto text = read_file(scenario_path);
  if (!text) {
    std::cerr << "error: cannot read scenario file " << scenario_path << "\n";
    return kExitUsage;
  }
  const gtalloc::ValidationResult result = gtalloc::validate_scenario_text(*text);
  if (!result.ok()) {
    print_issues(result.issues);
    return kExitUsage;
  }
  std::cout << "scenario valid: " << result.scenario->locations.size() << " location(s), "
            << result.scenario->stations.size() << " station(s)\n";
  return kExitOk;
}

std::string fmt_profile_list(const std::vector<gtalloc::StrategyProfile>& profiles) {
  std::string out = "{";
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    if (k) out += ", ";
    out += gtalloc::detail::fmt_profile(profiles[k]);
  }
  return out + "}";
}

int run_reproduce(int case_number, int verbosity) {
  const auto& cases = gtalloc::kerala::case_expectations();
  const gtalloc::kerala::CaseExpectation* expectation = nullptr;
  for (const auto& candidate : cases)
    if (candidate.number == case_number) expectation = &candidate;
  if (!expectation) {
    std::cerr << "error: reproduce expects a case number in {1, 2, 3}\n";
    return kExitUsage;
  }

  gtalloc::ValidationResult parsed =
      gtalloc::validate_scenario_text(gtalloc::kerala::kScenarioJson);
  if (!parsed.ok()) {
    print_issues(parsed.issues);
    std::cerr << "error: bundled scenario failed validation\n";
    return kExitUsage;
  }
  gtalloc::Scenario scenario = std::move(*parsed.scenario);
  scenario.alphas = expectation->alphas;

  try {
    const gtalloc::AllocationPlan plan = gtalloc::solve(scenario);
    log_plan(plan, verbosity);
    std::cout << gtalloc::render_report(plan, gtalloc::OutputFormat::table);

    std::vector<std::string> mismatches;
    for (const auto& station_expectation : expectation->stations) {
      const gtalloc::StationSolution* solution = nullptr;
      for (const auto& candidate : plan.stations)
        if (candidate.station_id == station_expectation.station_id) solution = &candidate;
      if (!solution || !solution->game_played) {
        mismatches.push_back(station_expectation.station_id + ": no station game was played");
        continue;
      }
      if (solution->equilibria != station_expectation.equilibria) {
        mismatches.push_back(station_expectation.station_id + ": equilibria expected " +
                             fmt_profile_list(station_expectation.equilibria) + " got " +
                             fmt_profile_list(solution->equilibria));
      } else {
        for (std::size_t k = 0; k < station_expectation.costs.size(); ++k) {
          const auto& expected = station_expectation.costs[k];
          const auto& actual = solution->equilibrium_costs[k];
          if (std::fabs(expected.first - actual.first) > gtalloc::kerala::kCaseTolerance ||
              std::fabs(expected.second - actual.second) > gtalloc::kerala::kCaseTolerance)
            mismatches.push_back(station_expectation.station_id + ": cost at " +
                                 gtalloc::detail::fmt_profile(station_expectation.equilibria[k]) +
                                 " expected " + gtalloc::detail::fmt_cost_pair(expected) +
                                 " got " + gtalloc::detail::fmt_cost_pair(actual));
        }
      }
      if (!solution->selection) {
        mismatches.push_back(station_expectation.station_id + ": no equilibrium was selected");
        continue;
      }
      if (solution->selection->selected != station_expectation.selected)
        mismatches.push_back(station_expectation.station_id + ": selected expected " +
                             gtalloc::detail::fmt_profile(station_expectation.selected) + " got " +
                             gtalloc::detail::fmt_profile(solution->selection->selected));
      if (solution->selection->method != station_expectation.method)
        mismatches.push_back(station_expectation.station_id + ": method expected " +
                             gtalloc::to_string(station_expectation.method) + " got " +
                             gtalloc::to_string(solution->selection->method));
    }

    if (!mismatches.empty()) {
      for (const auto& mismatch : mismatches) std::cerr << "mismatch: " << mismatch << "\n";
      std::cerr << "error: case " << case_number << " diverged from the reference results\n";
      return kExitMismatch;
    }
    std::cerr << "note: case " << case_number << " matches the reference results\n";
    return kExitOk;
  } catch (const gtalloc::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"game-theoretic allocation of scarce response resources"};
  app.require_subcommand(1);
  app.fallthrough();

  int verbosity = 0;
  app.add_flag("-v", verbosity, "increase diagnostic verbosity (-v or -vv)");

  std::string scenario_path;
  std::string alphas_text;
  std::string format_name = "table";
  std::string out_path;

  CLI::App* solve = app.add_subcommand("solve", "solve a scenario into an allocation plan");
  solve->add_option("--scenario", scenario_path, "scenario JSON file")->required();
  solve->add_option("--alphas", alphas_text, "override alpha weights as T,C,L");
  solve->add_option("--format", format_name, "output format: table, csv, or json-lines");
  solve->add_option("--out", out_path, "write the report to a file instead of stdout");

  int case_number = 0;
  CLI::App* reproduce = app.add_subcommand("reproduce", "re-run a bundled reference case");
  reproduce->add_option("case", case_number, "case number (1, 2, or 3)")->required();

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "validate a scenario file");
  validate->add_option("--scenario", validate_path, "scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (solve->parsed()) return run_solve(scenario_path, alphas_text, format_name, out_path, verbosity);
  if (reproduce->parsed()) return run_reproduce(case_number, verbosity);
  if (validate->parsed()) return run_validate(validate_path);
  std::cerr << "error: no subcommand given\n";
  return kExitUsage;
}
