#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "gtalloc/kerala.hpp"
#include "gtalloc/report.hpp"

using namespace gtalloc;

namespace {

Scenario kerala_scenario() {
  ValidationResult result = validate_scenario_text(kerala::kScenarioJson);
  REQUIRE(result.ok());
  return *result.scenario;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("format names parse to the three renderers") {
  REQUIRE(parse_output_format("table") == OutputFormat::table);
  REQUIRE(parse_output_format("csv") == OutputFormat::csv);
  REQUIRE(parse_output_format("json-lines") == OutputFormat::json_lines);
  try {
    parse_output_format("xml");
    FAIL("expected a throw");
  } catch (const error& e) {
    REQUIRE(e.code() == errc::invalid_argument);
    REQUIRE(contains(e.what(), "expected table, csv, or json-lines"));
  }
}

TEST_CASE("five-decimal formatting normalizes negative zero") {
  REQUIRE(detail::fmt5(-1e-9) == "0.00000");
  REQUIRE(detail::fmt5(0.0) == "0.00000");
  REQUIRE(detail::fmt5(0.123456) == "0.12346");
  REQUIRE(detail::fmt5(0.3530952) == "0.35310");
  REQUIRE(detail::round5(0.3530952) == 0.3531);
}

TEST_CASE("the table report mirrors the equilibrium layout") {
  const AllocationPlan plan = solve(kerala_scenario());
  const std::string table = render_report(plan, OutputFormat::table);

  REQUIRE(contains(table, "Allocation report"));
  REQUIRE(contains(table, "alphas: time=0.05000 fuel=0.05000 penalty=0.90000"));
  REQUIRE(contains(table, "Station RS1 (P1 vs P2)"));
  REQUIRE(contains(table, "  (1, 7) | (0.92601, 0.71131)"));
  REQUIRE(contains(table, "  (2, 6) | (0.68208, 0.68512)"));
  REQUIRE(contains(table, "  (3, 5) | (0.30006, 0.56369)"));
  REQUIRE(contains(table, "selected: (3, 5) via payoff-dominance"));
  REQUIRE(contains(table, "Station RS2 (P3 vs P4)"));
  REQUIRE(contains(table, "  (5, 4) | (0.62423, 0.35310)"));
  REQUIRE(contains(table, "selected: (5, 4) via risk-dominance-tournament"));
  REQUIRE(contains(table, "Draws"));
  REQUIRE(contains(table, "  P1 | RS1 | 3"));
  REQUIRE(contains(table, "  P2 | RS3 | 2"));
  REQUIRE(contains(table, "backup shortfall: 0"));
  REQUIRE(contains(table, "feasible: yes"));
  REQUIRE_FALSE(contains(table, "capacity fallback"));

  SECTION("rendering is byte-deterministic across solves") {
    const AllocationPlan again = solve(kerala_scenario());
    REQUIRE(render_report(again, OutputFormat::table) == table);
    REQUIRE(render_report(again, OutputFormat::csv) == render_report(plan, OutputFormat::csv));
    REQUIRE(render_report(again, OutputFormat::json_lines) ==
            render_report(plan, OutputFormat::json_lines));
  }
}

TEST_CASE("an infeasible plan reports its shortfall") {
  Scenario scenario = kerala_scenario();
  scenario.stations[2].capacity = 1;
  const std::string table = render_report(solve(scenario), OutputFormat::table);
  REQUIRE(contains(table, "backup shortfall: 3"));
  REQUIRE(contains(table, "feasible: no"));
}

TEST_CASE("direct allocations are labeled without a game block") {
  Scenario scenario = kerala_scenario();
  for (auto& station : scenario.stations) station.capacity = 20;
  const std::string table = render_report(solve(scenario), OutputFormat::table);
  REQUIRE(contains(table, "Station RS1 (P1, P2): direct allocation"));
  REQUIRE(contains(table, "Station RS2 (P3, P4): direct allocation"));
  REQUIRE_FALSE(contains(table, "equilibrium | costs"));
}

TEST_CASE("a capacity fallback is flagged on the selected line") {
  Scenario scenario = kerala_scenario();
  scenario.alphas = {0.5, 0.5, 0.0};
  const std::string table = render_report(solve(scenario), OutputFormat::table);
  REQUIRE(contains(table, "selected: (3, 5) via total-cost-tiebreak (capacity fallback)"));
}

TEST_CASE("the csv report is exactly the draw rows") {
  const AllocationPlan plan = solve(kerala_scenario());
  REQUIRE(render_report(plan, OutputFormat::csv) ==
          "location,station,units\n"
          "P1,RS1,3\n"
          "P2,RS1,5\n"
          "P3,RS2,5\n"
          "P4,RS2,4\n"
          "P2,RS3,2\n"
          "P3,RS3,2\n");
}

TEST_CASE("json lines carry one object per line with rounded costs") {
  const AllocationPlan plan = solve(kerala_scenario());
  const auto lines = lines_of(render_report(plan, OutputFormat::json_lines));
  REQUIRE(lines.size() == 10);  // meta + 2 stations + 6 draws + summary

  const auto meta = nlohmann::json::parse(lines[0]);
  REQUIRE(meta["kind"] == "meta");
  REQUIRE(meta["alphas"]["penalty"] == 0.9);

  const auto rs1 = nlohmann::json::parse(lines[1]);
  REQUIRE(rs1["kind"] == "station");
  REQUIRE(rs1["station"] == "RS1");
  REQUIRE(rs1["game_played"] == true);
  REQUIRE(rs1["equilibria"].size() == 3);
  REQUIRE(rs1["equilibria"][2]["profile"] == nlohmann::json::array({3, 5}));
  REQUIRE(rs1["equilibria"][2]["costs"][0] == 0.30006);
  REQUIRE(rs1["selected"] == nlohmann::json::array({3, 5}));
  REQUIRE(rs1["method"] == "payoff-dominance");
  REQUIRE(rs1["capacity_fallback"] == false);

  const auto rs2 = nlohmann::json::parse(lines[2]);
  REQUIRE(rs2["method"] == "risk-dominance-tournament");
  REQUIRE(rs2["player_costs"][1] == 0.3531);

  const auto first_draw = nlohmann::json::parse(lines[3]);
  REQUIRE(first_draw["kind"] == "draw");
  REQUIRE(first_draw["location"] == "P1");
  REQUIRE(first_draw["station"] == "RS1");
  REQUIRE(first_draw["units"] == 3);

  const auto summary = nlohmann::json::parse(lines[9]);
  REQUIRE(summary["kind"] == "summary");
  REQUIRE(summary["backup_shortfall"] == 0);
  REQUIRE(summary["feasible"] == true);
}

TEST_CASE("mixed equilibria render with supports and the realized profile") {
  StationSolution station;
  station.station_id = "RSX";
  station.player_ids = {"A", "B"};
  station.game_played = true;
  station.game = CostGame({0, 1}, {0, 1}, {{0, 2}, {2, 0}}, {{2, 0}, {0, 2}});
  station.used_msne = true;
  station.mixed = MixedProfile{{0.5, 0.5}, {0.5, 0.5}};
  station.primary_draws = {0, 0};
  station.player_costs = {1.0, 1.0};

  AllocationPlan plan;
  plan.alphas = {0.05, 0.05, 0.9};
  plan.stations.push_back(station);

  std::string table = detail::render_table(plan);
  REQUIRE(contains(table, "no pure equilibrium; mixed equilibrium"));
  REQUIRE(contains(table, "A mix: 0:0.50000 1:0.50000"));
  REQUIRE(contains(table, "B mix: 0:0.50000 1:0.50000"));
  REQUIRE(contains(table, "realized as most probable profile: (0, 0)"));
  REQUIRE_FALSE(contains(table, "degenerate"));

  plan.stations[0].msne_degenerate = true;
  table = detail::render_table(plan);
  REQUIRE(contains(table, "note: degenerate support, representative shown"));

  SECTION("zero-weight strategies are dropped from the mix line") {
    REQUIRE(detail::fmt_mixed_side({0, 1, 2}, {0.0, 1.0, 0.0}) == "1:1.00000");
    REQUIRE(detail::fmt_mixed_side({0, 1}, {0.0, 0.0}) == "-");
  }
}

TEST_CASE("an empty plan still renders every format") {
  AllocationPlan plan;
  const std::string table = detail::render_table(plan);
  REQUIRE(contains(table, "backup shortfall: 0"));
  REQUIRE(contains(table, "feasible: yes"));
  REQUIRE(render_report(plan, OutputFormat::csv) == "location,station,units\n");
  const auto lines = lines_of(render_report(plan, OutputFormat::json_lines));
  REQUIRE(lines.size() == 2);
  REQUIRE(nlohmann::json::parse(lines[1])["kind"] == "summary");
}
