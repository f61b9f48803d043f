#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "gtalloc/kerala.hpp"
#include "gtalloc/scenario.hpp"

using namespace gtalloc;

namespace {

nlohmann::json kerala_doc() { return nlohmann::json::parse(kerala::kScenarioJson); }

Scenario kerala_scenario() {
  ValidationResult result = validate_scenario(kerala_doc());
  REQUIRE(result.ok());
  return *result.scenario;
}

bool has_issue(const ValidationResult& result, const std::string& path,
               const std::string& fragment) {
  return std::any_of(result.issues.begin(), result.issues.end(), [&](const ValidationIssue& i) {
    return i.path == path && i.message.find(fragment) != std::string::npos;
  });
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("the bundled scenario validates cleanly") {
  const ValidationResult result = validate_scenario(kerala_doc());
  REQUIRE(result.ok());
  REQUIRE(result.issues.empty());

  const Scenario& s = *result.scenario;
  REQUIRE(s.locations.size() == 4);
  REQUIRE(s.stations.size() == 3);
  REQUIRE(s.locations[0].id == "P1");
  REQUIRE(s.locations[1].distances_km.at("RS3") == 500.0);
  REQUIRE(s.stations[0] == ResourceStation{"RS1", 8, StationRole::primary_pool});
  REQUIRE(s.stations[2] == ResourceStation{"RS3", 6, StationRole::backup});
  REQUIRE(s.vehicle == VehicleProfile{210.0, 0.0025});
  REQUIRE(s.alphas == AlphaWeights{0.05, 0.05, 0.9});
}

TEST_CASE("the data file matches the embedded scenario") {
  const std::string text = slurp(GTALLOC_DATA_DIR "/kerala.json");
  const ValidationResult from_file = validate_scenario_text(text);
  REQUIRE(from_file.ok());
  REQUIRE(*from_file.scenario == kerala_scenario());
}

TEST_CASE("validation reports every violation with its field path") {
  SECTION("alpha weights off the simplex") {
    nlohmann::json doc = kerala_doc();
    doc["alphas"] = {{"time", 0.5}, {"fuel", 0.5}, {"penalty", 0.5}};
    const ValidationResult result = validate_scenario(doc);
    REQUIRE_FALSE(result.ok());
    REQUIRE(result.issues.size() == 1);
    REQUIRE(has_issue(result, "alphas", "alpha weights must sum to 1"));
  }

  SECTION("negative alpha weight") {
    nlohmann::json doc = kerala_doc();
    doc["alphas"]["time"] = -0.05;
    doc["alphas"]["penalty"] = 1.0;
    REQUIRE(has_issue(validate_scenario(doc), "alphas", "non-negative"));
  }

  SECTION("a location missing a station distance names the pair") {
    nlohmann::json doc = kerala_doc();
    doc["locations"][1]["distances_km"].erase("RS3");
    const ValidationResult result = validate_scenario(doc);
    REQUIRE_FALSE(result.ok());
    REQUIRE(has_issue(result, "locations[1].distances_km.RS3",
                      "location P2 lacks a distance to station RS3"));
  }

  SECTION("duplicate identifiers") {
    nlohmann::json doc = kerala_doc();
    doc["locations"][1]["id"] = "P1";
    doc["stations"][1]["id"] = "RS1";
    const ValidationResult result = validate_scenario(doc);
    REQUIRE(has_issue(result, "locations", "duplicate location id P1"));
    REQUIRE(has_issue(result, "stations", "duplicate station id RS1"));
    REQUIRE(result.issues.size() == 2);
  }

  SECTION("backup station count must be exactly one") {
    nlohmann::json doc = kerala_doc();
    doc["stations"][2]["role"] = "primary";
    REQUIRE(has_issue(validate_scenario(doc), "stations", "exactly one station"));

    doc = kerala_doc();
    doc["stations"][1]["role"] = "backup";
    REQUIRE(has_issue(validate_scenario(doc), "stations", "(found 2)"));
  }

  SECTION("at least one primary station") {
    nlohmann::json doc = kerala_doc();
    for (auto& station : doc["stations"]) station["role"] = "backup";
    const ValidationResult result = validate_scenario(doc);
    REQUIRE(has_issue(result, "stations", "at least one primary"));
    REQUIRE(has_issue(result, "stations", "(found 3)"));
  }

  SECTION("unknown role string") {
    nlohmann::json doc = kerala_doc();
    doc["stations"][2]["role"] = "mobile";
    const ValidationResult result = validate_scenario(doc);
    REQUIRE(has_issue(result, "stations[2].role", "must be \"primary-pool\" or \"backup\""));
  }

  SECTION("the short primary spelling is accepted") {
    nlohmann::json doc = kerala_doc();
    doc["stations"][0]["role"] = "primary";
    const ValidationResult result = validate_scenario(doc);
    REQUIRE(result.ok());
    REQUIRE(result.scenario->stations[0].role == StationRole::primary_pool);
  }

  SECTION("field ranges and types") {
    nlohmann::json doc = kerala_doc();
    doc["locations"][0]["area_sqkm"] = -5;
    doc["locations"][1]["criticality"] = 1.5;
    doc["locations"][2].erase("per_area_need");
    doc["locations"][3]["area_sqkm"] = "large";
    doc["stations"][0]["capacity"] = -1;
    doc["vehicle"]["speed_kmph"] = 0;
    const ValidationResult result = validate_scenario(doc);
    REQUIRE_FALSE(result.ok());
    REQUIRE(has_issue(result, "locations[0].area_sqkm", "must be positive"));
    REQUIRE(has_issue(result, "locations[1].criticality", "must lie in (0, 1]"));
    REQUIRE(has_issue(result, "locations[2].per_area_need", "missing required field"));
    REQUIRE(has_issue(result, "locations[3].area_sqkm", "must be a number"));
    REQUIRE(has_issue(result, "stations[0].capacity", "must be non-negative"));
    REQUIRE(has_issue(result, "vehicle.speed_kmph", "must be positive"));
    REQUIRE(result.issues.size() == 6);
  }

  SECTION("missing top-level sections") {
    const ValidationResult result = validate_scenario(nlohmann::json::object());
    REQUIRE(has_issue(result, "locations", "missing required field"));
    REQUIRE(has_issue(result, "stations", "missing required field"));
    REQUIRE(has_issue(result, "vehicle", "missing required field"));
    REQUIRE(has_issue(result, "alphas", "missing required field"));
  }
}

TEST_CASE("text entry points survive malformed input") {
  SECTION("syntax errors become a single issue") {
    const ValidationResult result = validate_scenario_text("{ not json");
    REQUIRE_FALSE(result.ok());
    REQUIRE(result.issues.size() == 1);
    REQUIRE(result.issues[0].path == "$");
    REQUIRE(result.issues[0].message == "not valid JSON");
  }

  SECTION("a non-object document is rejected") {
    const ValidationResult result = validate_scenario_text("[1, 2, 3]");
    REQUIRE(has_issue(result, "$", "must be a JSON object"));
  }
}

TEST_CASE("stations are ordered by distance with the backup pinned last") {
  const Scenario s = kerala_scenario();

  auto ids = [](const std::vector<ResourceStation>& stations) {
    std::vector<std::string> out;
    for (const auto& st : stations) out.push_back(st.id);
    return out;
  };

  REQUIRE(ids(sorted_stations(s.locations[0], s.stations)) ==
          std::vector<std::string>{"RS1", "RS2", "RS3"});
  REQUIRE(ids(sorted_stations(s.locations[3], s.stations)) ==
          std::vector<std::string>{"RS2", "RS1", "RS3"});

  SECTION("the backup stays last even when it is nearest") {
    CrisisLocation loc = s.locations[0];
    loc.distances_km["RS3"] = 10.0;
    REQUIRE(ids(sorted_stations(loc, s.stations)) ==
            std::vector<std::string>{"RS1", "RS2", "RS3"});
  }

  SECTION("distance ties break by station id") {
    CrisisLocation loc = s.locations[0];
    loc.distances_km["RS1"] = 150.0;
    loc.distances_km["RS2"] = 150.0;
    REQUIRE(ids(sorted_stations(loc, s.stations)) ==
            std::vector<std::string>{"RS1", "RS2", "RS3"});
  }
}

TEST_CASE("locations group under their nearest primary station") {
  const Scenario s = kerala_scenario();
  const std::vector<ContentionGroup> groups = contention_groups(s);

  REQUIRE(groups.size() == 2);

  const ContentionGroup& rs1 = groups[0];
  REQUIRE(rs1.station.id == "RS1");
  REQUIRE(rs1.members.size() == 2);
  REQUIRE(rs1.members[0].location.id == "P1");
  REQUIRE(rs1.members[0].need == 3);
  REQUIRE(rs1.members[0].player.dist_primary_km == 70.0);
  REQUIRE(rs1.members[0].player.dist_backup_km == 650.0);
  REQUIRE(rs1.members[1].location.id == "P2");
  REQUIRE(rs1.members[1].need == 7);
  REQUIRE(rs1.members[1].player.dist_primary_km == 100.0);
  REQUIRE(rs1.members[1].player.dist_backup_km == 500.0);
  REQUIRE(rs1.total_demand == 10);
  REQUIRE(rs1.contested);

  const ContentionGroup& rs2 = groups[1];
  REQUIRE(rs2.station.id == "RS2");
  REQUIRE(rs2.members[0].location.id == "P3");
  REQUIRE(rs2.members[0].need == 7);
  REQUIRE(rs2.members[1].location.id == "P4");
  REQUIRE(rs2.members[1].need == 4);
  REQUIRE(rs2.members[1].player.dist_primary_km == 130.0);
  REQUIRE(rs2.total_demand == 11);
  REQUIRE(rs2.contested);

  SECTION("ample capacity removes contention but not the grouping") {
    Scenario relaxed = s;
    for (auto& station : relaxed.stations) station.capacity = 20;
    const auto groups2 = contention_groups(relaxed);
    REQUIRE(groups2.size() == 2);
    REQUIRE_FALSE(groups2[0].contested);
    REQUIRE_FALSE(groups2[1].contested);
    REQUIRE(groups2[0].total_demand == 10);
  }

  SECTION("three locations at one station exceed the pairwise model") {
    nlohmann::json doc = kerala_doc();
    nlohmann::json extra = doc["locations"][0];
    extra["id"] = "P5";
    doc["locations"].push_back(extra);
    const ValidationResult result = validate_scenario(doc);
    REQUIRE(result.ok());
    try {
      contention_groups(*result.scenario);
      FAIL("expected a throw");
    } catch (const error& e) {
      REQUIRE(e.code() == errc::unsupported_arity);
      REQUIRE(std::string(e.what()).find("RS1") != std::string::npos);
    }
  }

  SECTION("a backup-only station list cannot host any location") {
    Scenario broken = s;
    broken.stations = {{"RS3", 6, StationRole::backup}};
    REQUIRE_THROWS_AS(contention_groups(broken), error);
  }
}
