#pragma once

// Scenario ingestion: parse a JSON scenario document, report every
// validation violation with a field path, order stations per location, and
// group positive-need locations under their nearest primary station.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gtalloc/cost_model.hpp"
#include "gtalloc/errors.hpp"

namespace gtalloc {

struct CrisisLocation {
  std::string id;
  double area_sqkm = 0.0;
  double criticality = 0.0;
  double per_area_need = 0.0;
  std::map<std::string, double> distances_km;

  friend bool operator==(const CrisisLocation&, const CrisisLocation&) = default;
};

enum class StationRole { primary_pool, backup };

inline std::string to_string(StationRole role) {
  return role == StationRole::backup ? "backup" : "primary-pool";
}

struct ResourceStation {
  std::string id;
  int capacity = 0;
  StationRole role = StationRole::primary_pool;

  friend bool operator==(const ResourceStation&, const ResourceStation&) = default;
};

struct Scenario {
  std::vector<CrisisLocation> locations;
  std::vector<ResourceStation> stations;
  VehicleProfile vehicle;
  AlphaWeights alphas;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ValidationIssue {
  std::string path;
  std::string message;
};

// Either a usable scenario or the complete list of violations; never both.
struct ValidationResult {
  std::optional<Scenario> scenario;
  std::vector<ValidationIssue> issues;

  bool ok() const { return scenario.has_value(); }
};

namespace detail {

inline void issue(std::vector<ValidationIssue>& issues, std::string path, std::string message) {
  issues.push_back({std::move(path), std::move(message)});
}

inline bool read_double(const nlohmann::json& obj, const std::string& key, const std::string& path,
                        std::vector<ValidationIssue>& issues, double& out) {
  if (!obj.contains(key)) {
    issue(issues, path + "." + key, "missing required field");
    return false;
  }
  if (!obj[key].is_number()) {
    issue(issues, path + "." + key, "must be a number");
    return false;
  }
  out = obj[key].get<double>();
  return true;
}

inline bool read_int(const nlohmann::json& obj, const std::string& key, const std::string& path,
                     std::vector<ValidationIssue>& issues, int& out) {
  if (!obj.contains(key)) {
    issue(issues, path + "." + key, "missing required field");
    return false;
  }
  if (!obj[key].is_number_integer()) {
    issue(issues, path + "." + key, "must be an integer");
    return false;
  }
  out = obj[key].get<int>();
  return true;
}

inline bool read_string(const nlohmann::json& obj, const std::string& key, const std::string& path,
                        std::vector<ValidationIssue>& issues, std::string& out) {
  if (!obj.contains(key)) {
    issue(issues, path + "." + key, "missing required field");
    return false;
  }
  if (!obj[key].is_string()) {
    issue(issues, path + "." + key, "must be a string");
    return false;
  }
  out = obj[key].get<std::string>();
  return true;
}

}  // namespace detail

// Validates a parsed scenario document, collecting every violation rather
// than stopping at the first. Malformed structure is reported the same way;
// nothing here throws on bad input.
inline ValidationResult validate_scenario(const nlohmann::json& doc) {
  ValidationResult result;
  auto& issues = result.issues;
  if (!doc.is_object()) {
    detail::issue(issues, "$", "scenario document must be a JSON object");
    return result;
  }

  Scenario scenario;

  if (!doc.contains("locations")) {
    detail::issue(issues, "locations", "missing required field");
  } else if (!doc["locations"].is_array()) {
    detail::issue(issues, "locations", "must be an array");
  } else {
    for (std::size_t i = 0; i < doc["locations"].size(); ++i) {
      const std::string path = "locations[" + std::to_string(i) + "]";
      const auto& entry = doc["locations"][i];
      if (!entry.is_object()) {
        detail::issue(issues, path, "must be an object");
        continue;
      }
      CrisisLocation loc;
      detail::read_string(entry, "id", path, issues, loc.id);
      if (detail::read_double(entry, "area_sqkm", path, issues, loc.area_sqkm) &&
          !(loc.area_sqkm > 0.0))
        detail::issue(issues, path + ".area_sqkm", "must be positive");
      if (detail::read_double(entry, "criticality", path, issues, loc.criticality) &&
          (!(loc.criticality > 0.0) || loc.criticality > 1.0))
        detail::issue(issues, path + ".criticality", "must lie in (0, 1]");
      if (detail::read_double(entry, "per_area_need", path, issues, loc.per_area_need) &&
          !(loc.per_area_need > 0.0))
        detail::issue(issues, path + ".per_area_need", "must be positive");
      if (!entry.contains("distances_km")) {
        detail::issue(issues, path + ".distances_km", "missing required field");
      } else if (!entry["distances_km"].is_object()) {
        detail::issue(issues, path + ".distances_km", "must be an object of station-id to km");
      } else {
        for (const auto& [station_id, value] : entry["distances_km"].items()) {
          if (!value.is_number()) {
            detail::issue(issues, path + ".distances_km." + station_id, "must be a number");
            continue;
          }
          const double km = value.get<double>();
          if (!(km > 0.0))
            detail::issue(issues, path + ".distances_km." + station_id, "must be positive");
          else
            loc.distances_km[station_id] = km;
        }
      }
      scenario.locations.push_back(std::move(loc));
    }
  }

  if (!doc.contains("stations")) {
    detail::issue(issues, "stations", "missing required field");
  } else if (!doc["stations"].is_array()) {
    detail::issue(issues, "stations", "must be an array");
  } else {
    for (std::size_t i = 0; i < doc["stations"].size(); ++i) {
      const std::string path = "stations[" + std::to_string(i) + "]";
      const auto& entry = doc["stations"][i];
      if (!entry.is_object()) {
        detail::issue(issues, path, "must be an object");
        continue;
      }
      ResourceStation station;
      detail::read_string(entry, "id", path, issues, station.id);
      if (detail::read_int(entry, "capacity", path, issues, station.capacity) &&
          station.capacity < 0)
        detail::issue(issues, path + ".capacity", "must be non-negative");
      std::string role;
      if (detail::read_string(entry, "role", path, issues, role)) {
        if (role == "primary-pool" || role == "primary")
          station.role = StationRole::primary_pool;
        else if (role == "backup")
          station.role = StationRole::backup;
        else
          detail::issue(issues, path + ".role", "must be \"primary-pool\" or \"backup\"");
      }
      scenario.stations.push_back(std::move(station));
    }
  }

  if (!doc.contains("vehicle")) {
    detail::issue(issues, "vehicle", "missing required field");
  } else if (!doc["vehicle"].is_object()) {
    detail::issue(issues, "vehicle", "must be an object");
  } else {
    const auto& vehicle = doc["vehicle"];
    if (detail::read_double(vehicle, "speed_kmph", "vehicle", issues,
                            scenario.vehicle.speed_kmph) &&
        !(scenario.vehicle.speed_kmph > 0.0))
      detail::issue(issues, "vehicle.speed_kmph", "must be positive");
    if (detail::read_double(vehicle, "fuel_rate_kl_per_km", "vehicle", issues,
                            scenario.vehicle.fuel_rate_kl_per_km) &&
        !(scenario.vehicle.fuel_rate_kl_per_km > 0.0))
      detail::issue(issues, "vehicle.fuel_rate_kl_per_km", "must be positive");
  }

  if (!doc.contains("alphas")) {
    detail::issue(issues, "alphas", "missing required field");
  } else if (!doc["alphas"].is_object()) {
    detail::issue(issues, "alphas", "must be an object");
  } else {
    const auto& alphas = doc["alphas"];
    bool have_all = true;
    have_all &= detail::read_double(alphas, "time", "alphas", issues, scenario.alphas.time);
    have_all &= detail::read_double(alphas, "fuel", "alphas", issues, scenario.alphas.fuel);
    have_all &= detail::read_double(alphas, "penalty", "alphas", issues, scenario.alphas.penalty);
    if (have_all) {
      if (scenario.alphas.time < 0.0 || scenario.alphas.fuel < 0.0 ||
          scenario.alphas.penalty < 0.0)
        detail::issue(issues, "alphas", "alpha weights must be non-negative");
      else if (std::fabs(scenario.alphas.time + scenario.alphas.fuel + scenario.alphas.penalty -
                         1.0) > 1e-9)
        detail::issue(issues, "alphas", "alpha weights must sum to 1");
    }
  }

  // Cross-cutting checks only make sense once the pieces parsed.
  std::map<std::string, int> location_ids;
  for (const auto& loc : scenario.locations)
    if (!loc.id.empty() && ++location_ids[loc.id] == 2)
      detail::issue(issues, "locations", "duplicate location id " + loc.id);
  std::map<std::string, int> station_ids;
  for (const auto& station : scenario.stations)
    if (!station.id.empty() && ++station_ids[station.id] == 2)
      detail::issue(issues, "stations", "duplicate station id " + station.id);

  int backups = 0;
  int primaries = 0;
  for (const auto& station : scenario.stations)
    (station.role == StationRole::backup ? backups : primaries) += 1;
  if (doc.contains("stations") && doc["stations"].is_array()) {
    if (backups != 1)
      detail::issue(issues, "stations",
                    "exactly one station must have role backup (found " +
                        std::to_string(backups) + ")");
    if (primaries == 0)
      detail::issue(issues, "stations", "at least one primary station is required");
  }

  for (std::size_t i = 0; i < scenario.locations.size(); ++i) {
    const auto& loc = scenario.locations[i];
    for (const auto& station : scenario.stations) {
      if (station.id.empty()) continue;
      if (!loc.distances_km.count(station.id))
        detail::issue(issues, "locations[" + std::to_string(i) + "].distances_km." + station.id,
                      "location " + loc.id + " lacks a distance to station " + station.id);
    }
  }

  if (issues.empty()) result.scenario = std::move(scenario);
  return result;
}

// Parses the text as JSON first; syntax errors become a single issue instead
// of an exception.
inline ValidationResult validate_scenario_text(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    ValidationResult result;
    detail::issue(result.issues, "$", "not valid JSON");
    return result;
  }
  return validate_scenario(doc);
}

// Stations ordered as the location would call on them: primary stations by
// ascending distance (ties by id), the backup station last regardless of
// distance.
inline std::vector<ResourceStation> sorted_stations(const CrisisLocation& loc,
                                                    const std::vector<ResourceStation>& stations) {
  std::vector<ResourceStation> out = stations;
  auto rank = [&](const ResourceStation& s) {
    const auto it = loc.distances_km.find(s.id);
    const double km = it == loc.distances_km.end() ? std::numeric_limits<double>::infinity()
                                                   : it->second;
    return std::tuple(s.role == StationRole::backup ? 1 : 0, km, s.id);
  };
  std::sort(out.begin(), out.end(),
            [&](const ResourceStation& a, const ResourceStation& b) { return rank(a) < rank(b); });
  return out;
}

struct GroupMember {
  CrisisLocation location;
  int need = 0;
  // Distances resolved against the group's station and the backup.
  PlayerNeed player;
};

struct ContentionGroup {
  ResourceStation station;
  std::vector<GroupMember> members;
  int total_demand = 0;
  bool contested = false;
};

// Groups every positive-need location under its nearest primary station.
// Groups appear in station declaration order, members in location
// declaration order. More than two members in one group exceeds the
// pairwise model and is rejected.
inline std::vector<ContentionGroup> contention_groups(const Scenario& scenario) {
  const ResourceStation* backup = nullptr;
  for (const auto& station : scenario.stations)
    if (station.role == StationRole::backup) backup = &station;

  std::map<std::string, ContentionGroup> by_station;
  for (const auto& loc : scenario.locations) {
    const int need = requirement(loc.area_sqkm, loc.criticality, loc.per_area_need);
    if (need == 0) continue;
    const auto ordered = sorted_stations(loc, scenario.stations);
    if (ordered.empty() || ordered.front().role == StationRole::backup)
      throw error(errc::invalid_argument, "no primary station available for " + loc.id);
    const ResourceStation& nearest = ordered.front();

    GroupMember member;
    member.location = loc;
    member.need = need;
    member.player.need = need;
    member.player.dist_primary_km = loc.distances_km.at(nearest.id);
    member.player.dist_backup_km =
        backup ? loc.distances_km.at(backup->id) : member.player.dist_primary_km;

    auto [it, inserted] = by_station.try_emplace(nearest.id);
    if (inserted) it->second.station = nearest;
    it->second.members.push_back(std::move(member));
    it->second.total_demand += need;
  }

  std::vector<ContentionGroup> groups;
  for (const auto& station : scenario.stations) {
    auto it = by_station.find(station.id);
    if (it == by_station.end()) continue;
    ContentionGroup& group = it->second;
    group.contested = group.total_demand > group.station.capacity;
    if (group.members.size() > 2)
      throw error(errc::unsupported_arity,
                  "station " + station.id + " has " + std::to_string(group.members.size()) +
                      " contending locations; the model is pairwise");
    groups.push_back(std::move(group));
  }
  return groups;
}

}  // namespace gtalloc
