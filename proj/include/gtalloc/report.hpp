#pragma once

// Deterministic renderings of an allocation plan: a human table mirroring
// the equilibrium/cost layout, a draws CSV, and JSON lines for tooling.
// Real values are rounded to 5 decimals in every format.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "gtalloc/allocation.hpp"
#include "gtalloc/errors.hpp"

namespace gtalloc {

enum class OutputFormat { table, csv, json_lines };

inline OutputFormat parse_output_format(const std::string& name) {
  if (name == "table") return OutputFormat::table;
  if (name == "csv") return OutputFormat::csv;
  if (name == "json-lines") return OutputFormat::json_lines;
  throw error(errc::invalid_argument,
              "unknown format \"" + name + "\" (expected table, csv, or json-lines)");
}

namespace detail {

// Rounds to 5 decimals, normalizing negative zero.
inline double round5(double value) {
  double r = std::round(value * 1e5) / 1e5;
  if (r == 0.0) r = 0.0;
  return r;
}

inline std::string fmt5(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.5f", round5(value));
  return buffer;
}

inline std::string fmt_profile(const StrategyProfile& profile) {
  return "(" + std::to_string(profile.d1) + ", " + std::to_string(profile.d2) + ")";
}

inline std::string fmt_cost_pair(const std::pair<double, double>& costs) {
  return "(" + fmt5(costs.first) + ", " + fmt5(costs.second) + ")";
}

inline std::string fmt_mixed_side(const std::vector<int>& strategies,
                                  const std::vector<double>& weights) {
  std::string out;
  for (std::size_t k = 0; k < strategies.size(); ++k) {
    if (weights[k] <= kProbabilityTol) continue;
    if (!out.empty()) out += " ";
    out += std::to_string(strategies[k]) + ":" + fmt5(weights[k]);
  }
  return out.empty() ? "-" : out;
}

inline std::string render_table(const AllocationPlan& plan) {
  std::string out = "Allocation report\n";
  out += "alphas: time=" + fmt5(plan.alphas.time) + " fuel=" + fmt5(plan.alphas.fuel) +
         " penalty=" + fmt5(plan.alphas.penalty) + "\n";

  for (const StationSolution& station : plan.stations) {
    out += "\nStation " + station.station_id;
    if (!station.game_played) {
      out += " (";
      for (std::size_t k = 0; k < station.player_ids.size(); ++k) {
        if (k) out += ", ";
        out += station.player_ids[k];
      }
      out += "): direct allocation\n";
      continue;
    }
    out += " (" + station.player_ids[0] + " vs " + station.player_ids[1] + ")\n";
    out += "  equilibrium | costs\n";
    for (std::size_t k = 0; k < station.equilibria.size(); ++k)
      out += "  " + fmt_profile(station.equilibria[k]) + " | " +
             fmt_cost_pair(station.equilibrium_costs[k]) + "\n";
    if (station.used_msne) {
      out += "  no pure equilibrium; mixed equilibrium (expected costs reported)\n";
      out += "  " + station.player_ids[0] + " mix: " +
             fmt_mixed_side(station.game->strategies_p1(), station.mixed->p1_weights) + "\n";
      out += "  " + station.player_ids[1] + " mix: " +
             fmt_mixed_side(station.game->strategies_p2(), station.mixed->p2_weights) + "\n";
      if (station.msne_degenerate) out += "  note: degenerate support, representative shown\n";
      out += "  realized as most probable profile: " +
             fmt_profile({station.primary_draws[0], station.primary_draws[1]}) + "\n";
    }
    if (station.selection) {
      out += "  selected: " + fmt_profile(station.selection->selected) + " via " +
             to_string(station.selection->method);
      if (station.capacity_fallback) out += " (capacity fallback)";
      out += "\n";
    }
  }

  if (!plan.draws.empty()) {
    out += "\nDraws\n";
    out += "  location | station | units\n";
    for (const Draw& draw : plan.draws)
      out += "  " + draw.location_id + " | " + draw.station_id + " | " +
             std::to_string(draw.units) + "\n";
  }

  out += "\nbackup shortfall: " + std::to_string(plan.backup_shortfall) + "\n";
  out += "feasible: " + std::string(plan.feasible ? "yes" : "no") + "\n";
  return out;
}

inline std::string render_csv(const AllocationPlan& plan) {
  std::string out = "location,station,units\n";
  for (const Draw& draw : plan.draws)
    out += draw.location_id + "," + draw.station_id + "," + std::to_string(draw.units) + "\n";
  return out;
}

inline std::string render_json_lines(const AllocationPlan& plan) {
  std::string out;
  {
    nlohmann::json meta;
    meta["kind"] = "meta";
    meta["alphas"] = {{"time", round5(plan.alphas.time)},
                      {"fuel", round5(plan.alphas.fuel)},
                      {"penalty", round5(plan.alphas.penalty)}};
    out += meta.dump() + "\n";
  }
  for (const StationSolution& station : plan.stations) {
    nlohmann::json line;
    line["kind"] = "station";
    line["station"] = station.station_id;
    line["players"] = station.player_ids;
    line["game_played"] = station.game_played;
    if (station.game_played) {
      auto equilibria = nlohmann::json::array();
      for (std::size_t k = 0; k < station.equilibria.size(); ++k)
        equilibria.push_back({{"profile", {station.equilibria[k].d1, station.equilibria[k].d2}},
                              {"costs",
                               {round5(station.equilibrium_costs[k].first),
                                round5(station.equilibrium_costs[k].second)}}});
      line["equilibria"] = equilibria;
      line["used_msne"] = station.used_msne;
      if (station.mixed) {
        auto weights = [](const std::vector<double>& values) {
          auto arr = nlohmann::json::array();
          for (double v : values) arr.push_back(round5(v));
          return arr;
        };
        line["mixed"] = {{"p1_weights", weights(station.mixed->p1_weights)},
                         {"p2_weights", weights(station.mixed->p2_weights)},
                         {"degenerate", station.msne_degenerate}};
      }
      if (station.selection) {
        line["selected"] = {station.selection->selected.d1, station.selection->selected.d2};
        line["method"] = to_string(station.selection->method);
      }
      line["capacity_fallback"] = station.capacity_fallback;
    }
    line["primary_draws"] = station.primary_draws;
    auto costs = nlohmann::json::array();
    for (double c : station.player_costs) costs.push_back(round5(c));
    line["player_costs"] = costs;
    out += line.dump() + "\n";
  }
  for (const Draw& draw : plan.draws) {
    nlohmann::json line;
    line["kind"] = "draw";
    line["location"] = draw.location_id;
    line["station"] = draw.station_id;
    line["units"] = draw.units;
    out += line.dump() + "\n";
  }
  {
    nlohmann::json summary;
    summary["kind"] = "summary";
    summary["backup_shortfall"] = plan.backup_shortfall;
    summary["feasible"] = plan.feasible;
    out += summary.dump() + "\n";
  }
  return out;
}

}  // namespace detail

inline std::string render_report(const AllocationPlan& plan, OutputFormat format) {
  switch (format) {
    case OutputFormat::table:
      return detail::render_table(plan);
    case OutputFormat::csv:
      return detail::render_csv(plan);
    case OutputFormat::json_lines:
      return detail::render_json_lines(plan);
  }
  throw error(errc::invalid_argument, "unknown output format");
}

}  // namespace gtalloc
