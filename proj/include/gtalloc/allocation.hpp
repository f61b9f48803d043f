#pragma once

// Plan assembly: solve each contention group, realize demands as station
// draws, route deficiencies through the backup station, and check
// feasibility.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtalloc/cost_model.hpp"
#include "gtalloc/dominance.hpp"
#include "gtalloc/errors.hpp"
#include "gtalloc/game.hpp"
#include "gtalloc/scenario.hpp"

namespace gtalloc {

struct Draw {
  std::string location_id;
  std::string station_id;
  int units = 0;

  friend bool operator==(const Draw&, const Draw&) = default;
};

// Everything the solver learned about one station's group, kept for
// reporting: the game (when one was played), its equilibria with cost
// pairs, how a profile was chosen, and the demands finally realized.
struct StationSolution {
  std::string station_id;
  std::vector<std::string> player_ids;
  bool game_played = false;
  std::optional<CostGame> game;
  std::vector<StrategyProfile> equilibria;
  std::vector<std::pair<double, double>> equilibrium_costs;
  std::optional<SelectionResult> selection;
  bool used_msne = false;
  std::optional<MixedProfile> mixed;
  bool msne_degenerate = false;
  // Selected profile exceeded capacity and was replaced by the cheapest
  // feasible cell.
  bool capacity_fallback = false;
  std::vector<int> primary_draws;
  std::vector<double> player_costs;
};

struct AllocationPlan {
  std::vector<Draw> draws;
  std::map<std::string, double> per_player_cost;
  std::map<std::string, SelectionResult> selection;
  int backup_shortfall = 0;
  bool feasible = true;
  std::vector<StationSolution> stations;
  AlphaWeights alphas;
};

namespace detail {

// Cheapest capacity-feasible cell by cost sum, ties broken lexicographically
// by (d1, d2). (0, 0) is always feasible, so this never fails.
inline StrategyProfile cheapest_feasible_cell(const CostGame& game, int capacity) {
  std::optional<StrategyProfile> best;
  double best_sum = 0.0;
  for (std::size_t i = 0; i < game.rows(); ++i)
    for (std::size_t j = 0; j < game.cols(); ++j) {
      const StrategyProfile cell = game.profile_at(i, j);
      if (cell.d1 + cell.d2 > capacity) continue;
      const double sum = game.cost_p1(i, j) + game.cost_p2(i, j);
      if (!best || sum < best_sum - kDeviationTol ||
          (sum <= best_sum + kDeviationTol && cell < *best)) {
        best = cell;
        best_sum = sum;
      }
    }
  if (!best) throw error(errc::internal_consistency, "no capacity-feasible cell exists");
  return *best;
}

// Most probable pure profile under the mix, ties broken lexicographically.
inline StrategyProfile most_probable_cell(const CostGame& game, const MixedProfile& mixed) {
  StrategyProfile best = game.profile_at(0, 0);
  double best_mass = -1.0;
  for (std::size_t i = 0; i < game.rows(); ++i)
    for (std::size_t j = 0; j < game.cols(); ++j) {
      const double mass = mixed.p1_weights[i] * mixed.p2_weights[j];
      const StrategyProfile cell = game.profile_at(i, j);
      if (mass > best_mass + kProbabilityTol ||
          (mass > best_mass - kProbabilityTol && cell < best)) {
        best = cell;
        best_mass = mass;
      }
    }
  return best;
}

}  // namespace detail

// Solves a validated scenario into an allocation plan. Uncontested groups
// allocate directly; contested pairs play the station game; a lone
// contested player takes what the station holds. Deficiencies draw from the
// backup station in group order, members ordered by need descending.
inline AllocationPlan solve(const Scenario& scenario) {
  validate(scenario.vehicle);
  validate(scenario.alphas);

  AllocationPlan plan;
  plan.alphas = scenario.alphas;

  const ResourceStation* backup = nullptr;
  for (const auto& station : scenario.stations)
    if (station.role == StationRole::backup) backup = &station;
  const int backup_capacity = backup ? backup->capacity : 0;

  const std::vector<ContentionGroup> groups = contention_groups(scenario);

  struct Deficiency {
    std::string location_id;
    int units = 0;
  };
  std::vector<Deficiency> deficiencies;

  for (const ContentionGroup& group : groups) {
    StationSolution solution;
    solution.station_id = group.station.id;
    for (const GroupMember& member : group.members) solution.player_ids.push_back(member.location.id);

    if (!group.contested) {
      for (const GroupMember& member : group.members) {
        solution.primary_draws.push_back(member.need);
        const double cost =
            scenario.alphas.time * response_time_cost(member.need, member.player, scenario.vehicle) +
            scenario.alphas.fuel * fuel_cost(member.need, member.player, scenario.vehicle);
        solution.player_costs.push_back(cost);
      }
    } else if (group.members.size() == 1) {
      const GroupMember& member = group.members.front();
      const int drawn = std::min(member.need, group.station.capacity);
      solution.primary_draws.push_back(drawn);
      const double cost =
          scenario.alphas.time * response_time_cost(drawn, member.player, scenario.vehicle) +
          scenario.alphas.fuel * fuel_cost(drawn, member.player, scenario.vehicle);
      solution.player_costs.push_back(cost);
    } else {
      const GroupMember& first = group.members[0];
      const GroupMember& second = group.members[1];
      const StationContext context{group.station.capacity, backup_capacity};
      CostGame game = build_cost_game(first.player, second.player, context, scenario.vehicle,
                                      scenario.alphas, first.location.id, second.location.id);
      solution.game_played = true;
      solution.equilibria = find_psne(game);
      for (const StrategyProfile& eq : solution.equilibria)
        solution.equilibrium_costs.push_back(game.costs_at(eq));

      StrategyProfile realized;
      double cost_first = 0.0;
      double cost_second = 0.0;
      if (!solution.equilibria.empty()) {
        SelectionResult selection = select_equilibrium(game, solution.equilibria);
        realized = selection.selected;
        std::tie(cost_first, cost_second) = game.costs_at(realized);
        solution.selection = std::move(selection);
      } else {
        MixedSolveResult mixed_result = find_msne_2x2_plus(game);
        solution.used_msne = true;
        solution.msne_degenerate = mixed_result.degenerate;
        std::size_t best = 0;
        double best_sum = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < mixed_result.equilibria.size(); ++k) {
          const MixedProfile& candidate = mixed_result.equilibria[k];
          const double sum = expected_cost(game, candidate, 1) + expected_cost(game, candidate, 2);
          if (sum < best_sum - kDeviationTol) {
            best = k;
            best_sum = sum;
          }
        }
        const MixedProfile& chosen = mixed_result.equilibria[best];
        cost_first = expected_cost(game, chosen, 1);
        cost_second = expected_cost(game, chosen, 2);
        realized = detail::most_probable_cell(game, chosen);
        solution.mixed = chosen;
      }

      if (realized.d1 + realized.d2 > group.station.capacity) {
        realized = detail::cheapest_feasible_cell(game, group.station.capacity);
        std::tie(cost_first, cost_second) = game.costs_at(realized);
        solution.capacity_fallback = true;
        SelectionResult fallback;
        fallback.selected = realized;
        fallback.method = SelectionMethod::total_cost_tiebreak;
        if (solution.selection) fallback.verdicts = std::move(solution.selection->verdicts);
        solution.selection = std::move(fallback);
      }

      solution.primary_draws = {realized.d1, realized.d2};
      solution.player_costs = {cost_first, cost_second};
      if (solution.selection) plan.selection[group.station.id] = *solution.selection;
      solution.game = std::move(game);
    }

    // Primary draws and deficiencies, members by need descending for the
    // backup queue (stable, so declaration order breaks ties).
    for (std::size_t k = 0; k < group.members.size(); ++k) {
      const GroupMember& member = group.members[k];
      const int drawn = solution.primary_draws[k];
      if (drawn > 0) plan.draws.push_back({member.location.id, group.station.id, drawn});
      plan.per_player_cost[member.location.id] = solution.player_costs[k];
    }
    std::vector<std::size_t> order(group.members.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return group.members[a].need > group.members[b].need;
    });
    for (std::size_t k : order) {
      const int unmet = group.members[k].need - solution.primary_draws[k];
      if (unmet > 0) deficiencies.push_back({group.members[k].location.id, unmet});
    }

    plan.stations.push_back(std::move(solution));
  }

  int backup_left = backup_capacity;
  int total_unmet = 0;
  for (const Deficiency& deficiency : deficiencies) {
    total_unmet += deficiency.units;
    const int granted = std::min(deficiency.units, backup_left);
    if (granted > 0 && backup) {
      plan.draws.push_back({deficiency.location_id, backup->id, granted});
      backup_left -= granted;
    }
  }
  plan.backup_shortfall = std::max(0, total_unmet - backup_capacity);
  plan.feasible = plan.backup_shortfall == 0;
  return plan;
}

}  // namespace gtalloc
