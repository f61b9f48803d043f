#pragma once

// Requirement and cost arithmetic for one contested station: response time,
// fuel, the mutual penalty with its conflict terms, and assembly of the full
// cost matrices for a two-player game.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "gtalloc/errors.hpp"
#include "gtalloc/game.hpp"

namespace gtalloc {

struct VehicleProfile {
  double speed_kmph = 0.0;
  double fuel_rate_kl_per_km = 0.0;

  friend bool operator==(const VehicleProfile&, const VehicleProfile&) = default;
};

inline void validate(const VehicleProfile& vehicle) {
  if (!(vehicle.speed_kmph > 0.0) || !(vehicle.fuel_rate_kl_per_km > 0.0))
    throw error(errc::invalid_argument, "vehicle speed and fuel rate must be positive");
}

// One player's demand context: total units needed and road distances to its
// primary and backup stations.
struct PlayerNeed {
  int need = 0;
  double dist_primary_km = 0.0;
  double dist_backup_km = 0.0;
};

inline void validate(const PlayerNeed& player) {
  if (player.need < 0) throw error(errc::invalid_argument, "need must be non-negative");
  if (!(player.dist_primary_km > 0.0) || !(player.dist_backup_km > 0.0))
    throw error(errc::invalid_argument, "station distances must be positive");
}

struct AlphaWeights {
  double time = 0.0;
  double fuel = 0.0;
  double penalty = 0.0;

  friend bool operator==(const AlphaWeights&, const AlphaWeights&) = default;
};

inline void validate(const AlphaWeights& alphas) {
  if (alphas.time < 0.0 || alphas.fuel < 0.0 || alphas.penalty < 0.0)
    throw error(errc::invalid_argument, "alpha weights must be non-negative");
  if (std::fabs(alphas.time + alphas.fuel + alphas.penalty - 1.0) > 1e-9)
    throw error(errc::invalid_argument, "alpha weights must sum to 1");
}

// Unit counts at the station the two players share, plus the backup pool
// that absorbs deficiencies.
struct StationContext {
  int availability = 0;
  int backup_availability = 0;
};

inline void validate(const StationContext& station) {
  if (station.availability < 0 || station.backup_availability < 0)
    throw error(errc::invalid_argument, "station availabilities must be non-negative");
}

// Units a location requires: ceiling of area x criticality x per-area need.
// The product is nudged down by 1e-9 before the ceiling so decimal inputs
// whose product is a whole number do not round up an extra unit.
inline int requirement(double area_sqkm, double criticality, double per_area_need) {
  if (!(area_sqkm > 0.0)) throw error(errc::invalid_argument, "area must be positive");
  if (!(criticality > 0.0) || criticality > 1.0)
    throw error(errc::invalid_argument, "criticality must lie in (0, 1]");
  if (!(per_area_need > 0.0))
    throw error(errc::invalid_argument, "per-area need must be positive");
  const double product = area_sqkm * criticality * per_area_need;
  const int units = static_cast<int>(std::ceil(product - 1e-9));
  return std::max(units, 1);
}

namespace detail {

inline void check_demand(int d, const PlayerNeed& player) {
  if (d < 0 || d > player.need)
    throw error(errc::invalid_argument,
                "demand " + std::to_string(d) + " outside [0, need=" +
                    std::to_string(player.need) + "]");
}

}  // namespace detail

// Hours until the last unit arrives: primary-station travel time when the
// full need is demanded there, backup travel time whenever a deficiency is
// drawn. Zero when nothing is needed.
inline double response_time_cost(int d, const PlayerNeed& player, const VehicleProfile& vehicle) {
  validate(player);
  validate(vehicle);
  detail::check_demand(d, player);
  if (player.need == 0) return 0.0;
  const double dist = d == player.need ? player.dist_primary_km : player.dist_backup_km;
  return dist / vehicle.speed_kmph;
}

// Kilolitres across all dispatched units: d trips from the primary station
// plus (need - d) trips from the backup.
inline double fuel_cost(int d, const PlayerNeed& player, const VehicleProfile& vehicle) {
  validate(player);
  validate(vehicle);
  detail::check_demand(d, player);
  const double primary = static_cast<double>(d) * player.dist_primary_km;
  const double backup = static_cast<double>(player.need - d) * player.dist_backup_km;
  return (primary + backup) * vehicle.fuel_rate_kl_per_km;
}

// Units left idle at the station after both demands are served; zero once
// joint demand reaches availability.
inline int conflict_surplus(int x, int y, int z) { return x - y - z >= 0 ? x - y - z : 0; }

// Units of joint over-demand; zero while the station can cover both demands.
inline int conflict_excess(int x, int y, int z) { return x - y - z <= 0 ? y + z - x : 0; }

// Dimensionless penalty on `self` for the joint demand (d_self, d_other):
// idle-capacity charge scaled by own dissatisfaction, own dissatisfaction,
// the squeeze imposed on the other player, and a conflict share proportional
// to relative demand intensity. The third term can go negative when the
// leftover capacity exceeds the other player's need.
inline double mutual_penalty(int d_self, int d_other, const PlayerNeed& self,
                             const PlayerNeed& other, const StationContext& station) {
  validate(self);
  validate(other);
  validate(station);
  if (self.need == 0 || other.need == 0)
    throw error(errc::excluded_player, "zero-need players do not participate in a station game");
  detail::check_demand(d_self, self);
  detail::check_demand(d_other, other);

  const double ns = self.need;
  const double no = other.need;
  const int a = station.availability;
  const double dissatisfaction = (ns - d_self) / ns;
  double penalty = conflict_surplus(a, d_self, d_other) * dissatisfaction;
  penalty += dissatisfaction;
  penalty += (no - (a - d_self)) / no;
  const int excess = conflict_excess(a, d_self, d_other);
  if (excess > 0) {
    const double self_intensity = d_self / ns;
    const double other_intensity = d_other / no;
    penalty += excess * (self_intensity / (self_intensity + other_intensity));
  }
  return penalty;
}

// Weighted total cost for `self` at a joint demand profile.
inline double total_cost(int d_self, int d_other, const PlayerNeed& self, const PlayerNeed& other,
                         const StationContext& station, const VehicleProfile& vehicle,
                         const AlphaWeights& alphas) {
  validate(alphas);
  return alphas.time * response_time_cost(d_self, self, vehicle) +
         alphas.fuel * fuel_cost(d_self, self, vehicle) +
         alphas.penalty * mutual_penalty(d_self, d_other, self, other, station);
}

// Full cost matrices for a contested station. Each player's strategies run
// from 0 through min(need, availability).
inline CostGame build_cost_game(const PlayerNeed& p1, const PlayerNeed& p2,
                                const StationContext& station, const VehicleProfile& vehicle,
                                const AlphaWeights& alphas, std::string label_p1 = "P1",
                                std::string label_p2 = "P2") {
  validate(p1);
  validate(p2);
  validate(station);
  validate(vehicle);
  validate(alphas);
  if (p1.need == 0 || p2.need == 0)
    throw error(errc::empty_game, "a station game needs two players with positive need");

  std::vector<int> strategies_p1;
  for (int d = 0; d <= std::min(p1.need, station.availability); ++d) strategies_p1.push_back(d);
  std::vector<int> strategies_p2;
  for (int d = 0; d <= std::min(p2.need, station.availability); ++d) strategies_p2.push_back(d);

  std::vector<std::vector<double>> c1(strategies_p1.size(),
                                      std::vector<double>(strategies_p2.size()));
  std::vector<std::vector<double>> c2(strategies_p1.size(),
                                      std::vector<double>(strategies_p2.size()));
  for (std::size_t i = 0; i < strategies_p1.size(); ++i)
    for (std::size_t j = 0; j < strategies_p2.size(); ++j) {
      const int d1 = strategies_p1[i];
      const int d2 = strategies_p2[j];
      c1[i][j] = total_cost(d1, d2, p1, p2, station, vehicle, alphas);
      c2[i][j] = total_cost(d2, d1, p2, p1, station, vehicle, alphas);
    }

  return CostGame(std::move(strategies_p1), std::move(strategies_p2), std::move(c1), std::move(c2),
                  std::move(label_p1), std::move(label_p2));
}

}  // namespace gtalloc
