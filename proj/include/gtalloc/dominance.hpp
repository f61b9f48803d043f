#pragma once

// Equilibrium selection: payoff dominance, pairwise risk dominance on 2x2
// restrictions, and a round-robin tournament that reduces a PSNE set to a
// single profile.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtalloc/errors.hpp"
#include "gtalloc/game.hpp"

namespace gtalloc {

enum class SelectionMethod {
  unique,
  payoff_dominance,
  risk_dominance_tournament,
  total_cost_tiebreak,
  lexicographic_tiebreak,
};

inline std::string to_string(SelectionMethod method) {
  switch (method) {
    case SelectionMethod::unique:
      return "unique";
    case SelectionMethod::payoff_dominance:
      return "payoff-dominance";
    case SelectionMethod::risk_dominance_tournament:
      return "risk-dominance-tournament";
    case SelectionMethod::total_cost_tiebreak:
      return "total-cost-tiebreak";
    case SelectionMethod::lexicographic_tiebreak:
      return "lexicographic-tiebreak";
  }
  throw error(errc::invalid_argument, "unknown selection method");
}

// Outcome of comparing one pair of equilibria on their 2x2 restriction.
// risk_dominant is absent exactly when the Nash products tie within
// kDeviationTol.
struct DominanceVerdict {
  std::pair<StrategyProfile, StrategyProfile> pair;
  std::optional<StrategyProfile> payoff_dominant;
  std::optional<StrategyProfile> risk_dominant;
  double nash_product_first = 0.0;
  double nash_product_second = 0.0;
};

struct SelectionResult {
  StrategyProfile selected;
  SelectionMethod method = SelectionMethod::unique;
  std::vector<DominanceVerdict> verdicts;
  // Pairs whose restriction is not 2x2 (shared coordinate); no verdict.
  std::vector<std::pair<StrategyProfile, StrategyProfile>> incomparable_pairs;
};

namespace detail {

// a dominates b when a is no worse on both components (within tolerance) and
// strictly better on at least one.
inline bool cost_pair_dominates(std::pair<double, double> a, std::pair<double, double> b) {
  const bool no_worse =
      a.first <= b.first + kDeviationTol && a.second <= b.second + kDeviationTol;
  const bool some_better =
      a.first < b.first - kDeviationTol || a.second < b.second - kDeviationTol;
  return no_worse && some_better;
}

}  // namespace detail

// The equilibrium whose cost pair dominates every other equilibrium's, or
// absent when none does. A singleton list is vacuously dominant.
inline std::optional<StrategyProfile> payoff_dominant(const CostGame& game,
                                                      const std::vector<StrategyProfile>& equilibria) {
  if (equilibria.empty())
    throw error(errc::no_equilibrium, "payoff dominance needs at least one equilibrium");
  for (const StrategyProfile& candidate : equilibria) {
    const auto candidate_costs = game.costs_at(candidate);
    bool dominates_all = true;
    for (const StrategyProfile& other : equilibria) {
      if (other == candidate) continue;
      if (!detail::cost_pair_dominates(candidate_costs, game.costs_at(other))) {
        dominates_all = false;
        break;
      }
    }
    if (dominates_all) return candidate;
  }
  return std::nullopt;
}

// The 2x2 subgame over the two profiles' strategies, ordered so e1 sits at
// cell (0, 0) and e2 at (1, 1). Requires the profiles to differ in both
// coordinates.
inline CostGame restrict_2x2(const CostGame& game, const StrategyProfile& e1,
                             const StrategyProfile& e2) {
  if (e1.d1 == e2.d1 || e1.d2 == e2.d2)
    throw error(errc::restriction_degenerate,
                "2x2 restriction needs profiles that differ in both coordinates");
  const std::size_t rows[2] = {game.index_p1(e1.d1), game.index_p1(e2.d1)};
  const std::size_t cols[2] = {game.index_p2(e1.d2), game.index_p2(e2.d2)};
  std::vector<std::vector<double>> c1(2, std::vector<double>(2));
  std::vector<std::vector<double>> c2(2, std::vector<double>(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      c1[i][j] = game.cost_p1(rows[i], cols[j]);
      c2[i][j] = game.cost_p2(rows[i], cols[j]);
    }
  return CostGame(CostGame::keep_order, {e1.d1, e2.d1}, {e1.d2, e2.d2}, std::move(c1),
                  std::move(c2), game.label_p1(), game.label_p2());
}

// Nash products of a 2x2 restriction whose diagonal holds two equilibria.
// With row-player costs A C / B D and column-player costs a b / c d, the
// diagonal profile at (0, 0) scores (A - B)(a - b) and the one at (1, 1)
// scores (D - C)(d - c).
struct NashProducts {
  double first = 0.0;
  double second = 0.0;
};

inline NashProducts nash_products(const CostGame& sub) {
  if (sub.rows() != 2 || sub.cols() != 2)
    throw error(errc::not_applicable, "Nash products are defined for 2x2 games only");
  const double A = sub.cost_p1(0, 0), C = sub.cost_p1(0, 1);
  const double B = sub.cost_p1(1, 0), D = sub.cost_p1(1, 1);
  const double a = sub.cost_p2(0, 0), b = sub.cost_p2(0, 1);
  const double c = sub.cost_p2(1, 0), d = sub.cost_p2(1, 1);
  return {(A - B) * (a - b), (D - C) * (d - c)};
}

// The diagonal profile with the strictly larger Nash product; absent when
// the products tie within kDeviationTol. Both diagonal profiles must be
// equilibria of the subgame.
inline std::optional<StrategyProfile> risk_dominant(const CostGame& sub) {
  if (sub.rows() != 2 || sub.cols() != 2)
    throw error(errc::not_applicable, "risk dominance is defined for 2x2 games only");
  const StrategyProfile first = sub.profile_at(0, 0);
  const StrategyProfile second = sub.profile_at(1, 1);
  if (!is_psne(sub, first) || !is_psne(sub, second))
    throw error(errc::not_applicable, "risk dominance needs both diagonal profiles in equilibrium");
  const NashProducts np = nash_products(sub);
  if (std::fabs(np.first - np.second) <= kDeviationTol) return std::nullopt;
  return np.first > np.second ? first : second;
}

// Reduces a PSNE set to one profile. Singleton lists win outright; a global
// payoff-dominant equilibrium wins next; otherwise a round-robin risk
// tournament over 2x2 restrictions scores pairwise wins, with ties broken by
// smaller cost sum, then lexicographically by (d1, d2). Every comparable
// pair's verdict is recorded.
inline SelectionResult select_equilibrium(const CostGame& game,
                                          const std::vector<StrategyProfile>& equilibria) {
  if (equilibria.empty())
    throw error(errc::no_equilibrium, "selection needs at least one equilibrium");
  SelectionResult result;
  if (equilibria.size() == 1) {
    result.selected = equilibria.front();
    result.method = SelectionMethod::unique;
    return result;
  }

  if (auto dominant = payoff_dominant(game, equilibria)) {
    result.selected = *dominant;
    result.method = SelectionMethod::payoff_dominance;
    return result;
  }

  std::vector<int> wins(equilibria.size(), 0);
  for (std::size_t i = 0; i < equilibria.size(); ++i)
    for (std::size_t j = i + 1; j < equilibria.size(); ++j) {
      const StrategyProfile& e1 = equilibria[i];
      const StrategyProfile& e2 = equilibria[j];
      if (e1.d1 == e2.d1 || e1.d2 == e2.d2) {
        result.incomparable_pairs.emplace_back(e1, e2);
        continue;
      }
      const CostGame sub = restrict_2x2(game, e1, e2);
      DominanceVerdict verdict;
      verdict.pair = {e1, e2};
      verdict.payoff_dominant = payoff_dominant(sub, {e1, e2});
      const NashProducts np = nash_products(sub);
      verdict.nash_product_first = np.first;
      verdict.nash_product_second = np.second;
      verdict.risk_dominant = risk_dominant(sub);
      if (verdict.risk_dominant == e1) ++wins[i];
      if (verdict.risk_dominant == e2) ++wins[j];
      result.verdicts.push_back(std::move(verdict));
    }

  const int best_wins = *std::max_element(wins.begin(), wins.end());
  std::vector<std::size_t> leaders;
  for (std::size_t i = 0; i < equilibria.size(); ++i)
    if (wins[i] == best_wins) leaders.push_back(i);
  if (leaders.size() == 1) {
    result.selected = equilibria[leaders.front()];
    result.method = SelectionMethod::risk_dominance_tournament;
    return result;
  }

  double best_sum = std::numeric_limits<double>::infinity();
  for (std::size_t idx : leaders) {
    const auto costs = game.costs_at(equilibria[idx]);
    best_sum = std::min(best_sum, costs.first + costs.second);
  }
  std::vector<StrategyProfile> cheapest;
  for (std::size_t idx : leaders) {
    const auto costs = game.costs_at(equilibria[idx]);
    if (costs.first + costs.second <= best_sum + kDeviationTol)
      cheapest.push_back(equilibria[idx]);
  }
  if (cheapest.size() == 1) {
    result.selected = cheapest.front();
    result.method = SelectionMethod::total_cost_tiebreak;
    return result;
  }

  result.selected = *std::min_element(cheapest.begin(), cheapest.end());
  result.method = SelectionMethod::lexicographic_tiebreak;
  return result;
}

}  // namespace gtalloc
