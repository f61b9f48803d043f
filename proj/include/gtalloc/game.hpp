#pragma once

// Finite two-player strategic-form cost games: representation plus pure and
// mixed Nash equilibrium enumeration. Players minimize cost.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtalloc/errors.hpp"
#include "gtalloc/linalg.hpp"

namespace gtalloc {

// Strict-improvement tolerance for deviation checks. Cost matrices come from
// decimal arithmetic, so exact ties between cells are common; a deviation
// counts only when it lowers cost by more than this.
inline constexpr double kDeviationTol = 1e-9;
// Supported strategies of a mixed equilibrium must agree on expected cost
// within this bound.
inline constexpr double kIndifferenceTol = 1e-7;
inline constexpr double kProbabilityTol = 1e-9;

// A joint pure strategy, identified by the players' demand levels (units).
struct StrategyProfile {
  int d1 = 0;
  int d2 = 0;

  friend constexpr bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
  // Lexicographic (d1, d2).
  friend constexpr auto operator<=>(const StrategyProfile&, const StrategyProfile&) = default;
};

// A pair of probability vectors over the two players' strategy lists.
struct MixedProfile {
  std::vector<double> p1_weights;
  std::vector<double> p2_weights;

  friend bool operator==(const MixedProfile&, const MixedProfile&) = default;
};

class CostGame {
 public:
  // Strategy lists must be strictly increasing; cost matrices must be
  // |s1| x |s2| with finite entries.
  CostGame(std::vector<int> strategies_p1, std::vector<int> strategies_p2,
           std::vector<std::vector<double>> cost_p1, std::vector<std::vector<double>> cost_p2,
           std::string label_p1 = "P1", std::string label_p2 = "P2")
      : CostGame(keep_order, std::move(strategies_p1), std::move(strategies_p2),
                 std::move(cost_p1), std::move(cost_p2), std::move(label_p1),
                 std::move(label_p2)) {
    for (std::size_t i = 1; i < strategies_p1_.size(); ++i)
      if (strategies_p1_[i] <= strategies_p1_[i - 1])
        throw error(errc::invalid_argument, "player 1 strategy list must be strictly increasing");
    for (std::size_t j = 1; j < strategies_p2_.size(); ++j)
      if (strategies_p2_[j] <= strategies_p2_[j - 1])
        throw error(errc::invalid_argument, "player 2 strategy list must be strictly increasing");
  }

  // 2x2 restrictions order rows/columns so a designated profile sits at cell
  // (0, 0), which need not be increasing. Strategy values must still be
  // distinct per player.
  struct keep_order_t {};
  static constexpr keep_order_t keep_order{};

  CostGame(keep_order_t, std::vector<int> strategies_p1, std::vector<int> strategies_p2,
           std::vector<std::vector<double>> cost_p1, std::vector<std::vector<double>> cost_p2,
           std::string label_p1 = "P1", std::string label_p2 = "P2")
      : strategies_p1_(std::move(strategies_p1)),
        strategies_p2_(std::move(strategies_p2)),
        cost_p1_(std::move(cost_p1)),
        cost_p2_(std::move(cost_p2)),
        label_p1_(std::move(label_p1)),
        label_p2_(std::move(label_p2)) {
    if (strategies_p1_.empty() || strategies_p2_.empty())
      throw error(errc::invalid_argument, "strategy lists must be non-empty");
    for (const auto* strategies : {&strategies_p1_, &strategies_p2_}) {
      auto sorted = *strategies;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw error(errc::invalid_argument, "strategy values must be distinct");
    }
    for (const auto* cost : {&cost_p1_, &cost_p2_}) {
      if (cost->size() != strategies_p1_.size())
        throw error(errc::dimension_mismatch, "cost matrix row count must match |strategies_p1|");
      for (const auto& row : *cost) {
        if (row.size() != strategies_p2_.size())
          throw error(errc::dimension_mismatch,
                      "cost matrix column count must match |strategies_p2|");
        for (double v : row)
          if (!std::isfinite(v)) throw error(errc::invalid_argument, "cost entries must be finite");
      }
    }
  }

  std::size_t rows() const { return strategies_p1_.size(); }
  std::size_t cols() const { return strategies_p2_.size(); }
  const std::vector<int>& strategies_p1() const { return strategies_p1_; }
  const std::vector<int>& strategies_p2() const { return strategies_p2_; }
  double cost_p1(std::size_t i, std::size_t j) const { return cost_p1_[i][j]; }
  double cost_p2(std::size_t i, std::size_t j) const { return cost_p2_[i][j]; }
  const std::string& label_p1() const { return label_p1_; }
  const std::string& label_p2() const { return label_p2_; }

  std::size_t index_p1(int demand) const {
    auto it = std::find(strategies_p1_.begin(), strategies_p1_.end(), demand);
    if (it == strategies_p1_.end())
      throw error(errc::invalid_profile,
                  "demand " + std::to_string(demand) + " is not a strategy of " + label_p1_);
    return static_cast<std::size_t>(it - strategies_p1_.begin());
  }

  std::size_t index_p2(int demand) const {
    auto it = std::find(strategies_p2_.begin(), strategies_p2_.end(), demand);
    if (it == strategies_p2_.end())
      throw error(errc::invalid_profile,
                  "demand " + std::to_string(demand) + " is not a strategy of " + label_p2_);
    return static_cast<std::size_t>(it - strategies_p2_.begin());
  }

  StrategyProfile profile_at(std::size_t i, std::size_t j) const {
    return {strategies_p1_[i], strategies_p2_[j]};
  }

  // (player 1 cost, player 2 cost) at a pure profile.
  std::pair<double, double> costs_at(const StrategyProfile& profile) const {
    const std::size_t i = index_p1(profile.d1);
    const std::size_t j = index_p2(profile.d2);
    return {cost_p1_[i][j], cost_p2_[i][j]};
  }

  friend bool operator==(const CostGame&, const CostGame&) = default;

 private:
  std::vector<int> strategies_p1_;
  std::vector<int> strategies_p2_;
  std::vector<std::vector<double>> cost_p1_;
  std::vector<std::vector<double>> cost_p2_;
  std::string label_p1_;
  std::string label_p2_;
};

// True iff no unilateral deviation by either player strictly lowers that
// player's cost (by more than kDeviationTol).
inline bool is_psne(const CostGame& game, const StrategyProfile& profile) {
  const std::size_t i = game.index_p1(profile.d1);
  const std::size_t j = game.index_p2(profile.d2);
  for (std::size_t alt = 0; alt < game.rows(); ++alt)
    if (game.cost_p1(alt, j) < game.cost_p1(i, j) - kDeviationTol) return false;
  for (std::size_t alt = 0; alt < game.cols(); ++alt)
    if (game.cost_p2(i, alt) < game.cost_p2(i, j) - kDeviationTol) return false;
  return true;
}

// All pure equilibria in lexicographic (d1, d2) order.
inline std::vector<StrategyProfile> find_psne(const CostGame& game) {
  std::vector<StrategyProfile> out;
  for (std::size_t i = 0; i < game.rows(); ++i)
    for (std::size_t j = 0; j < game.cols(); ++j) {
      const StrategyProfile profile = game.profile_at(i, j);
      if (is_psne(game, profile)) out.push_back(profile);
    }
  std::sort(out.begin(), out.end());
  return out;
}

// Bilinear expected cost sum_i sum_j p1_i p2_j cost_player(i, j).
inline double expected_cost(const CostGame& game, const MixedProfile& mixed, int player) {
  if (player != 1 && player != 2)
    throw error(errc::invalid_argument, "player must be 1 or 2");
  if (mixed.p1_weights.size() != game.rows() || mixed.p2_weights.size() != game.cols())
    throw error(errc::dimension_mismatch, "mixed profile dimensions do not match the game");
  double total = 0.0;
  for (std::size_t i = 0; i < game.rows(); ++i)
    for (std::size_t j = 0; j < game.cols(); ++j) {
      const double cell = player == 1 ? game.cost_p1(i, j) : game.cost_p2(i, j);
      total += mixed.p1_weights[i] * mixed.p2_weights[j] * cell;
    }
  return total;
}

struct MixedSolveResult {
  std::vector<MixedProfile> equilibria;
  // Some support admitted a continuum of solutions; entries for such
  // supports are single representatives.
  bool degenerate = false;
};

namespace detail {

// Expected cost of each pure strategy of `player` against the opponent mix.
inline std::vector<double> pure_costs_against(const CostGame& game,
                                              const std::vector<double>& opponent, int player) {
  if (player == 1) {
    std::vector<double> out(game.rows(), 0.0);
    for (std::size_t i = 0; i < game.rows(); ++i)
      for (std::size_t j = 0; j < game.cols(); ++j) out[i] += opponent[j] * game.cost_p1(i, j);
    return out;
  }
  std::vector<double> out(game.cols(), 0.0);
  for (std::size_t j = 0; j < game.cols(); ++j)
    for (std::size_t i = 0; i < game.rows(); ++i) out[j] += opponent[i] * game.cost_p2(i, j);
  return out;
}

// Solves for the weights of `mixer` that make every opponent strategy in
// `opp_support` equally costly. Unknowns: one weight per mixer support
// strategy plus the common opponent cost.
inline std::optional<std::vector<double>> solve_indifference(const CostGame& game,
                                                             const std::vector<std::size_t>& s1,
                                                             const std::vector<std::size_t>& s2,
                                                             int mixer, bool& used_ridge) {
  const auto& mix_support = mixer == 1 ? s1 : s2;
  const auto& opp_support = mixer == 1 ? s2 : s1;
  const std::size_t unknowns = mix_support.size() + 1;

  Matrix a;
  std::vector<double> b;
  a.reserve(opp_support.size() + 1);
  for (std::size_t opp : opp_support) {
    std::vector<double> row(unknowns, 0.0);
    for (std::size_t k = 0; k < mix_support.size(); ++k)
      row[k] = mixer == 1 ? game.cost_p2(mix_support[k], opp) : game.cost_p1(opp, mix_support[k]);
    row[unknowns - 1] = -1.0;
    a.push_back(std::move(row));
    b.push_back(0.0);
  }
  std::vector<double> sum_row(unknowns, 1.0);
  sum_row[unknowns - 1] = 0.0;
  a.push_back(std::move(sum_row));
  b.push_back(1.0);

  if (a.size() == unknowns) {
    if (auto solution = solve_square(a, b)) {
      solution->pop_back();
      return solution;
    }
  }
  used_ridge = true;
  auto solution = solve_least_squares(a, b);
  if (!solution) return std::nullopt;
  solution->pop_back();
  return solution;
}

// Clamps negative round-off, renormalizes, and checks the equilibrium
// conditions: supported strategies indifferent within kIndifferenceTol and
// no off-support strategy cheaper by more than kProbabilityTol.
inline bool verify_mixed(const CostGame& game, MixedProfile& mixed) {
  for (auto* weights : {&mixed.p1_weights, &mixed.p2_weights}) {
    double sum = 0.0;
    for (double& w : *weights) {
      if (w < -kProbabilityTol) return false;
      if (w < 0.0) w = 0.0;
      sum += w;
    }
    if (std::fabs(sum - 1.0) > kProbabilityTol) return false;
    for (double& w : *weights) w /= sum;
  }
  const auto costs_p1 = pure_costs_against(game, mixed.p2_weights, 1);
  const auto costs_p2 = pure_costs_against(game, mixed.p1_weights, 2);
  for (const auto& [weights, costs] :
       {std::pair{&mixed.p1_weights, &costs_p1}, std::pair{&mixed.p2_weights, &costs_p2}}) {
    double supported_min = std::numeric_limits<double>::infinity();
    double supported_max = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < weights->size(); ++k) {
      if ((*weights)[k] > 0.0) {
        supported_min = std::min(supported_min, (*costs)[k]);
        supported_max = std::max(supported_max, (*costs)[k]);
      }
    }
    if (supported_max - supported_min > kIndifferenceTol) return false;
    for (std::size_t k = 0; k < weights->size(); ++k)
      if ((*weights)[k] == 0.0 && (*costs)[k] < supported_min - kProbabilityTol) return false;
  }
  return true;
}

inline bool same_mixed(const MixedProfile& a, const MixedProfile& b) {
  for (std::size_t i = 0; i < a.p1_weights.size(); ++i)
    if (std::fabs(a.p1_weights[i] - b.p1_weights[i]) > kIndifferenceTol) return false;
  for (std::size_t j = 0; j < a.p2_weights.size(); ++j)
    if (std::fabs(a.p2_weights[j] - b.p2_weights[j]) > kIndifferenceTol) return false;
  return true;
}

template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> indices(k);
  for (std::size_t i = 0; i < k; ++i) indices[i] = i;
  while (true) {
    fn(indices);
    std::size_t pos = k;
    while (pos > 0 && indices[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) return;
    ++indices[pos - 1];
    for (std::size_t i = pos; i < k; ++i) indices[i] = indices[i - 1] + 1;
  }
}

}  // namespace detail

// Mixed equilibria for two-player games of any shape, by support
// enumeration over all support pairs in increasing total support size. Pure
// equilibria appear as point-mass mixed profiles. Supports whose
// indifference system is unsatisfiable are skipped; consistent singular
// systems yield one representative and set the degenerate flag. An empty
// result would violate equilibrium existence and raises an
// internal-consistency error.
inline MixedSolveResult find_msne_2x2_plus(const CostGame& game) {
  const std::size_t m = game.rows();
  const std::size_t n = game.cols();
  MixedSolveResult result;

  auto try_support = [&](const std::vector<std::size_t>& s1, const std::vector<std::size_t>& s2) {
    bool used_ridge = false;
    auto p1 = detail::solve_indifference(game, s1, s2, 1, used_ridge);
    auto p2 = detail::solve_indifference(game, s1, s2, 2, used_ridge);
    if (!p1 || !p2) return;
    MixedProfile mixed{std::vector<double>(m, 0.0), std::vector<double>(n, 0.0)};
    for (std::size_t k = 0; k < s1.size(); ++k) mixed.p1_weights[s1[k]] = (*p1)[k];
    for (std::size_t k = 0; k < s2.size(); ++k) mixed.p2_weights[s2[k]] = (*p2)[k];
    if (!detail::verify_mixed(game, mixed)) return;
    for (const auto& existing : result.equilibria)
      if (detail::same_mixed(existing, mixed)) return;
    result.equilibria.push_back(std::move(mixed));
    if (used_ridge) result.degenerate = true;
  };

  for (std::size_t total = 2; total <= m + n; ++total) {
    const std::size_t k_min = total > n ? total - n : 1;
    const std::size_t k_max = std::min(m, total - 1);
    for (std::size_t k = k_min; k <= k_max; ++k) {
      const std::size_t l = total - k;
      detail::for_each_subset(m, k, [&](const std::vector<std::size_t>& s1) {
        detail::for_each_subset(n, l,
                                [&](const std::vector<std::size_t>& s2) { try_support(s1, s2); });
      });
    }
  }

  if (result.equilibria.empty())
    throw error(errc::internal_consistency,
                "no mixed equilibrium found in a finite game; this violates existence");
  return result;
}

}  // namespace gtalloc
