// Copyright 2026 The coopeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COOPEQ_SOLVERS_HPP_
#define COOPEQ_SOLVERS_HPP_

// Equilibrium computations for 2-player normal-form games: best utilities
// under best response (BU), minimax values, perfect cooperative equilibria
// (PCE), alpha-PCE / maximum-PCE, Pareto-optimal M-PCE, the coco value and
// the side-payment M-PCE value.
//
// All searches over mixed profiles enumerate support pairs {i1,i2} x {j1,j2}
// and solve one or two 2x2 bilinear programs per tuple. Restricting to
// supports of size two loses nothing: any profile is weakly Pareto dominated
// by one whose strategies each use at most two actions
// (see ParetoImproveSupport2), and every quantity searched for here is
// monotone under Pareto dominance.

#include <cstddef>
#include <optional>

#include "coopeq/game.hpp"

namespace coopeq {

struct SolverOptions {
  // Absolute tolerance for threshold decisions (U_i >= BU_i - eps etc).
  double eps = kDefaultEpsilon;
};

struct BestUtilityResult {
  double value = 0.0;
  // A strategy of the player that attains `value` when the opponent answers
  // with the pure best response `response`.
  MixedStrategy strategy;
  std::size_t response = 0;
};

// BU_i: the best utility player i can secure when the opponent best responds,
// from one LP per opponent action ("this action is a best response").
BestUtilityResult BestUtilityWitness(const Game& game, Player player);
double BestUtility(const Game& game, Player player);
ValuePair BestUtilities(const Game& game);

// mm_i = min over opponent strategies of player i's best-response payoff,
// from one LP per own action ("this action is a best response").
double MinimaxValue(const Game& game, Player player);

// A PCE with both supports of size <= 2, or nullopt when the game has none.
std::optional<StrategyProfile> FindPce(const Game& game,
                                       const SolverOptions& options = {});

bool IsPce(const Game& game, const StrategyProfile& profile,
           const ValuePair& best_utilities, double eps = kDefaultEpsilon);
bool IsPce(const Game& game, const StrategyProfile& profile,
           double eps = kDefaultEpsilon);

// Largest alpha for which `profile` is an alpha-PCE:
// min_i (U_i(profile) - BU_i).
double AlphaOf(const Game& game, const StrategyProfile& profile,
               const ValuePair& best_utilities);
double AlphaOf(const Game& game, const StrategyProfile& profile);

struct AlphaResult {
  StrategyProfile profile;
  double alpha = 0.0;
  ValuePair utilities;
  ValuePair best_utilities;
};

// A maximum-PCE. Ties between support tuples go to the lexicographically
// smallest (i1, i2, j1, j2).
AlphaResult FindMpce(const Game& game, const SolverOptions& options = {});

// A profile weakly Pareto dominating `profile` whose strategies each have
// support <= 2, from two basic optimal LP solutions.
StrategyProfile ParetoImproveSupport2(const Game& game,
                                      const StrategyProfile& profile,
                                      const SolverOptions& options = {});

// A Pareto-optimal M-PCE, which is also a cooperative equilibrium.
AlphaResult FindParetoOptimalMpce(const Game& game,
                                  const SolverOptions& options = {});

struct CocoResult {
  ValuePair value;         // (a + z, a - z)
  ValuePair formula;       // ((MSW + mm1(Gz) - mm2(Gz))/2, ...)
  double team_max = 0.0;   // a
  double zero_sum_mm1 = 0.0;  // z = mm1(Gz)
  double zero_sum_mm2 = 0.0;  // mm2(Gz)
};

// Throws std::logic_error if the two forms disagree beyond numerical noise.
CocoResult CocoValue(const Game& game);

// Unique M-PCE value of the side-payment extension of `game`:
// ((MSW + mm1 - mm2)/2, (MSW - mm1 + mm2)/2).
ValuePair SidepayMpceValue(const Game& game);

// Same formula with fixed default payoffs in place of the minimax values,
// for the variant where an unmatched deal yields the defaults.
ValuePair DefaultPayoffSidepayValue(const Game& game, double default1,
                                    double default2);

// Both players propose the same deal: play (row, col) and player 1 pays
// `transfer` to player 2 (negative means player 2 pays). Backups are what
// each plays if deals do not match.
struct DealProfile {
  std::size_t row = 0;
  std::size_t col = 0;
  double transfer = 0.0;
  std::size_t backup_row = 0;
  std::size_t backup_col = 0;
};

DealProfile SidepayMpceProfile(const Game& game);

// Payoffs of the side-payment game when both players submit `deal`.
ValuePair DealPayoffs(const Game& game, const DealProfile& deal);

struct CeViolation {
  Player deviator = Player::kOne;
  MixedStrategy deviation;
  // Deviator's best payoff when the opponent best responds to the deviation.
  double deviator_payoff = 0.0;
  // Opponent's best attainable payoff against the deviation.
  double opponent_best = 0.0;
  // Lowest payoff the opponent can inflict on the deviator.
  double punishment_floor = 0.0;
};

// Searches pure deviations and two-action mixtures on a 1/grid_k lattice for
// a deviation that breaks both cooperative-equilibrium conditions. An empty
// result is evidence, not proof, that `profile` is a CE.
std::optional<CeViolation> CeFalsify(const Game& game,
                                     const StrategyProfile& profile,
                                     int grid_k,
                                     double eps = kDefaultEpsilon);

}  // namespace coopeq

#endif  // COOPEQ_SOLVERS_HPP_
