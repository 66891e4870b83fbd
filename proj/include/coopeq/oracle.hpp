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

#ifndef COOPEQ_ORACLE_HPP_
#define COOPEQ_ORACLE_HPP_

// Brute-force grid searches used to cross-check the exact solvers. They share
// no code with the LP or bilinear solvers. Every result is a lower bound on
// the exact value it approximates (up to the eps of best-response ties).

#include <optional>
#include <vector>

#include "coopeq/bilinear.hpp"
#include "coopeq/game.hpp"

namespace coopeq {

struct GridSpec {
  int k = 20;           // lattice step 1/k
  int max_support = 2;  // 1 or 2
};

// Mixed strategies over n actions with support <= spec.max_support and
// probabilities in {0, 1/k, ..., 1}. Pure strategies come first.
std::vector<std::vector<double>> GridStrategies(std::size_t n,
                                                const GridSpec& spec);

// max over grid strategies s_i of U_i(s_i, favourable best response).
double OracleBu(const Game& game, Player player, const GridSpec& spec = {},
                double eps = kDefaultEpsilon);

// max of min_i (U_i - BU_i) for the supplied BU pair over profiles where one
// player uses a grid strategy and the other mixes two actions with any
// weight (taken exactly: the objective is piecewise affine in that weight).
// Both assignments of the grid role are searched.
double OracleMpceAlpha(const Game& game, const ValuePair& best_utilities,
                       const GridSpec& spec = {});
// Same, with BU from the exact best_utility LPs.
double OracleMpceAlpha(const Game& game, const GridSpec& spec = {});

// Grid lower bound on the optimum of a 2x2 bilinear program: x1 and y1 on
// a (k+1)-point lattice, plus the exact feasible-interval endpoints of each
// coordinate along every lattice line of the other. Empty when no examined
// point is feasible.
std::optional<double> OracleBilinear(const BilinearProblem2x2& p, int k);

}  // namespace coopeq

#endif  // COOPEQ_ORACLE_HPP_
