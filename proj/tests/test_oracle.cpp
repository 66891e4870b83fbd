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

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "coopeq/io.hpp"
#include "coopeq/oracle.hpp"
#include "coopeq/solvers.hpp"
#include "test_util.hpp"

namespace coopeq {
namespace {

TEST(GridStrategiesTest, CountsAndOrder) {
  const auto pure = GridStrategies(3, {4, 1});
  ASSERT_EQ(pure.size(), 3u);
  EXPECT_EQ(pure[1], (std::vector<double>{0, 1, 0}));
  // 3 pure + 3 pairs * 3 interior mixtures.
  const auto mixed = GridStrategies(3, {4, 2});
  EXPECT_EQ(mixed.size(), 3u + 3u * 3u);
  for (const auto& s : mixed) {
    double sum = 0;
    for (double p : s) sum += p;
    EXPECT_NEAR(sum, 1.0, 1e-15);
  }
  EXPECT_THROW(GridStrategies(3, {0, 2}), std::invalid_argument);
  EXPECT_THROW(GridStrategies(3, {4, 3}), std::invalid_argument);
}

TEST(OracleBuTest, Examples) {
  const Game pd = io::PrisonersDilemma();
  EXPECT_NEAR(OracleBu(pd, Player::kOne, {10, 2}), 1.0, 1e-12);
  const Game one(Matrix(1, 1, 4.5), Matrix(1, 1, -1.0));
  EXPECT_EQ(OracleBu(one, Player::kOne), 4.5);
  EXPECT_EQ(OracleBu(one, Player::kTwo), -1.0);
}

TEST(OracleBuTest, SmallCentipede) {
  const Game g = io::Centipede(4);
  for (Player p : {Player::kOne, Player::kTwo}) {
    const double exact = BestUtility(g, p);
    const double grid = OracleBu(g, p, {400, 2});
    EXPECT_LE(grid, exact + 1e-9);
    EXPECT_NEAR(grid, exact, 5e-2);
  }
}

TEST(OracleMpceTest, Examples) {
  EXPECT_NEAR(OracleMpceAlpha(io::PrisonersDilemma(), GridSpec{10, 2}), 2.0, 1e-12);
  const Game reduced = io::Bargaining(100, 25);
  ASSERT_EQ(reduced.rows(), 5u);
  EXPECT_NEAR(OracleMpceAlpha(reduced, GridSpec{4, 2}), -50.0, 1e-9);
  EXPECT_NEAR(FindMpce(reduced).alpha, -50.0, 1e-9);
}

TEST(OracleMpceTest, MonotoneInK) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Game g = testing::RandomGame(rng, 3, 3);
    const ValuePair bu = BestUtilities(g);
    double prev = OracleMpceAlpha(g, bu, {5, 2});
    for (int k : {10, 20, 40}) {
      const double next = OracleMpceAlpha(g, bu, {k, 2});
      EXPECT_GE(next, prev - 1e-12);
      prev = next;
    }
    EXPECT_LE(prev, FindMpce(g).alpha + 1e-9);
  }
}

TEST(OracleBilinearTest, Examples) {
  BilinearProblem2x2 infeasible;
  infeasible.rhs = 1;
  EXPECT_FALSE(OracleBilinear(infeasible, 50));
  EXPECT_THROW(OracleBilinear(infeasible, 0), std::invalid_argument);

  BilinearProblem2x2 vacuous;
  vacuous.objective = {{{1, -2}, {0.5, 3}}};
  vacuous.row_linear = {0.25, -1};
  vacuous.rhs = -1;
  const double exact = SolveBilinear2x2(vacuous).value;
  for (int k : {10, 100}) {
    const auto grid = OracleBilinear(vacuous, k);
    ASSERT_TRUE(grid);
    EXPECT_LE(*grid, exact + 1e-12);
    EXPECT_GE(*grid, exact - 10.0 / k);
  }
}

TEST(OracleBilinearTest, MonotoneInK) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    BilinearProblem2x2 p;
    for (auto& row : p.objective)
      for (double& v : row) v = u(rng);
    for (auto& row : p.constraint)
      for (double& v : row) v = u(rng);
    p.rhs = u(rng);
    std::optional<double> prev;
    for (int k : {25, 50, 100, 200}) {
      const auto next = OracleBilinear(p, k);
      if (prev) {
        ASSERT_TRUE(next);
        EXPECT_GE(*next, *prev - 1e-12);
      }
      prev = next;
    }
  }
}

}  // namespace
}  // namespace coopeq
