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

#include "coopeq/game.hpp"
#include "coopeq/io.hpp"
#include "test_util.hpp"

namespace coopeq {
namespace {

using testing::PureProfile;
using testing::RandomGame;
using testing::RandomProfile;
using testing::RandomStrategy;

TEST(GameTest, RejectsBadShapes) {
  EXPECT_THROW(Game(Matrix(2, 2), Matrix(2, 3)), std::invalid_argument);
  EXPECT_THROW(Game(Matrix(0, 0), Matrix(0, 0)), std::invalid_argument);
  Matrix bad(1, 1);
  bad(0, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(Game(bad, Matrix(1, 1)), std::invalid_argument);
  EXPECT_THROW(Game(Matrix(2, 1), Matrix(2, 1), {"only one"}),
               std::invalid_argument);
}

TEST(GameTest, DefaultLabelsAndSwap) {
  Game g(Matrix(2, 3, {1, 2, 3, 4, 5, 6}), Matrix(2, 3, {6, 5, 4, 3, 2, 1}));
  EXPECT_EQ(g.labels(Player::kOne), (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(g.labels(Player::kTwo).size(), 3u);
  EXPECT_DOUBLE_EQ(g.scale(), 6.0);
  const Game s = g.SwapPlayers();
  EXPECT_EQ(s.rows(), 3u);
  EXPECT_EQ(s.payoff1(), g.payoff2().Transposed());
  EXPECT_EQ(s.payoff2(), g.payoff1().Transposed());
}

TEST(MixedStrategyTest, ClampsAndRenormalizes) {
  MixedStrategy s({0.5 + 1e-12, 0.5, -1e-12});
  EXPECT_EQ(s[2], 0.0);
  EXPECT_NEAR(s[0] + s[1], 1.0, 1e-15);
  EXPECT_THROW(MixedStrategy({1.1, -0.1}), std::invalid_argument);
  EXPECT_THROW(MixedStrategy({0.5, 0.4}), std::invalid_argument);
  EXPECT_THROW(MixedStrategy(std::vector<double>{}), std::invalid_argument);
  EXPECT_EQ(MixedStrategy({0.0, 1.0, 0.0}).Support(),
            (std::vector<std::size_t>{1}));
}

TEST(ExpectedUtilitiesTest, PrisonersDilemma) {
  const Game pd = io::PrisonersDilemma();
  const ValuePair cc = ExpectedUtilities(pd, PureProfile(pd, 0, 0));
  EXPECT_EQ(cc.first, 3.0);
  EXPECT_EQ(cc.second, 3.0);
  const ValuePair u = ExpectedUtilities(
      pd, {MixedStrategy::Uniform(2), MixedStrategy::Uniform(2)});
  EXPECT_DOUBLE_EQ(u.first, 2.25);
  EXPECT_DOUBLE_EQ(u.second, 2.25);
}

TEST(ExpectedUtilitiesTest, PureCornerIsCell) {
  std::mt19937_64 rng(1);
  const Game g = RandomGame(rng, 3, 4);
  const ValuePair u = ExpectedUtilities(g, PureProfile(g, 0, 0));
  EXPECT_EQ(u.first, g.payoff1()(0, 0));
  EXPECT_EQ(u.second, g.payoff2()(0, 0));
}

TEST(ExpectedUtilitiesTest, DimensionMismatchThrows) {
  const Game pd = io::PrisonersDilemma();
  EXPECT_THROW(ExpectedUtilities(pd, {MixedStrategy::Uniform(3),
                                      MixedStrategy::Uniform(2)}),
               std::invalid_argument);
}

TEST(ExpectedUtilitiesTest, LinearInEachArgument) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Game g = RandomGame(rng, 4, 3);
    const MixedStrategy a = RandomStrategy(rng, 4);
    const MixedStrategy b = RandomStrategy(rng, 4);
    const MixedStrategy y = RandomStrategy(rng, 3);
    const double lambda = u01(rng);
    std::vector<double> mix(4);
    for (int i = 0; i < 4; ++i) mix[i] = lambda * a[i] + (1 - lambda) * b[i];
    const ValuePair um = ExpectedUtilities(g, {MixedStrategy(mix), y});
    const ValuePair ua = ExpectedUtilities(g, {a, y});
    const ValuePair ub = ExpectedUtilities(g, {b, y});
    EXPECT_NEAR(um.first, lambda * ua.first + (1 - lambda) * ub.first, 1e-12);
    EXPECT_NEAR(um.second, lambda * ua.second + (1 - lambda) * ub.second,
                1e-12);
  }
}

TEST(MswTest, Examples) {
  const WelfareMax pd = MaxSocialWelfare(io::PrisonersDilemma());
  EXPECT_EQ(pd.value, 6.0);
  EXPECT_EQ(pd.row, 0u);
  EXPECT_EQ(pd.col, 0u);
  EXPECT_EQ(MaxSocialWelfare(io::Xam1()).value, 5.0);
  EXPECT_EQ(MaxSocialWelfare(Game(Matrix(1, 1, 2.5), Matrix(1, 1, -1.0))).value,
            1.5);
}

TEST(MswTest, TiesGoToLowestRowMajorIndex) {
  const Game g(Matrix(2, 2, {0, 1, 1, 0}), Matrix(2, 2, {0, 0, 0, 0}));
  const WelfareMax w = MaxSocialWelfare(g);
  EXPECT_EQ(w.row, 0u);
  EXPECT_EQ(w.col, 1u);
}

TEST(MswTest, BoundsRandomProfiles) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Game g = RandomGame(rng, 3, 5);
    const double msw = MaxSocialWelfare(g).value;
    const ValuePair u = ExpectedUtilities(g, RandomProfile(rng, g));
    EXPECT_LE(u.first + u.second, msw + 1e-9);
  }
}

TEST(DecomposeTest, PrisonersDilemma) {
  const Decomposition d = Decompose(io::PrisonersDilemma());
  EXPECT_EQ(d.team, Matrix(2, 2, {3, 2.5, 2.5, 1}));
  EXPECT_EQ(d.zero_sum, Matrix(2, 2, {0, -2.5, 2.5, 0}));
}

TEST(DecomposeTest, Xam1AndTeamGame) {
  const Decomposition d = Decompose(io::Xam1());
  EXPECT_EQ(d.team, Matrix(1, 2, {2.5, 0.5}));
  EXPECT_EQ(d.zero_sum, Matrix(1, 2, {0.5, 0.5}));
  std::mt19937_64 rng(4);
  const Matrix a = testing::RandomMatrix(rng, 3, 3);
  EXPECT_EQ(Decompose(Game(a, a)).zero_sum, Matrix(3, 3));
}

TEST(DecomposeTest, Reconstructs) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Game g = RandomGame(rng, 4, 4);
    const Decomposition d = Decompose(g);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_NEAR(d.team(i, j) + d.zero_sum(i, j), g.payoff1()(i, j), 1e-12);
        EXPECT_NEAR(d.team(i, j) - d.zero_sum(i, j), g.payoff2()(i, j), 1e-12);
      }
    }
    const Game z = ZeroSumPart(g);
    EXPECT_EQ(z.payoff1(), d.zero_sum);
  }
}

TEST(ParetoTest, PrisonersDilemma) {
  const Game pd = io::PrisonersDilemma();
  EXPECT_EQ(CompareProfiles(pd, PureProfile(pd, 0, 0), PureProfile(pd, 1, 1)),
            ParetoRelation::kStronglyDominates);
  EXPECT_EQ(CompareProfiles(pd, PureProfile(pd, 1, 1), PureProfile(pd, 0, 0)),
            ParetoRelation::kStronglyDominated);
  EXPECT_EQ(CompareProfiles(pd, PureProfile(pd, 0, 1), PureProfile(pd, 1, 0)),
            ParetoRelation::kIncomparable);
  const StrategyProfile s{MixedStrategy::Uniform(2), MixedStrategy::Pure(2, 0)};
  EXPECT_EQ(CompareProfiles(pd, s, s), ParetoRelation::kEqual);
}

TEST(ParetoTest, WeakDominanceWithinTolerance) {
  EXPECT_EQ(ComparePayoffs({1.0, 2.0}, {1.0 + 1e-12, 2.0 - 1e-12}),
            ParetoRelation::kEqual);
  EXPECT_EQ(ComparePayoffs({1.0, 2.0}, {1.0 + 1e-12, 1.0}),
            ParetoRelation::kStronglyDominates);
  EXPECT_TRUE(WeaklyDominates({1.0, 2.0}, {1.0, 1.5}));
  EXPECT_FALSE(WeaklyDominates({1.0, 2.0}, {1.1, 1.5}));
  EXPECT_STREQ(ToString(ParetoRelation::kIncomparable), "incomparable");
}

}  // namespace
}  // namespace coopeq
