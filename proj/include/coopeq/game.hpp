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

#ifndef COOPEQ_GAME_HPP_
#define COOPEQ_GAME_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace coopeq {

// Default comparison tolerance for domain-level decisions.
inline constexpr double kDefaultEpsilon = 1e-9;

enum class Player { kOne = 1, kTwo = 2 };

inline Player Other(Player p) {
  return p == Player::kOne ? Player::kTwo : Player::kOne;
}

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> data() const { return data_; }

  Matrix Transposed() const;
  double MaxAbs() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// A 2-player normal-form game. Player 1 picks rows, player 2 picks columns.
class Game {
 public:
  // Throws std::invalid_argument on mismatched shapes, empty action sets or
  // non-finite payoffs. Empty label lists are replaced by "0", "1", ...
  Game(Matrix payoff1, Matrix payoff2,
       std::vector<std::string> row_labels = {},
       std::vector<std::string> col_labels = {});

  std::size_t rows() const { return payoff1_.rows(); }
  std::size_t cols() const { return payoff1_.cols(); }
  std::size_t num_actions(Player p) const {
    return p == Player::kOne ? rows() : cols();
  }

  const Matrix& payoff(Player p) const {
    return p == Player::kOne ? payoff1_ : payoff2_;
  }
  const Matrix& payoff1() const { return payoff1_; }
  const Matrix& payoff2() const { return payoff2_; }
  const std::vector<std::string>& labels(Player p) const {
    return p == Player::kOne ? row_labels_ : col_labels_;
  }

  // Largest absolute payoff, at least 1. Used to scale tolerances.
  double scale() const { return scale_; }

  // The same game seen with the players' roles exchanged: the new row player
  // is the old column player.
  Game SwapPlayers() const;

 private:
  Matrix payoff1_;
  Matrix payoff2_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  double scale_ = 1.0;
};

// A probability vector over one player's actions. Construction clamps
// entries in (-eps, 0) to zero and renormalizes; larger violations throw.
class MixedStrategy {
 public:
  explicit MixedStrategy(std::vector<double> probs,
                         double eps = kDefaultEpsilon);

  static MixedStrategy Pure(std::size_t num_actions, std::size_t action);
  static MixedStrategy Uniform(std::size_t num_actions);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

  // Sorted indices with probability > eps.
  std::vector<std::size_t> Support(double eps = kDefaultEpsilon) const;

  bool operator==(const MixedStrategy&) const = default;

 private:
  MixedStrategy() = default;
  std::vector<double> probs_;
};

struct StrategyProfile {
  MixedStrategy row;
  MixedStrategy col;

  const MixedStrategy& of(Player p) const {
    return p == Player::kOne ? row : col;
  }
};

struct ValuePair {
  double first = 0.0;
  double second = 0.0;

  double of(Player p) const { return p == Player::kOne ? first : second; }
};

struct Decomposition {
  Matrix team;
  Matrix zero_sum;
};

// (U_1(s), U_2(s)). Throws std::invalid_argument on a dimension mismatch.
ValuePair ExpectedUtilities(const Game& game, const StrategyProfile& profile);

struct WelfareMax {
  double value = 0.0;
  std::size_t row = 0;
  std::size_t col = 0;
};

// Maximum social welfare over pure profiles; lowest row-major index on ties.
WelfareMax MaxSocialWelfare(const Game& game);

// Team part (A+B)/2 and zero-sum part (A-B)/2.
Decomposition Decompose(const Game& game);

// The zero-sum game (D, -D) from the decomposition.
Game ZeroSumPart(const Game& game);

// Weak-but-not-strong dominance collapses into kEqual once coordinates are
// compared up to a tolerance, so it has no separate enumerator.
enum class ParetoRelation {
  kEqual,
  kStronglyDominates,
  kStronglyDominated,
  kIncomparable,
};

const char* ToString(ParetoRelation r);

// Relation of the utility pair of `a` to that of `b`.
ParetoRelation ComparePayoffs(const ValuePair& a, const ValuePair& b,
                              double eps = kDefaultEpsilon);

ParetoRelation CompareProfiles(const Game& game, const StrategyProfile& s,
                               const StrategyProfile& t,
                               double eps = kDefaultEpsilon);

// True when `a` weakly Pareto dominates `b` (each coordinate >= up to eps).
inline bool WeaklyDominates(const ValuePair& a, const ValuePair& b,
                            double eps = kDefaultEpsilon) {
  return a.first >= b.first - eps && a.second >= b.second - eps;
}

}  // namespace coopeq

#endif  // COOPEQ_GAME_HPP_
