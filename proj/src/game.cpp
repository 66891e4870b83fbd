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

#include "coopeq/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "coopeq/kernels.hpp"

namespace coopeq {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw std::invalid_argument("matrix data size does not match shape");
  }
}

Matrix Matrix::Transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

double Matrix::MaxAbs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

std::vector<std::string> DefaultLabels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

void RequireMatch(const Game& game, const StrategyProfile& profile) {
  if (profile.row.size() != game.rows() || profile.col.size() != game.cols()) {
    throw std::invalid_argument(
        "strategy profile of shape " + std::to_string(profile.row.size()) +
        "x" + std::to_string(profile.col.size()) + " does not match game " +
        std::to_string(game.rows()) + "x" + std::to_string(game.cols()));
  }
}

}  // namespace

Game::Game(Matrix payoff1, Matrix payoff2, std::vector<std::string> row_labels,
           std::vector<std::string> col_labels)
    : payoff1_(std::move(payoff1)),
      payoff2_(std::move(payoff2)),
      row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)) {
  if (payoff1_.rows() == 0 || payoff1_.cols() == 0) {
    throw std::invalid_argument("each player needs at least one action");
  }
  if (payoff1_.rows() != payoff2_.rows() ||
      payoff1_.cols() != payoff2_.cols()) {
    throw std::invalid_argument("payoff matrices differ in shape");
  }
  for (const Matrix* m : {&payoff1_, &payoff2_}) {
    for (double v : m->data()) {
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite payoff");
    }
  }
  if (row_labels_.empty()) row_labels_ = DefaultLabels(rows());
  if (col_labels_.empty()) col_labels_ = DefaultLabels(cols());
  if (row_labels_.size() != rows() || col_labels_.size() != cols()) {
    throw std::invalid_argument("action label count does not match payoffs");
  }
  scale_ = std::max({1.0, payoff1_.MaxAbs(), payoff2_.MaxAbs()});
}

Game Game::SwapPlayers() const {
  return Game(payoff2_.Transposed(), payoff1_.Transposed(), col_labels_,
              row_labels_);
}

MixedStrategy::MixedStrategy(std::vector<double> probs, double eps)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("empty mixed strategy");
  for (double& p : probs_) {
    if (!std::isfinite(p)) throw std::invalid_argument("non-finite probability");
    if (p < 0.0) {
      if (p < -eps) {
        throw std::invalid_argument("negative probability " +
                                    std::to_string(p));
      }
      p = 0.0;
    }
  }
  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(total - 1.0) > std::max(eps, 1e-12) * probs_.size()) {
    throw std::invalid_argument("probabilities sum to " +
                                std::to_string(total) + ", not 1");
  }
  for (double& p : probs_) p /= total;
}

MixedStrategy MixedStrategy::Pure(std::size_t num_actions, std::size_t action) {
  if (action >= num_actions) throw std::out_of_range("pure action index");
  MixedStrategy s;
  s.probs_.assign(num_actions, 0.0);
  s.probs_[action] = 1.0;
  return s;
}

MixedStrategy MixedStrategy::Uniform(std::size_t num_actions) {
  if (num_actions == 0) throw std::invalid_argument("empty mixed strategy");
  MixedStrategy s;
  s.probs_.assign(num_actions, 1.0 / static_cast<double>(num_actions));
  return s;
}

std::vector<std::size_t> MixedStrategy::Support(double eps) const {
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (probs_[i] > eps) support.push_back(i);
  }
  return support;
}

ValuePair ExpectedUtilities(const Game& game, const StrategyProfile& profile) {
  RequireMatch(game, profile);
  std::vector<double> weighted(game.cols());
  const auto row = profile.row.probs();
  const auto col = profile.col.probs();
  ValuePair v;
  kernels::RowTimesMatrix(row, game.payoff1().data().data(), game.rows(),
                          game.cols(), weighted);
  v.first = kernels::Dot(weighted, col);
  kernels::RowTimesMatrix(row, game.payoff2().data().data(), game.rows(),
                          game.cols(), weighted);
  v.second = kernels::Dot(weighted, col);
  return v;
}

WelfareMax MaxSocialWelfare(const Game& game) {
  WelfareMax best{game.payoff1()(0, 0) + game.payoff2()(0, 0), 0, 0};
  for (std::size_t r = 0; r < game.rows(); ++r) {
    for (std::size_t c = 0; c < game.cols(); ++c) {
      const double w = game.payoff1()(r, c) + game.payoff2()(r, c);
      if (w > best.value) best = {w, r, c};
    }
  }
  return best;
}

Decomposition Decompose(const Game& game) {
  Decomposition d{Matrix(game.rows(), game.cols()),
                  Matrix(game.rows(), game.cols())};
  for (std::size_t r = 0; r < game.rows(); ++r) {
    for (std::size_t c = 0; c < game.cols(); ++c) {
      const double a = game.payoff1()(r, c);
      const double b = game.payoff2()(r, c);
      d.team(r, c) = (a + b) / 2.0;
      d.zero_sum(r, c) = (a - b) / 2.0;
    }
  }
  return d;
}

Game ZeroSumPart(const Game& game) {
  Matrix d = Decompose(game).zero_sum;
  Matrix neg = d;
  for (std::size_t r = 0; r < neg.rows(); ++r) {
    for (std::size_t c = 0; c < neg.cols(); ++c) neg(r, c) = -neg(r, c);
  }
  return Game(std::move(d), std::move(neg), game.labels(Player::kOne),
              game.labels(Player::kTwo));
}

const char* ToString(ParetoRelation r) {
  switch (r) {
    case ParetoRelation::kEqual:
      return "equal";
    case ParetoRelation::kStronglyDominates:
      return "strongly-dominates";
    case ParetoRelation::kStronglyDominated:
      return "strongly-dominated";
    case ParetoRelation::kIncomparable:
      return "incomparable";
  }
  return "unknown";
}

ParetoRelation ComparePayoffs(const ValuePair& a, const ValuePair& b,
                              double eps) {
  const double d1 = a.first - b.first;
  const double d2 = a.second - b.second;
  const bool ge = d1 >= -eps && d2 >= -eps;
  const bool le = d1 <= eps && d2 <= eps;
  if (ge && le) return ParetoRelation::kEqual;
  if (ge) return ParetoRelation::kStronglyDominates;
  if (le) return ParetoRelation::kStronglyDominated;
  return ParetoRelation::kIncomparable;
}

ParetoRelation CompareProfiles(const Game& game, const StrategyProfile& s,
                               const StrategyProfile& t, double eps) {
  return ComparePayoffs(ExpectedUtilities(game, s), ExpectedUtilities(game, t),
                        eps);
}

}  // namespace coopeq
