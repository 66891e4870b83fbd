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

#include "coopeq/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "coopeq/bilinear.hpp"
#include "coopeq/kernels.hpp"
#include "coopeq/linprog.hpp"

namespace coopeq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using IndexPair = std::pair<std::size_t, std::size_t>;

// Supports of size <= 2, as index pairs {i1 < i2}. A one-action player gets
// the single pair {0, 0}.
std::vector<IndexPair> SupportPairs(std::size_t n) {
  std::vector<IndexPair> out;
  if (n == 1) {
    out.emplace_back(0, 0);
    return out;
  }
  out.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

struct Tuple {
  IndexPair rows;
  IndexPair cols;
};

Mat2 Sub(const Matrix& m, const Tuple& t) {
  return {{{m(t.rows.first, t.cols.first), m(t.rows.first, t.cols.second)},
           {m(t.rows.second, t.cols.first), m(t.rows.second, t.cols.second)}}};
}

double MaxOf(const Mat2& m) {
  return std::max(std::max(m[0][0], m[0][1]), std::max(m[1][0], m[1][1]));
}

Mat2 Minus(const Mat2& a, const Mat2& b) {
  return {{{a[0][0] - b[0][0], a[0][1] - b[0][1]},
           {a[1][0] - b[1][0], a[1][1] - b[1][1]}}};
}

MixedStrategy Lift(std::size_t n, const IndexPair& support, const Vec2& w) {
  std::vector<double> p(n, 0.0);
  p[support.first] += std::max(w[0], 0.0);
  p[support.second] += std::max(w[1], 0.0);
  return MixedStrategy(std::move(p));
}

StrategyProfile Lift(const Game& g, const Tuple& t,
                     const BilinearSolution& s) {
  return {Lift(g.rows(), t.rows, s.x), Lift(g.cols(), t.cols, s.y)};
}

// Calls fn(tuple) for every support tuple in lexicographic order.
template <typename Fn>
void ForEachTuple(const Game& g, Fn&& fn) {
  const auto rows = SupportPairs(g.rows());
  const auto cols = SupportPairs(g.cols());
  for (const auto& r : rows)
    for (const auto& c : cols)
      if (!fn(Tuple{r, c})) return;
}

// max x^T obj y s.t. x^T con y >= rhs over the tuple's supports.
BilinearSolution SolveTuple(const Mat2& obj, const Mat2& con, double rhs) {
  BilinearProblem2x2 p;
  p.objective = obj;
  p.constraint = con;
  p.rhs = rhs;
  return SolveBilinear2x2(p);
}

// sum z = 1.
LinearConstraint Simplex(std::size_t n) {
  return {std::vector<double>(n, 1.0), 1.0};
}

// Tuple-level tie tolerance: values closer than this are treated as equal so
// that the lowest tuple wins deterministically.
double TieEps(const Game& g) { return 1e-12 * g.scale(); }

// Best over all tuples of max x^T obj y s.t. x^T con y >= rhs.
std::optional<StrategyProfile> MaximizeOverTuples(const Game& g,
                                                  const Matrix& obj,
                                                  const Matrix& con,
                                                  double rhs) {
  const double tie = TieEps(g);
  double best = -kInf;
  std::optional<StrategyProfile> out;
  ForEachTuple(g, [&](const Tuple& t) {
    const Mat2 o = Sub(obj, t);
    const Mat2 c = Sub(con, t);
    if (MaxOf(c) < rhs || MaxOf(o) <= best + tie) return true;
    const auto sol = SolveTuple(o, c, rhs);
    if (sol.status == BilinearStatus::kOptimal && sol.value > best + tie) {
      best = sol.value;
      out = Lift(g, t, sol);
    }
    return true;
  });
  return out;
}

}  // namespace

BestUtilityResult BestUtilityWitness(const Game& game, Player player) {
  if (player == Player::kTwo)
    return BestUtilityWitness(game.SwapPlayers(), Player::kOne);
  const Matrix& a = game.payoff1();
  const Matrix& b = game.payoff2();
  const std::size_t n = game.rows();
  const std::size_t m = game.cols();

  std::optional<BestUtilityResult> best;
  for (std::size_t j = 0; j < m; ++j) {
    LpProblem lp;
    lp.objective.resize(n);
    for (std::size_t i = 0; i < n; ++i) lp.objective[i] = a(i, j);
    lp.equalities.push_back(Simplex(n));
    for (std::size_t k = 0; k < m; ++k) {
      if (k == j) continue;
      LinearConstraint c{std::vector<double>(n), 0.0};
      for (std::size_t i = 0; i < n; ++i) c.coeffs[i] = b(i, j) - b(i, k);
      lp.lower_bounds.push_back(std::move(c));
    }
    const LpSolution sol = SolveLp(lp);
    if (sol.status != LpStatus::kOptimal) continue;
    if (!best || sol.value > best->value)
      best = BestUtilityResult{sol.value, MixedStrategy(sol.x), j};
  }
  // Some column is always a best response, so at least one LP is feasible.
  if (!best) throw std::logic_error("BestUtility: all column LPs infeasible");
  return *best;
}

double BestUtility(const Game& game, Player player) {
  return BestUtilityWitness(game, player).value;
}

ValuePair BestUtilities(const Game& game) {
  return {BestUtility(game, Player::kOne), BestUtility(game, Player::kTwo)};
}

double MinimaxValue(const Game& game, Player player) {
  if (player == Player::kTwo)
    return MinimaxValue(game.SwapPlayers(), Player::kOne);
  const Matrix& a = game.payoff1();
  const std::size_t n = game.rows();
  const std::size_t m = game.cols();

  // Row i's LP value is at least its smallest payoff, so rows are visited
  // in increasing order of that bound and the scan stops once it cannot
  // beat the incumbent.
  std::vector<double> floor(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = a.row(i);
    floor[i] = *std::min_element(r.begin(), r.end());
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return floor[x] < floor[y];
  });

  double best = kInf;
  for (std::size_t i : order) {
    if (floor[i] >= best) break;
    LpProblem lp;
    lp.objective.resize(m);
    for (std::size_t j = 0; j < m; ++j) lp.objective[j] = -a(i, j);
    lp.equalities.push_back(Simplex(m));
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      LinearConstraint c{std::vector<double>(m), 0.0};
      for (std::size_t j = 0; j < m; ++j) c.coeffs[j] = a(i, j) - a(k, j);
      lp.lower_bounds.push_back(std::move(c));
    }
    const LpSolution sol = SolveLp(lp);
    if (sol.status == LpStatus::kOptimal) best = std::min(best, -sol.value);
  }
  if (!std::isfinite(best))
    throw std::logic_error("MinimaxValue: all row LPs infeasible");
  return best;
}

std::optional<StrategyProfile> FindPce(const Game& game,
                                       const SolverOptions& options) {
  const ValuePair bu = BestUtilities(game);
  const double eps = options.eps;
  std::optional<StrategyProfile> out;
  ForEachTuple(game, [&](const Tuple& t) {
    const Mat2 a = Sub(game.payoff1(), t);
    const Mat2 b = Sub(game.payoff2(), t);
    if (MaxOf(a) < bu.first - eps || MaxOf(b) < bu.second - eps) return true;
    const auto sol = SolveTuple(a, b, bu.second - eps);
    if (sol.status == BilinearStatus::kOptimal &&
        sol.value >= bu.first - eps) {
      out = Lift(game, t, sol);
      return false;
    }
    return true;
  });
  return out;
}

bool IsPce(const Game& game, const StrategyProfile& profile,
           const ValuePair& best_utilities, double eps) {
  const ValuePair u = ExpectedUtilities(game, profile);
  return u.first >= best_utilities.first - eps &&
         u.second >= best_utilities.second - eps;
}

bool IsPce(const Game& game, const StrategyProfile& profile, double eps) {
  return IsPce(game, profile, BestUtilities(game), eps);
}

double AlphaOf(const Game& game, const StrategyProfile& profile,
               const ValuePair& best_utilities) {
  const ValuePair u = ExpectedUtilities(game, profile);
  return std::min(u.first - best_utilities.first,
                  u.second - best_utilities.second);
}

double AlphaOf(const Game& game, const StrategyProfile& profile) {
  return AlphaOf(game, profile, BestUtilities(game));
}

namespace {

AlphaResult MakeAlphaResult(const Game& game, StrategyProfile profile,
                            const ValuePair& bu) {
  const ValuePair u = ExpectedUtilities(game, profile);
  const double alpha = std::min(u.first - bu.first, u.second - bu.second);
  return {std::move(profile), alpha, u, bu};
}

}  // namespace

AlphaResult FindMpce(const Game& game, const SolverOptions&) {
  const ValuePair bu = BestUtilities(game);
  const double tie = TieEps(game);
  double best = -kInf;
  std::optional<StrategyProfile> arg;

  ForEachTuple(game, [&](const Tuple& t) {
    const Mat2 a = Sub(game.payoff1(), t);
    const Mat2 b = Sub(game.payoff2(), t);
    const double ub = std::min(MaxOf(a) - bu.first, MaxOf(b) - bu.second);
    if (ub <= best + tie) return true;

    // Q': player 1's surplus is the smaller one.
    const auto q1 = SolveTuple(a, Minus(b, a), bu.second - bu.first);
    if (q1.status == BilinearStatus::kOptimal &&
        q1.value - bu.first > best + tie) {
      best = q1.value - bu.first;
      arg = Lift(game, t, q1);
    }
    // Q'': player 2's surplus is the smaller one.
    const auto q2 = SolveTuple(b, Minus(a, b), bu.first - bu.second);
    if (q2.status == BilinearStatus::kOptimal &&
        q2.value - bu.second > best + tie) {
      best = q2.value - bu.second;
      arg = Lift(game, t, q2);
    }
    return true;
  });
  // Every tuple has a feasible point in Q' or Q'' (whichever surplus is
  // smaller at, say, the pure corner), so arg is always set.
  if (!arg) throw std::logic_error("FindMpce: no feasible tuple");
  return MakeAlphaResult(game, std::move(*arg), bu);
}

StrategyProfile ParetoImproveSupport2(const Game& game,
                                      const StrategyProfile& profile,
                                      const SolverOptions& options) {
  const std::size_t n = game.rows();
  const std::size_t m = game.cols();
  if (profile.row.size() != n || profile.col.size() != m)
    throw std::invalid_argument("ParetoImproveSupport2: profile shape");
  const ValuePair r = ExpectedUtilities(game, profile);

  // max obj . z  s.t. con . z = target, sum z = 1. Falls back to
  // con . z >= target - slack if rounding made the equality infeasible;
  // either way a basic solution has at most two nonzeros.
  auto solve = [&](std::vector<double> obj, std::vector<double> con,
                   double target, const MixedStrategy& fallback) {
    const std::size_t k = obj.size();
    LpProblem lp;
    lp.objective = std::move(obj);
    lp.equalities.push_back(Simplex(k));
    lp.equalities.push_back({con, target});
    LpSolution sol = SolveLp(lp);
    if (sol.status != LpStatus::kOptimal) {
      lp.equalities.pop_back();
      lp.lower_bounds.push_back(
          {std::move(con), target - options.eps * game.scale()});
      sol = SolveLp(lp);
    }
    if (sol.status != LpStatus::kOptimal) return fallback;
    return MixedStrategy(std::move(sol.x));
  };

  // Fix s1, improve s2: u = s1^T A, w = s1^T B.
  std::vector<double> u(m), w(m);
  kernels::RowTimesMatrix(profile.row.probs(), game.payoff1().data().data(),
                          n, m, u);
  kernels::RowTimesMatrix(profile.row.probs(), game.payoff2().data().data(),
                          n, m, w);
  MixedStrategy col = solve(u, w, r.second, profile.col);

  // Fix s2', improve s1: v = A s2', z = B s2'.
  std::vector<double> v(n), z(n);
  kernels::MatrixTimesVector(game.payoff1().data().data(), n, m, col.probs(),
                             v);
  kernels::MatrixTimesVector(game.payoff2().data().data(), n, m, col.probs(),
                             z);
  const double r1 = kernels::Dot(profile.row.probs(), v);
  MixedStrategy row = solve(z, v, r1, profile.row);
  return {std::move(row), std::move(col)};
}

AlphaResult FindParetoOptimalMpce(const Game& game,
                                  const SolverOptions& options) {
  const AlphaResult mpce = FindMpce(game, options);
  const ValuePair r = mpce.utilities;
  const double eps = options.eps;
  // Only rounding slack: a looser floor would let the other player's payoff
  // (and with it alpha) slip.
  const double slack = TieEps(game);

  // t1 maximizes U1 keeping U2, t2 maximizes U2 keeping U1. Both are Pareto
  // optimal among support-2 profiles; s itself is feasible for each.
  auto t1 = MaximizeOverTuples(game, game.payoff1(), game.payoff2(),
                               r.second - slack);
  const Game swapped = game.SwapPlayers();
  auto t2s = MaximizeOverTuples(swapped, swapped.payoff1(), swapped.payoff2(),
                                r.first - slack);
  std::optional<StrategyProfile> t2;
  if (t2s) t2 = StrategyProfile{t2s->col, t2s->row};

  if (!t1 && !t2) return mpce;
  if (!t2) return MakeAlphaResult(game, std::move(*t1), mpce.best_utilities);
  if (!t1) return MakeAlphaResult(game, std::move(*t2), mpce.best_utilities);

  const ValuePair u1 = ExpectedUtilities(game, *t1);
  const ValuePair u2 = ExpectedUtilities(game, *t2);
  const double tol = std::max(eps, TieEps(game));
  if (!WeaklyDominates(u1, u2, tol) && WeaklyDominates(u2, u1, tol))
    return MakeAlphaResult(game, std::move(*t2), mpce.best_utilities);
  return MakeAlphaResult(game, std::move(*t1), mpce.best_utilities);
}

CocoResult CocoValue(const Game& game) {
  const Decomposition d = Decompose(game);
  const std::span<const double> team = d.team.data();
  const double a = *std::max_element(team.begin(), team.end());
  const Game gz = ZeroSumPart(game);
  const double mm1 = MinimaxValue(gz, Player::kOne);
  const double mm2 = MinimaxValue(gz, Player::kTwo);
  const double msw = MaxSocialWelfare(game).value;

  CocoResult out;
  out.team_max = a;
  out.zero_sum_mm1 = mm1;
  out.zero_sum_mm2 = mm2;
  out.value = {a + mm1, a - mm1};
  out.formula = {(msw + mm1 - mm2) / 2, (msw - mm1 + mm2) / 2};
  const double tol = 1e-7 * game.scale();
  if (std::abs(out.value.first - out.formula.first) > tol ||
      std::abs(out.value.second - out.formula.second) > tol)
    throw std::logic_error("CocoValue: definition and formula disagree");
  return out;
}

ValuePair DefaultPayoffSidepayValue(const Game& game, double default1,
                                    double default2) {
  const double msw = MaxSocialWelfare(game).value;
  return {(msw + default1 - default2) / 2, (msw - default1 + default2) / 2};
}

ValuePair SidepayMpceValue(const Game& game) {
  return DefaultPayoffSidepayValue(game, MinimaxValue(game, Player::kOne),
                                   MinimaxValue(game, Player::kTwo));
}

DealProfile SidepayMpceProfile(const Game& game) {
  const WelfareMax w = MaxSocialWelfare(game);
  const ValuePair target = SidepayMpceValue(game);
  DealProfile d;
  d.row = w.row;
  d.col = w.col;
  d.transfer = game.payoff1()(w.row, w.col) - target.first;
  d.backup_row = w.row;
  d.backup_col = w.col;
  return d;
}

ValuePair DealPayoffs(const Game& game, const DealProfile& deal) {
  return {game.payoff1()(deal.row, deal.col) - deal.transfer,
          game.payoff2()(deal.row, deal.col) + deal.transfer};
}

std::optional<CeViolation> CeFalsify(const Game& game,
                                     const StrategyProfile& profile,
                                     int grid_k, double eps) {
  if (grid_k < 1) throw std::invalid_argument("CeFalsify: grid_k < 1");
  const ValuePair u = ExpectedUtilities(game, profile);

  for (Player deviator : {Player::kOne, Player::kTwo}) {
    // Work with the deviator as row player.
    const Game g = deviator == Player::kOne ? game : game.SwapPlayers();
    const double ui = u.of(deviator);
    const double uj = u.of(Other(deviator));
    const std::size_t n = g.rows();
    const std::size_t m = g.cols();
    std::vector<double> dev(n, 0.0), a(m), b(m);

    auto check = [&]() -> std::optional<CeViolation> {
      kernels::RowTimesMatrix(dev, g.payoff1().data().data(), n, m, a);
      kernels::RowTimesMatrix(dev, g.payoff2().data().data(), n, m, b);
      const double br = kernels::BestResponseValue(b, a, eps);
      if (ui >= br - eps) return std::nullopt;  // deviation does not pay
      const double opp_best = *std::max_element(b.begin(), b.end());
      const double floor = *std::min_element(a.begin(), a.end());
      if (uj > opp_best - eps && floor <= ui + eps) return std::nullopt;
      return CeViolation{deviator, MixedStrategy(dev), br, opp_best, floor};
    };

    for (std::size_t i = 0; i < n; ++i) {
      dev.assign(n, 0.0);
      dev[i] = 1.0;
      if (auto v = check()) return v;
    }
    for (std::size_t i1 = 0; i1 < n; ++i1) {
      for (std::size_t i2 = i1 + 1; i2 < n; ++i2) {
        for (int t = 1; t < grid_k; ++t) {
          dev.assign(n, 0.0);
          dev[i1] = static_cast<double>(t) / grid_k;
          dev[i2] = 1.0 - dev[i1];
          if (auto v = check()) return v;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace coopeq
