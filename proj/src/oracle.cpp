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

#include "coopeq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "coopeq/kernels.hpp"
#include "coopeq/solvers.hpp"

namespace coopeq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckSpec(const GridSpec& spec) {
  if (spec.k < 1) throw std::invalid_argument("grid k must be >= 1");
  if (spec.max_support < 1 || spec.max_support > 2)
    throw std::invalid_argument("grid max_support must be 1 or 2");
}

std::vector<double> Lattice(int k) {
  std::vector<double> ts(k + 1);
  for (int t = 0; t <= k; ++t) ts[t] = static_cast<double>(t) / k;
  return ts;
}

}  // namespace

std::vector<std::vector<double>> GridStrategies(std::size_t n,
                                                const GridSpec& spec) {
  CheckSpec(spec);
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.emplace_back(n, 0.0);
    out.back()[i] = 1.0;
  }
  if (spec.max_support < 2) return out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (int t = 1; t < spec.k; ++t) {
        std::vector<double> s(n, 0.0);
        s[i] = static_cast<double>(t) / spec.k;
        s[j] = 1.0 - s[i];
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

double OracleBu(const Game& game, Player player, const GridSpec& spec,
                double eps) {
  const Game g = player == Player::kOne ? game : game.SwapPlayers();
  const std::size_t n = g.rows();
  const std::size_t m = g.cols();
  std::vector<double> own(m), opp(m);
  double best = -kInf;
  for (const auto& s : GridStrategies(n, spec)) {
    kernels::RowTimesMatrix(s, g.payoff1().data().data(), n, m, own);
    kernels::RowTimesMatrix(s, g.payoff2().data().data(), n, m, opp);
    best = std::max(best, kernels::BestResponseValue(opp, own, eps));
  }
  return best;
}

namespace {

// Row strategies on the lattice; each column pair {j, l} mixed continuously.
// min(U1 - BU1, U2 - BU2) is the lower envelope of two affine functions of
// the column weight, so besides the lattice weights its crossing is tried.
double MpcePass(const Game& game, const ValuePair& bu, const GridSpec& spec) {
  const std::size_t n = game.rows();
  const std::size_t m = game.cols();
  const std::vector<double> ts = Lattice(spec.k);
  std::vector<double> u1(m), u2(m);
  double best = -kInf;
  for (const auto& x : GridStrategies(n, spec)) {
    kernels::RowTimesMatrix(x, game.payoff1().data().data(), n, m, u1);
    kernels::RowTimesMatrix(x, game.payoff2().data().data(), n, m, u2);
    for (std::size_t j = 0; j < m; ++j) {
      best = std::max(best, std::min(u1[j] - bu.first, u2[j] - bu.second));
      if (spec.max_support < 2) continue;
      // y = t e_j + (1 - t) e_l
      for (std::size_t l = j + 1; l < m; ++l) {
        const double a1 = u1[l] - bu.first, b1 = u1[j] - u1[l];
        const double a2 = u2[l] - bu.second, b2 = u2[j] - u2[l];
        best = std::max(best, kernels::MaxMinAffine(a1, b1, a2, b2, ts));
        if (b1 != b2) {
          const double t = (a2 - a1) / (b1 - b2);
          if (t > 0.0 && t < 1.0)
            best = std::max(best, std::min(a1 + b1 * t, a2 + b2 * t));
        }
      }
    }
  }
  return best;
}

}  // namespace

double OracleMpceAlpha(const Game& game, const ValuePair& bu,
                       const GridSpec& spec) {
  CheckSpec(spec);
  return std::max(MpcePass(game, bu, spec),
                  MpcePass(game.SwapPlayers(), {bu.second, bu.first}, spec));
}

double OracleMpceAlpha(const Game& game, const GridSpec& spec) {
  return OracleMpceAlpha(game, BestUtilities(game), spec);
}

std::optional<double> OracleBilinear(const BilinearProblem2x2& p, int k) {
  if (k < 1) throw std::invalid_argument("grid k must be >= 1");
  const auto& a = p.objective;
  const auto& b = p.constraint;
  const double d2 = p.row_mass;
  const double d3 = p.col_mass;

  auto objective = [&](double x1, double y1) {
    const double x[2] = {x1, d2 - x1};
    const double y[2] = {y1, d3 - y1};
    double v = 0.0;
    for (int i = 0; i < 2; ++i) {
      v += x[i] * p.row_linear[i] + y[i] * p.col_linear[i];
      for (int j = 0; j < 2; ++j) v += x[i] * a[i][j] * y[j];
    }
    return v;
  };
  auto constraint = [&](double x1, double y1) {
    const double x[2] = {x1, d2 - x1};
    const double y[2] = {y1, d3 - y1};
    double v = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) v += x[i] * b[i][j] * y[j];
    return v;
  };

  std::vector<double> ys = Lattice(k);
  for (double& y : ys) y *= d3;
  double best = -kInf;

  // x1 on the lattice; in y1 both functions are affine.
  for (int s = 0; s <= k; ++s) {
    const double x1 = d2 * s / k;
    const double o0 = objective(x1, 0.0);
    const double c0 = constraint(x1, 0.0);
    const double o1 = objective(x1, d3);
    const double c1 = constraint(x1, d3);
    best = std::max(best, kernels::MaskedAffineMax(o0, (o1 - o0) / d3, c0,
                                                   (c1 - c0) / d3, p.rhs, ys));
  }

  // One coordinate on the lattice; the other enters both functions affinely,
  // so its feasible values form an interval and the objective peaks at one
  // of the ends.
  auto endpoints = [&](double mass, auto&& constraint_at,
                       auto&& objective_at) {
    const double c0 = constraint_at(0.0);
    const double slope = (constraint_at(mass) - c0) / mass;
    double lo = 0.0, hi = mass;
    if (slope > 0) {
      lo = std::max(lo, (p.rhs - c0) / slope);
    } else if (slope < 0) {
      hi = std::min(hi, (p.rhs - c0) / slope);
    } else if (c0 < p.rhs) {
      return;
    }
    if (lo > hi) return;
    for (auto [t, inward] : {std::pair{lo, hi}, std::pair{hi, lo}}) {
      // Endpoints from a division can miss by a few ulps; step inward until
      // the point is honestly feasible.
      for (int ulp = 0; ulp < 8; ++ulp, t = std::nextafter(t, inward)) {
        if (constraint_at(t) >= p.rhs) {
          best = std::max(best, objective_at(t));
          break;
        }
      }
    }
  };
  for (double y1 : ys) {
    endpoints(
        d2, [&](double x1) { return constraint(x1, y1); },
        [&](double x1) { return objective(x1, y1); });
  }
  for (int s = 0; s <= k; ++s) {
    const double x1 = d2 * s / k;
    endpoints(
        d3, [&](double y1) { return constraint(x1, y1); },
        [&](double y1) { return objective(x1, y1); });
  }
  if (best == -kInf) return std::nullopt;
  return best;
}

}  // namespace coopeq
