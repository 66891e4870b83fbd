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

#include "coopeq/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coopeq {
namespace {

// slope * y + offset
struct Linear {
  double slope = 0.0;
  double offset = 0.0;

  double at(double y) const { return slope * y + offset; }
  Linear operator-() const { return {-slope, -offset}; }
};

struct YRange {
  double lo;
  double hi;
  bool empty() const { return lo > hi; }
};

// Tolerance for sign tests on a linear function over [0, d3].
double Band(const Linear& f, double d3, double rel) {
  return rel * std::max(1.0, std::abs(f.slope) * d3 + std::abs(f.offset));
}

// Intersects r with {y : f(y) >= 0}.
void RequireNonNegative(YRange& r, const Linear& f) {
  if (r.empty()) return;
  if (f.slope == 0.0) {
    if (f.offset < 0.0) r.hi = r.lo - 1.0;
    return;
  }
  const double root = -f.offset / f.slope;
  if (f.slope > 0.0) {
    r.lo = std::max(r.lo, root);
  } else {
    r.hi = std::min(r.hi, root);
  }
}

// Real roots of a y^2 + b y + c = 0 via the cancellation-free formula.
// Returns the number of roots written to out.
int QuadraticRoots(double a, double b, double c, double out[2]) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (scale == 0.0) return 0;
  if (std::abs(a) <= 1e-14 * scale) {
    if (b == 0.0) return 0;
    out[0] = -c / b;
    return 1;
  }
  double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    if (disc < -1e-12 * b * b - 1e-300) return 0;
    disc = 0.0;
  }
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(sq, b));
  if (q == 0.0) {
    out[0] = 0.0;
    return 1;
  }
  out[0] = q / a;
  out[1] = c / q;
  return 2;
}

class CaseSolver {
 public:
  CaseSolver(const BilinearProblem2x2& p, const BilinearOptions& opt)
      : p_(p), opt_(opt), d2_(p.row_mass), d3_(p.col_mass) {
    const auto r = Reduce(p);
    const auto& g = r.g;
    objective_slope_ = {g[0], g[1]};     // G(y) = g1 y + g2
    denom_ = {g[3], g[4]};               // D(y) = g4 y + g5
    numer_ = {-g[5], -g[6]};             // N(y) = -g6 y - g7
    at_zero_ = {g[5], g[6]};             // constraint at x1 = 0
    at_full_ = {d2_ * g[3] + g[5], d2_ * g[4] + g[6]};  // at x1 = d2
    g_ = g;
    double bmax = 0.0;
    for (const auto& row : p.constraint) {
      for (double v : row) bmax = std::max(bmax, std::abs(v));
    }
    feas_tol_ = opt.feasibility_eps *
                std::max({1.0, std::abs(p.rhs), bmax * d2_ * d3_});
    denom_band_ = Band(denom_, d3_, opt.case_eps);
  }

  BilinearSolution Run() {
    const Linear& slope = objective_slope_;
    // Q1: D > 0, x1 = d2 feasible, objective increasing in x1.
    FixedX(d2_, {denom_, at_full_, slope});
    // Q2: D > 0, x1 = 0 feasible, objective decreasing.
    FixedX(0.0, {denom_, at_zero_, -slope});
    // Q3: D > 0, boundary point in [0, d2], objective decreasing.
    BoundaryX({denom_, -at_zero_, at_full_, -slope});
    // Q4: D < 0, x1 = d2 inside the feasible interval, objective increasing.
    FixedX(d2_, {-denom_, at_full_, slope});
    // Q5: D < 0, boundary point in [0, d2], objective increasing.
    BoundaryX({-denom_, at_zero_, -at_full_, slope});
    // Q6: D < 0, x1 = 0 feasible, objective decreasing.
    FixedX(0.0, {-denom_, at_zero_, -slope});
    // Q7/Q8: D == 0, feasibility independent of x1.
    if (const auto r = ZeroDenominatorRange()) {
      FixedXOn(d2_, *r, {at_zero_, slope});
      FixedXOn(0.0, *r, {at_zero_, -slope});
    }
    // The switching point and the box corners, with x1 taken from the
    // feasibility interval directly.
    if (g_[3] != 0.0) BestOverInterval(-g_[4] / g_[3]);
    BestOverInterval(0.0);
    BestOverInterval(d3_);
    return best_;
  }

 private:
  // Each condition requires f(y) >= 0; strict inequalities are closed off
  // and rely on the final feasibility certificate.
  using Conditions = std::initializer_list<Linear>;

  YRange Restricted(YRange r, Conditions conds) const {
    for (const auto& f : conds) RequireNonNegative(r, f);
    r.lo = std::max(r.lo, 0.0);
    r.hi = std::min(r.hi, d3_);
    return r;
  }

  void FixedX(double x1, Conditions conds) {
    FixedXOn(x1, {0.0, d3_}, conds);
  }

  void FixedXOn(double x1, YRange r, Conditions conds) {
    r = Restricted(r, conds);
    if (r.empty()) return;
    // Objective is linear in y1 once x1 is pinned.
    Consider(x1, r.lo);
    if (r.hi != r.lo) Consider(x1, r.hi);
  }

  void BoundaryX(Conditions conds) {
    const YRange r = Restricted({0.0, d3_}, conds);
    if (r.empty()) return;
    ConsiderBoundary(r.lo);
    if (r.hi != r.lo) ConsiderBoundary(r.hi);
    const auto& g = g_;
    const double a = g[2] * g[3] * g[3] - g[0] * g[3] * g[5];
    const double b = 2.0 * g[4] * (g[2] * g[3] - g[0] * g[5]);
    const double c = g[2] * g[4] * g[4] + g[1] * g[3] * g[6] -
                     g[4] * (g[0] * g[6] + g[1] * g[5]);
    double roots[2];
    const int n = QuadraticRoots(a, b, c, roots);
    for (int i = 0; i < n; ++i) {
      if (roots[i] > r.lo && roots[i] < r.hi) ConsiderBoundary(roots[i]);
    }
  }

  void ConsiderBoundary(double y1) {
    const double d = denom_.at(y1);
    if (std::abs(d) <= denom_band_) return;
    Consider(std::clamp(numer_.at(y1) / d, 0.0, d2_), y1);
  }

  std::optional<YRange> ZeroDenominatorRange() const {
    if (std::abs(denom_.slope) * d3_ <= denom_band_) {
      if (std::abs(denom_.offset) <= denom_band_) return YRange{0.0, d3_};
      return std::nullopt;
    }
    const double y = -denom_.offset / denom_.slope;
    const double slack = denom_band_ / std::abs(denom_.slope);
    if (y < -slack || y > d3_ + slack) return std::nullopt;
    const double yc = std::clamp(y, 0.0, d3_);
    return YRange{yc, yc};
  }

  void BestOverInterval(double y1) {
    if (!(y1 >= 0.0 && y1 <= d3_)) return;
    const auto iv = FeasibilityInterval(p_, y1, opt_);
    if (!iv) return;
    Consider(iv->lo, y1);
    Consider(iv->hi, y1);
  }

  void Consider(double x1, double y1) {
    x1 = std::clamp(x1, 0.0, d2_);
    y1 = std::clamp(y1, 0.0, d3_);
    const Vec2 x{x1, d2_ - x1};
    const Vec2 y{y1, d3_ - y1};
    if (BilinearConstraintValue(p_, x, y) < p_.rhs - feas_tol_) return;
    const double v = BilinearObjective(p_, x, y);
    if (best_.status == BilinearStatus::kInfeasible || v > best_.value) {
      best_ = {BilinearStatus::kOptimal, x, y, v};
    }
  }

  const BilinearProblem2x2& p_;
  const BilinearOptions& opt_;
  double d2_;
  double d3_;
  std::array<double, 7> g_{};
  Linear objective_slope_, denom_, numer_, at_zero_, at_full_;
  double feas_tol_ = 0.0;
  double denom_band_ = 0.0;
  BilinearSolution best_;
};

}  // namespace

ReducedCoefficients Reduce(const BilinearProblem2x2& p) {
  const auto& a = p.objective;
  const auto& b = p.constraint;
  const double d2 = p.row_mass;
  const double d3 = p.col_mass;
  ReducedCoefficients r;
  r.g[0] = a[0][0] - a[0][1] - a[1][0] + a[1][1];
  r.g[1] = a[0][1] * d3 - a[1][1] * d3 + p.row_linear[0] - p.row_linear[1];
  r.g[2] = a[1][0] * d2 - a[1][1] * d2 + p.col_linear[0] - p.col_linear[1];
  r.g[3] = b[0][0] - b[0][1] - b[1][0] + b[1][1];
  r.g[4] = b[0][1] * d3 - b[1][1] * d3;
  r.g[5] = b[1][0] * d2 - b[1][1] * d2;
  r.g[6] = b[1][1] * d2 * d3 - p.rhs;
  r.constant =
      a[1][1] * d2 * d3 + p.row_linear[1] * d2 + p.col_linear[1] * d3;
  return r;
}

std::optional<Interval> FeasibilityInterval(const BilinearProblem2x2& p,
                                            double y1,
                                            const BilinearOptions& options) {
  const auto& g = Reduce(p).g;
  const double d2 = p.row_mass;
  const double slope = g[3] * y1 + g[4];  // coefficient of x1
  const double rest = g[5] * y1 + g[6];   // constraint value at x1 = 0
  const double band =
      options.case_eps *
      std::max(1.0, std::abs(g[3]) * p.col_mass + std::abs(g[4]));
  if (std::abs(slope) <= band) {
    if (rest >= 0.0) return Interval{0.0, d2};
    return std::nullopt;
  }
  const double ratio = -rest / slope;
  if (slope > 0.0) {
    if (ratio > d2) return std::nullopt;
    return Interval{std::max(ratio, 0.0), d2};
  }
  if (ratio < 0.0) return std::nullopt;
  return Interval{0.0, std::min(ratio, d2)};
}

BilinearSolution SolveBilinear2x2(const BilinearProblem2x2& p,
                                  const BilinearOptions& options) {
  if (!(p.row_mass > 0.0) || !(p.col_mass > 0.0)) {
    throw std::invalid_argument("bilinear program needs positive d2 and d3");
  }
  return CaseSolver(p, options).Run();
}

double BilinearObjective(const BilinearProblem2x2& p, const Vec2& x,
                         const Vec2& y) {
  const auto& a = p.objective;
  return x[0] * (a[0][0] * y[0] + a[0][1] * y[1]) +
         x[1] * (a[1][0] * y[0] + a[1][1] * y[1]) + x[0] * p.row_linear[0] +
         x[1] * p.row_linear[1] + y[0] * p.col_linear[0] +
         y[1] * p.col_linear[1];
}

double BilinearConstraintValue(const BilinearProblem2x2& p, const Vec2& x,
                               const Vec2& y) {
  const auto& b = p.constraint;
  return x[0] * (b[0][0] * y[0] + b[0][1] * y[1]) +
         x[1] * (b[1][0] * y[0] + b[1][1] * y[1]);
}

}  // namespace coopeq
