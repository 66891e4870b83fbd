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

#include "coopeq/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace coopeq {
namespace {

double MaxAbs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void Validate(const LpProblem& p) {
  const std::size_t n = p.num_vars();
  if (n == 0) throw std::invalid_argument("LP needs at least one variable");
  for (double c : p.objective) {
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite LP cost");
  }
  auto check_rows = [n](const std::vector<LinearConstraint>& rows) {
    for (const auto& row : rows) {
      if (row.coeffs.size() != n) {
        throw std::invalid_argument("LP row has " +
                                    std::to_string(row.coeffs.size()) +
                                    " coefficients, expected " +
                                    std::to_string(n));
      }
      if (!std::isfinite(row.rhs)) {
        throw std::invalid_argument("non-finite LP right-hand side");
      }
      for (double a : row.coeffs) {
        if (!std::isfinite(a)) {
          throw std::invalid_argument("non-finite LP coefficient");
        }
      }
    }
  };
  check_rows(p.equalities);
  check_rows(p.lower_bounds);
}

// Column scales from a few passes of geometric-mean equilibration over the
// nonzero constraint coefficients. Payoff-derived rows can span many orders
// of magnitude across columns, which otherwise wrecks pivoting accuracy.
std::vector<double> ColumnScales(const LpProblem& p) {
  const std::size_t n = p.num_vars();
  std::vector<const LinearConstraint*> rows;
  for (const auto& c : p.equalities) rows.push_back(&c);
  for (const auto& c : p.lower_bounds) rows.push_back(&c);
  std::vector<double> col(n, 1.0), row(rows.size(), 1.0);
  for (int pass = 0; pass < 4; ++pass) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      double lo = HUGE_VAL, hi = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double a = std::abs(rows[i]->coeffs[j]) * col[j];
        if (a == 0.0) continue;
        lo = std::min(lo, a);
        hi = std::max(hi, a);
      }
      row[i] = hi > 0.0 ? 1.0 / std::sqrt(lo * hi) : 1.0;
    }
    for (std::size_t j = 0; j < n; ++j) {
      double lo = HUGE_VAL, hi = 0.0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const double a = std::abs(rows[i]->coeffs[j]) * row[i];
        if (a == 0.0) continue;
        lo = std::min(lo, a);
        hi = std::max(hi, a);
      }
      if (hi > 0.0) col[j] = 1.0 / std::sqrt(lo * hi);
    }
  }
  // Powers of two keep the scaling itself exact.
  for (double& c : col) c = std::exp2(std::round(std::log2(c)));
  return col;
}

// Largest constraint violation of x relative to the row's magnitude.
double Violation(const LpProblem& p, std::span<const double> x) {
  const double xmax = std::max(1.0, MaxAbs(x));
  double worst = 0.0;
  auto check = [&](const LinearConstraint& c, bool equality) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += c.coeffs[j] * x[j];
    const double scale = std::max({1.0, MaxAbs(c.coeffs) * xmax,
                                   std::abs(c.rhs)});
    const double gap = equality ? std::abs(lhs - c.rhs) : c.rhs - lhs;
    worst = std::max(worst, gap / scale);
  };
  for (const auto& c : p.equalities) check(c, true);
  for (const auto& c : p.lower_bounds) check(c, false);
  return worst;
}

enum class Outcome { kOptimal, kUnbounded, kInfeasible };

// Two-phase tableau simplex in arithmetic type Real.
//
// Columns: structural | slack (one per >= row) | artificial (one per row)
// | rhs. The last tableau row holds reduced costs, its rhs entry -z.
template <typename Real>
class Tableau {
 public:
  Tableau(const LpProblem& p, const std::vector<double>& col_scale,
          const LpOptions& opt)
      : opt_(opt),
        n_(p.num_vars()),
        slack_(p.lower_bounds.size()),
        rows_(p.equalities.size() + slack_),
        width_(n_ + slack_ + rows_ + 1),
        t_((rows_ + 1) * width_, Real(0)),
        basis_(rows_),
        active_(rows_, true) {
    std::vector<double> scaled(n_);
    std::size_t r = 0;
    auto load = [&](const LinearConstraint& c, bool with_slack) {
      for (std::size_t j = 0; j < n_; ++j)
        scaled[j] = c.coeffs[j] * col_scale[j];
      const double norm = MaxAbs(scaled);
      const Real scale = norm > 0.0 ? Real(1) / Real(norm) : Real(1);
      const Real sign = c.rhs < 0.0 ? Real(-1) : Real(1);
      Real* row = Row(r);
      for (std::size_t j = 0; j < n_; ++j) row[j] = sign * scale * scaled[j];
      if (with_slack) row[n_ + (r - p.equalities.size())] = -sign;
      row[width_ - 1] = sign * scale * Real(c.rhs);
      row[n_ + slack_ + r] = Real(1);
      basis_[r] = n_ + slack_ + r;
      rhs_scale_ = std::max(rhs_scale_, row[width_ - 1]);
      ++r;
    };
    for (const auto& c : p.equalities) load(c, false);
    for (const auto& c : p.lower_bounds) load(c, true);
    original_.assign(t_.begin(), t_.begin() + rows_ * width_);
  }

  Outcome Run(const std::vector<double>& costs, std::vector<double>& x) {
    const std::size_t rhs = width_ - 1;
    // Phase 1: maximize -(sum of artificials).
    std::vector<Real> c(width_ - 1, Real(0));
    for (std::size_t j = n_ + slack_; j < width_ - 1; ++j) c[j] = Real(-1);
    LoadObjective(c);
    Iterate(width_ - 1);
    if (Objective()[rhs] > Real(opt_.feasibility_eps) * rhs_scale_)
      return Outcome::kInfeasible;
    DriveOutArtificials();

    // Phase 2; artificials may not re-enter.
    std::fill(c.begin(), c.end(), Real(0));
    for (std::size_t j = 0; j < n_; ++j) c[j] = Real(costs[j]);
    LoadObjective(c);
    if (!Iterate(n_ + slack_)) return Outcome::kUnbounded;

    x.assign(n_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (active_[r] && basis_[r] < n_)
        x[basis_[r]] = static_cast<double>(std::max(At(r, rhs), Real(0)));
    }
    return Outcome::kOptimal;
  }

 private:
  Real* Row(std::size_t r) { return t_.data() + r * width_; }
  Real& At(std::size_t r, std::size_t c) { return t_[r * width_ + c]; }
  Real* Objective() { return Row(rows_); }

  void Pivot(std::size_t row, std::size_t col) {
    Real* pr = Row(row);
    const Real inv = Real(1) / pr[col];
    nonzero_.clear();
    for (std::size_t j = 0; j < width_; ++j) {
      if (pr[j] == Real(0)) continue;
      pr[j] *= inv;
      nonzero_.push_back(j);
    }
    pr[col] = Real(1);
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == row) continue;
      Real* tr = Row(r);
      const Real f = tr[col];
      if (f == Real(0)) continue;
      for (std::size_t j : nonzero_) tr[j] -= f * pr[j];
      tr[col] = Real(0);
    }
    basis_[row] = col;
  }

  void LoadObjective(const std::vector<Real>& costs) {
    costs_ = costs;
    Real* obj = Objective();
    std::fill(obj, obj + width_, Real(0));
    std::copy(costs.begin(), costs.end(), obj);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!active_[r]) continue;
      const Real cb = costs[basis_[r]];
      if (cb == Real(0)) continue;
      const Real* row = Row(r);
      for (std::size_t j = 0; j < width_; ++j) obj[j] -= cb * row[j];
    }
    for (std::size_t r = 0; r < rows_; ++r)
      if (active_[r]) obj[basis_[r]] = Real(0);
  }

  // Rebuilds the constraint rows as B^-1 [A | b] from the original rows by
  // Gauss-Jordan elimination with partial pivoting, then the objective row.
  // Returns false (tableau untouched) if the basis looks singular.
  bool Reinvert() {
    std::vector<std::size_t> act;
    for (std::size_t r = 0; r < rows_; ++r)
      if (active_[r]) act.push_back(r);
    const std::size_t k = act.size();
    std::vector<Real> work(k * width_);
    for (std::size_t i = 0; i < k; ++i)
      std::copy_n(original_.data() + act[i] * width_, width_,
                  work.data() + i * width_);
    auto w = [&](std::size_t r) { return work.data() + r * width_; };

    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t col = basis_[act[i]];
      std::size_t best = i;
      Real best_abs = 0;
      for (std::size_t r = i; r < k; ++r) {
        const Real a = std::abs(w(r)[col]);
        if (a > best_abs) {
          best_abs = a;
          best = r;
        }
      }
      if (best_abs < Real(1e-14)) return false;
      if (best != i) std::swap_ranges(w(i), w(i) + width_, w(best));
      Real* pr = w(i);
      const Real inv = Real(1) / pr[col];
      for (std::size_t j = 0; j < width_; ++j) pr[j] *= inv;
      pr[col] = Real(1);
      for (std::size_t r = 0; r < k; ++r) {
        if (r == i) continue;
        Real* tr = w(r);
        const Real f = tr[col];
        if (f == Real(0)) continue;
        for (std::size_t j = 0; j < width_; ++j) tr[j] -= f * pr[j];
        tr[col] = Real(0);
      }
    }
    for (std::size_t i = 0; i < k; ++i) std::copy_n(w(i), width_, Row(act[i]));
    LoadObjective(std::vector<Real>(costs_));
    return true;
  }

  // Returns false when the objective is unbounded.
  bool Iterate(std::size_t allowed_cols) {
    constexpr std::size_t kReinvertEvery = 16;
    // Consecutive pivots without objective progress before the leaving rule
    // falls back to Bland's lowest index.
    constexpr std::size_t kStallLimit = 40;
    const std::size_t rhs = width_ - 1;
    const Real tie = Real(1e-13);
    const Real pivot_eps = Real(opt_.pivot_eps);
    const std::size_t max_pivots = 100000 + 50 * (rows_ + width_);
    std::size_t since_reinvert = 0;
    std::size_t stalled = 0;
    bool fresh = false;
    for (std::size_t iter = 0; iter < max_pivots; ++iter) {
      if (since_reinvert == kReinvertEvery) {
        fresh = Reinvert();
        since_reinvert = 0;
      }
      const Real* obj = Objective();
      // Bland: lowest-index column with a positive reduced cost enters.
      std::size_t entering = allowed_cols;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (obj[j] > pivot_eps) {
          entering = j;
          break;
        }
      }
      if (entering == allowed_cols) {
        // Only trust optimality on a freshly rebuilt tableau.
        if (fresh) return true;
        fresh = Reinvert();
        since_reinvert = 0;
        if (!fresh) return true;
        continue;
      }

      // Two-pass ratio test. Pass 1 bounds the step with every basic
      // variable allowed to go delta negative; pass 2 picks, among rows
      // within that bound, the largest pivot element (or the lowest basic
      // index once degenerate pivots stall).
      Real col_max = 0;
      for (std::size_t r = 0; r < rows_; ++r)
        if (active_[r]) col_max = std::max(col_max, std::abs(At(r, entering)));
      const Real piv_tol = std::max(pivot_eps, Real(1e-9) * col_max);
      Real bound = Real(HUGE_VAL);
      for (std::size_t r = 0; r < rows_; ++r) {
        if (!active_[r]) continue;
        const Real a = At(r, entering);
        if (a <= piv_tol) continue;
        bound = std::min(bound, std::max(At(r, rhs), Real(0)) / a);
      }
      if (bound == Real(HUGE_VAL)) return false;
      const bool bland = stalled >= kStallLimit;
      std::size_t leaving = rows_;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (!active_[r]) continue;
        const Real a = At(r, entering);
        if (a <= piv_tol ||
            std::max(At(r, rhs), Real(0)) > bound * a + tie)
          continue;
        if (leaving == rows_ ||
            (bland ? basis_[r] < basis_[leaving] : a > At(leaving, entering)))
          leaving = r;
      }
      const Real before = obj[rhs];
      Pivot(leaving, entering);
      const Real after = Objective()[rhs];
      stalled = after < before - Real(1e-12) * (Real(1) + std::abs(before))
                    ? 0
                    : stalled + 1;
      ++since_reinvert;
      fresh = false;
    }
    throw std::runtime_error("simplex pivot limit exceeded");
  }

  void DriveOutArtificials() {
    const std::size_t first_artificial = n_ + slack_;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!active_[r] || basis_[r] < first_artificial) continue;
      std::size_t col = first_artificial;
      Real best = Real(opt_.pivot_eps);
      for (std::size_t j = 0; j < first_artificial; ++j) {
        const Real a = std::abs(At(r, j));
        if (a > best) {
          best = a;
          col = j;
        }
      }
      if (col == first_artificial) {
        active_[r] = false;  // Redundant row.
      } else {
        Pivot(r, col);
      }
    }
  }

  LpOptions opt_;
  std::size_t n_, slack_, rows_, width_;
  std::vector<Real> t_;
  std::vector<Real> original_;  // constraint rows as loaded
  std::vector<Real> costs_;     // current phase objective
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
  std::vector<std::size_t> nonzero_;  // pivot row support, reused
  Real rhs_scale_ = 1;
};

}  // namespace

const char* ToString(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

LpSolution SimplexSolver::Solve(const LpProblem& problem) const {
  Validate(problem);
  const std::size_t n = problem.num_vars();
  const std::vector<double> col_scale = ColumnScales(problem);
  std::vector<double> costs(n);
  for (std::size_t j = 0; j < n; ++j)
    costs[j] = problem.objective[j] * col_scale[j];
  const double cost_norm = MaxAbs(costs);
  if (cost_norm > 0.0)
    for (double& c : costs) c /= cost_norm;

  auto finish = [&](Outcome o, std::vector<double>& x) -> LpSolution {
    if (o == Outcome::kInfeasible) return {LpStatus::kInfeasible, {}, 0.0};
    if (o == Outcome::kUnbounded) return {LpStatus::kUnbounded, {}, 0.0};
    for (std::size_t j = 0; j < n; ++j) x[j] *= col_scale[j];
    LpSolution sol{LpStatus::kOptimal, std::move(x), 0.0};
    for (std::size_t j = 0; j < n; ++j)
      sol.value += problem.objective[j] * sol.x[j];
    return sol;
  };

  std::vector<double> x;
  Tableau<double> fast(problem, col_scale, options_);
  LpSolution sol = finish(fast.Run(costs, x), x);
  if (sol.status == LpStatus::kOptimal &&
      Violation(problem, sol.x) <= options_.feasibility_eps)
    return sol;

  // Rounding may have steered the double tableau into a wrong basis or a
  // wrong verdict; redo the whole solve with a wider mantissa.
  Tableau<long double> careful(problem, col_scale, options_);
  sol = finish(careful.Run(costs, x), x);
  // Phase 1 accepts residuals up to the tolerance, so a system that is
  // infeasible by less than that can still reach here; its "optimum" then
  // violates the rows and is reported as infeasible.
  if (sol.status == LpStatus::kOptimal &&
      Violation(problem, sol.x) > options_.feasibility_eps)
    return {LpStatus::kInfeasible, {}, 0.0};
  return sol;
}

LpSolution SolveLp(const LpProblem& problem, const LpOptions& options) {
  return SimplexSolver(options).Solve(problem);
}

std::vector<std::size_t> VertexSupport(std::span<const double> x, double eps) {
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > eps) support.push_back(i);
  }
  return support;
}

}  // namespace coopeq
