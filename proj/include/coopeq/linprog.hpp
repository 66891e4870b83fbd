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

#ifndef COOPEQ_LINPROG_HPP_
#define COOPEQ_LINPROG_HPP_

// Dense two-phase primal simplex. Entering columns follow Bland's rule; the
// leaving row comes from a two-pass (Harris) ratio test that prefers large
// pivots and falls back to Bland's lowest index when degenerate pivots stall.
// The tableau is periodically rebuilt from the original rows.
//
// Problems have the form
//
//   maximize    c^T x
//   subject to  a_k^T x  = b_k   (equalities)
//               a_k^T x >= b_k   (lower-bound rows, slack variables added)
//               x >= 0
//
// The solver is meant for the small, dense programs that arise from a single
// game: best-response polytopes, minimax rows and Pareto-improvement steps.

#include <cstddef>
#include <span>
#include <vector>

namespace coopeq {

struct LinearConstraint {
  std::vector<double> coeffs;
  double rhs = 0.0;
};

struct LpProblem {
  std::vector<double> objective;
  std::vector<LinearConstraint> equalities;
  std::vector<LinearConstraint> lower_bounds;

  std::size_t num_vars() const { return objective.size(); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* ToString(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;  // Empty unless optimal.
  double value = 0.0;     // c^T x when optimal.
};

struct LpOptions {
  // Threshold for admissible pivots and positive reduced costs. Rows and the
  // objective are normalized to unit max-norm before it is applied.
  double pivot_eps = 1e-10;
  // Phase-1 residual above which the problem is declared infeasible.
  double feasibility_eps = 1e-9;
};

// Solves in double precision first; an answer that fails verification against
// the unscaled constraints is recomputed with an extended-precision tableau.
class SimplexSolver {
 public:
  explicit SimplexSolver(LpOptions options = {}) : options_(options) {}

  LpSolution Solve(const LpProblem& problem) const;

 private:
  LpOptions options_;
};

LpSolution SolveLp(const LpProblem& problem, const LpOptions& options = {});

// Sorted indices i with x[i] > eps.
std::vector<std::size_t> VertexSupport(std::span<const double> x,
                                       double eps = 1e-9);

}  // namespace coopeq

#endif  // COOPEQ_LINPROG_HPP_
