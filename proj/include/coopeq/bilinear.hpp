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

#ifndef COOPEQ_BILINEAR_HPP_
#define COOPEQ_BILINEAR_HPP_

// Constant-time solver for the simple 2x2 bilinear program
//
//   maximize    x^T A y + x^T c + y^T c'
//   subject to  x^T B y >= d1
//               x1 + x2 = d2,  y1 + y2 = d3,  x, y >= 0.
//
// Substituting x2 = d2 - x1 and y2 = d3 - y1 turns the program into
//
//   maximize    g1 x1 y1 + g2 x1 + g3 y1            (+ constant)
//   subject to  g4 x1 y1 + g5 x1 + g6 y1 + g7 >= 0,  x1 in [0,d2], y1 in [0,d3]
//
// For fixed y1 the feasible x1 form one interval whose shape depends on the
// sign of g4 y1 + g5, and the objective is linear in x1, so the optimum sits
// at an interval endpoint. That splits the problem into eight single-variable
// cases (x1 pinned to d2, to 0, or to the constraint boundary), each of which
// is maximized over a y1 interval.

#include <array>
#include <optional>

namespace coopeq {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<Vec2, 2>;

struct BilinearProblem2x2 {
  Mat2 objective{};   // A
  Mat2 constraint{};  // B
  Vec2 row_linear{};  // c
  Vec2 col_linear{};  // c'
  double rhs = 0.0;   // d1
  double row_mass = 1.0;  // d2
  double col_mass = 1.0;  // d3
};

enum class BilinearStatus { kOptimal, kInfeasible };

struct BilinearSolution {
  BilinearStatus status = BilinearStatus::kInfeasible;
  Vec2 x{};
  Vec2 y{};
  double value = 0.0;  // true objective, additive constant included
};

struct BilinearOptions {
  // Half-width of the band around g4 y1 + g5 = 0 treated as "zero",
  // relative to the magnitude of the linear function.
  double case_eps = 1e-10;
  // Constraint slack accepted when certifying a candidate, relative to the
  // magnitude of B and d1. Covers rounding only.
  double feasibility_eps = 1e-12;
};

// The seven reduction constants g1..g7.
struct ReducedCoefficients {
  std::array<double, 7> g{};
  double constant = 0.0;  // a22 d2 d3 + c2 d2 + c'2 d3
};

ReducedCoefficients Reduce(const BilinearProblem2x2& p);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Set of x1 in [0, d2] with (x1, y1) feasible; empty optional when none.
std::optional<Interval> FeasibilityInterval(
    const BilinearProblem2x2& p, double y1,
    const BilinearOptions& options = {});

// Throws std::invalid_argument when d2 or d3 is not positive.
BilinearSolution SolveBilinear2x2(const BilinearProblem2x2& p,
                                  const BilinearOptions& options = {});

// Objective and constraint of p at (x, y), for verification.
double BilinearObjective(const BilinearProblem2x2& p, const Vec2& x,
                         const Vec2& y);
double BilinearConstraintValue(const BilinearProblem2x2& p, const Vec2& x,
                               const Vec2& y);

}  // namespace coopeq

#endif  // COOPEQ_BILINEAR_HPP_
