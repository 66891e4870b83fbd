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

#include <algorithm>
#include <limits>

#include "kernels_impl.hpp"

namespace coopeq::kernels::scalar {

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

void RowTimesMatrix(std::span<const double> x, const double* m,
                    std::size_t rows, std::size_t cols,
                    std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    const double* row = m + i * cols;
    for (std::size_t j = 0; j < cols; ++j) out[j] += xi * row[j];
  }
}

void MatrixTimesVector(const double* m, std::size_t rows, std::size_t cols,
                       std::span<const double> y, std::span<double> out) {
  for (std::size_t i = 0; i < rows; ++i) {
    out[i] = Dot({m + i * cols, cols}, y);
  }
}

double BestResponseValue(std::span<const double> responder,
                         std::span<const double> payoff, double eps) {
  double top = -std::numeric_limits<double>::infinity();
  for (double v : responder) top = std::max(top, v);
  const double cutoff = top - eps;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < responder.size(); ++j) {
    if (responder[j] >= cutoff) best = std::max(best, payoff[j]);
  }
  return best;
}

double MaskedAffineMax(double a, double b, double c, double d,
                       double threshold, std::span<const double> ts) {
  double best = -std::numeric_limits<double>::infinity();
  for (double t : ts) {
    if (c + d * t >= threshold) best = std::max(best, a + b * t);
  }
  return best;
}

double MaxMinAffine(double a1, double b1, double a2, double b2,
                    std::span<const double> ts) {
  double best = -std::numeric_limits<double>::infinity();
  for (double t : ts) {
    best = std::max(best, std::min(a1 + b1 * t, a2 + b2 * t));
  }
  return best;
}

}  // namespace coopeq::kernels::scalar
