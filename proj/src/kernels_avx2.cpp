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

// Compiled with -mavx2 only for this translation unit; nothing here may run
// unless the dispatcher has confirmed AVX2 support.

#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "kernels_impl.hpp"

namespace coopeq::kernels::avx2 {
namespace {

double HorizontalSum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double HorizontalMax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, swapped));
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

double Dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const double* pa = a.data();
  const double* pb = b.data();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(
        acc0, _mm256_mul_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(pa + i + 4),
                                             _mm256_loadu_pd(pb + i + 4)));
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(
        acc0, _mm256_mul_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i)));
  }
  double sum = HorizontalSum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += pa[i] * pb[i];
  return sum;
}

void RowTimesMatrix(std::span<const double> x, const double* m,
                    std::size_t rows, std::size_t cols,
                    std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  double* po = out.data();
  for (std::size_t i = 0; i < rows; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    const double* row = m + i * cols;
    const __m256d vx = _mm256_set1_pd(xi);
    std::size_t j = 0;
    for (; j + 4 <= cols; j += 4) {
      __m256d acc = _mm256_loadu_pd(po + j);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(vx, _mm256_loadu_pd(row + j)));
      _mm256_storeu_pd(po + j, acc);
    }
    for (; j < cols; ++j) po[j] += xi * row[j];
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
  const std::size_t n = responder.size();
  const double* pr = responder.data();
  const double* pp = payoff.data();
  __m256d vtop = _mm256_set1_pd(kNegInf);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) vtop = _mm256_max_pd(vtop, _mm256_loadu_pd(pr + j));
  double top = HorizontalMax(vtop);
  for (; j < n; ++j) top = std::max(top, pr[j]);

  const double cutoff = top - eps;
  const __m256d vcut = _mm256_set1_pd(cutoff);
  __m256d vbest = _mm256_set1_pd(kNegInf);
  j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(pr + j), vcut, _CMP_GE_OQ);
    __m256d cand = _mm256_blendv_pd(vbest, _mm256_loadu_pd(pp + j), mask);
    vbest = _mm256_max_pd(vbest, cand);
  }
  double best = HorizontalMax(vbest);
  for (; j < n; ++j) {
    if (pr[j] >= cutoff) best = std::max(best, pp[j]);
  }
  return best;
}

double MaskedAffineMax(double a, double b, double c, double d,
                       double threshold, std::span<const double> ts) {
  const std::size_t n = ts.size();
  const double* pt = ts.data();
  const __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b);
  const __m256d vc = _mm256_set1_pd(c), vd = _mm256_set1_pd(d);
  const __m256d vthr = _mm256_set1_pd(threshold);
  __m256d vbest = _mm256_set1_pd(kNegInf);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_loadu_pd(pt + i);
    // mul + add rather than fma keeps results bit-identical to scalar code.
    const __m256d lhs = _mm256_add_pd(vc, _mm256_mul_pd(vd, t));
    const __m256d val = _mm256_add_pd(va, _mm256_mul_pd(vb, t));
    const __m256d mask = _mm256_cmp_pd(lhs, vthr, _CMP_GE_OQ);
    vbest = _mm256_max_pd(vbest, _mm256_blendv_pd(vbest, val, mask));
  }
  double best = HorizontalMax(vbest);
  for (; i < n; ++i) {
    const double t = pt[i];
    if (c + d * t >= threshold) best = std::max(best, a + b * t);
  }
  return best;
}

double MaxMinAffine(double a1, double b1, double a2, double b2,
                    std::span<const double> ts) {
  const std::size_t n = ts.size();
  const double* pt = ts.data();
  const __m256d va1 = _mm256_set1_pd(a1), vb1 = _mm256_set1_pd(b1);
  const __m256d va2 = _mm256_set1_pd(a2), vb2 = _mm256_set1_pd(b2);
  __m256d vbest = _mm256_set1_pd(kNegInf);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_loadu_pd(pt + i);
    const __m256d u = _mm256_add_pd(va1, _mm256_mul_pd(vb1, t));
    const __m256d v = _mm256_add_pd(va2, _mm256_mul_pd(vb2, t));
    vbest = _mm256_max_pd(vbest, _mm256_min_pd(u, v));
  }
  double best = HorizontalMax(vbest);
  for (; i < n; ++i) {
    const double t = pt[i];
    best = std::max(best, std::min(a1 + b1 * t, a2 + b2 * t));
  }
  return best;
}

}  // namespace coopeq::kernels::avx2
