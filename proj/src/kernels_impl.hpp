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

#ifndef COOPEQ_SRC_KERNELS_IMPL_HPP_
#define COOPEQ_SRC_KERNELS_IMPL_HPP_

// Backend-specific entry points. Exposed so the equivalence tests can run
// both implementations side by side.

#include <cstddef>
#include <span>

namespace coopeq::kernels {

#define COOPEQ_KERNEL_DECLS                                                  \
  double Dot(std::span<const double> a, std::span<const double> b);          \
  void RowTimesMatrix(std::span<const double> x, const double* m,            \
                      std::size_t rows, std::size_t cols,                    \
                      std::span<double> out);                                \
  void MatrixTimesVector(const double* m, std::size_t rows, std::size_t cols, \
                         std::span<const double> y, std::span<double> out);  \
  double BestResponseValue(std::span<const double> responder,                \
                           std::span<const double> payoff, double eps);      \
  double MaskedAffineMax(double a, double b, double c, double d,             \
                         double threshold, std::span<const double> ts);      \
  double MaxMinAffine(double a1, double b1, double a2, double b2,            \
                      std::span<const double> ts);

namespace scalar {
COOPEQ_KERNEL_DECLS
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define COOPEQ_HAVE_AVX2_KERNELS 1
namespace avx2 {
COOPEQ_KERNEL_DECLS
}  // namespace avx2
#else
#define COOPEQ_HAVE_AVX2_KERNELS 0
#endif

#undef COOPEQ_KERNEL_DECLS

}  // namespace coopeq::kernels

#endif  // COOPEQ_SRC_KERNELS_IMPL_HPP_
