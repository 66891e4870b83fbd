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

#ifndef COOPEQ_KERNELS_HPP_
#define COOPEQ_KERNELS_HPP_

// Data-parallel arithmetic used by utility evaluation and the grid oracles.
// Each kernel has a scalar reference implementation and an AVX2 variant; the
// variant is chosen once at startup from the CPU's feature flags and can be
// overridden (tests, or COOPEQ_KERNELS=scalar in the environment).

#include <cstddef>
#include <span>

namespace coopeq::kernels {

enum class Backend { kScalar, kAvx2 };

const char* ToString(Backend b);

bool Avx2Available();
Backend ActiveBackend();
// Throws std::runtime_error when the backend is not supported on this CPU.
void SetBackend(Backend b);

class ScopedBackend {
 public:
  explicit ScopedBackend(Backend b) : saved_(ActiveBackend()) {
    SetBackend(b);
  }
  ~ScopedBackend() { SetBackend(saved_); }
  ScopedBackend(const ScopedBackend&) = delete;
  ScopedBackend& operator=(const ScopedBackend&) = delete;

 private:
  Backend saved_;
};

double Dot(std::span<const double> a, std::span<const double> b);

// out[j] = sum_i x[i] * m[i, j] for a row-major rows x cols matrix.
void RowTimesMatrix(std::span<const double> x, const double* m,
                    std::size_t rows, std::size_t cols, std::span<double> out);

// out[i] = sum_j m[i, j] * y[j].
void MatrixTimesVector(const double* m, std::size_t rows, std::size_t cols,
                       std::span<const double> y, std::span<double> out);

// Max of payoff[j] over the responder's eps-argmax set
// {j : responder[j] >= max(responder) - eps}.
double BestResponseValue(std::span<const double> responder,
                         std::span<const double> payoff, double eps);

// max over t in ts of (a + b t) subject to c + d t >= threshold;
// -infinity when no t qualifies.
double MaskedAffineMax(double a, double b, double c, double d,
                       double threshold, std::span<const double> ts);

// max over t in ts of min(a1 + b1 t, a2 + b2 t); -infinity for empty ts.
double MaxMinAffine(double a1, double b1, double a2, double b2,
                    std::span<const double> ts);

}  // namespace coopeq::kernels

#endif  // COOPEQ_KERNELS_HPP_
