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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "coopeq/kernels.hpp"
#include "kernels_impl.hpp"

namespace coopeq::kernels {
namespace {

struct Table {
  decltype(&scalar::Dot) dot;
  decltype(&scalar::RowTimesMatrix) row_times_matrix;
  decltype(&scalar::MatrixTimesVector) matrix_times_vector;
  decltype(&scalar::BestResponseValue) best_response_value;
  decltype(&scalar::MaskedAffineMax) masked_affine_max;
  decltype(&scalar::MaxMinAffine) max_min_affine;
};

constexpr Table kScalarTable{
    scalar::Dot,           scalar::RowTimesMatrix,
    scalar::MatrixTimesVector, scalar::BestResponseValue,
    scalar::MaskedAffineMax,   scalar::MaxMinAffine,
};

#if COOPEQ_HAVE_AVX2_KERNELS
constexpr Table kAvx2Table{
    avx2::Dot,           avx2::RowTimesMatrix,
    avx2::MatrixTimesVector, avx2::BestResponseValue,
    avx2::MaskedAffineMax,   avx2::MaxMinAffine,
};
#endif

const Table& TableFor(Backend b) {
#if COOPEQ_HAVE_AVX2_KERNELS
  if (b == Backend::kAvx2) return kAvx2Table;
#endif
  return kScalarTable;
}

Backend DetectBackend() {
  if (const char* env = std::getenv("COOPEQ_KERNELS")) {
    if (std::string_view(env) == "scalar") return Backend::kScalar;
  }
  return Avx2Available() ? Backend::kAvx2 : Backend::kScalar;
}

std::atomic<Backend>& Active() {
  static std::atomic<Backend> active{DetectBackend()};
  return active;
}

const Table& Current() { return TableFor(Active().load(std::memory_order_relaxed)); }

}  // namespace

const char* ToString(Backend b) {
  return b == Backend::kAvx2 ? "avx2" : "scalar";
}

bool Avx2Available() {
#if COOPEQ_HAVE_AVX2_KERNELS && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend ActiveBackend() { return Active().load(); }

void SetBackend(Backend b) {
  if (b == Backend::kAvx2 && !Avx2Available()) {
    throw std::runtime_error("AVX2 kernels are not supported on this CPU");
  }
  Active().store(b);
}

double Dot(std::span<const double> a, std::span<const double> b) {
  return Current().dot(a, b);
}

void RowTimesMatrix(std::span<const double> x, const double* m,
                    std::size_t rows, std::size_t cols,
                    std::span<double> out) {
  Current().row_times_matrix(x, m, rows, cols, out);
}

void MatrixTimesVector(const double* m, std::size_t rows, std::size_t cols,
                       std::span<const double> y, std::span<double> out) {
  Current().matrix_times_vector(m, rows, cols, y, out);
}

double BestResponseValue(std::span<const double> responder,
                         std::span<const double> payoff, double eps) {
  return Current().best_response_value(responder, payoff, eps);
}

double MaskedAffineMax(double a, double b, double c, double d,
                       double threshold, std::span<const double> ts) {
  return Current().masked_affine_max(a, b, c, d, threshold, ts);
}

double MaxMinAffine(double a1, double b1, double a2, double b2,
                    std::span<const double> ts) {
  return Current().max_min_affine(a1, b1, a2, b2, ts);
}

}  // namespace coopeq::kernels
