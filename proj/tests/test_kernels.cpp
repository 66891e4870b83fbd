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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "coopeq/kernels.hpp"

namespace coopeq::kernels {
namespace {

std::vector<double> RandomVector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

// Runs fn under each backend and returns both results.
template <typename Fn>
auto BothBackends(Fn&& fn) {
  ScopedBackend s(Backend::kScalar);
  auto scalar = fn();
  SetBackend(Backend::kAvx2);
  auto simd = fn();
  return std::make_pair(scalar, simd);
}

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!Avx2Available()) GTEST_SKIP() << "AVX2 not available";
  }
  std::mt19937_64 rng_{42};
};

TEST(KernelBackend, SelectionAndNames) {
  EXPECT_STREQ(ToString(Backend::kScalar), "scalar");
  {
    ScopedBackend s(Backend::kScalar);
    EXPECT_EQ(ActiveBackend(), Backend::kScalar);
  }
  if (!Avx2Available()) {
    EXPECT_THROW(SetBackend(Backend::kAvx2), std::runtime_error);
  }
}

TEST(KernelScalar, SmallCases) {
  ScopedBackend s(Backend::kScalar);
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  EXPECT_EQ(Dot(a, b), 32.0);
  const std::vector<double> m{1, 2, 3, 4, 5, 6};  // 2x3
  std::vector<double> out(3);
  RowTimesMatrix(std::vector<double>{0.5, 0.5}, m.data(), 2, 3, out);
  EXPECT_EQ(out, (std::vector<double>{2.5, 3.5, 4.5}));
  std::vector<double> out2(2);
  MatrixTimesVector(m.data(), 2, 3, a, out2);
  EXPECT_EQ(out2, (std::vector<double>{14, 32}));
  // Responder ties on 0 and 2; the favourable payoff among them is 7.
  EXPECT_EQ(BestResponseValue(std::vector<double>{1, 0, 1},
                              std::vector<double>{3, 9, 7}, 1e-9),
            7.0);
  const std::vector<double> ts{0, 0.5, 1};
  EXPECT_EQ(MaskedAffineMax(0, 1, 0, -1, -0.5, ts), 0.5);
  EXPECT_EQ(MaskedAffineMax(0, 1, 0, -1, 1, ts),
            -std::numeric_limits<double>::infinity());
  EXPECT_EQ(MaxMinAffine(0, 1, 1, -1, ts), 0.5);
}

TEST_F(KernelEquivalence, DotAndMatVec) {
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 13u, 64u, 101u}) {
    const auto a = RandomVector(rng_, n);
    const auto b = RandomVector(rng_, n);
    const auto [s, v] = BothBackends([&] { return Dot(a, b); });
    EXPECT_NEAR(s, v, 1e-12 * (1.0 + std::abs(s))) << "n=" << n;

    const std::size_t rows = n % 7 + 1;
    const auto m = RandomVector(rng_, rows * n);
    const auto x = RandomVector(rng_, rows);
    const auto [rs, rv] = BothBackends([&] {
      std::vector<double> out(n);
      RowTimesMatrix(x, m.data(), rows, n, out);
      return out;
    });
    EXPECT_EQ(rs, rv) << "RowTimesMatrix n=" << n;

    const auto [ms, mv] = BothBackends([&] {
      std::vector<double> out(rows);
      MatrixTimesVector(m.data(), rows, n, b, out);
      return out;
    });
    for (std::size_t i = 0; i < rows; ++i)
      EXPECT_NEAR(ms[i], mv[i], 1e-12 * (1.0 + std::abs(ms[i])));
  }
}

TEST_F(KernelEquivalence, BestResponseValueBitIdentical) {
  std::uniform_int_distribution<int> coarse(-3, 3);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 19;
    std::vector<double> responder(n), payoff = RandomVector(rng_, n);
    // Coarse values make ties common.
    for (double& r : responder) r = coarse(rng_);
    const auto [s, v] =
        BothBackends([&] { return BestResponseValue(responder, payoff, 1e-9); });
    EXPECT_EQ(s, v);
  }
}

TEST_F(KernelEquivalence, GridKernelsBitIdentical) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int k : {1, 2, 3, 4, 7, 20, 61, 400}) {
    std::vector<double> ts(k + 1);
    for (int t = 0; t <= k; ++t) ts[t] = static_cast<double>(t) / k;
    for (int trial = 0; trial < 50; ++trial) {
      const double a = u(rng_), b = u(rng_), c = u(rng_), d = u(rng_);
      const double th = u(rng_);
      const auto [ms, mv] =
          BothBackends([&] { return MaskedAffineMax(a, b, c, d, th, ts); });
      EXPECT_EQ(ms, mv);
      const auto [xs, xv] =
          BothBackends([&] { return MaxMinAffine(a, b, c, d, ts); });
      EXPECT_EQ(xs, xv);
    }
  }
}

}  // namespace
}  // namespace coopeq::kernels
