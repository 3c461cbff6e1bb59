/* Copyright 2026 The dwstft Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "dwstft/stft.hpp"
#include "test_util.hpp"

namespace dwstft::stft {
namespace {

constexpr double kHalfRoot3 = 0.86602540378443864676;
constexpr double kRoot3 = 1.73205080756887729353;

TEST(Frequencies, WindowValidation) {
  EXPECT_THROW(FrequencySet::for_window(1), ParameterError);
  EXPECT_THROW(FrequencySet::for_window(4), ParameterError);
  EXPECT_THROW(FrequencySet::for_window(-3), ParameterError);
  const auto f = FrequencySet::for_window(5);
  EXPECT_EQ(f.r, 2);
  EXPECT_DOUBLE_EQ(f.a, 0.2);
}

TEST(Frequencies, NeighborhoodIsRowMajor) {
  const auto ys = neighborhood(3);
  ASSERT_EQ(ys.size(), 9u);
  EXPECT_EQ(ys[0].row, -1);
  EXPECT_EQ(ys[0].col, -1);
  EXPECT_EQ(ys[1].row, -1);
  EXPECT_EQ(ys[1].col, 0);
  EXPECT_EQ(ys[5].row, 0);
  EXPECT_EQ(ys[5].col, 1);
  EXPECT_EQ(ys[8].row, 1);
  EXPECT_EQ(ys[8].col, 1);
}

// 3x3 basis evaluated by hand: entries are 1, -1/2 or +-sqrt(3)/2.
TEST(Basis, WindowThreeTable) {
  const double h = kHalfRoot3;
  const double expected[8][9] = {
      {-0.5, -0.5, -0.5, 1, 1, 1, -0.5, -0.5, -0.5},
      {h, h, h, 0, 0, 0, -h, -h, -h},
      {-0.5, 1, -0.5, -0.5, 1, -0.5, -0.5, 1, -0.5},
      {h, 0, -h, h, 0, -h, h, 0, -h},
      {-0.5, -0.5, 1, -0.5, 1, -0.5, 1, -0.5, -0.5},
      {-h, h, 0, h, 0, -h, 0, -h, h},
      {1, -0.5, -0.5, -0.5, 1, -0.5, -0.5, -0.5, 1},
      {0, h, -h, -h, 0, h, h, -h, 0},
  };
  const StftBasis basis(3);
  for (std::size_t k = 0; k < 8; ++k)
    for (std::size_t i = 0; i < 9; ++i)
      EXPECT_NEAR(basis.weight(k, i), expected[k][i], 1e-15) << k << "," << i;
}

TEST(Basis, RowsSumToZero) {
  for (int n : {3, 5, 7, 9, 11}) {
    const StftBasis basis(n);
    for (std::size_t k = 0; k < 8; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < basis.taps(); ++i) s += basis.weight(k, i);
      EXPECT_NEAR(s, 0.0, 1e-12) << "n=" << n << " k=" << k;
    }
  }
}

TEST(Basis, SeparableFactorsReproduceMatrix) {
  for (int n : {3, 5, 7}) {
    const StftBasis basis(n);
    const int r = basis.radius();
    for (std::size_t f = 0; f < kFrequencies; ++f) {
      const auto& sk = basis.separable(f);
      for (int yr = -r; yr <= r; ++yr)
        for (int yc = -r; yc <= r; ++yc) {
          const auto z = sk.row_kernel[yr + r] * sk.col_kernel[yc + r];
          const std::size_t i = static_cast<std::size_t>((yr + r) * n + yc + r);
          EXPECT_NEAR(z.real(), basis.weight(2 * f, i), 1e-14);
          EXPECT_NEAR(z.imag(), basis.weight(2 * f + 1, i), 1e-14);
        }
    }
  }
}

Tensor4<double> ramp3x3() {
  Tensor4<double> x(Shape4{1, 1, 3, 3});
  for (std::size_t i = 0; i < 9; ++i) x.data()[i] = static_cast<double>(i + 1);
  return x;
}

// Values for the 3x3 ramp 1..9 computed independently with NumPy.
TEST(Forward, RampCenterAndCorner) {
  const StftBasis basis(3);
  const auto x = ramp3x3();
  const double center[8] = {0, 9 * kRoot3, 0, 3 * kRoot3, 0, 0, 0, 0};
  const double corner[8] = {-1.5, 4.5 * kRoot3, 1.5, 3.5 * kRoot3,
                            -4.5, kHalfRoot3,   3.0, kRoot3};
  for (const auto& y : {forward_direct(x, basis), forward_separable(x, basis)}) {
    ASSERT_EQ(y.shape(), (Shape4{1, 8, 3, 3}));
    for (std::size_t k = 0; k < 8; ++k) {
      EXPECT_NEAR(y(0, k, 1, 1), center[k], 1e-12) << k;
      EXPECT_NEAR(y(0, k, 0, 0), corner[k], 1e-12) << k;
    }
  }
}

TEST(Forward, ChannelMappingIsEightPerInput) {
  const StftBasis basis(3);
  auto x = testing::gaussian({2, 3, 6, 5}, 11);
  const auto y = forward_direct(x, basis);
  EXPECT_EQ(y.shape(), (Shape4{2, 24, 6, 5}));
  // Zeroing channel 1 only affects outputs 8..15.
  for (std::size_t b = 0; b < 2; ++b)
    for (double& v : x.plane(b, 1)) v = 0.0;
  const auto z = forward_direct(x, basis);
  for (std::size_t k = 0; k < 24; ++k) {
    const bool touched = k >= 8 && k < 16;
    const double m = std::abs(z(1, k, 3, 2));
    if (touched) {
      EXPECT_EQ(m, 0.0);
    } else {
      EXPECT_EQ(z(1, k, 3, 2), y(1, k, 3, 2));
    }
  }
}

TEST(Forward, BothPathsMatchOracle) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 3 + 2 * static_cast<int>(rng() % 3);
    const Shape4 s{1 + rng() % 2, 1 + rng() % 3, 1 + rng() % 9, 1 + rng() % 9};
    const auto x = testing::gaussian(s, rng());
    const StftBasis basis(n);
    const auto d = forward_direct(x, basis);
    const auto p = forward_separable(x, basis);
    for (std::size_t b = 0; b < s.batch; ++b)
      for (std::size_t c = 0; c < s.channels; ++c)
        for (std::size_t yy = 0; yy < s.height; ++yy)
          for (std::size_t xx = 0; xx < s.width; ++xx)
            for (std::size_t f = 0; f < 4; ++f) {
              const auto z = oracle(x, n, b, c, yy, xx, f);
              EXPECT_NEAR(d(b, 8 * c + 2 * f, yy, xx), z.real(), 1e-10);
              EXPECT_NEAR(d(b, 8 * c + 2 * f + 1, yy, xx), z.imag(), 1e-10);
              EXPECT_NEAR(p(b, 8 * c + 2 * f, yy, xx), z.real(), 1e-10);
              EXPECT_NEAR(p(b, 8 * c + 2 * f + 1, yy, xx), z.imag(), 1e-10);
            }
  }
}

TEST(Forward, FloatTracksDouble) {
  const StftBasis basis(5);
  const auto x = testing::gaussian({1, 2, 10, 12}, 12);
  const auto ref = forward_direct(x, basis);
  const auto xf = x.cast<float>();
  EXPECT_LT(max_rel_diff(forward_direct(xf, basis).cast<double>(), ref), 1e-5);
  EXPECT_LT(max_rel_diff(forward_separable(xf, basis).cast<double>(), ref), 1e-5);
}

TEST(Forward, ConstantInteriorIsRejected) {
  for (int n : {3, 5, 7}) {
    const StftBasis basis(n);
    const Tensor4<double> x(Shape4{1, 1, 12, 12}, 3.25);
    const auto y = forward_separable(x, basis);
    const int r = basis.radius();
    for (std::size_t k = 0; k < 8; ++k)
      for (std::size_t yy = r; yy < 12 - r; ++yy)
        for (std::size_t xx = r; xx < 12 - r; ++xx)
          EXPECT_LE(std::abs(y(0, k, yy, xx)), 1e-9 * 3.25);
  }
}

TEST(Flops, FormulaValues) {
  EXPECT_EQ(flops_direct(3, 64, 32, 32), 8ull * 9 * 64 * 1024);
  EXPECT_EQ(flops_separable(3, 64, 32, 32), 15ull * 3 * 64 * 1024);
  EXPECT_EQ(flops_direct(9, 8, 128, 128), 8ull * 81 * 8 * 16384);
  EXPECT_EQ(flops_separable(9, 8, 128, 128), 15ull * 9 * 8 * 16384);
  for (int n : {3, 5, 7, 9})
    EXPECT_LT(flops_separable(n, 64, 32, 32), flops_direct(n, 64, 32, 32));
}

TEST(Flops, CountersMatchFormulas) {
  for (int n : {3, 5, 7}) {
    const StftBasis basis(n);
    const auto x = testing::gaussian({2, 3, 7, 9}, 13);
    MacCounter direct, separable;
    forward_direct(x, basis, &direct);
    forward_separable(x, basis, &separable);
    EXPECT_EQ(direct.macs, 2 * flops_direct(n, 3, 7, 9));
    EXPECT_EQ(separable.macs, 2 * flops_separable(n, 3, 7, 9));
  }
}

TEST(Backward, AdjointIdentity) {
  for (int n : {3, 5, 7}) {
    const StftBasis basis(n);
    const Shape4 s{2, 3, 8, 6};
    const auto x = testing::gaussian(s, 20 + n);
    const auto g = testing::gaussian({2, 24, 8, 6}, 30 + n);
    const double lhs = inner_product(forward_direct(x, basis), g);
    const double rhs = inner_product(x, backward(g, basis, s));
    EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(Backward, RejectsWrongGradientShape) {
  const StftBasis basis(3);
  const auto g = testing::gaussian({1, 7, 4, 4}, 1);
  EXPECT_THROW(backward(g, basis, Shape4{1, 1, 4, 4}), ShapeError);
}

TEST(Basis, PerturbChangesOnlyOneEntry) {
  StftBasis basis(3);
  const auto before = basis.matrix();
  basis.perturb(2, 4, 0.5);
  for (std::size_t j = 0; j < before.size(); ++j)
    EXPECT_EQ(basis.matrix()[j], before[j] + (j == 2 * 9 + 4 ? 0.5 : 0.0));
}

}  // namespace
}  // namespace dwstft::stft
