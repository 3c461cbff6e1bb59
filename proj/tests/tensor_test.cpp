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

#include <limits>
#include <sstream>

#include "dwstft/tensor.hpp"
#include "test_util.hpp"

namespace dwstft {
namespace {

TEST(Shape, ElementsRejectsZeroAndOverflow) {
  EXPECT_EQ((Shape4{2, 3, 4, 5}).elements(), 120u);
  EXPECT_THROW((Shape4{0, 3, 4, 5}).elements(), ShapeError);
  EXPECT_THROW((Shape4{2, 3, 0, 5}).elements(), ShapeError);
  const std::size_t big = std::numeric_limits<std::size_t>::max() / 2;
  EXPECT_THROW((Shape4{big, 4, 1, 1}).elements(), ShapeError);
}

TEST(Tensor, IndexingIsNchwRowMajor) {
  Tensor4<float> t(Shape4{2, 3, 4, 5});
  t(1, 2, 3, 4) = 7.0f;
  EXPECT_EQ(t.data()[t.size() - 1], 7.0f);
  t(0, 1, 0, 0) = 2.0f;
  EXPECT_EQ(t.data()[20], 2.0f);
  EXPECT_THROW(t.at(2, 0, 0, 0), ShapeError);
  EXPECT_THROW(t.at(0, 0, 0, 5), ShapeError);
}

TEST(Tensor, ConstructFromDataChecksLength) {
  EXPECT_THROW(Tensor4<double>(Shape4{1, 1, 2, 2}, std::vector<double>(3)),
               ShapeError);
}

TEST(Tensor, AddRequiresMatchingShapes) {
  Tensor4<double> a(Shape4{1, 2, 2, 2}, 1.0);
  Tensor4<double> b(Shape4{1, 2, 2, 2}, 2.0);
  a += b;
  EXPECT_DOUBLE_EQ(sum(a), 24.0);
  Tensor4<double> c(Shape4{1, 2, 2, 3});
  EXPECT_THROW(a += c, ShapeError);
}

TEST(Tensor, PadCropRoundTrip) {
  const auto x = testing::gaussian({2, 3, 5, 4}, 1);
  const auto padded = pad_spatial(x, 2);
  EXPECT_EQ(padded.shape(), (Shape4{2, 3, 9, 8}));
  EXPECT_DOUBLE_EQ(padded(1, 2, 0, 0), 0.0);
  EXPECT_DOUBLE_EQ(padded(1, 2, 2, 2), x(1, 2, 0, 0));
  EXPECT_DOUBLE_EQ(sum(padded), sum(x));
  EXPECT_EQ(max_rel_diff(crop_spatial(padded, 2), x), 0.0);
  EXPECT_THROW(crop_spatial(x, 2), ShapeError);
}

TEST(Tensor, ConcatSplitRoundTrip) {
  const auto a = testing::gaussian({2, 3, 4, 4}, 2);
  const auto b = testing::gaussian({2, 5, 4, 4}, 3);
  const std::vector<Tensor4<double>> parts{a, b};
  const auto joined = concat_channels<double>(parts);
  EXPECT_EQ(joined.shape().channels, 8u);
  EXPECT_DOUBLE_EQ(joined(1, 3, 2, 1), b(1, 0, 2, 1));
  const std::vector<std::size_t> sizes{3, 5};
  const auto split = split_channels<double>(joined, sizes);
  ASSERT_EQ(split.size(), 2u);
  EXPECT_EQ(max_rel_diff(split[0], a), 0.0);
  EXPECT_EQ(max_rel_diff(split[1], b), 0.0);
  const std::vector<std::size_t> wrong{3, 4};
  EXPECT_THROW(split_channels<double>(joined, wrong), ShapeError);
  const std::vector<Tensor4<double>> mismatched{a, testing::gaussian({2, 1, 4, 5}, 4)};
  EXPECT_THROW(concat_channels<double>(mismatched), ShapeError);
}

TEST(Tensor, SliceBatch) {
  const auto x = testing::gaussian({5, 2, 3, 3}, 5);
  const auto s = slice_batch(x, 1, 3);
  EXPECT_EQ(s.shape().batch, 3u);
  EXPECT_DOUBLE_EQ(s(0, 1, 2, 2), x(1, 1, 2, 2));
  EXPECT_THROW(slice_batch(x, 4, 2), ShapeError);
}

TEST(Tensor, Reductions) {
  Tensor4<double> a(Shape4{1, 1, 1, 3}, std::vector<double>{1.0, -4.0, 2.0});
  Tensor4<double> b(Shape4{1, 1, 1, 3}, std::vector<double>{2.0, 0.5, 2.0});
  EXPECT_DOUBLE_EQ(inner_product(a, b), 4.0);
  EXPECT_DOUBLE_EQ(sum(a), -1.0);
  EXPECT_DOUBLE_EQ(max_abs(a), 4.0);
  // |1-2|/2, |-4-0.5|/4, 0 -> 1.125
  EXPECT_DOUBLE_EQ(max_rel_diff(a, b), 1.125);
}

TEST(Tensor, DebugDumpRoundTrip) {
  const auto x = testing::gaussian({1, 2, 3, 2}, 6);
  std::stringstream ss;
  write_debug_dump(ss, x);
  const auto y = read_debug_dump<double>(ss);
  EXPECT_EQ(y.shape(), x.shape());
  EXPECT_EQ(max_rel_diff(x, y), 0.0);
}

TEST(Tensor, CastKeepsShape) {
  const auto x = testing::gaussian({1, 2, 2, 2}, 7);
  const auto f = x.cast<float>();
  EXPECT_EQ(f.shape(), x.shape());
  EXPECT_FLOAT_EQ(f(0, 1, 1, 1), static_cast<float>(x(0, 1, 1, 1)));
}

}  // namespace
}  // namespace dwstft
