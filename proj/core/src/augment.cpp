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

#include <cmath>
#include <numbers>

#include "dwstft/data.hpp"

namespace dwstft::data {

AugmentParams draw_augment(std::mt19937_64& rng) {
  AugmentParams p;
  p.flip = std::bernoulli_distribution(0.5)(rng);
  std::uniform_int_distribution<int> shift(-kMaxShift, kMaxShift);
  p.shift_x = shift(rng);
  p.shift_y = shift(rng);
  p.angle_deg =
      std::uniform_real_distribution<double>(-kMaxRotationDeg, kMaxRotationDeg)(rng);
  return p;
}

Tensor4<float> apply_augment(const Tensor4<float>& image,
                             const AugmentParams& params) {
  const Shape4& s = image.shape();
  if (s.batch != 1) {
    throw ShapeError("augment expects a single image, got " + to_string(s));
  }
  const long H = static_cast<long>(s.height), W = static_cast<long>(s.width);

  Tensor4<float> shifted(s);
  for (std::size_t c = 0; c < s.channels; ++c)
    for (long y = 0; y < H; ++y)
      for (long x = 0; x < W; ++x) {
        const long sy = y - params.shift_y;
        long sx = x - params.shift_x;
        if (sy < 0 || sy >= H || sx < 0 || sx >= W) continue;
        if (params.flip) sx = W - 1 - sx;
        shifted(0, c, static_cast<std::size_t>(y), static_cast<std::size_t>(x)) =
            image(0, c, static_cast<std::size_t>(sy), static_cast<std::size_t>(sx));
      }

  // Inverse mapping: each output pixel samples the source at R(-theta)
  // applied around the center.
  const double theta = params.angle_deg * std::numbers::pi / 180.0;
  const double cs = std::cos(theta), sn = std::sin(theta);
  const double cy = (H - 1) / 2.0, cx = (W - 1) / 2.0;
  Tensor4<float> out(s);
  auto pixel = [&](std::size_t c, long y, long x) -> double {
    if (y < 0 || y >= H || x < 0 || x >= W) return 0.0;
    return shifted(0, c, static_cast<std::size_t>(y), static_cast<std::size_t>(x));
  };
  for (long y = 0; y < H; ++y)
    for (long x = 0; x < W; ++x) {
      const double dy = y - cy, dx = x - cx;
      const double src_y = cs * dy - sn * dx + cy;
      const double src_x = sn * dy + cs * dx + cx;
      const double fy = std::floor(src_y), fx = std::floor(src_x);
      const double wy = src_y - fy, wx = src_x - fx;
      const long y0 = static_cast<long>(fy), x0 = static_cast<long>(fx);
      for (std::size_t c = 0; c < s.channels; ++c) {
        const double v = (1 - wy) * ((1 - wx) * pixel(c, y0, x0) + wx * pixel(c, y0, x0 + 1)) +
                         wy * ((1 - wx) * pixel(c, y0 + 1, x0) + wx * pixel(c, y0 + 1, x0 + 1));
        out(0, c, static_cast<std::size_t>(y), static_cast<std::size_t>(x)) =
            static_cast<float>(v);
      }
    }
  return out;
}

Tensor4<float> augment(const Tensor4<float>& image, std::mt19937_64& rng) {
  return apply_augment(image, draw_augment(rng));
}

}  // namespace dwstft::data
