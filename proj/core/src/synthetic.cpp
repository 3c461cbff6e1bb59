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

#include "dwstft/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dwstft::data {

LabeledDataset make_synthetic(std::size_t per_class, std::size_t classes,
                              std::uint64_t seed, Split split) {
  if (classes == 0) throw ParameterError("synthetic data needs >= 1 class");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);

  const std::size_t n = per_class * classes;
  LabeledDataset ds;
  ds.classes = classes;
  ds.split = split;
  if (n == 0) return ds;
  ds.images = Tensor4<float>({n, kImageChannels, kImageSide, kImageSide});
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t label = i % classes;
    ds.labels.push_back(static_cast<int>(label));
    const double jitter = (unit(rng) - 0.5) * 10.0;
    const double angle = (180.0 * label / classes + jitter) * std::numbers::pi / 180.0;
    const double period = 4.0 + 4.0 * unit(rng);
    const double phase = 2.0 * std::numbers::pi * unit(rng);
    const double contrast = 40.0 + 30.0 * unit(rng);
    std::array<double, kImageChannels> tint{};
    for (double& t : tint) t = 90.0 + 70.0 * unit(rng);
    // Stripes vary along the direction perpendicular to `angle`.
    const double ky = std::cos(angle), kx = std::sin(angle);
    for (std::size_t y = 0; y < kImageSide; ++y)
      for (std::size_t x = 0; x < kImageSide; ++x) {
        const double wave = std::sin(2.0 * std::numbers::pi *
                                         (ky * y + kx * x) / period + phase);
        for (std::size_t c = 0; c < kImageChannels; ++c) {
          const double v = tint[c] + contrast * wave + 25.0 * noise(rng);
          ds.images(i, c, y, x) =
              static_cast<float>(std::clamp(std::round(v), 0.0, 255.0));
        }
      }
  }
  return ds;
}

}  // namespace dwstft::data
