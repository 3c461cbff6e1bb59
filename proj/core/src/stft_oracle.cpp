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

#include "dwstft/stft.hpp"

namespace dwstft::stft {

std::complex<double> oracle(const Tensor4<double>& x, int n, std::size_t batch,
                            std::size_t channel, std::size_t row,
                            std::size_t col, std::size_t freq_index) {
  if (n < 3 || n % 2 == 0) {
    throw ParameterError("oracle: window size must be odd and >= 3");
  }
  const Shape4& s = x.shape();
  if (batch >= s.batch || channel >= s.channels || row >= s.height ||
      col >= s.width) {
    throw ParameterError("oracle: position out of range for " + to_string(s));
  }
  if (freq_index >= kFrequencies) {
    throw ParameterError("oracle: frequency index must be in [0, 4)");
  }
  // v1 = [a, 0], v2 = [0, a], v3 = [a, a], v4 = [a, -a]
  const double a = 1.0 / n;
  const double v[4][2] = {{a, 0.0}, {0.0, a}, {a, a}, {a, -a}};
  const int r = (n - 1) / 2;
  const std::complex<double> j(0.0, 1.0);

  std::complex<double> acc(0.0, 0.0);
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const long yy = static_cast<long>(row) - dy;
      const long xx = static_cast<long>(col) - dx;
      double f = 0.0;
      if (yy >= 0 && xx >= 0 && yy < static_cast<long>(s.height) &&
          xx < static_cast<long>(s.width)) {
        f = x(batch, channel, static_cast<std::size_t>(yy),
              static_cast<std::size_t>(xx));
      }
      const double phase = v[freq_index][0] * dy + v[freq_index][1] * dx;
      acc += f * std::exp(-j * 2.0 * std::numbers::pi * phase);
    }
  }
  return acc;
}

}  // namespace dwstft::stft
