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

#ifndef DWSTFT_GRADCHECK_HPP
#define DWSTFT_GRADCHECK_HPP

#include <algorithm>
#include <cmath>

namespace dwstft {

/// Gradients smaller than this are compared in absolute terms.
inline constexpr double kGradientScaleFloor = 1e-3;

/// |analytic - numeric| / max(|analytic|, |numeric|, kGradientScaleFloor)
inline double gradient_rel_error(double analytic, double numeric) {
  const double scale =
      std::max({std::abs(analytic), std::abs(numeric), kGradientScaleFloor});
  return std::abs(analytic - numeric) / scale;
}

/// (loss(x + eps) - loss(x - eps)) / (2 eps) for the coordinate `x`, which
/// is restored afterwards. `loss` must read `x` through the same storage.
template <typename Coord, typename Loss>
double central_difference(Coord& x, double eps, Loss&& loss) {
  const Coord saved = x;
  x = static_cast<Coord>(saved + eps);
  const double up = loss();
  x = static_cast<Coord>(saved - eps);
  const double down = loss();
  x = saved;
  return (up - down) / (2.0 * eps);
}

}  // namespace dwstft

#endif  // DWSTFT_GRADCHECK_HPP
