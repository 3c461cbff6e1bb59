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

#ifndef DWSTFT_ADAM_HPP
#define DWSTFT_ADAM_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "dwstft/param.hpp"

namespace dwstft::layers {

struct AdamConfig {
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

template <typename T>
struct AdamState {
  AdamConfig config;
  std::uint64_t step = 0;
  std::vector<std::vector<double>> first_moment;
  std::vector<std::vector<double>> second_moment;

  explicit AdamState(AdamConfig c = {}) : config(c) {}
};

/// One bias-corrected Adam update of every trainable parameter from its
/// grad buffer:
///   m <- b1 m + (1 - b1) g,  v <- b2 v + (1 - b2) g^2
///   p <- p - lr * (m / (1 - b1^t)) / (sqrt(v / (1 - b2^t)) + eps)
/// Moment buffers are sized on the first call; later calls must pass the
/// same parameter list.
template <typename T>
void adam_step(std::span<Param<T>* const> params, AdamState<T>& state);

}  // namespace dwstft::layers

#endif  // DWSTFT_ADAM_HPP
