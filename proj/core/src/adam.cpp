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

#include "dwstft/adam.hpp"

#include <cmath>

#include "dwstft/error.hpp"

namespace dwstft::layers {

template <typename T>
void adam_step(std::span<Param<T>* const> params, AdamState<T>& state) {
  if (state.first_moment.empty()) {
    for (const Param<T>* p : params) {
      const std::size_t n = p->trainable ? p->size() : 0;
      state.first_moment.emplace_back(n, 0.0);
      state.second_moment.emplace_back(n, 0.0);
    }
  }
  if (state.first_moment.size() != params.size()) {
    throw ShapeError("adam_step: optimizer state tracks " +
                     std::to_string(state.first_moment.size()) +
                     " tensors, got " + std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Param<T>& p = *params[i];
    const std::size_t n = p.trainable ? p.size() : 0;
    if (state.first_moment[i].size() != n || (p.trainable && p.grad.size() != n)) {
      throw ShapeError("adam_step: shape mismatch for parameter " + p.name);
    }
  }

  state.step += 1;
  const AdamConfig& c = state.config;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(c.beta1, t);
  const double correction2 = 1.0 - std::pow(c.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    Param<T>& p = *params[i];
    if (!p.trainable) continue;
    std::vector<double>& m = state.first_moment[i];
    std::vector<double>& v = state.second_moment[i];
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double g = p.grad[j];
      m[j] = c.beta1 * m[j] + (1.0 - c.beta1) * g;
      v[j] = c.beta2 * v[j] + (1.0 - c.beta2) * g * g;
      const double update =
          c.lr * (m[j] / correction1) / (std::sqrt(v[j] / correction2) + c.epsilon);
      p.value[j] = static_cast<T>(p.value[j] - update);
    }
  }
}

template void adam_step(std::span<Param<float>* const>, AdamState<float>&);
template void adam_step(std::span<Param<double>* const>, AdamState<double>&);

}  // namespace dwstft::layers
