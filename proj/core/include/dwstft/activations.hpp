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

#ifndef DWSTFT_ACTIVATIONS_HPP
#define DWSTFT_ACTIVATIONS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "dwstft/tensor.hpp"

namespace dwstft::layers {

inline constexpr double kLeakySlope = 0.3;

template <typename T>
Tensor4<T> leaky_relu_forward(const Tensor4<T>& x, T alpha = T(kLeakySlope));

// x is the forward input.
template <typename T>
Tensor4<T> leaky_relu_backward(const Tensor4<T>& x, const Tensor4<T>& grad_out,
                               T alpha = T(kLeakySlope));

template <typename T>
struct MaxPoolResult {
  Tensor4<T> out;
  std::vector<std::uint32_t> argmax;  // flat input index per output element
};

/// 2x2 window, stride 2. Rejects odd spatial dims. Ties go to the first
/// maximum in row-major window order.
template <typename T>
MaxPoolResult<T> maxpool2_forward(const Tensor4<T>& x);

template <typename T>
Tensor4<T> maxpool2_backward(const Tensor4<T>& grad_out,
                             std::span<const std::uint32_t> argmax,
                             const Shape4& in_shape);

/// Mean over height and width: (B, C, H, W) -> (B, C, 1, 1).
template <typename T>
Tensor4<T> global_avg_pool_forward(const Tensor4<T>& x);

template <typename T>
Tensor4<T> global_avg_pool_backward(const Tensor4<T>& grad_out,
                                    const Shape4& in_shape);

/// Row-wise softmax of (B, K, 1, 1) logits, computed with max subtraction.
template <typename T>
Tensor4<T> softmax(const Tensor4<T>& logits);

template <typename T>
struct XentResult {
  double loss = 0.0;  // mean over the batch
  Tensor4<T> grad_logits;
  Tensor4<T> probabilities;
};

/// Softmax cross-entropy against class indices in [0, K).
template <typename T>
XentResult<T> softmax_xent(const Tensor4<T>& logits,
                           std::span<const int> labels);

/// Softmax cross-entropy against one-hot (or any distribution) targets.
template <typename T>
XentResult<T> softmax_xent(const Tensor4<T>& logits, const Tensor4<T>& targets);

}  // namespace dwstft::layers

#endif  // DWSTFT_ACTIVATIONS_HPP
