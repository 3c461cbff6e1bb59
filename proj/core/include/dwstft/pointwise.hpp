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

#ifndef DWSTFT_POINTWISE_HPP
#define DWSTFT_POINTWISE_HPP

#include "dwstft/param.hpp"
#include "dwstft/tensor.hpp"

namespace dwstft::layers {

/// 1x1 convolution: out[b,o,y,x] = sum_c weight[o,c] * x[b,c,y,x] (+ bias[o]).
/// Weight is stored row-major as (out_channels x in_channels).
template <typename T>
struct PointwiseConv {
  std::size_t in_channels = 0;
  std::size_t out_channels = 0;
  Param<T> weight;
  Param<T> bias;  // empty when the layer has no bias

  PointwiseConv() = default;
  PointwiseConv(std::size_t in, std::size_t out, bool with_bias,
                const std::string& name);

  bool has_bias() const { return !bias.value.empty(); }
  std::size_t param_count() const { return weight.size() + bias.size(); }
};

template <typename T>
struct PointwiseGrads {
  Tensor4<T> grad_x;
  std::vector<T> grad_w;
  std::vector<T> grad_b;  // empty without bias
};

template <typename T>
Tensor4<T> pointwise_forward(const Tensor4<T>& x, const PointwiseConv<T>& p);

/// Exact gradients of pointwise_forward for upstream gradient grad_out.
template <typename T>
PointwiseGrads<T> pointwise_backward(const Tensor4<T>& x,
                                     const PointwiseConv<T>& p,
                                     const Tensor4<T>& grad_out);

}  // namespace dwstft::layers

#endif  // DWSTFT_POINTWISE_HPP
