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

#ifndef DWSTFT_BATCHNORM_HPP
#define DWSTFT_BATCHNORM_HPP

#include "dwstft/param.hpp"
#include "dwstft/tensor.hpp"

namespace dwstft::layers {

/// Per-channel batch normalization over (batch, height, width).
///
/// Training mode normalizes with the batch statistics and folds them into
/// the running estimates: running = momentum * running + (1 - momentum) *
/// batch, using the unbiased batch variance. Eval mode uses the running
/// estimates and leaves them untouched.
template <typename T>
struct BatchNorm {
  std::size_t channels = 0;
  Param<T> gamma;
  Param<T> beta;
  Param<T> running_mean;
  Param<T> running_var;
  double epsilon = 1e-3;
  double momentum = 0.99;

  BatchNorm() = default;
  BatchNorm(std::size_t channels, const std::string& name);
};

template <typename T>
struct BatchNormCache {
  Tensor4<T> xhat;
  std::vector<double> inv_std;
  Mode mode = Mode::kTrain;
};

template <typename T>
struct BatchNormGrads {
  Tensor4<T> grad_x;
  std::vector<T> grad_gamma;
  std::vector<T> grad_beta;
};

template <typename T>
Tensor4<T> batchnorm_forward(const Tensor4<T>& x, BatchNorm<T>& bn, Mode mode,
                             BatchNormCache<T>* cache = nullptr);

template <typename T>
BatchNormGrads<T> batchnorm_backward(const Tensor4<T>& grad_out,
                                     const BatchNorm<T>& bn,
                                     const BatchNormCache<T>& cache);

}  // namespace dwstft::layers

#endif  // DWSTFT_BATCHNORM_HPP
