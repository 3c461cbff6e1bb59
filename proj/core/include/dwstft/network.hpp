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

#ifndef DWSTFT_NETWORK_HPP
#define DWSTFT_NETWORK_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dwstft/activations.hpp"
#include "dwstft/batchnorm.hpp"
#include "dwstft/checkpoint.hpp"
#include "dwstft/netspec.hpp"
#include "dwstft/pointwise.hpp"
#include "dwstft/stft.hpp"

namespace dwstft::net {

using layers::Mode;
using layers::Param;

/// Block 1 / Block 2 with its parameters and the activations cached by the
/// last forward call (needed by backward).
template <typename T>
class Block {
 public:
  Block(const BlockSpec& spec, const std::string& name, std::uint64_t seed);

  Tensor4<T> forward(const Tensor4<T>& x, Mode mode);
  /// Fills parameter gradients and returns the input gradient.
  Tensor4<T> backward(const Tensor4<T>& grad_out);

  const BlockSpec& spec() const { return spec_; }
  const std::string& name() const { return name_; }
  layers::PointwiseConv<T>& bottleneck() { return bottleneck_; }
  layers::PointwiseConv<T>& expansion() { return expansion_; }
  layers::BatchNorm<T>& norm() { return norm_; }

  std::vector<Param<T>*> parameters();

 private:
  BlockSpec spec_;
  std::string name_;
  layers::PointwiseConv<T> bottleneck_;
  std::vector<stft::StftBasis> bases_;
  layers::PointwiseConv<T> expansion_;
  layers::BatchNorm<T> norm_;

  Tensor4<T> input_;
  Tensor4<T> reduced_;
  Tensor4<T> concat_;
  Tensor4<T> pre_activation_;
  layers::BatchNormCache<T> norm_cache_;
};

template <typename T>
Tensor4<T> block_forward(const Tensor4<T>& x, Block<T>& block, Mode mode) {
  return block.forward(x, mode);
}

template <typename T>
class Network {
 public:
  Network(const NetSpec& spec, std::uint64_t seed);

  /// Logits of shape (B, classes, 1, 1).
  Tensor4<T> forward(const Tensor4<T>& x, Mode mode);
  /// Back-propagates d(loss)/d(logits) from the last forward call. Fills
  /// every trainable gradient and returns d(loss)/d(input).
  Tensor4<T> backward(const Tensor4<T>& grad_logits);
  /// Eval-mode class probabilities, (B, classes, 1, 1).
  Tensor4<T> predict(const Tensor4<T>& x);

  const NetSpec& spec() const { return spec_; }
  std::vector<Block<T>>& blocks() { return blocks_; }

  /// Every parameter including non-trainable running statistics, in a
  /// fixed order.
  std::vector<Param<T>*> parameters();
  std::vector<Param<T>*> trainable_parameters();
  /// Number of trainable scalars of this instance.
  std::uint64_t trainable_count();

  std::vector<layers::NamedTensor> state();
  /// Throws SpecError if names or dims differ from this network's.
  void load_state(const std::vector<layers::NamedTensor>& tensors);

 private:
  struct Stage {
    std::size_t first_block = 0;
    std::size_t blocks = 0;
    bool pool = false;
    Shape4 pool_input{};
    std::vector<std::uint32_t> argmax;
  };

  NetSpec spec_;
  bool has_stem_ = false;
  layers::PointwiseConv<T> stem_;
  layers::BatchNorm<T> stem_norm_;
  std::vector<Block<T>> blocks_;
  std::vector<Stage> stages_;
  layers::PointwiseConv<T> classifier_;

  Tensor4<T> input_;
  Tensor4<T> stem_pre_activation_;
  layers::BatchNormCache<T> stem_cache_;
  Shape4 pooled_from_{};
  Tensor4<T> pooled_;
};

}  // namespace dwstft::net

#endif  // DWSTFT_NETWORK_HPP
