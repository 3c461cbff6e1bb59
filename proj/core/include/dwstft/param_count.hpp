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

#ifndef DWSTFT_PARAM_COUNT_HPP
#define DWSTFT_PARAM_COUNT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dwstft/netspec.hpp"

namespace dwstft::net {

enum class LayerKind {
  kStandard,            // c * n^2 * f
  kDepthwiseSeparable,  // n^2 * c + c * f
  kStftSeparable,       // 8 * c * f, independent of n
};

/// Accepts "standard", "depthwise" / "depthwise-separable", "stft" /
/// "stft-separable"; anything else is a ParameterError.
LayerKind parse_layer_kind(const std::string& name);
const char* to_string(LayerKind kind);

/// Trainable parameters of one convolutional layer with c inputs, f outputs
/// and n x n filters.
std::uint64_t count_params_layer(LayerKind kind, std::uint64_t c,
                                 std::uint64_t n, std::uint64_t f);

struct LayerCount {
  std::string name;
  std::string kind;
  std::uint64_t in_channels = 0;
  std::uint64_t window = 1;
  std::uint64_t out_channels = 0;
  std::uint64_t params = 0;
};

struct BlockCount {
  std::string name;
  std::string kind;
  std::uint64_t params = 0;
  std::vector<LayerCount> layers;
};

struct ParamReport {
  std::vector<BlockCount> entries;
  std::uint64_t total = 0;
};

/// Closed-form per-block accounting: c*b (bottleneck) + 8*b*f per STFT
/// branch (its share of the expansion conv) + 2f (batch norm), plus the stem
/// (in*f + 2f) and classifier (f_last*K + K).
ParamReport count_params_network(const NetSpec& spec);

}  // namespace dwstft::net

#endif  // DWSTFT_PARAM_COUNT_HPP
