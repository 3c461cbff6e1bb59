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

#include "dwstft/param_count.hpp"

#include "dwstft/error.hpp"

namespace dwstft::net {

LayerKind parse_layer_kind(const std::string& name) {
  if (name == "standard") return LayerKind::kStandard;
  if (name == "depthwise" || name == "depthwise-separable") {
    return LayerKind::kDepthwiseSeparable;
  }
  if (name == "stft" || name == "stft-separable") return LayerKind::kStftSeparable;
  throw ParameterError("unknown layer kind '" + name + "'");
}

const char* to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::kStandard:
      return "standard";
    case LayerKind::kDepthwiseSeparable:
      return "depthwise-separable";
    case LayerKind::kStftSeparable:
      return "stft-separable";
  }
  return "?";
}

std::uint64_t count_params_layer(LayerKind kind, std::uint64_t c,
                                 std::uint64_t n, std::uint64_t f) {
  if (c == 0 || n == 0 || f == 0) {
    throw ParameterError("count_params_layer needs positive c, n, f");
  }
  switch (kind) {
    case LayerKind::kStandard:
      return c * n * n * f;
    case LayerKind::kDepthwiseSeparable:
      return n * n * c + c * f;
    case LayerKind::kStftSeparable:
      return 8 * c * f;
  }
  throw ParameterError("unknown layer kind");
}

ParamReport count_params_network(const NetSpec& spec) {
  spec.validate();
  ParamReport report;
  auto add = [&report](BlockCount entry) {
    entry.params = 0;
    for (const LayerCount& l : entry.layers) entry.params += l.params;
    report.total += entry.params;
    report.entries.push_back(std::move(entry));
  };

  if (!spec.stages.empty()) {
    const std::uint64_t f = spec.stages.front().out_channels;
    BlockCount stem{"stem", "stem", 0, {}};
    stem.layers.push_back({"stem.conv", "pointwise", spec.in_channels, 1, f,
                           count_params_layer(LayerKind::kStandard,
                                              spec.in_channels, 1, f)});
    stem.layers.push_back({"stem.bn", "batchnorm", f, 1, f, 2 * f});
    add(std::move(stem));
  }

  const std::vector<BlockSpec> blocks = spec.blocks();
  std::size_t k = 0;
  for (std::size_t s = 0; s < spec.stages.size(); ++s) {
    for (std::size_t j = 0; j < spec.stages[s].blocks; ++j, ++k) {
      const BlockSpec& b = blocks[k];
      const std::string name =
          "stage" + std::to_string(s + 1) + ".block" + std::to_string(j + 1);
      BlockCount entry{name, to_string(b.kind), 0, {}};
      entry.layers.push_back(
          {name + ".bottleneck", "pointwise", b.in_channels, 1, b.bottleneck,
           count_params_layer(LayerKind::kStandard, b.in_channels, 1,
                              b.bottleneck)});
      for (int n : b.branch_sizes) {
        const auto un = static_cast<std::uint64_t>(n);
        entry.layers.push_back(
            {name + ".stft" + std::to_string(n), "stft-separable",
             b.bottleneck, un, b.out_channels,
             count_params_layer(LayerKind::kStftSeparable, b.bottleneck, un,
                                b.out_channels)});
      }
      entry.layers.push_back({name + ".bn", "batchnorm", b.out_channels, 1,
                              b.out_channels, 2 * b.out_channels});
      add(std::move(entry));
    }
  }

  const std::uint64_t in = spec.final_channels();
  BlockCount cls{"classifier", "dense", 0, {}};
  cls.layers.push_back({"classifier", "dense", in, 1, spec.classes,
                        in * spec.classes + spec.classes});
  add(std::move(cls));
  return report;
}

}  // namespace dwstft::net
