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

#ifndef DWSTFT_NETSPEC_HPP
#define DWSTFT_NETSPEC_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dwstft::net {

enum class BlockKind {
  kPlain,     // Block 1
  kResidual,  // Block 2: Block 1 plus an identity skip
};

const char* to_string(BlockKind kind);

/// One bottleneck block: pointwise c -> b, one Depthwise-STFT branch per
/// window size (each b -> 8b), channel concat, pointwise -> f, [skip add],
/// batch norm, LeakyReLU.
struct BlockSpec {
  BlockKind kind = BlockKind::kPlain;
  std::size_t in_channels = 0;
  std::size_t bottleneck = 0;
  std::size_t out_channels = 0;
  std::vector<int> branch_sizes{3, 5};

  std::size_t concat_channels() const { return 8 * branch_sizes.size() * bottleneck; }

  /// Throws SpecError if b >= c, f <= b, a residual block has c != f, or a
  /// branch size is not an odd number >= 3.
  void validate() const;
};

struct StageSpec {
  std::size_t blocks = 1;
  std::size_t bottleneck = 0;
  std::size_t out_channels = 0;
  bool pool = false;  // 2x2 max pool after the stage
};

/// Full network: stem pointwise (input channels -> first stage f) with batch
/// norm and LeakyReLU, then the stages, global average pooling and a
/// pointwise classifier with bias. A spec without stages is a bare
/// classifier on the pooled input.
struct NetSpec {
  std::vector<StageSpec> stages;
  std::size_t classes = 10;
  std::size_t in_channels = 3;
  std::size_t height = 32;
  std::size_t width = 32;
  std::uint64_t seed = 1;
  std::vector<int> branch_sizes{3, 5};

  /// Expanded block list. The first block of the network, and the first
  /// block of any stage whose width differs from its input, is plain; all
  /// other blocks are residual.
  std::vector<BlockSpec> blocks() const;
  std::size_t total_blocks() const;
  /// Channels entering the classifier.
  std::size_t final_channels() const;

  void validate() const;
};

/// The 16-block layout: four stages of four blocks at a uniform (b, f),
/// with a 2x2 max pool after each of the first three stages.
NetSpec reference_netspec(std::size_t bottleneck, std::size_t width,
                      std::size_t classes);

/// Parses the `key = value` config format:
///
///   classes = 10
///   input = 3x32x32
///   seed = 1
///   branches = 3,5          (optional)
///   [stage.1]
///   blocks = 4
///   b = 64
///   f = 128
///   pool = true
///
/// '#' starts a comment. Stages are ordered by their numeric suffix.
/// Throws SpecError on unknown keys or malformed values.
NetSpec parse_netspec(std::istream& in);
NetSpec load_netspec(const std::string& path);
std::string format_netspec(const NetSpec& spec);

}  // namespace dwstft::net

#endif  // DWSTFT_NETSPEC_HPP
