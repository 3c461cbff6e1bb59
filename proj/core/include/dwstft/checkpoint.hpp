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

#ifndef DWSTFT_CHECKPOINT_HPP
#define DWSTFT_CHECKPOINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace dwstft::layers {

/// Checkpoint layout, all integers and scalars little-endian:
///
///   "STFTSEP1"                       8 bytes
///   tensor count                     u64
///   per tensor:
///     name length, name bytes        u32, bytes
///     rank, dims                     u32, rank x u64
///     values                         prod(dims) x f64
struct NamedTensor {
  std::string name;
  std::vector<std::uint64_t> dims;
  std::vector<double> values;

  friend bool operator==(const NamedTensor&, const NamedTensor&) = default;
};

inline constexpr char kCheckpointMagic[] = "STFTSEP1";

std::vector<std::uint8_t> encode_checkpoint(const std::vector<NamedTensor>& ts);
std::vector<NamedTensor> decode_checkpoint(const std::vector<std::uint8_t>& bytes);

void save_checkpoint(const std::string& path,
                     const std::vector<NamedTensor>& tensors);
std::vector<NamedTensor> load_checkpoint(const std::string& path);

}  // namespace dwstft::layers

#endif  // DWSTFT_CHECKPOINT_HPP
