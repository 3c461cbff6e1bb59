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

#ifndef DWSTFT_SYNTHETIC_HPP
#define DWSTFT_SYNTHETIC_HPP

#include <cstdint>

#include "dwstft/data.hpp"

namespace dwstft::data {

/// CIFAR-shaped stand-in data for environments without the real files.
/// Class k of K is a noisy sinusoidal grating oriented at k * 180 / K
/// degrees with random period, phase, contrast and per-image color tint,
/// quantized to bytes. Classes are interleaved (0, 1, ..., K-1, 0, ...).
LabeledDataset make_synthetic(std::size_t per_class, std::size_t classes,
                              std::uint64_t seed, Split split);

}  // namespace dwstft::data

#endif  // DWSTFT_SYNTHETIC_HPP
