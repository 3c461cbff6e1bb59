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

#ifndef DWSTFT_PARAM_HPP
#define DWSTFT_PARAM_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace dwstft::layers {

/// Named parameter buffer with its gradient. Non-trainable state (batch-norm
/// running statistics) uses the same container with trainable = false and
/// an empty gradient.
template <typename T>
struct Param {
  std::string name;
  std::vector<std::size_t> dims;
  std::vector<T> value;
  std::vector<T> grad;
  bool trainable = true;

  Param() = default;
  Param(std::string name_in, std::vector<std::size_t> dims_in, T fill,
        bool trainable_in = true)
      : name(std::move(name_in)), dims(std::move(dims_in)),
        trainable(trainable_in) {
    std::size_t n = 1;
    for (std::size_t d : dims) n *= d;
    value.assign(n, fill);
    if (trainable) grad.assign(n, T{0});
  }

  std::size_t size() const { return value.size(); }
};

enum class Mode { kTrain, kEval };

}  // namespace dwstft::layers

#endif  // DWSTFT_PARAM_HPP
