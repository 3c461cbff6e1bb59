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

#ifndef DWSTFT_INIT_HPP
#define DWSTFT_INIT_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dwstft::layers {

/// Row-major (rows x cols) matrix with orthonormal columns when cols <= rows
/// and orthonormal rows otherwise. Obtained by QR-orthogonalizing a seeded
/// standard Gaussian matrix, sign-corrected so the R factor has a positive
/// diagonal. Deterministic in seed.
std::vector<double> orthogonal_init(std::size_t rows, std::size_t cols,
                                    std::uint64_t seed);

}  // namespace dwstft::layers

#endif  // DWSTFT_INIT_HPP
