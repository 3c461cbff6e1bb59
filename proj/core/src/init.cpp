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

#include "dwstft/init.hpp"

#include <cmath>
#include <random>

#include "dwstft/error.hpp"

namespace dwstft::layers {

std::vector<double> orthogonal_init(std::size_t rows, std::size_t cols,
                                    std::uint64_t seed) {
  if (rows == 0 || cols == 0) {
    throw ParameterError("orthogonal_init needs rows, cols >= 1");
  }
  // Orthonormalize the columns of a tall (m x k) Gaussian matrix, k <= m.
  const std::size_t m = std::max(rows, cols);
  const std::size_t k = std::min(rows, cols);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<double>> q(k, std::vector<double>(m));
  for (auto& column : q)
    for (double& v : column) v = gauss(rng);

  // Modified Gram-Schmidt, applied twice for full working precision. The
  // norms form the R diagonal, so it is positive by construction.
  for (std::size_t j = 0; j < k; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        double dot = 0.0;
        for (std::size_t t = 0; t < m; ++t) dot += q[i][t] * q[j][t];
        for (std::size_t t = 0; t < m; ++t) q[j][t] -= dot * q[i][t];
      }
    }
    double norm = 0.0;
    for (double v : q[j]) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : q[j]) v /= norm;
  }

  std::vector<double> out(rows * cols);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t t = 0; t < m; ++t) {
      if (cols <= rows) {
        out[t * cols + j] = q[j][t];  // column j of a tall matrix
      } else {
        out[j * cols + t] = q[j][t];  // row j of a wide matrix
      }
    }
  return out;
}

}  // namespace dwstft::layers
