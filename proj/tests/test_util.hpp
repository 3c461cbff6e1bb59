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

#ifndef DWSTFT_TESTS_TEST_UTIL_HPP
#define DWSTFT_TESTS_TEST_UTIL_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dwstft/tensor.hpp"

namespace dwstft::testing {

inline Tensor4<double> gaussian(const Shape4& shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  Tensor4<double> t(shape);
  for (double& v : t.data()) v = dist(rng);
  return t;
}

inline std::vector<double> gaussian_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

// Fresh directory under the system temp dir, removed by the caller.
std::string temp_dir(const std::string& tag);

// Runs a shell command, returns its exit status (not the raw wait status).
int run_command(const std::string& command);

std::string read_file(const std::string& path);

}  // namespace dwstft::testing

#endif  // DWSTFT_TESTS_TEST_UTIL_HPP
