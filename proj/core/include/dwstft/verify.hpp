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

#ifndef DWSTFT_VERIFY_HPP
#define DWSTFT_VERIFY_HPP

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dwstft/gradcheck.hpp"
#include "dwstft/tensor.hpp"

// Self-checks of the STFT kernels and layer gradients against independent
// references: hand-evaluated basis entries, the literal-sum oracle, inner
// product adjoint identities and central finite differences.
namespace dwstft::verify {

struct SuiteResult {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::size_t checks = 0;
};

struct VerifyOptions {
  std::uint64_t seed = 20240607;
  bool perturb_basis = false;  // fault injection: corrupt one W entry
};

inline constexpr double kBasisTolerance = 1e-12;
inline constexpr double kPathTolerance = 1e-10;
inline constexpr double kDcTolerance = 1e-9;
inline constexpr double kAdjointTolerance = 1e-10;
inline constexpr double kGradientTolerance = 1e-5;
inline constexpr double kFiniteDifferenceStep = 1e-5;

SuiteResult basis_suite(const VerifyOptions& options);
SuiteResult oracle_suite(const VerifyOptions& options);
SuiteResult path_equivalence_suite(const VerifyOptions& options);
SuiteResult dc_rejection_suite(const VerifyOptions& options);
SuiteResult adjoint_suite(const VerifyOptions& options);
SuiteResult gradient_suite(const VerifyOptions& options);

std::vector<SuiteResult> run_all(const VerifyOptions& options);

/// Standard normal entries.
Tensor4<double> random_tensor(const Shape4& shape, std::mt19937_64& rng);

/// Largest gradient_rel_error over all coordinates between `analytic` and
/// central differences of `loss` with respect to `coords`.
template <typename Loss>
double max_fd_error(std::span<double> coords, std::span<const double> analytic,
                    Loss&& loss, double eps = kFiniteDifferenceStep) {
  double worst = 0.0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const double numeric = central_difference(coords[i], eps, loss);
    worst = std::max(worst, gradient_rel_error(analytic[i], numeric));
  }
  return worst;
}

}  // namespace dwstft::verify

#endif  // DWSTFT_VERIFY_HPP
