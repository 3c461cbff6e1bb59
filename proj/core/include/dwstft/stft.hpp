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

#ifndef DWSTFT_STFT_HPP
#define DWSTFT_STFT_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "dwstft/tensor.hpp"

// Depthwise-STFT: a fixed, channelwise local Fourier filter bank evaluated at
// the four lowest non-zero frequencies of an n x n window.
//
// For an output position p, input channel f and frequency v,
//
//   F(v, p) = sum_i f(p - y_i) * exp(-j 2 pi v . y_i),   y_i in {-r..r}^2
//
// with n = 2r + 1, a = 1/n and v in {[a,0], [0,a], [a,a], [a,-a]}. The first
// component of v and of y is the row (vertical) axis. Each complex response
// is split into real and imaginary parts, so one input channel yields eight
// output channels in the order Re v1, Im v1, Re v2, Im v2, ..., Re v4, Im v4.
// Positions outside the input are treated as zero, which keeps the spatial
// size unchanged.
namespace dwstft::stft {

inline constexpr std::size_t kFrequencies = 4;
inline constexpr std::size_t kOutputsPerChannel = 2 * kFrequencies;

/// A 2D frequency as integer multiples of a = 1/n, (row, column).
struct FrequencyStep {
  int row = 0;
  int col = 0;
};

struct FrequencySet {
  int n = 3;
  int r = 1;
  double a = 1.0 / 3.0;
  std::array<FrequencyStep, kFrequencies> points{};

  /// Throws ParameterError unless n is odd and >= 3.
  static FrequencySet for_window(int n);
};

/// A window offset y = (row, col), each in [-r, r].
struct Offset {
  int row = 0;
  int col = 0;
};

/// The n^2 window offsets in row-major order: row from -r to r, and within a
/// row the column from -r to r. Index i = (row + r) * n + (col + r).
std::vector<Offset> neighborhood(int n);

/// Pair of 1D kernels whose outer product reproduces one frequency's basis:
/// basis(row, col) = row_kernel[row + r] * col_kernel[col + r].
struct SeparableKernels {
  std::vector<std::complex<double>> row_kernel;
  std::vector<std::complex<double>> col_kernel;
};

/// Fixed real transformation matrix W (8 x n^2, row-major) plus separable
/// factors. Immutable after construction.
class StftBasis {
 public:
  explicit StftBasis(int n);

  int n() const { return freqs_.n; }
  int radius() const { return freqs_.r; }
  std::size_t taps() const { return static_cast<std::size_t>(n() * n()); }
  const FrequencySet& frequencies() const { return freqs_; }

  /// W[k, i] with k in [0, 8) and i the neighborhood index.
  double weight(std::size_t k, std::size_t i) const {
    return matrix_[k * taps() + i];
  }
  const std::vector<double>& matrix() const { return matrix_; }
  const SeparableKernels& separable(std::size_t freq) const {
    return separable_[freq];
  }

  /// Test hook: overwrite one entry of W (fault injection for verification).
  void perturb(std::size_t k, std::size_t i, double delta) {
    matrix_[k * taps() + i] += delta;
  }

 private:
  FrequencySet freqs_;
  std::vector<double> matrix_;
  std::array<SeparableKernels, kFrequencies> separable_;
};

/// Same as constructing StftBasis(n); named for symmetry with the other ops.
StftBasis build_basis(int n);

/// Optional instrumentation: counts real multiply-accumulates as executed.
struct MacCounter {
  std::uint64_t macs = 0;
};

/// Applies W to every zero-padded n x n patch. Output (B, 8C, H, W) with
/// input channel c mapped to output channels 8c .. 8c+7.
template <typename T>
Tensor4<T> forward_direct(const Tensor4<T>& x, const StftBasis& basis,
                          MacCounter* counter = nullptr);

/// Same contract as forward_direct, evaluated as two 1D passes per
/// frequency (along each row, then along each column).
template <typename T>
Tensor4<T> forward_separable(const Tensor4<T>& x, const StftBasis& basis,
                             MacCounter* counter = nullptr);

/// Adjoint of forward_direct: the gradient with respect to the input of any
/// scalar loss, given the gradient with respect to the output.
template <typename T>
Tensor4<T> backward(const Tensor4<T>& grad_out, const StftBasis& basis,
                    const Shape4& in_shape);

/// MACs of forward_direct: 8 n^2 per output pixel and input channel.
std::uint64_t flops_direct(int n, std::uint64_t channels, std::uint64_t height,
                           std::uint64_t width);

/// MACs of forward_separable, per output pixel and input channel:
///   row pass:    n (box sum, real) + 2n (real input x complex kernel)
///   column pass: v1 2n (complex kernel x real), v2 2n (box sum of complex),
///                v3 4n and v4 4n (complex x complex)
/// for a total of 15n. v4 reuses the conjugate of the shared v2/v3 row pass.
std::uint64_t flops_separable(int n, std::uint64_t channels,
                              std::uint64_t height, std::uint64_t width);

/// Literal summation of the defining sum at one output element, in double,
/// with exp evaluated per term. Returns (Re, Im). Independent of StftBasis;
/// exists as the correctness oracle for both forward paths.
std::complex<double> oracle(const Tensor4<double>& x, int n, std::size_t batch,
                            std::size_t channel, std::size_t row,
                            std::size_t col, std::size_t freq_index);

}  // namespace dwstft::stft

#endif  // DWSTFT_STFT_HPP
