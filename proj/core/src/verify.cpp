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

#include "dwstft/verify.hpp"

#include <cmath>
#include <numbers>

#include "dwstft/activations.hpp"
#include "dwstft/batchnorm.hpp"
#include "dwstft/pointwise.hpp"
#include "dwstft/stft.hpp"

namespace dwstft::verify {
namespace {

constexpr int kWindows[] = {3, 5, 7};

stft::StftBasis make_basis(int n, const VerifyOptions& options) {
  stft::StftBasis basis(n);
  if (options.perturb_basis) basis.perturb(0, 0, 1e-3);
  return basis;
}

SuiteResult finish(std::string name, double max_error, double tolerance,
                   std::size_t checks) {
  return {std::move(name), max_error <= tolerance, max_error, tolerance, checks};
}

double rel(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

// Largest |value| over positions whose whole window lies inside the input.
double interior_max_abs(const Tensor4<double>& y, int n) {
  const std::size_t r = static_cast<std::size_t>((n - 1) / 2);
  const Shape4& s = y.shape();
  double m = 0.0;
  for (std::size_t b = 0; b < s.batch; ++b)
    for (std::size_t c = 0; c < s.channels; ++c)
      for (std::size_t i = r; i + r < s.height; ++i)
        for (std::size_t j = r; j + r < s.width; ++j)
          m = std::max(m, std::abs(y(b, c, i, j)));
  return m;
}

}  // namespace

Tensor4<double> random_tensor(const Shape4& shape, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Tensor4<double> t(shape);
  for (double& v : t.data()) v = gauss(rng);
  return t;
}

SuiteResult basis_suite(const VerifyOptions& options) {
  // v1 = [a, 0], v2 = [0, a], v3 = [a, a], v4 = [a, -a] with a = 1/n.
  const int steps[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  double worst = 0.0;
  std::size_t checks = 0;
  for (int n : kWindows) {
    const stft::StftBasis basis = make_basis(n, options);
    const int r = (n - 1) / 2;
    for (int f = 0; f < 4; ++f) {
      std::size_t i = 0;
      for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx, ++i) {
          const double angle =
              2.0 * std::numbers::pi * (steps[f][0] * dy + steps[f][1] * dx) / n;
          const double re = std::cos(angle), im = -std::sin(angle);
          worst = std::max(worst, std::abs(basis.weight(2 * f, i) - re));
          worst = std::max(worst, std::abs(basis.weight(2 * f + 1, i) - im));
          const auto& sep = basis.separable(static_cast<std::size_t>(f));
          const std::complex<double> outer =
              sep.row_kernel[static_cast<std::size_t>(dy + r)] *
              sep.col_kernel[static_cast<std::size_t>(dx + r)];
          worst = std::max(worst, std::abs(outer - std::complex<double>(re, im)));
          checks += 3;
        }
    }
  }
  return finish("basis", worst, kBasisTolerance, checks);
}

SuiteResult oracle_suite(const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> window(0, 2), dim(1, 16), chans(1, 4);
  double worst = 0.0;
  std::size_t checks = 0;
  for (int instance = 0; instance < 50; ++instance) {
    const int n = kWindows[window(rng)];
    const Shape4 shape{1, static_cast<std::size_t>(chans(rng)),
                       static_cast<std::size_t>(dim(rng)),
                       static_cast<std::size_t>(dim(rng))};
    const Tensor4<double> x = random_tensor(shape, rng);
    const stft::StftBasis basis = make_basis(n, options);
    const Tensor4<double> direct = stft::forward_direct(x, basis);
    const Tensor4<double> separable = stft::forward_separable(x, basis);
    for (std::size_t c = 0; c < shape.channels; ++c)
      for (std::size_t y = 0; y < shape.height; ++y)
        for (std::size_t xx = 0; xx < shape.width; ++xx)
          for (std::size_t f = 0; f < stft::kFrequencies; ++f) {
            const auto ref = stft::oracle(x, n, 0, c, y, xx, f);
            const std::size_t re = 8 * c + 2 * f, im = re + 1;
            worst = std::max({worst, rel(direct(0, re, y, xx), ref.real()),
                              rel(direct(0, im, y, xx), ref.imag()),
                              rel(separable(0, re, y, xx), ref.real()),
                              rel(separable(0, im, y, xx), ref.imag())});
            checks += 4;
          }
  }
  return finish("oracle", worst, kPathTolerance, checks);
}

SuiteResult path_equivalence_suite(const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed + 1);
  double worst = 0.0;
  std::size_t checks = 0;
  for (int n : kWindows)
    for (std::size_t c : {1u, 3u, 8u})
      for (std::size_t hw : {1u, 5u, 16u}) {
        const Tensor4<double> x = random_tensor({2, c, hw, hw}, rng);
        const stft::StftBasis basis = make_basis(n, options);
        const auto direct = stft::forward_direct(x, basis);
        const auto separable = stft::forward_separable(x, basis);
        worst = std::max(worst, max_rel_diff(direct, separable));
        checks += direct.size();
      }
  return finish("path-equivalence", worst, kPathTolerance, checks);
}

SuiteResult dc_rejection_suite(const VerifyOptions& options) {
  double worst = 0.0;
  std::size_t checks = 0;
  for (int n : kWindows) {
    const stft::StftBasis basis = make_basis(n, options);
    for (std::size_t k = 0; k < stft::kOutputsPerChannel; ++k) {
      double row_sum = 0.0;
      for (std::size_t i = 0; i < basis.taps(); ++i) row_sum += basis.weight(k, i);
      worst = std::max(worst, std::abs(row_sum));
      ++checks;
    }
    for (double constant : {5.0, -3.5, 1000.0}) {
      const Tensor4<double> x({1, 2, 12, 12}, constant);
      const double scale = std::abs(constant);
      worst = std::max(worst,
                       interior_max_abs(stft::forward_direct(x, basis), n) / scale);
      worst = std::max(
          worst, interior_max_abs(stft::forward_separable(x, basis), n) / scale);
      checks += 2;
    }
  }
  return finish("dc-rejection", worst, kDcTolerance, checks);
}

SuiteResult adjoint_suite(const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed + 2);
  double worst = 0.0;
  std::size_t checks = 0;
  const Shape4 shapes[] = {{1, 1, 5, 5}, {2, 3, 7, 4}, {1, 2, 16, 16}, {1, 1, 1, 1}};
  for (int n : kWindows)
    for (const Shape4& s : shapes) {
      const stft::StftBasis basis = make_basis(n, options);
      const Tensor4<double> x = random_tensor(s, rng);
      const Tensor4<double> g = random_tensor(
          {s.batch, stft::kOutputsPerChannel * s.channels, s.height, s.width}, rng);
      const double lhs = inner_product(stft::forward_direct(x, basis), g);
      const double rhs = inner_product(x, stft::backward(g, basis, s));
      worst = std::max(worst, rel(lhs, rhs));
      ++checks;
    }
  return finish("adjoint", worst, kAdjointTolerance, checks);
}

SuiteResult gradient_suite(const VerifyOptions& options) {
  using namespace layers;
  std::mt19937_64 rng(options.seed + 3);
  double worst = 0.0;
  std::size_t checks = 0;
  auto track = [&](double err, std::size_t n) {
    worst = std::max(worst, err);
    checks += n;
  };

  // STFT input gradient.
  for (int n : {3, 5}) {
    const Shape4 s{1, 2, 5, 5};
    const stft::StftBasis basis = make_basis(n, options);
    Tensor4<double> x = random_tensor(s, rng);
    const Tensor4<double> g = random_tensor({1, 16, 5, 5}, rng);
    const auto analytic = stft::backward(g, basis, s);
    track(max_fd_error(x.data(), analytic.data(), [&] {
            return inner_product(stft::forward_direct(x, basis), g);
          }),
          x.size());
  }

  // Pointwise convolution.
  {
    PointwiseConv<double> conv(4, 3, true, "pw");
    for (double& w : conv.weight.value) w = std::normal_distribution<>(0, 1)(rng);
    for (double& b : conv.bias.value) b = std::normal_distribution<>(0, 1)(rng);
    Tensor4<double> x = random_tensor({2, 4, 3, 3}, rng);
    const Tensor4<double> g = random_tensor({2, 3, 3, 3}, rng);
    const auto grads = pointwise_backward(x, conv, g);
    auto loss = [&] { return inner_product(pointwise_forward(x, conv), g); };
    track(max_fd_error(x.data(), grads.grad_x.data(), loss), x.size());
    track(max_fd_error(std::span<double>(conv.weight.value), grads.grad_w, loss),
          conv.weight.size());
    track(max_fd_error(std::span<double>(conv.bias.value), grads.grad_b, loss),
          conv.bias.size());
  }

  // Batch norm, both modes.
  for (Mode mode : {Mode::kTrain, Mode::kEval}) {
    BatchNorm<double> bn(3, "bn");
    for (double& v : bn.gamma.value) v = 0.5 + std::uniform_real_distribution<>(0, 1)(rng);
    for (double& v : bn.beta.value) v = std::normal_distribution<>(0, 1)(rng);
    for (double& v : bn.running_mean.value) v = std::normal_distribution<>(0, 1)(rng);
    for (double& v : bn.running_var.value) v = 0.5 + std::uniform_real_distribution<>(0, 1)(rng);
    Tensor4<double> x = random_tensor({3, 3, 2, 2}, rng);
    const Tensor4<double> g = random_tensor(x.shape(), rng);
    BatchNormCache<double> cache;
    batchnorm_forward(x, bn, mode, &cache);
    const auto grads = batchnorm_backward(g, bn, cache);
    auto loss = [&] { return inner_product(batchnorm_forward(x, bn, mode), g); };
    track(max_fd_error(x.data(), grads.grad_x.data(), loss), x.size());
    track(max_fd_error(std::span<double>(bn.gamma.value), grads.grad_gamma, loss), 3);
    track(max_fd_error(std::span<double>(bn.beta.value), grads.grad_beta, loss), 3);
  }

  // LeakyReLU, max pool, global average pool.
  {
    Tensor4<double> x = random_tensor({2, 2, 4, 4}, rng);
    const Tensor4<double> g = random_tensor(x.shape(), rng);
    track(max_fd_error(x.data(), leaky_relu_backward(x, g).data(),
                       [&] { return inner_product(leaky_relu_forward(x), g); }),
          x.size());

    const Tensor4<double> gp = random_tensor({2, 2, 2, 2}, rng);
    const auto pooled = maxpool2_forward(x);
    track(max_fd_error(x.data(),
                       maxpool2_backward(gp, pooled.argmax, x.shape()).data(),
                       [&] { return inner_product(maxpool2_forward(x).out, gp); }),
          x.size());

    const Tensor4<double> ga = random_tensor({2, 2, 1, 1}, rng);
    track(max_fd_error(x.data(), global_avg_pool_backward(ga, x.shape()).data(),
                       [&] { return inner_product(global_avg_pool_forward(x), ga); }),
          x.size());
  }

  // Softmax cross-entropy.
  {
    Tensor4<double> logits = random_tensor({4, 5, 1, 1}, rng);
    const std::vector<int> labels{0, 3, 4, 1};
    const auto res = softmax_xent(logits, std::span<const int>(labels));
    track(max_fd_error(logits.data(), res.grad_logits.data(),
                       [&] {
                         return softmax_xent(logits, std::span<const int>(labels)).loss;
                       }),
          logits.size());
  }
  return finish("gradients", worst, kGradientTolerance, checks);
}

std::vector<SuiteResult> run_all(const VerifyOptions& options) {
  return {basis_suite(options),      oracle_suite(options),
          path_equivalence_suite(options), dc_rejection_suite(options),
          adjoint_suite(options),    gradient_suite(options)};
}

}  // namespace dwstft::verify
