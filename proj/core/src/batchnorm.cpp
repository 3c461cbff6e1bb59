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

#include "dwstft/batchnorm.hpp"

#include <cmath>

namespace dwstft::layers {

template <typename T>
BatchNorm<T>::BatchNorm(std::size_t c, const std::string& name)
    : channels(c),
      gamma(name + ".gamma", {c}, T{1}),
      beta(name + ".beta", {c}, T{0}),
      running_mean(name + ".running_mean", {c}, T{0}, false),
      running_var(name + ".running_var", {c}, T{1}, false) {}

template <typename T>
Tensor4<T> batchnorm_forward(const Tensor4<T>& x, BatchNorm<T>& bn, Mode mode,
                             BatchNormCache<T>* cache) {
  const Shape4& s = x.shape();
  if (s.channels != bn.channels) {
    throw ShapeError("batchnorm over " + std::to_string(bn.channels) +
                     " channels got " + to_string(s));
  }
  const std::size_t hw = s.plane();
  const std::size_t count = s.batch * hw;
  Tensor4<T> out(s);
  Tensor4<T> xhat;
  if (cache) xhat = Tensor4<T>(s);
  std::vector<double> inv_std(s.channels);

  for (std::size_t c = 0; c < s.channels; ++c) {
    double mean = 0.0, var = 0.0;
    if (mode == Mode::kTrain) {
      for (std::size_t b = 0; b < s.batch; ++b)
        for (T v : x.plane(b, c)) mean += v;
      mean /= static_cast<double>(count);
      for (std::size_t b = 0; b < s.batch; ++b)
        for (T v : x.plane(b, c)) var += (v - mean) * (v - mean);
      var /= static_cast<double>(count);
      const double unbiased =
          count > 1 ? var * static_cast<double>(count) / (count - 1) : var;
      bn.running_mean.value[c] = static_cast<T>(
          bn.momentum * bn.running_mean.value[c] + (1.0 - bn.momentum) * mean);
      bn.running_var.value[c] = static_cast<T>(
          bn.momentum * bn.running_var.value[c] +
          (1.0 - bn.momentum) * unbiased);
    } else {
      mean = bn.running_mean.value[c];
      var = bn.running_var.value[c];
    }
    inv_std[c] = 1.0 / std::sqrt(var + bn.epsilon);
    const T m = static_cast<T>(mean);
    const T is = static_cast<T>(inv_std[c]);
    const T g = bn.gamma.value[c];
    const T be = bn.beta.value[c];
    for (std::size_t b = 0; b < s.batch; ++b) {
      const T* src = x.plane(b, c).data();
      T* dst = out.plane(b, c).data();
      T* xh = cache ? xhat.plane(b, c).data() : nullptr;
      for (std::size_t i = 0; i < hw; ++i) {
        const T v = (src[i] - m) * is;
        if (xh) xh[i] = v;
        dst[i] = g * v + be;
      }
    }
  }
  if (cache) {
    cache->xhat = std::move(xhat);
    cache->inv_std = std::move(inv_std);
    cache->mode = mode;
  }
  return out;
}

template <typename T>
BatchNormGrads<T> batchnorm_backward(const Tensor4<T>& grad_out,
                                     const BatchNorm<T>& bn,
                                     const BatchNormCache<T>& cache) {
  const Shape4& s = grad_out.shape();
  if (!(s == cache.xhat.shape()) || s.channels != bn.channels) {
    throw ShapeError("batchnorm backward: gradient " + to_string(s) +
                     " does not match the cached forward");
  }
  const std::size_t hw = s.plane();
  const double count = static_cast<double>(s.batch * hw);
  BatchNormGrads<T> grads;
  grads.grad_x = Tensor4<T>(s);
  grads.grad_gamma.assign(s.channels, T{0});
  grads.grad_beta.assign(s.channels, T{0});

  for (std::size_t c = 0; c < s.channels; ++c) {
    double sum_g = 0.0, sum_gx = 0.0;
    for (std::size_t b = 0; b < s.batch; ++b) {
      const T* g = grad_out.plane(b, c).data();
      const T* xh = cache.xhat.plane(b, c).data();
      for (std::size_t i = 0; i < hw; ++i) {
        sum_g += g[i];
        sum_gx += static_cast<double>(g[i]) * xh[i];
      }
    }
    grads.grad_beta[c] = static_cast<T>(sum_g);
    grads.grad_gamma[c] = static_cast<T>(sum_gx);
    const double scale = bn.gamma.value[c] * cache.inv_std[c];
    for (std::size_t b = 0; b < s.batch; ++b) {
      const T* g = grad_out.plane(b, c).data();
      const T* xh = cache.xhat.plane(b, c).data();
      T* gx = grads.grad_x.plane(b, c).data();
      if (cache.mode == Mode::kEval) {
        for (std::size_t i = 0; i < hw; ++i) gx[i] = static_cast<T>(scale * g[i]);
      } else {
        // dx = gamma * inv_std * (g - mean(g) - xhat * mean(g * xhat))
        const double mg = sum_g / count, mgx = sum_gx / count;
        for (std::size_t i = 0; i < hw; ++i) {
          gx[i] = static_cast<T>(scale * (g[i] - mg - xh[i] * mgx));
        }
      }
    }
  }
  return grads;
}

template struct BatchNorm<float>;
template struct BatchNorm<double>;
template Tensor4<float> batchnorm_forward(const Tensor4<float>&,
                                          BatchNorm<float>&, Mode,
                                          BatchNormCache<float>*);
template Tensor4<double> batchnorm_forward(const Tensor4<double>&,
                                           BatchNorm<double>&, Mode,
                                           BatchNormCache<double>*);
template BatchNormGrads<float> batchnorm_backward(const Tensor4<float>&,
                                                  const BatchNorm<float>&,
                                                  const BatchNormCache<float>&);
template BatchNormGrads<double> batchnorm_backward(
    const Tensor4<double>&, const BatchNorm<double>&,
    const BatchNormCache<double>&);

}  // namespace dwstft::layers
