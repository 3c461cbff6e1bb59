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

#include "dwstft/activations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dwstft::layers {

template <typename T>
Tensor4<T> leaky_relu_forward(const Tensor4<T>& x, T alpha) {
  Tensor4<T> out(x.shape());
  auto src = x.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = src[i] > T{0} ? src[i] : alpha * src[i];
  }
  return out;
}

template <typename T>
Tensor4<T> leaky_relu_backward(const Tensor4<T>& x, const Tensor4<T>& grad_out,
                               T alpha) {
  if (!(x.shape() == grad_out.shape())) {
    throw ShapeError("leaky_relu backward: " + to_string(grad_out.shape()) +
                     " vs input " + to_string(x.shape()));
  }
  Tensor4<T> out(x.shape());
  auto src = x.data();
  auto g = grad_out.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = src[i] > T{0} ? g[i] : alpha * g[i];
  }
  return out;
}

template <typename T>
MaxPoolResult<T> maxpool2_forward(const Tensor4<T>& x) {
  const Shape4& s = x.shape();
  if (s.height % 2 != 0 || s.width % 2 != 0) {
    throw ShapeError("maxpool2 needs even spatial dims, got " + to_string(s));
  }
  MaxPoolResult<T> res;
  res.out = Tensor4<T>({s.batch, s.channels, s.height / 2, s.width / 2});
  res.argmax.resize(res.out.size());
  const std::size_t oh = s.height / 2, ow = s.width / 2;
  std::size_t o = 0;
  for (std::size_t b = 0; b < s.batch; ++b)
    for (std::size_t c = 0; c < s.channels; ++c)
      for (std::size_t y = 0; y < oh; ++y)
        for (std::size_t xx = 0; xx < ow; ++xx, ++o) {
          std::size_t best = x.index(b, c, 2 * y, 2 * xx);
          for (std::size_t dy = 0; dy < 2; ++dy)
            for (std::size_t dx = 0; dx < 2; ++dx) {
              const std::size_t idx = x.index(b, c, 2 * y + dy, 2 * xx + dx);
              if (x.data()[idx] > x.data()[best]) best = idx;
            }
          res.out.data()[o] = x.data()[best];
          res.argmax[o] = static_cast<std::uint32_t>(best);
        }
  return res;
}

template <typename T>
Tensor4<T> maxpool2_backward(const Tensor4<T>& grad_out,
                             std::span<const std::uint32_t> argmax,
                             const Shape4& in_shape) {
  if (argmax.size() != grad_out.size() ||
      grad_out.shape().height * 2 != in_shape.height ||
      grad_out.shape().width * 2 != in_shape.width) {
    throw ShapeError("maxpool2 backward: gradient " +
                     to_string(grad_out.shape()) + " vs input " +
                     to_string(in_shape));
  }
  Tensor4<T> grad_in(in_shape);
  for (std::size_t o = 0; o < argmax.size(); ++o) {
    grad_in.data()[argmax[o]] += grad_out.data()[o];
  }
  return grad_in;
}

template <typename T>
Tensor4<T> global_avg_pool_forward(const Tensor4<T>& x) {
  const Shape4& s = x.shape();
  Tensor4<T> out({s.batch, s.channels, 1, 1});
  const double inv = 1.0 / static_cast<double>(s.plane());
  for (std::size_t b = 0; b < s.batch; ++b)
    for (std::size_t c = 0; c < s.channels; ++c) {
      double acc = 0.0;
      for (T v : x.plane(b, c)) acc += v;
      out(b, c, 0, 0) = static_cast<T>(acc * inv);
    }
  return out;
}

template <typename T>
Tensor4<T> global_avg_pool_backward(const Tensor4<T>& grad_out,
                                    const Shape4& in_shape) {
  const Shape4& g = grad_out.shape();
  if (g.batch != in_shape.batch || g.channels != in_shape.channels ||
      g.height != 1 || g.width != 1) {
    throw ShapeError("global_avg_pool backward: gradient " + to_string(g) +
                     " vs input " + to_string(in_shape));
  }
  Tensor4<T> grad_in(in_shape);
  const T inv = static_cast<T>(1.0 / static_cast<double>(in_shape.plane()));
  for (std::size_t b = 0; b < g.batch; ++b)
    for (std::size_t c = 0; c < g.channels; ++c) {
      const T v = grad_out(b, c, 0, 0) * inv;
      for (T& dst : grad_in.plane(b, c)) dst = v;
    }
  return grad_in;
}

namespace {

template <typename T>
void check_logits(const Tensor4<T>& logits) {
  const Shape4& s = logits.shape();
  if (s.height != 1 || s.width != 1) {
    throw ShapeError("logits must be (B, K, 1, 1), got " + to_string(s));
  }
}

}  // namespace

template <typename T>
Tensor4<T> softmax(const Tensor4<T>& logits) {
  check_logits(logits);
  const Shape4& s = logits.shape();
  Tensor4<T> out(s);
  for (std::size_t b = 0; b < s.batch; ++b) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s.channels; ++k)
      m = std::max(m, static_cast<double>(logits(b, k, 0, 0)));
    double z = 0.0;
    for (std::size_t k = 0; k < s.channels; ++k)
      z += std::exp(logits(b, k, 0, 0) - m);
    for (std::size_t k = 0; k < s.channels; ++k)
      out(b, k, 0, 0) = static_cast<T>(std::exp(logits(b, k, 0, 0) - m) / z);
  }
  return out;
}

template <typename T>
XentResult<T> softmax_xent(const Tensor4<T>& logits, const Tensor4<T>& targets) {
  check_logits(logits);
  if (!(targets.shape() == logits.shape())) {
    throw ShapeError("targets " + to_string(targets.shape()) +
                     " do not match logits " + to_string(logits.shape()));
  }
  const Shape4& s = logits.shape();
  XentResult<T> res;
  res.grad_logits = Tensor4<T>(s);
  res.probabilities = Tensor4<T>(s);
  const double inv_batch = 1.0 / static_cast<double>(s.batch);
  double total = 0.0;
  for (std::size_t b = 0; b < s.batch; ++b) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s.channels; ++k)
      m = std::max(m, static_cast<double>(logits(b, k, 0, 0)));
    double z = 0.0;
    for (std::size_t k = 0; k < s.channels; ++k)
      z += std::exp(logits(b, k, 0, 0) - m);
    const double log_z = std::log(z) + m;
    double mass = 0.0;
    for (std::size_t k = 0; k < s.channels; ++k) {
      const double t = targets(b, k, 0, 0);
      mass += t;
      total -= t * (logits(b, k, 0, 0) - log_z);
    }
    for (std::size_t k = 0; k < s.channels; ++k) {
      const double p = std::exp(logits(b, k, 0, 0) - log_z);
      res.probabilities(b, k, 0, 0) = static_cast<T>(p);
      res.grad_logits(b, k, 0, 0) =
          static_cast<T>((mass * p - targets(b, k, 0, 0)) * inv_batch);
    }
  }
  res.loss = total * inv_batch;
  return res;
}

template <typename T>
XentResult<T> softmax_xent(const Tensor4<T>& logits,
                           std::span<const int> labels) {
  check_logits(logits);
  const Shape4& s = logits.shape();
  if (labels.size() != s.batch) {
    throw ShapeError("got " + std::to_string(labels.size()) +
                     " labels for a batch of " + std::to_string(s.batch));
  }
  Tensor4<T> targets(s);
  for (std::size_t b = 0; b < s.batch; ++b) {
    if (labels[b] < 0 || static_cast<std::size_t>(labels[b]) >= s.channels) {
      throw ParameterError("label " + std::to_string(labels[b]) +
                           " out of range for " + std::to_string(s.channels) +
                           " classes");
    }
    targets(b, static_cast<std::size_t>(labels[b]), 0, 0) = T{1};
  }
  return softmax_xent(logits, targets);
}

#define DWSTFT_INSTANTIATE(T)                                                 \
  template Tensor4<T> leaky_relu_forward(const Tensor4<T>&, T);               \
  template Tensor4<T> leaky_relu_backward(const Tensor4<T>&,                  \
                                          const Tensor4<T>&, T);              \
  template MaxPoolResult<T> maxpool2_forward(const Tensor4<T>&);              \
  template Tensor4<T> maxpool2_backward(                                      \
      const Tensor4<T>&, std::span<const std::uint32_t>, const Shape4&);      \
  template Tensor4<T> global_avg_pool_forward(const Tensor4<T>&);             \
  template Tensor4<T> global_avg_pool_backward(const Tensor4<T>&,             \
                                               const Shape4&);                \
  template Tensor4<T> softmax(const Tensor4<T>&);                             \
  template XentResult<T> softmax_xent(const Tensor4<T>&,                      \
                                      std::span<const int>);                  \
  template XentResult<T> softmax_xent(const Tensor4<T>&, const Tensor4<T>&);

DWSTFT_INSTANTIATE(float)
DWSTFT_INSTANTIATE(double)

#undef DWSTFT_INSTANTIATE

}  // namespace dwstft::layers
