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

#include "dwstft/pointwise.hpp"

namespace dwstft::layers {

template <typename T>
PointwiseConv<T>::PointwiseConv(std::size_t in, std::size_t out,
                                bool with_bias, const std::string& name)
    : in_channels(in),
      out_channels(out),
      weight(name + ".weight", {out, in}, T{0}) {
  if (in == 0 || out == 0) {
    throw ShapeError("pointwise conv " + name + " needs positive channels");
  }
  if (with_bias) bias = Param<T>(name + ".bias", {out}, T{0});
}

template <typename T>
Tensor4<T> pointwise_forward(const Tensor4<T>& x, const PointwiseConv<T>& p) {
  const Shape4& s = x.shape();
  if (s.channels != p.in_channels) {
    throw ShapeError("pointwise conv expects " + std::to_string(p.in_channels) +
                     " input channels, got " + to_string(s));
  }
  const std::size_t hw = s.plane();
  Tensor4<T> out({s.batch, p.out_channels, s.height, s.width});
  for (std::size_t b = 0; b < s.batch; ++b) {
    for (std::size_t o = 0; o < p.out_channels; ++o) {
      T* dst = out.plane(b, o).data();
      if (p.has_bias()) std::fill(dst, dst + hw, p.bias.value[o]);
      const T* wrow = p.weight.value.data() + o * p.in_channels;
      for (std::size_t c = 0; c < p.in_channels; ++c) {
        const T w = wrow[c];
        const T* src = x.plane(b, c).data();
        for (std::size_t i = 0; i < hw; ++i) dst[i] += w * src[i];
      }
    }
  }
  return out;
}

template <typename T>
PointwiseGrads<T> pointwise_backward(const Tensor4<T>& x,
                                     const PointwiseConv<T>& p,
                                     const Tensor4<T>& grad_out) {
  const Shape4& s = x.shape();
  const Shape4& g = grad_out.shape();
  if (s.channels != p.in_channels || g.channels != p.out_channels ||
      g.batch != s.batch || g.height != s.height || g.width != s.width) {
    throw ShapeError("pointwise backward: input " + to_string(s) +
                     " and gradient " + to_string(g) +
                     " do not match the layer");
  }
  const std::size_t hw = s.plane();
  PointwiseGrads<T> grads;
  grads.grad_x = Tensor4<T>(s);
  grads.grad_w.assign(p.weight.size(), T{0});
  if (p.has_bias()) grads.grad_b.assign(p.out_channels, T{0});

  for (std::size_t b = 0; b < s.batch; ++b) {
    for (std::size_t o = 0; o < p.out_channels; ++o) {
      const T* go = grad_out.plane(b, o).data();
      if (p.has_bias()) {
        T acc{0};
        for (std::size_t i = 0; i < hw; ++i) acc += go[i];
        grads.grad_b[o] += acc;
      }
      const T* wrow = p.weight.value.data() + o * p.in_channels;
      T* gwrow = grads.grad_w.data() + o * p.in_channels;
      for (std::size_t c = 0; c < p.in_channels; ++c) {
        const T* src = x.plane(b, c).data();
        T* gx = grads.grad_x.plane(b, c).data();
        const T w = wrow[c];
        T acc{0};
        for (std::size_t i = 0; i < hw; ++i) {
          acc += go[i] * src[i];
          gx[i] += w * go[i];
        }
        gwrow[c] += acc;
      }
    }
  }
  return grads;
}

template struct PointwiseConv<float>;
template struct PointwiseConv<double>;
template Tensor4<float> pointwise_forward(const Tensor4<float>&,
                                          const PointwiseConv<float>&);
template Tensor4<double> pointwise_forward(const Tensor4<double>&,
                                           const PointwiseConv<double>&);
template PointwiseGrads<float> pointwise_backward(const Tensor4<float>&,
                                                  const PointwiseConv<float>&,
                                                  const Tensor4<float>&);
template PointwiseGrads<double> pointwise_backward(
    const Tensor4<double>&, const PointwiseConv<double>&,
    const Tensor4<double>&);

}  // namespace dwstft::layers
