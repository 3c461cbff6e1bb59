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

#include "dwstft/stft.hpp"

#include <numbers>

namespace dwstft::stft {
namespace {

// exp(-j 2 pi m / n) with m reduced mod n so every angle is in [0, 2 pi).
std::complex<double> unit_root(int m, int n) {
  const int reduced = ((m % n) + n) % n;
  const double theta = 2.0 * std::numbers::pi * reduced / n;
  return {std::cos(theta), -std::sin(theta)};
}

void check_input(const Shape4& s) { (void)s.elements(); }

}  // namespace

FrequencySet FrequencySet::for_window(int n) {
  if (n < 3 || n % 2 == 0) {
    throw ParameterError("STFT window size must be odd and >= 3, got " +
                         std::to_string(n));
  }
  FrequencySet set;
  set.n = n;
  set.r = (n - 1) / 2;
  set.a = 1.0 / n;
  set.points = {FrequencyStep{1, 0}, FrequencyStep{0, 1}, FrequencyStep{1, 1},
                FrequencyStep{1, -1}};
  return set;
}

std::vector<Offset> neighborhood(int n) {
  const FrequencySet set = FrequencySet::for_window(n);
  std::vector<Offset> offsets;
  offsets.reserve(static_cast<std::size_t>(n * n));
  for (int row = -set.r; row <= set.r; ++row)
    for (int col = -set.r; col <= set.r; ++col) offsets.push_back({row, col});
  return offsets;
}

StftBasis::StftBasis(int n) : freqs_(FrequencySet::for_window(n)) {
  const std::vector<Offset> offsets = neighborhood(n);
  matrix_.assign(kOutputsPerChannel * offsets.size(), 0.0);
  for (std::size_t f = 0; f < kFrequencies; ++f) {
    const FrequencyStep v = freqs_.points[f];
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      const std::complex<double> w =
          unit_root(v.row * offsets[i].row + v.col * offsets[i].col, n);
      matrix_[(2 * f) * offsets.size() + i] = w.real();
      matrix_[(2 * f + 1) * offsets.size() + i] = w.imag();
    }
    SeparableKernels& sep = separable_[f];
    for (int t = -freqs_.r; t <= freqs_.r; ++t) {
      sep.row_kernel.push_back(unit_root(v.row * t, n));
      sep.col_kernel.push_back(unit_root(v.col * t, n));
    }
  }
}

StftBasis build_basis(int n) { return StftBasis(n); }

template <typename T>
Tensor4<T> forward_direct(const Tensor4<T>& x, const StftBasis& basis,
                          MacCounter* counter) {
  check_input(x.shape());
  const Shape4& s = x.shape();
  const int n = basis.n();
  const std::size_t r = static_cast<std::size_t>(basis.radius());
  const std::size_t H = s.height, W = s.width, PW = W + 2 * r;
  const std::vector<Offset> offsets = neighborhood(n);

  Tensor4<T> padded = pad_spatial(x, r);
  Tensor4<T> out({s.batch, kOutputsPerChannel * s.channels, H, W});

  std::array<T, kOutputsPerChannel> w{};
  for (std::size_t b = 0; b < s.batch; ++b) {
    for (std::size_t c = 0; c < s.channels; ++c) {
      const T* src = padded.plane(b, c).data();
      std::array<T*, kOutputsPerChannel> dst{};
      for (std::size_t k = 0; k < kOutputsPerChannel; ++k) {
        dst[k] = out.plane(b, kOutputsPerChannel * c + k).data();
      }
      for (std::size_t i = 0; i < offsets.size(); ++i) {
        for (std::size_t k = 0; k < kOutputsPerChannel; ++k) {
          w[k] = static_cast<T>(basis.weight(k, i));
        }
        // Input at p - y sits at padded (p - y + r).
        const std::size_t row0 = r - offsets[i].row;
        const std::size_t col0 = r - offsets[i].col;
        for (std::size_t py = 0; py < H; ++py) {
          const T* in_row = src + (py + row0) * PW + col0;
          for (std::size_t k = 0; k < kOutputsPerChannel; ++k) {
            T* out_row = dst[k] + py * W;
            const T wk = w[k];
            for (std::size_t px = 0; px < W; ++px) out_row[px] += wk * in_row[px];
          }
        }
        if (counter) counter->macs += kOutputsPerChannel * H * W;
      }
    }
  }
  return out;
}

template <typename T>
Tensor4<T> forward_separable(const Tensor4<T>& x, const StftBasis& basis,
                             MacCounter* counter) {
  check_input(x.shape());
  const Shape4& s = x.shape();
  const std::size_t n = static_cast<std::size_t>(basis.n());
  const std::size_t r = static_cast<std::size_t>(basis.radius());
  const std::size_t H = s.height, W = s.width, PW = W + 2 * r;
  const std::size_t PH = H + 2 * r;

  // Row-pass kernels: v1 has a constant column kernel (box sum); v2 and v3
  // share the same complex column kernel and v4 uses its conjugate, which for
  // real input is the conjugate of the shared v2/v3 row-pass result.
  std::vector<T> box(n), hre(n), him(n);
  // Column-pass kernels.
  std::vector<T> k1re(n), k1im(n), box2(n), k3re(n), k3im(n), k4re(n), k4im(n);
  for (std::size_t t = 0; t < n; ++t) {
    box[t] = static_cast<T>(basis.separable(0).col_kernel[t].real());
    hre[t] = static_cast<T>(basis.separable(2).col_kernel[t].real());
    him[t] = static_cast<T>(basis.separable(2).col_kernel[t].imag());
    k1re[t] = static_cast<T>(basis.separable(0).row_kernel[t].real());
    k1im[t] = static_cast<T>(basis.separable(0).row_kernel[t].imag());
    box2[t] = static_cast<T>(basis.separable(1).row_kernel[t].real());
    k3re[t] = static_cast<T>(basis.separable(2).row_kernel[t].real());
    k3im[t] = static_cast<T>(basis.separable(2).row_kernel[t].imag());
    k4re[t] = static_cast<T>(basis.separable(3).row_kernel[t].real());
    k4im[t] = static_cast<T>(basis.separable(3).row_kernel[t].imag());
  }

  Tensor4<T> out({s.batch, kOutputsPerChannel * s.channels, H, W});
  std::vector<T> prow(PW, T{0});
  // Row-pass results with r zero rows above and below.
  std::vector<T> h0(PH * W), h1re(PH * W), h1im(PH * W);

  for (std::size_t b = 0; b < s.batch; ++b) {
    for (std::size_t c = 0; c < s.channels; ++c) {
      std::fill(h0.begin(), h0.end(), T{0});
      std::fill(h1re.begin(), h1re.end(), T{0});
      std::fill(h1im.begin(), h1im.end(), T{0});
      const T* src = x.plane(b, c).data();

      // Row pass: H[y][x] = sum_t k[t] * in(y, x - (t - r)).
      for (std::size_t y = 0; y < H; ++y) {
        std::copy(src + y * W, src + (y + 1) * W, prow.begin() + r);
        T* o0 = h0.data() + (y + r) * W;
        T* ore = h1re.data() + (y + r) * W;
        T* oim = h1im.data() + (y + r) * W;
        for (std::size_t t = 0; t < n; ++t) {
          const T* in = prow.data() + (2 * r - t);
          const T kb = box[t], kr = hre[t], ki = him[t];
          for (std::size_t px = 0; px < W; ++px) {
            const T v = in[px];
            o0[px] += kb * v;
            ore[px] += kr * v;
            oim[px] += ki * v;
          }
        }
        if (counter) counter->macs += 3 * n * W;
      }

      T* f1re = out.plane(b, kOutputsPerChannel * c + 0).data();
      T* f1im = out.plane(b, kOutputsPerChannel * c + 1).data();
      T* f2re = out.plane(b, kOutputsPerChannel * c + 2).data();
      T* f2im = out.plane(b, kOutputsPerChannel * c + 3).data();
      T* f3re = out.plane(b, kOutputsPerChannel * c + 4).data();
      T* f3im = out.plane(b, kOutputsPerChannel * c + 5).data();
      T* f4re = out.plane(b, kOutputsPerChannel * c + 6).data();
      T* f4im = out.plane(b, kOutputsPerChannel * c + 7).data();

      // Column pass: F[y][x] = sum_t k[t] * H(y - (t - r), x).
      for (std::size_t y = 0; y < H; ++y) {
        const std::size_t o = y * W;
        for (std::size_t t = 0; t < n; ++t) {
          const std::size_t row = (y + 2 * r - t) * W;
          const T* a0 = h0.data() + row;
          const T* are = h1re.data() + row;
          const T* aim = h1im.data() + row;
          const T c1r = k1re[t], c1i = k1im[t], c2 = box2[t];
          const T c3r = k3re[t], c3i = k3im[t], c4r = k4re[t], c4i = k4im[t];
          for (std::size_t px = 0; px < W; ++px) {
            const T v0 = a0[px], vr = are[px], vi = aim[px];
            f1re[o + px] += c1r * v0;
            f1im[o + px] += c1i * v0;
            f2re[o + px] += c2 * vr;
            f2im[o + px] += c2 * vi;
            f3re[o + px] += c3r * vr - c3i * vi;
            f3im[o + px] += c3r * vi + c3i * vr;
            f4re[o + px] += c4r * vr + c4i * vi;
            f4im[o + px] += c4i * vr - c4r * vi;
          }
        }
        if (counter) counter->macs += 12 * n * W;
      }
    }
  }
  return out;
}

template <typename T>
Tensor4<T> backward(const Tensor4<T>& grad_out, const StftBasis& basis,
                    const Shape4& in_shape) {
  const Shape4& g = grad_out.shape();
  (void)in_shape.elements();
  if (g.batch != in_shape.batch ||
      g.channels != kOutputsPerChannel * in_shape.channels ||
      g.height != in_shape.height || g.width != in_shape.width) {
    throw ShapeError("STFT backward: gradient " + to_string(g) +
                     " inconsistent with input " + to_string(in_shape));
  }
  const std::size_t r = static_cast<std::size_t>(basis.radius());
  const std::size_t H = g.height, W = g.width, PW = W + 2 * r;
  const std::vector<Offset> offsets = neighborhood(basis.n());

  // grad_in(q) = sum_k sum_i W[k, i] * grad_out_k(q + y_i)
  Tensor4<T> padded = pad_spatial(grad_out, r);
  Tensor4<T> grad_in(in_shape);
  for (std::size_t b = 0; b < g.batch; ++b) {
    for (std::size_t c = 0; c < in_shape.channels; ++c) {
      T* dst = grad_in.plane(b, c).data();
      for (std::size_t k = 0; k < kOutputsPerChannel; ++k) {
        const T* src = padded.plane(b, kOutputsPerChannel * c + k).data();
        for (std::size_t i = 0; i < offsets.size(); ++i) {
          const T w = static_cast<T>(basis.weight(k, i));
          const std::size_t row0 = r + offsets[i].row;
          const std::size_t col0 = r + offsets[i].col;
          for (std::size_t qy = 0; qy < H; ++qy) {
            const T* in_row = src + (qy + row0) * PW + col0;
            T* out_row = dst + qy * W;
            for (std::size_t qx = 0; qx < W; ++qx) out_row[qx] += w * in_row[qx];
          }
        }
      }
    }
  }
  return grad_in;
}

std::uint64_t flops_direct(int n, std::uint64_t channels, std::uint64_t height,
                           std::uint64_t width) {
  const auto taps = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  return kOutputsPerChannel * taps * channels * height * width;
}

std::uint64_t flops_separable(int n, std::uint64_t channels,
                              std::uint64_t height, std::uint64_t width) {
  const auto un = static_cast<std::uint64_t>(n);
  return (3 * un + 12 * un) * channels * height * width;
}

template Tensor4<float> forward_direct(const Tensor4<float>&, const StftBasis&,
                                       MacCounter*);
template Tensor4<double> forward_direct(const Tensor4<double>&,
                                        const StftBasis&, MacCounter*);
template Tensor4<float> forward_separable(const Tensor4<float>&,
                                          const StftBasis&, MacCounter*);
template Tensor4<double> forward_separable(const Tensor4<double>&,
                                           const StftBasis&, MacCounter*);
template Tensor4<float> backward(const Tensor4<float>&, const StftBasis&,
                                 const Shape4&);
template Tensor4<double> backward(const Tensor4<double>&, const StftBasis&,
                                  const Shape4&);

}  // namespace dwstft::stft
