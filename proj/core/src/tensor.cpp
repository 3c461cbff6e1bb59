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

#include "dwstft/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <iomanip>
#include <limits>
#include <ostream>

namespace dwstft {

std::size_t Shape4::elements() const {
  const std::size_t dims[] = {batch, channels, height, width};
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) {
      throw ShapeError("tensor shape " + to_string(*this) +
                       " has a zero extent");
    }
    if (total > std::numeric_limits<std::size_t>::max() / d) {
      throw ShapeError("tensor shape " + to_string(*this) + " overflows");
    }
    total *= d;
  }
  return total;
}

std::string to_string(const Shape4& s) {
  return "(" + std::to_string(s.batch) + "," + std::to_string(s.channels) +
         "," + std::to_string(s.height) + "," + std::to_string(s.width) + ")";
}

template <typename T>
Tensor4<T>::Tensor4(Shape4 shape, T fill)
    : shape_(shape), data_(shape.elements(), fill) {}

template <typename T>
Tensor4<T>::Tensor4(Shape4 shape, std::vector<T> data)
    : shape_(shape), data_(std::move(data)) {
  if (data_.size() != shape_.elements()) {
    throw ShapeError("buffer of " + std::to_string(data_.size()) +
                     " elements does not match shape " + to_string(shape_));
  }
}

template <typename T>
T& Tensor4<T>::at(std::size_t b, std::size_t c, std::size_t y, std::size_t x) {
  if (b >= shape_.batch || c >= shape_.channels || y >= shape_.height ||
      x >= shape_.width) {
    throw ShapeError("index out of range for shape " + to_string(shape_));
  }
  return data_[index(b, c, y, x)];
}

template <typename T>
const T& Tensor4<T>::at(std::size_t b, std::size_t c, std::size_t y,
                        std::size_t x) const {
  return const_cast<Tensor4*>(this)->at(b, c, y, x);
}

template <typename T>
void Tensor4<T>::fill(T value) {
  std::fill(data_.begin(), data_.end(), value);
}

template <typename T>
Tensor4<T>& Tensor4<T>::operator+=(const Tensor4& other) {
  if (!(shape_ == other.shape_)) {
    throw ShapeError("cannot add " + to_string(other.shape_) + " to " +
                     to_string(shape_));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

template <typename T>
Tensor4<T>& Tensor4<T>::operator*=(T factor) {
  for (T& v : data_) v *= factor;
  return *this;
}

template <typename T>
Tensor4<T> pad_spatial(const Tensor4<T>& x, std::size_t r) {
  if (r == 0) return x;
  const Shape4& s = x.shape();
  Tensor4<T> out({s.batch, s.channels, s.height + 2 * r, s.width + 2 * r});
  for (std::size_t b = 0; b < s.batch; ++b)
    for (std::size_t c = 0; c < s.channels; ++c)
      for (std::size_t y = 0; y < s.height; ++y) {
        auto src = x.data().subspan(x.index(b, c, y, 0), s.width);
        std::copy(src.begin(), src.end(),
                  out.data().begin() + out.index(b, c, y + r, r));
      }
  return out;
}

template <typename T>
Tensor4<T> crop_spatial(const Tensor4<T>& x, std::size_t r) {
  if (r == 0) return x;
  const Shape4& s = x.shape();
  if (s.height <= 2 * r || s.width <= 2 * r) {
    throw ShapeError("cannot crop " + std::to_string(r) + " from " +
                     to_string(s));
  }
  Tensor4<T> out({s.batch, s.channels, s.height - 2 * r, s.width - 2 * r});
  const Shape4& o = out.shape();
  for (std::size_t b = 0; b < o.batch; ++b)
    for (std::size_t c = 0; c < o.channels; ++c)
      for (std::size_t y = 0; y < o.height; ++y) {
        auto src = x.data().subspan(x.index(b, c, y + r, r), o.width);
        std::copy(src.begin(), src.end(),
                  out.data().begin() + out.index(b, c, y, 0));
      }
  return out;
}

template <typename T>
Tensor4<T> concat_channels(std::span<const Tensor4<T>> xs) {
  if (xs.empty()) throw ShapeError("concat_channels of an empty list");
  const Shape4& first = xs.front().shape();
  std::size_t channels = 0;
  for (const auto& x : xs) {
    const Shape4& s = x.shape();
    if (s.batch != first.batch || s.height != first.height ||
        s.width != first.width) {
      throw ShapeError("concat_channels: " + to_string(s) +
                       " does not match " + to_string(first));
    }
    channels += s.channels;
  }
  Tensor4<T> out({first.batch, channels, first.height, first.width});
  const std::size_t plane = first.plane();
  for (std::size_t b = 0; b < first.batch; ++b) {
    std::size_t offset = 0;
    for (const auto& x : xs) {
      const std::size_t n = x.shape().channels * plane;
      auto src = x.data().subspan(x.index(b, 0, 0, 0), n);
      std::copy(src.begin(), src.end(),
                out.data().begin() + out.index(b, offset, 0, 0));
      offset += x.shape().channels;
    }
  }
  return out;
}

template <typename T>
std::vector<Tensor4<T>> split_channels(const Tensor4<T>& x,
                                       std::span<const std::size_t> sizes) {
  const Shape4& s = x.shape();
  std::size_t total = 0;
  for (std::size_t n : sizes) total += n;
  if (total != s.channels) {
    throw ShapeError("split_channels sizes sum to " + std::to_string(total) +
                     " but tensor has " + std::to_string(s.channels) +
                     " channels");
  }
  std::vector<Tensor4<T>> parts;
  parts.reserve(sizes.size());
  for (std::size_t n : sizes) {
    parts.emplace_back(Shape4{s.batch, n, s.height, s.width});
  }
  const std::size_t plane = s.plane();
  for (std::size_t b = 0; b < s.batch; ++b) {
    std::size_t offset = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      auto src = x.data().subspan(x.index(b, offset, 0, 0), sizes[i] * plane);
      std::copy(src.begin(), src.end(),
                parts[i].data().begin() + parts[i].index(b, 0, 0, 0));
      offset += sizes[i];
    }
  }
  return parts;
}

template <typename T>
Tensor4<T> slice_batch(const Tensor4<T>& x, std::size_t first,
                       std::size_t count) {
  const Shape4& s = x.shape();
  if (count == 0 || first + count > s.batch) {
    throw ShapeError("batch slice [" + std::to_string(first) + ", " +
                     std::to_string(first + count) + ") out of range for " +
                     to_string(s));
  }
  const std::size_t per = s.channels * s.plane();
  auto src = x.data().subspan(first * per, count * per);
  return Tensor4<T>({count, s.channels, s.height, s.width},
                    std::vector<T>(src.begin(), src.end()));
}

template <typename T>
double inner_product(const Tensor4<T>& a, const Tensor4<T>& b) {
  if (!(a.shape() == b.shape())) {
    throw ShapeError("inner_product of " + to_string(a.shape()) + " and " +
                     to_string(b.shape()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += static_cast<double>(a.data()[i]) * static_cast<double>(b.data()[i]);
  }
  return acc;
}

template <typename T>
double sum(const Tensor4<T>& x) {
  double acc = 0.0;
  for (T v : x.data()) acc += static_cast<double>(v);
  return acc;
}

template <typename T>
double max_abs(const Tensor4<T>& x) {
  double m = 0.0;
  for (T v : x.data()) m = std::max(m, std::abs(static_cast<double>(v)));
  return m;
}

template <typename T>
double max_rel_diff(const Tensor4<T>& a, const Tensor4<T>& b) {
  if (!(a.shape() == b.shape())) {
    throw ShapeError("max_rel_diff of " + to_string(a.shape()) + " and " +
                     to_string(b.shape()));
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double u = a.data()[i];
    const double v = b.data()[i];
    const double scale = std::max({std::abs(u), std::abs(v), 1.0});
    m = std::max(m, std::abs(u - v) / scale);
  }
  return m;
}

template <typename T>
void write_debug_dump(std::ostream& os, const Tensor4<T>& x) {
  const Shape4& s = x.shape();
  os << s.batch << ' ' << s.channels << ' ' << s.height << ' ' << s.width
     << '\n';
  os << std::setprecision(std::numeric_limits<T>::max_digits10);
  for (T v : x.data()) os << v << '\n';
}

template <typename T>
Tensor4<T> read_debug_dump(std::istream& is) {
  Shape4 s;
  if (!(is >> s.batch >> s.channels >> s.height >> s.width)) {
    throw FormatError("tensor dump: missing 'B C H W' header");
  }
  std::vector<T> data(s.elements());
  for (T& v : data) {
    if (!(is >> v)) throw FormatError("tensor dump: truncated data");
  }
  return Tensor4<T>(s, std::move(data));
}

#define DWSTFT_INSTANTIATE(T)                                                \
  template class Tensor4<T>;                                                 \
  template Tensor4<T> pad_spatial(const Tensor4<T>&, std::size_t);           \
  template Tensor4<T> crop_spatial(const Tensor4<T>&, std::size_t);          \
  template Tensor4<T> concat_channels(std::span<const Tensor4<T>>);          \
  template std::vector<Tensor4<T>> split_channels(                           \
      const Tensor4<T>&, std::span<const std::size_t>);                      \
  template Tensor4<T> slice_batch(const Tensor4<T>&, std::size_t,            \
                                  std::size_t);                              \
  template double inner_product(const Tensor4<T>&, const Tensor4<T>&);       \
  template double sum(const Tensor4<T>&);                                    \
  template double max_abs(const Tensor4<T>&);                                \
  template double max_rel_diff(const Tensor4<T>&, const Tensor4<T>&);        \
  template void write_debug_dump(std::ostream&, const Tensor4<T>&);          \
  template Tensor4<T> read_debug_dump(std::istream&);

DWSTFT_INSTANTIATE(float)
DWSTFT_INSTANTIATE(double)

#undef DWSTFT_INSTANTIATE

}  // namespace dwstft
