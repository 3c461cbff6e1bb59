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

#ifndef DWSTFT_TENSOR_HPP
#define DWSTFT_TENSOR_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dwstft/error.hpp"

namespace dwstft {

/// Extents of a rank-4 activation in (batch, channel, height, width) order.
struct Shape4 {
  std::size_t batch = 1;
  std::size_t channels = 1;
  std::size_t height = 1;
  std::size_t width = 1;

  /// Element count; throws ShapeError on a zero extent or on overflow.
  std::size_t elements() const;
  std::size_t plane() const { return height * width; }

  friend bool operator==(const Shape4&, const Shape4&) = default;
};

std::string to_string(const Shape4& s);

/// Dense NCHW tensor of real scalars backed by one contiguous buffer.
///
/// A default-constructed tensor is empty (no storage) and only serves as a
/// placeholder to be assigned; every constructed tensor has all extents >= 1.
template <typename T>
class Tensor4 {
 public:
  using value_type = T;

  Tensor4() = default;
  explicit Tensor4(Shape4 shape, T fill = T{0});
  Tensor4(Shape4 shape, std::vector<T> data);

  static Tensor4 zeros(Shape4 shape) { return Tensor4(shape); }

  const Shape4& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::size_t index(std::size_t b, std::size_t c, std::size_t y,
                    std::size_t x) const {
    return ((b * shape_.channels + c) * shape_.height + y) * shape_.width + x;
  }

  T& operator()(std::size_t b, std::size_t c, std::size_t y, std::size_t x) {
    return data_[index(b, c, y, x)];
  }
  const T& operator()(std::size_t b, std::size_t c, std::size_t y,
                      std::size_t x) const {
    return data_[index(b, c, y, x)];
  }

  // Bounds-checked access.
  T& at(std::size_t b, std::size_t c, std::size_t y, std::size_t x);
  const T& at(std::size_t b, std::size_t c, std::size_t y,
              std::size_t x) const;

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  /// One (height x width) plane of sample b, channel c.
  std::span<T> plane(std::size_t b, std::size_t c) {
    return std::span<T>(data_).subspan(index(b, c, 0, 0), shape_.plane());
  }
  std::span<const T> plane(std::size_t b, std::size_t c) const {
    return std::span<const T>(data_).subspan(index(b, c, 0, 0),
                                             shape_.plane());
  }

  void fill(T value);

  Tensor4& operator+=(const Tensor4& other);
  Tensor4& operator*=(T factor);

  template <typename U>
  Tensor4<U> cast() const {
    std::vector<U> out(data_.begin(), data_.end());
    return Tensor4<U>(shape_, std::move(out));
  }

 private:
  Shape4 shape_{0, 0, 0, 0};
  std::vector<T> data_;
};

template <typename T>
Tensor4<T> zeros(Shape4 shape) {
  return Tensor4<T>::zeros(shape);
}

/// Zero-pads both spatial axes by r on every side.
template <typename T>
Tensor4<T> pad_spatial(const Tensor4<T>& x, std::size_t r);

/// Inverse of pad_spatial: removes a border ring of width r.
template <typename T>
Tensor4<T> crop_spatial(const Tensor4<T>& x, std::size_t r);

/// Stacks tensors along the channel axis, preserving list order.
template <typename T>
Tensor4<T> concat_channels(std::span<const Tensor4<T>> xs);

/// Splits along channels into consecutive groups of the given sizes.
template <typename T>
std::vector<Tensor4<T>> split_channels(const Tensor4<T>& x,
                                       std::span<const std::size_t> sizes);

/// Copies samples [first, first + count) into a new tensor.
template <typename T>
Tensor4<T> slice_batch(const Tensor4<T>& x, std::size_t first,
                       std::size_t count);

template <typename T>
Tensor4<T> operator+(Tensor4<T> a, const Tensor4<T>& b) {
  a += b;
  return a;
}

/// Sum of elementwise products, accumulated in double.
template <typename T>
double inner_product(const Tensor4<T>& a, const Tensor4<T>& b);

template <typename T>
double sum(const Tensor4<T>& x);

template <typename T>
double max_abs(const Tensor4<T>& x);

/// Maximum over elements of |a - b| / max(|a|, |b|, 1).
template <typename T>
double max_rel_diff(const Tensor4<T>& a, const Tensor4<T>& b);

/// Debug dump: "B C H W" header line, then one scalar per line.
template <typename T>
void write_debug_dump(std::ostream& os, const Tensor4<T>& x);

template <typename T>
Tensor4<T> read_debug_dump(std::istream& is);

}  // namespace dwstft

#endif  // DWSTFT_TENSOR_HPP
