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

#include "dwstft/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "dwstft/error.hpp"

namespace dwstft::layers {
namespace {

constexpr std::size_t kMagicSize = 8;

template <typename U>
void put(std::vector<std::uint8_t>& out, U value) {
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  template <typename U>
  U get() {
    need(sizeof(U));
    U value = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
      value |= static_cast<U>(bytes_[pos_ + i]) << (8 * i);
    }
    pos_ += sizeof(U);
    return value;
  }

  std::string get_string(std::size_t n) {
    need(n);
    std::string s(bytes_.begin() + static_cast<std::ptrdiff_t>(pos_),
                  bytes_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
    pos_ += n;
    return s;
  }

  bool done() const { return pos_ == bytes_.size(); }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw FormatError("checkpoint truncated");
  }

  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const std::vector<NamedTensor>& ts) {
  std::vector<std::uint8_t> out(kCheckpointMagic, kCheckpointMagic + kMagicSize);
  put<std::uint64_t>(out, ts.size());
  for (const NamedTensor& t : ts) {
    std::uint64_t n = 1;
    for (std::uint64_t d : t.dims) n *= d;
    if (n != t.values.size()) {
      throw ShapeError("checkpoint tensor " + t.name +
                       " has dims inconsistent with its values");
    }
    put<std::uint32_t>(out, static_cast<std::uint32_t>(t.name.size()));
    out.insert(out.end(), t.name.begin(), t.name.end());
    put<std::uint32_t>(out, static_cast<std::uint32_t>(t.dims.size()));
    for (std::uint64_t d : t.dims) put<std::uint64_t>(out, d);
    for (double v : t.values) put<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
  }
  return out;
}

std::vector<NamedTensor> decode_checkpoint(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kMagicSize ||
      std::memcmp(bytes.data(), kCheckpointMagic, kMagicSize) != 0) {
    throw FormatError("not a checkpoint: bad magic");
  }
  Reader in(bytes);
  (void)in.get_string(kMagicSize);
  const auto count = in.get<std::uint64_t>();
  std::vector<NamedTensor> ts;
  for (std::uint64_t k = 0; k < count; ++k) {
    NamedTensor t;
    t.name = in.get_string(in.get<std::uint32_t>());
    const auto rank = in.get<std::uint32_t>();
    std::uint64_t n = 1;
    for (std::uint32_t d = 0; d < rank; ++d) {
      t.dims.push_back(in.get<std::uint64_t>());
      n *= t.dims.back();
    }
    if (n > in.remaining() / sizeof(double)) {
      throw FormatError("checkpoint truncated in tensor " + t.name);
    }
    t.values.resize(n);
    for (double& v : t.values) v = std::bit_cast<double>(in.get<std::uint64_t>());
    ts.push_back(std::move(t));
  }
  if (!in.done()) throw FormatError("checkpoint has trailing bytes");
  return ts;
}

void save_checkpoint(const std::string& path,
                     const std::vector<NamedTensor>& tensors) {
  const std::vector<std::uint8_t> bytes = encode_checkpoint(tensors);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open checkpoint for writing: " + path);
  os.write(reinterpret_cast<const char*>(bytes.data()),
           static_cast<std::streamsize>(bytes.size()));
  if (!os) throw IoError("failed writing checkpoint: " + path);
}

std::vector<NamedTensor> load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open checkpoint: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)),
                                  std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

}  // namespace dwstft::layers
