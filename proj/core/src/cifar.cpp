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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "dwstft/data.hpp"

namespace dwstft::data {
namespace {

namespace fs = std::filesystem;

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open dataset file: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)),
                                  std::istreambuf_iterator<char>());
  if (is.bad()) throw IoError("failed reading dataset file: " + path);
  return bytes;
}

Shape4 image_shape(std::size_t n) {
  return {n, kImageChannels, kImageSide, kImageSide};
}

LabeledDataset concat(std::vector<LabeledDataset> parts) {
  LabeledDataset out;
  out.classes = parts.front().classes;
  out.split = parts.front().split;
  std::vector<float> pixels;
  for (LabeledDataset& p : parts) {
    out.labels.insert(out.labels.end(), p.labels.begin(), p.labels.end());
    out.coarse_labels.insert(out.coarse_labels.end(), p.coarse_labels.begin(),
                             p.coarse_labels.end());
    pixels.insert(pixels.end(), p.images.data().begin(), p.images.data().end());
  }
  if (!out.labels.empty()) {
    out.images = Tensor4<float>(image_shape(out.labels.size()), std::move(pixels));
  }
  return out;
}

LabeledDataset take(const LabeledDataset& ds, const std::vector<std::size_t>& idx) {
  LabeledDataset out;
  out.classes = ds.classes;
  out.split = ds.split;
  std::vector<float> pixels;
  pixels.reserve(idx.size() * kPixelBytes);
  for (std::size_t i : idx) {
    out.labels.push_back(ds.labels[i]);
    if (!ds.coarse_labels.empty()) out.coarse_labels.push_back(ds.coarse_labels[i]);
    auto src = ds.images.data().subspan(i * kPixelBytes, kPixelBytes);
    pixels.insert(pixels.end(), src.begin(), src.end());
  }
  if (!idx.empty()) {
    out.images = Tensor4<float>(image_shape(idx.size()), std::move(pixels));
  }
  return out;
}

std::string resolve_dir(const std::string& dir, CifarVariant variant) {
  const fs::path sub = fs::path(dir) / (variant == CifarVariant::k10
                                            ? "cifar-10-batches-bin"
                                            : "cifar-100-binary");
  if (fs::is_directory(sub)) return sub.string();
  return dir;
}

}  // namespace

std::size_t record_bytes(CifarVariant variant) {
  return (variant == CifarVariant::k10 ? 1 : 2) + kPixelBytes;
}

std::vector<std::string> cifar_train_files(CifarVariant variant) {
  if (variant == CifarVariant::k100) return {"train.bin"};
  return {"data_batch_1.bin", "data_batch_2.bin", "data_batch_3.bin",
          "data_batch_4.bin", "data_batch_5.bin"};
}

std::string cifar_test_file(CifarVariant variant) {
  return variant == CifarVariant::k10 ? "test_batch.bin" : "test.bin";
}

LabeledDataset read_cifar_file(const std::string& path, CifarVariant variant,
                               Split split) {
  const std::vector<std::uint8_t> bytes = read_bytes(path);
  const std::size_t rec = record_bytes(variant);
  if (bytes.size() % rec != 0) {
    throw FormatError(path + ": length " + std::to_string(bytes.size()) +
                      " is not a whole number of " + std::to_string(rec) +
                      "-byte records (truncated?)");
  }
  const std::size_t n = bytes.size() / rec;
  const std::size_t label_bytes = rec - kPixelBytes;
  LabeledDataset ds;
  ds.classes = static_cast<std::size_t>(variant);
  ds.split = split;
  ds.labels.reserve(n);
  std::vector<float> pixels(n * kPixelBytes);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t* r = bytes.data() + i * rec;
    const int label = r[label_bytes - 1];
    if (static_cast<std::size_t>(label) >= ds.classes) {
      throw FormatError(path + ": record " + std::to_string(i) + " has label " +
                        std::to_string(label) + " outside [0, " +
                        std::to_string(ds.classes) + ")");
    }
    if (variant == CifarVariant::k100) ds.coarse_labels.push_back(r[0]);
    ds.labels.push_back(label);
    for (std::size_t j = 0; j < kPixelBytes; ++j) {
      pixels[i * kPixelBytes + j] = r[label_bytes + j];
    }
  }
  if (n > 0) ds.images = Tensor4<float>(image_shape(n), std::move(pixels));
  return ds;
}

std::pair<LabeledDataset, LabeledDataset> load_cifar(const std::string& dir,
                                                     CifarVariant variant) {
  const std::string root = resolve_dir(dir, variant);
  if (!fs::is_directory(root)) {
    throw IoError("dataset directory not found: " + dir);
  }
  std::vector<LabeledDataset> parts;
  for (const std::string& f : cifar_train_files(variant)) {
    parts.push_back(read_cifar_file((fs::path(root) / f).string(), variant,
                                    Split::kTrain));
  }
  LabeledDataset test = read_cifar_file(
      (fs::path(root) / cifar_test_file(variant)).string(), variant, Split::kTest);
  return {concat(std::move(parts)), std::move(test)};
}

std::vector<std::uint8_t> encode_cifar_records(const LabeledDataset& ds,
                                               CifarVariant variant) {
  const std::size_t rec = record_bytes(variant);
  std::vector<std::uint8_t> out;
  out.reserve(ds.size() * rec);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (variant == CifarVariant::k100) {
      out.push_back(ds.coarse_labels.empty() ? 0 : ds.coarse_labels[i]);
    }
    out.push_back(static_cast<std::uint8_t>(ds.labels[i]));
    auto src = ds.images.data().subspan(i * kPixelBytes, kPixelBytes);
    for (float v : src) {
      if (!(v >= 0.0f && v <= 255.0f) || std::floor(v) != v) {
        throw ParameterError("encode_cifar_records: pixel value " +
                             std::to_string(v) + " is not a byte");
      }
      out.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return out;
}

void write_cifar_dir(const std::string& dir, const LabeledDataset& train,
                     const LabeledDataset& test, CifarVariant variant) {
  fs::create_directories(dir);
  auto write = [](const std::string& path, const std::vector<std::uint8_t>& b) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot write dataset file: " + path);
    os.write(reinterpret_cast<const char*>(b.data()),
             static_cast<std::streamsize>(b.size()));
  };
  const auto files = cifar_train_files(variant);
  const std::size_t per = (train.size() + files.size() - 1) / files.size();
  for (std::size_t k = 0; k < files.size(); ++k) {
    std::vector<std::size_t> idx;
    for (std::size_t i = k * per; i < std::min(train.size(), (k + 1) * per); ++i) {
      idx.push_back(i);
    }
    write((fs::path(dir) / files[k]).string(),
          encode_cifar_records(take(train, idx), variant));
  }
  write((fs::path(dir) / cifar_test_file(variant)).string(),
        encode_cifar_records(test, variant));
}

LabeledDataset subset(const LabeledDataset& ds, std::size_t per_class,
                      std::size_t classes) {
  const std::size_t k = classes == 0 ? ds.classes : std::min(classes, ds.classes);
  std::vector<std::size_t> counts(ds.classes, 0);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto label = static_cast<std::size_t>(ds.labels[i]);
    if (label >= k) continue;
    if (per_class != 0 && counts[label] >= per_class) continue;
    ++counts[label];
    idx.push_back(i);
  }
  return take(ds, idx);
}

std::pair<LabeledDataset, ChannelStats> normalize(
    const LabeledDataset& ds, const std::optional<ChannelStats>& given) {
  ChannelStats stats;
  const std::size_t plane = kImageSide * kImageSide;
  if (given) {
    stats = *given;
  } else {
    for (std::size_t c = 0; c < kImageChannels; ++c) {
      double mean = 0.0, sq = 0.0;
      const double count = static_cast<double>(ds.size() * plane);
      for (std::size_t b = 0; b < ds.size(); ++b)
        for (float v : ds.images.plane(b, c)) mean += v;
      mean /= count;
      for (std::size_t b = 0; b < ds.size(); ++b)
        for (float v : ds.images.plane(b, c)) sq += (v - mean) * (v - mean);
      stats.mean[c] = mean;
      stats.stddev[c] = std::sqrt(sq / count);
    }
  }
  for (std::size_t c = 0; c < kImageChannels; ++c) {
    if (!(stats.stddev[c] > 0.0)) {
      throw DegenerateDataError("channel " + std::to_string(c) +
                                " has zero standard deviation");
    }
  }
  LabeledDataset out = ds;
  for (std::size_t b = 0; b < out.size(); ++b)
    for (std::size_t c = 0; c < kImageChannels; ++c)
      for (float& v : out.images.plane(b, c)) {
        v = static_cast<float>((v - stats.mean[c]) / stats.stddev[c]);
      }
  return {std::move(out), stats};
}

LabeledDataset denormalize(const LabeledDataset& ds, const ChannelStats& stats) {
  LabeledDataset out = ds;
  for (std::size_t b = 0; b < out.size(); ++b)
    for (std::size_t c = 0; c < kImageChannels; ++c)
      for (float& v : out.images.plane(b, c)) {
        v = static_cast<float>(v * stats.stddev[c] + stats.mean[c]);
      }
  return out;
}

}  // namespace dwstft::data
