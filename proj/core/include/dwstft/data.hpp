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

#ifndef DWSTFT_DATA_HPP
#define DWSTFT_DATA_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dwstft/tensor.hpp"

namespace dwstft::data {

inline constexpr std::size_t kImageSide = 32;
inline constexpr std::size_t kImageChannels = 3;
inline constexpr std::size_t kPixelBytes = kImageSide * kImageSide * kImageChannels;

enum class Split { kTrain, kTest };
enum class CifarVariant { k10 = 10, k100 = 100 };

/// Images (N, 3, 32, 32) with one integer label per image. Loaded images
/// hold raw pixel values in [0, 255]; normalize() rewrites them in place of
/// a copy. An empty dataset has an empty image tensor.
struct LabeledDataset {
  Tensor4<float> images;
  std::vector<int> labels;
  std::vector<std::uint8_t> coarse_labels;  // CIFAR-100 only
  std::size_t classes = 10;
  Split split = Split::kTrain;

  std::size_t size() const { return labels.size(); }
};

/// Record size on disk: label byte(s) followed by 3072 pixel bytes
/// (R plane, G plane, B plane, each row-major).
std::size_t record_bytes(CifarVariant variant);

/// Parses one binary batch file. Throws IoError (missing/unreadable) or
/// FormatError (length not a whole number of records, label out of range),
/// both naming the file.
LabeledDataset read_cifar_file(const std::string& path, CifarVariant variant,
                               Split split);

/// The files a variant consists of, relative to the dataset directory.
std::vector<std::string> cifar_train_files(CifarVariant variant);
std::string cifar_test_file(CifarVariant variant);

/// Reads the train and test splits from `dir` (or from the standard
/// cifar-10-batches-bin / cifar-100-binary subdirectory if present).
std::pair<LabeledDataset, LabeledDataset> load_cifar(const std::string& dir,
                                                     CifarVariant variant);

/// Serializes records back to the on-disk byte layout. Pixel values must
/// be integers in [0, 255].
std::vector<std::uint8_t> encode_cifar_records(const LabeledDataset& ds,
                                               CifarVariant variant);

/// Writes train (split evenly over the variant's train files) and test to
/// `dir` in the on-disk layout.
void write_cifar_dir(const std::string& dir, const LabeledDataset& train,
                     const LabeledDataset& test, CifarVariant variant);

/// First `per_class` examples of each class below `classes` (0 keeps every
/// class; per_class 0 keeps every example), in dataset order.
LabeledDataset subset(const LabeledDataset& ds, std::size_t per_class,
                      std::size_t classes);

struct ChannelStats {
  std::array<double, kImageChannels> mean{};
  std::array<double, kImageChannels> stddev{};
};

/// Per-channel (x - mean) / std. Without stats they are computed from `ds`
/// (population std); with stats those are applied. Returns the stats used.
/// Throws DegenerateDataError if a computed std is 0.
std::pair<LabeledDataset, ChannelStats> normalize(
    const LabeledDataset& ds, const std::optional<ChannelStats>& stats);

/// x * std + mean, the inverse of normalize.
LabeledDataset denormalize(const LabeledDataset& ds, const ChannelStats& stats);

/// Concrete draws of one augmentation.
struct AugmentParams {
  bool flip = false;
  int shift_x = 0;  // columns, positive moves content right
  int shift_y = 0;  // rows, positive moves content down
  double angle_deg = 0.0;
};

inline constexpr int kMaxShift = 4;
inline constexpr double kMaxRotationDeg = 20.0;

/// Flip with probability 0.5, integer shifts uniform on [-4, 4] per axis and
/// a rotation angle uniform on [-20, 20] degrees, drawn in that order.
AugmentParams draw_augment(std::mt19937_64& rng);

/// Applies flip, then shift (zero fill), then rotation about the image
/// center with bilinear sampling (zero outside the source). `image` is a
/// single sample (1, C, H, W).
Tensor4<float> apply_augment(const Tensor4<float>& image,
                             const AugmentParams& params);

Tensor4<float> augment(const Tensor4<float>& image, std::mt19937_64& rng);

}  // namespace dwstft::data

#endif  // DWSTFT_DATA_HPP
