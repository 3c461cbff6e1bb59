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

#ifndef DWSTFT_TRAIN_HPP
#define DWSTFT_TRAIN_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dwstft/data.hpp"
#include "dwstft/network.hpp"

namespace dwstft::train {

/// Two-phase schedule: epochs1 at batch1, then epochs2 at batch2, with a
/// constant Adam learning rate across the switch.
struct TrainOptions {
  std::size_t epochs1 = 300;
  std::size_t epochs2 = 100;
  std::size_t batch1 = 64;
  std::size_t batch2 = 128;
  double lr = 0.01;
  std::uint64_t seed = 1;
  bool augment = true;
  std::size_t workers = 1;  // augmentation threads
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;  // mean minibatch loss over the epoch
  double train_accuracy = 0.0;  // eval mode, un-augmented training set
  std::optional<double> test_accuracy;
  std::size_t batch_size = 0;
  double wall_seconds = 0.0;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

/// Stacks the images at `indices` into one batch.
Tensor4<float> gather_batch(const data::LabeledDataset& ds,
                            std::span<const std::size_t> indices);

/// Augments every image of `batch` with its own generator seeded from
/// (seed, epoch, position), so results do not depend on `workers`.
Tensor4<float> augment_batch(const Tensor4<float>& batch, std::uint64_t seed,
                             std::size_t epoch, std::size_t first_position,
                             std::size_t workers);

/// Fraction of correctly classified examples, eval-mode forward.
double evaluate(net::Network<float>& network, const data::LabeledDataset& ds,
                std::size_t batch = 128);

/// Runs the schedule on normalized data. `test` may be empty.
std::vector<EpochRecord> train(net::Network<float>& network,
                               const data::LabeledDataset& train_set,
                               const data::LabeledDataset& test,
                               const TrainOptions& options,
                               const EpochCallback& on_epoch = {});

}  // namespace dwstft::train

#endif  // DWSTFT_TRAIN_HPP
