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

#include "dwstft/train.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <thread>

#include "dwstft/adam.hpp"

namespace dwstft::train {
namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t argmax_row(const Tensor4<float>& logits, std::size_t b) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < logits.shape().channels; ++k) {
    if (logits(b, k, 0, 0) > logits(b, best, 0, 0)) best = k;
  }
  return best;
}

}  // namespace

Tensor4<float> gather_batch(const data::LabeledDataset& ds,
                            std::span<const std::size_t> indices) {
  const Shape4& s = ds.images.shape();
  const std::size_t per = s.channels * s.plane();
  std::vector<float> out;
  out.reserve(indices.size() * per);
  for (std::size_t i : indices) {
    auto src = ds.images.data().subspan(i * per, per);
    out.insert(out.end(), src.begin(), src.end());
  }
  return Tensor4<float>({indices.size(), s.channels, s.height, s.width},
                        std::move(out));
}

Tensor4<float> augment_batch(const Tensor4<float>& batch, std::uint64_t seed,
                             std::size_t epoch, std::size_t first_position,
                             std::size_t workers) {
  const Shape4& s = batch.shape();
  const std::size_t per = s.channels * s.plane();
  Tensor4<float> out(s);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::mt19937_64 rng(mix(mix(seed ^ 0xa5a5a5a5ULL) + mix(epoch) +
                              first_position + i));
      Tensor4<float> img = slice_batch(batch, i, 1);
      Tensor4<float> aug = data::augment(img, rng);
      std::copy(aug.data().begin(), aug.data().end(),
                out.data().begin() + static_cast<std::ptrdiff_t>(i * per));
    }
  };
  workers = std::clamp<std::size_t>(workers, 1, s.batch);
  if (workers == 1) {
    work(0, s.batch);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (s.batch + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(s.batch, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& t : pool) t.join();
  }
  return out;
}

double evaluate(net::Network<float>& network, const data::LabeledDataset& ds,
                std::size_t batch) {
  if (ds.size() == 0) return 0.0;
  std::size_t correct = 0;
  std::vector<std::size_t> idx;
  for (std::size_t first = 0; first < ds.size(); first += batch) {
    const std::size_t count = std::min(batch, ds.size() - first);
    idx.resize(count);
    std::iota(idx.begin(), idx.end(), first);
    const Tensor4<float> logits =
        network.forward(gather_batch(ds, idx), layers::Mode::kEval);
    for (std::size_t b = 0; b < count; ++b) {
      if (static_cast<int>(argmax_row(logits, b)) == ds.labels[first + b]) {
        ++correct;
      }
    }
  }
  return static_cast<double>(correct) / static_cast<double>(ds.size());
}

std::vector<EpochRecord> train(net::Network<float>& network,
                               const data::LabeledDataset& train_set,
                               const data::LabeledDataset& test,
                               const TrainOptions& options,
                               const EpochCallback& on_epoch) {
  std::vector<EpochRecord> records;
  const std::size_t total = options.epochs1 + options.epochs2;
  if (total == 0 || train_set.size() == 0) return records;

  layers::AdamConfig adam_cfg;
  adam_cfg.lr = options.lr;
  layers::AdamState<float> adam(adam_cfg);
  auto params = network.trainable_parameters();
  std::mt19937_64 shuffle_rng(mix(options.seed));
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);

  for (std::size_t epoch = 1; epoch <= total; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t batch =
        epoch <= options.epochs1 ? options.batch1 : options.batch2;
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    double loss_sum = 0.0;
    std::size_t steps = 0;
    std::vector<int> labels;
    for (std::size_t first = 0; first < order.size(); first += batch) {
      const std::size_t count = std::min(batch, order.size() - first);
      std::span<const std::size_t> idx(order.data() + first, count);
      Tensor4<float> x = gather_batch(train_set, idx);
      if (options.augment) {
        x = augment_batch(x, options.seed, epoch, first, options.workers);
      }
      labels.clear();
      for (std::size_t i : idx) labels.push_back(train_set.labels[i]);

      const Tensor4<float> logits = network.forward(x, layers::Mode::kTrain);
      const auto xent = layers::softmax_xent(logits, std::span<const int>(labels));
      network.backward(xent.grad_logits);
      layers::adam_step<float>(params, adam);
      loss_sum += xent.loss;
      ++steps;
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.batch_size = batch;
    rec.train_loss = loss_sum / static_cast<double>(steps);
    rec.train_accuracy = evaluate(network, train_set);
    if (test.size() > 0) rec.test_accuracy = evaluate(network, test);
    rec.wall_seconds = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    records.push_back(rec);
    if (on_epoch) on_epoch(rec);
  }
  return records;
}

}  // namespace dwstft::train
