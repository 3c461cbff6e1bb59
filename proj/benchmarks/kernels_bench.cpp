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

#include <benchmark/benchmark.h>

#include <random>

#include "dwstft/pointwise.hpp"
#include "dwstft/stft.hpp"

namespace {

using dwstft::Shape4;
using dwstft::Tensor4;

Tensor4<float> random_input(const Shape4& s) {
  std::mt19937_64 rng(1);
  std::normal_distribution<float> dist;
  Tensor4<float> t(s);
  for (float& v : t.data()) v = dist(rng);
  return t;
}

Shape4 shape_arg(const benchmark::State& state) {
  return {1, static_cast<std::size_t>(state.range(1)), static_cast<std::size_t>(state.range(2)),
          static_cast<std::size_t>(state.range(2))};
}

void set_counters(benchmark::State& state, std::uint64_t macs) {
  state.counters["MACs"] = static_cast<double>(macs);
  state.counters["MAC/s"] = benchmark::Counter(static_cast<double>(macs) * state.iterations(),
                                               benchmark::Counter::kIsRate);
}

void BM_StftDirect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Shape4 s = shape_arg(state);
  const dwstft::stft::StftBasis basis(n);
  const auto x = random_input(s);
  for (auto _ : state) benchmark::DoNotOptimize(dwstft::stft::forward_direct(x, basis));
  set_counters(state, dwstft::stft::flops_direct(n, s.channels, s.height, s.width));
}

void BM_StftSeparable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Shape4 s = shape_arg(state);
  const dwstft::stft::StftBasis basis(n);
  const auto x = random_input(s);
  for (auto _ : state) benchmark::DoNotOptimize(dwstft::stft::forward_separable(x, basis));
  set_counters(state, dwstft::stft::flops_separable(n, s.channels, s.height, s.width));
}

void BM_StftBackward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Shape4 s = shape_arg(state);
  const dwstft::stft::StftBasis basis(n);
  const auto g = random_input({1, 8 * s.channels, s.height, s.width});
  for (auto _ : state) benchmark::DoNotOptimize(dwstft::stft::backward(g, basis, s));
}

void BM_Pointwise(benchmark::State& state) {
  const auto c = static_cast<std::size_t>(state.range(0));
  const auto f = static_cast<std::size_t>(state.range(1));
  const auto side = static_cast<std::size_t>(state.range(2));
  dwstft::layers::PointwiseConv<float> p(c, f, false, "p");
  const auto x = random_input({1, c, side, side});
  for (auto _ : state) benchmark::DoNotOptimize(dwstft::layers::pointwise_forward(x, p));
  set_counters(state, c * f * side * side);
}

void stft_args(benchmark::internal::Benchmark* b) {
  for (int n : {3, 5, 7, 9}) {
    b->Args({n, 64, 32});
    b->Args({n, 8, 128});
  }
}

BENCHMARK(BM_StftDirect)->Apply(stft_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StftSeparable)->Apply(stft_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StftBackward)->Apply(stft_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Pointwise)->Args({64, 128, 32})->Args({512, 128, 16})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
