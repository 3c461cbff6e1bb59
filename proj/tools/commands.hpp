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

#ifndef DWSTFT_TOOLS_COMMANDS_HPP
#define DWSTFT_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dwstft::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // verification failure
inline constexpr int kExitSpec = 2;    // config, spec or checkpoint problems
inline constexpr int kExitIo = 3;      // dataset or output I/O problems

struct DataSelection {
  std::string data;
  int variant = 10;
  std::size_t subset = 0;   // per-class cap on training examples, 0 = all
  std::size_t classes = 0;  // keep labels below this, 0 = all
};

struct TrainArgs {
  std::string config;
  DataSelection data;
  std::optional<std::uint64_t> seed;
  std::string out = "run";
  bool json = false;
  std::size_t epochs1 = 300;
  std::size_t epochs2 = 100;
  std::size_t batch1 = 64;
  std::size_t batch2 = 128;
  double lr = 0.01;
  bool augment = true;
  std::size_t workers = 1;
};

struct EvalArgs {
  std::string config;
  DataSelection data;
  std::string checkpoint;  // empty: evaluate a freshly initialized network
  std::optional<std::uint64_t> seed;
  std::string split = "test";
  bool json = false;
};

struct VerifyArgs {
  bool json = false;
  std::string inject_fault;  // "" or "basis"
};

struct BenchArgs {
  std::vector<int> windows{3, 5, 7, 9};
  std::vector<std::string> shapes{"1x64x32x32", "1x8x128x128"};
  std::size_t reps = 5;
  std::uint64_t seed = 1;
  std::string out;  // empty: stdout
  bool json = false;
  std::string inject_fault;  // "" or "separable"
};

struct CountArgs {
  std::string config;
  bool json = false;
};

struct SynthArgs {
  std::string out;
  std::size_t per_class = 200;
  std::size_t test_per_class = 50;
  std::size_t classes = 10;
  std::uint64_t seed = 1;
  int variant = 10;
};

int run_train(const TrainArgs& args);
int run_eval(const EvalArgs& args);
int run_verify(const VerifyArgs& args);
int run_bench(const BenchArgs& args);
int run_count_params(const CountArgs& args);
int run_synth(const SynthArgs& args);

}  // namespace dwstft::cli

#endif  // DWSTFT_TOOLS_COMMANDS_HPP
