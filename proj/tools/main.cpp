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

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using namespace dwstft::cli;

void add_data_options(CLI::App* cmd, DataSelection& sel) {
  cmd->add_option("--data", sel.data, "CIFAR binary directory")->required();
  cmd->add_option("--variant", sel.variant, "10 or 100")->check(CLI::IsMember({10, 100}));
  cmd->add_option("--subset", sel.subset, "training examples kept per class (0 = all)");
  cmd->add_option("--classes", sel.classes, "keep only labels below this (0 = all)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Depthwise separable STFT convolution networks"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "train a network and write metrics and a checkpoint");
  train_cmd->add_option("--config", train.config, "network description")->required();
  add_data_options(train_cmd, train.data);
  train_cmd->add_option("--seed", train.seed, "overrides the config seed");
  train_cmd->add_option("--out", train.out, "output directory");
  train_cmd->add_flag("--json", train.json, "print a JSON summary");
  train_cmd->add_option("--epochs1", train.epochs1, "first phase epochs");
  train_cmd->add_option("--epochs2", train.epochs2, "second phase epochs");
  train_cmd->add_option("--batch1", train.batch1, "first phase batch size");
  train_cmd->add_option("--batch2", train.batch2, "second phase batch size");
  train_cmd->add_option("--lr", train.lr, "Adam learning rate");
  bool no_augment = false;
  train_cmd->add_flag("--no-augment", no_augment, "disable augmentation");
  train_cmd->add_option("--workers", train.workers, "augmentation threads")
      ->check(CLI::PositiveNumber);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "report classification accuracy");
  eval_cmd->add_option("--config", eval.config, "network description")->required();
  add_data_options(eval_cmd, eval.data);
  eval_cmd->add_option("--checkpoint", eval.checkpoint, "trained weights");
  eval_cmd->add_option("--seed", eval.seed, "overrides the config seed");
  eval_cmd->add_option("--split", eval.split, "train or test");
  eval_cmd->add_flag("--json", eval.json, "print JSON");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "run the kernel and gradient self-checks");
  verify_cmd->add_flag("--json", verify.json, "print JSON");
  verify_cmd->add_option("--inject-fault", verify.inject_fault, "basis");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "compare direct and separable STFT kernels");
  bench_cmd->add_option("--n", bench.windows, "window sizes")->delimiter(',');
  bench_cmd->add_option("--shape", bench.shapes, "input shapes BxCxHxW")->delimiter(',');
  bench_cmd->add_option("--reps", bench.reps, "timed repetitions per path");
  bench_cmd->add_option("--seed", bench.seed, "input seed");
  bench_cmd->add_option("--out", bench.out, "CSV output file");
  bench_cmd->add_flag("--json", bench.json, "print JSON");
  bench_cmd->add_option("--inject-fault", bench.inject_fault, "separable");

  CountArgs count;
  auto* count_cmd = app.add_subcommand("count-params", "closed-form parameter accounting");
  count_cmd->add_option("--config", count.config, "network description")->required();
  count_cmd->add_flag("--json", count.json, "print JSON");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "write a synthetic dataset in CIFAR binary layout");
  synth_cmd->add_option("--out", synth.out, "output directory")->required();
  synth_cmd->add_option("--per-class", synth.per_class, "training images per class");
  synth_cmd->add_option("--test-per-class", synth.test_per_class, "test images per class");
  synth_cmd->add_option("--classes", synth.classes, "number of classes");
  synth_cmd->add_option("--seed", synth.seed, "generator seed");
  synth_cmd->add_option("--variant", synth.variant, "10 or 100")->check(CLI::IsMember({10, 100}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitSpec;
  }

  if (train_cmd->parsed()) {
    train.augment = !no_augment;
    return run_train(train);
  }
  if (eval_cmd->parsed()) return run_eval(eval);
  if (verify_cmd->parsed()) return run_verify(verify);
  if (bench_cmd->parsed()) return run_bench(bench);
  if (count_cmd->parsed()) return run_count_params(count);
  if (synth_cmd->parsed()) return run_synth(synth);
  return kExitSpec;
}
