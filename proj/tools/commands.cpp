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

#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "dwstft/checkpoint.hpp"
#include "dwstft/data.hpp"
#include "dwstft/kernel_bench.hpp"
#include "dwstft/metrics.hpp"
#include "dwstft/netspec.hpp"
#include "dwstft/network.hpp"
#include "dwstft/param_count.hpp"
#include "dwstft/synthetic.hpp"
#include "dwstft/train.hpp"
#include "dwstft/verify.hpp"
#include "json.hpp"

namespace dwstft::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kStatsMean = "data.mean";
constexpr const char* kStatsStd = "data.std";

// Thrown internally to leave a command with a specific exit code.
struct Exit {
  int code;
};

[[noreturn]] void fail(int code, const std::string& message) {
  std::cerr << "dwstft: " << message << '\n';
  throw Exit{code};
}

template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const Exit& e) {
    return e.code;
  } catch (const IoError& e) {
    std::cerr << "dwstft: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "dwstft: " << e.what() << '\n';
    return kExitSpec;
  }
}

net::NetSpec load_spec(const std::string& path,
                       const std::optional<std::uint64_t>& seed) {
  net::NetSpec spec;
  try {
    spec = net::load_netspec(path);
  } catch (const Error& e) {
    fail(kExitSpec, e.what());
  }
  if (seed) spec.seed = *seed;
  return spec;
}

data::CifarVariant variant_of(int v) {
  if (v == 10) return data::CifarVariant::k10;
  if (v == 100) return data::CifarVariant::k100;
  fail(kExitSpec, "--variant must be 10 or 100");
}

struct Splits {
  data::LabeledDataset train;
  data::LabeledDataset test;
};

Splits load_data(const DataSelection& sel, const net::NetSpec& spec) {
  Splits s;
  try {
    auto [train, test] = data::load_cifar(sel.data, variant_of(sel.variant));
    s.train = data::subset(train, sel.subset, sel.classes);
    s.test = data::subset(test, 0, sel.classes);
  } catch (const Exit&) {
    throw;
  } catch (const Error& e) {
    fail(kExitIo, e.what());
  }
  if (s.train.size() == 0) fail(kExitIo, "no training examples selected");
  for (const auto* ds : {&s.train, &s.test}) {
    for (int label : ds->labels) {
      if (static_cast<std::size_t>(label) >= spec.classes) {
        fail(kExitSpec, "data has label " + std::to_string(label) +
                            " but the config declares " +
                            std::to_string(spec.classes) + " classes");
      }
    }
  }
  return s;
}

layers::NamedTensor stats_tensor(const char* name,
                                 const std::array<double, 3>& values) {
  return {name, {3}, std::vector<double>(values.begin(), values.end())};
}

}  // namespace

int run_train(const TrainArgs& args) {
  return guarded([&] {
    const net::NetSpec spec = load_spec(args.config, args.seed);
    Splits splits = load_data(args.data, spec);

    data::ChannelStats stats;
    try {
      auto [train_n, st] = data::normalize(splits.train, std::nullopt);
      splits.train = std::move(train_n);
      stats = st;
      if (splits.test.size() > 0) {
        splits.test = data::normalize(splits.test, stats).first;
      }
    } catch (const DegenerateDataError& e) {
      fail(kExitIo, e.what());
    }

    net::Network<float> network(spec, spec.seed);

    std::error_code ec;
    fs::create_directories(args.out, ec);
    const std::string metrics_path = (fs::path(args.out) / "metrics.csv").string();
    const std::string checkpoint_path =
        (fs::path(args.out) / "checkpoint.bin").string();
    std::ofstream metrics(metrics_path, std::ios::trunc);
    if (!metrics) fail(kExitIo, "cannot write " + metrics_path);
    metrics << kTrainCsvHeader << '\n' << std::flush;

    train::TrainOptions opts;
    opts.epochs1 = args.epochs1;
    opts.epochs2 = args.epochs2;
    opts.batch1 = args.batch1;
    opts.batch2 = args.batch2;
    opts.lr = args.lr;
    opts.seed = spec.seed;
    opts.augment = args.augment;
    opts.workers = args.workers;
    if (opts.batch1 == 0 || opts.batch2 == 0) fail(kExitSpec, "batch sizes must be >= 1");

    std::cerr << "training on " << splits.train.size() << " images, "
              << network.trainable_count() << " trainable parameters\n";
    const auto records = train::train(
        network, splits.train, splits.test, opts, [&](const train::EpochRecord& r) {
          metrics << format_epoch_row(r) << '\n' << std::flush;
          std::fprintf(stderr, "epoch %zu  loss %.4f  train_acc %.4f  batch %zu  %.1fs\n",
                       r.epoch, r.train_loss, r.train_accuracy, r.batch_size,
                       r.wall_seconds);
        });

    auto state = network.state();
    state.push_back(stats_tensor(kStatsMean, stats.mean));
    state.push_back(stats_tensor(kStatsStd, stats.stddev));
    try {
      layers::save_checkpoint(checkpoint_path, state);
    } catch (const IoError& e) {
      fail(kExitIo, e.what());
    }

    if (args.json) {
      json summary = {{"metrics", metrics_path},
                      {"checkpoint", checkpoint_path},
                      {"epochs", records.size()}};
      if (!records.empty()) {
        summary["final_train_loss"] = records.back().train_loss;
        summary["final_train_accuracy"] = records.back().train_accuracy;
      }
      std::cout << summary.dump() << '\n';
    }
    return kExitOk;
  });
}

int run_eval(const EvalArgs& args) {
  return guarded([&] {
    const net::NetSpec spec = load_spec(args.config, args.seed);
    if (args.split != "train" && args.split != "test") {
      fail(kExitSpec, "--split must be train or test");
    }
    Splits splits = load_data(args.data, spec);
    net::Network<float> network(spec, spec.seed);

    std::optional<data::ChannelStats> stats;
    if (!args.checkpoint.empty()) {
      std::vector<layers::NamedTensor> tensors;
      try {
        tensors = layers::load_checkpoint(args.checkpoint);
      } catch (const IoError& e) {
        fail(kExitIo, e.what());
      } catch (const Error& e) {
        fail(kExitSpec, e.what());
      }
      std::vector<layers::NamedTensor> params;
      data::ChannelStats st;
      int found = 0;
      for (auto& t : tensors) {
        if ((t.name == kStatsMean || t.name == kStatsStd) && t.values.size() == 3) {
          auto& dst = t.name == kStatsMean ? st.mean : st.stddev;
          std::copy(t.values.begin(), t.values.end(), dst.begin());
          ++found;
        } else {
          params.push_back(std::move(t));
        }
      }
      if (found == 2) stats = st;
      try {
        network.load_state(params);
      } catch (const Error& e) {
        fail(kExitSpec, e.what());
      }
    }

    try {
      if (!stats) stats = data::normalize(splits.train, std::nullopt).second;
      const data::LabeledDataset& raw =
          args.split == "train" ? splits.train : splits.test;
      const data::LabeledDataset ds = data::normalize(raw, stats).first;
      const double accuracy = train::evaluate(network, ds);
      if (args.json) {
        std::cout << json{{"split", args.split},
                          {"examples", ds.size()},
                          {"accuracy", accuracy}}
                         .dump()
                  << '\n';
      } else {
        std::printf("%.4f\n", accuracy);
      }
    } catch (const DegenerateDataError& e) {
      fail(kExitIo, e.what());
    }
    return kExitOk;
  });
}

int run_verify(const VerifyArgs& args) {
  return guarded([&] {
    verify::VerifyOptions opts;
    if (!args.inject_fault.empty()) {
      if (args.inject_fault != "basis") fail(kExitSpec, "unknown fault '" + args.inject_fault + "'");
      opts.perturb_basis = true;
    }
    const auto results = verify::run_all(opts);
    bool ok = true;
    json report = json::array();
    for (const auto& r : results) {
      ok = ok && r.passed;
      if (args.json) {
        report.push_back({{"suite", r.name},
                          {"passed", r.passed},
                          {"max_error", r.max_error},
                          {"tolerance", r.tolerance},
                          {"checks", r.checks}});
      } else {
        std::printf("%-4s %-18s max_error %.3e  tolerance %.0e  (%zu checks)\n",
                    r.passed ? "PASS" : "FAIL", r.name.c_str(), r.max_error,
                    r.tolerance, r.checks);
      }
    }
    if (args.json) std::cout << report.dump(2) << '\n';
    return ok ? kExitOk : kExitFailed;
  });
}

int run_bench(const BenchArgs& args) {
  return guarded([&] {
    bench::BenchOptions opts;
    opts.windows = args.windows;
    opts.shapes.clear();
    for (const auto& s : args.shapes) opts.shapes.push_back(bench::parse_shape(s));
    for (int n : opts.windows) (void)stft::FrequencySet::for_window(n);
    opts.reps = args.reps;
    opts.seed = args.seed;
    if (!args.inject_fault.empty()) {
      if (args.inject_fault != "separable") fail(kExitSpec, "unknown fault '" + args.inject_fault + "'");
      opts.perturb_separable = true;
    }
    const auto rows = bench::run_kernel_bench(opts);

    if (!args.out.empty()) {
      std::ofstream os(args.out, std::ios::trunc);
      if (!os) fail(kExitIo, "cannot write " + args.out);
      bench::write_bench_csv(os, rows);
    }
    if (args.json) {
      json out = json::array();
      for (const auto& r : rows) {
        json row = {{"path", r.path},
                    {"n", r.n},
                    {"shape", {r.shape.batch, r.shape.channels, r.shape.height, r.shape.width}},
                    {"macs", r.macs},
                    {"measured_macs", r.measured_macs},
                    {"formula_ratio", r.formula_ratio},
                    {"measured_ratio", r.measured_ratio},
                    {"reps", r.reps},
                    {"error", r.error}};
        row["mean_seconds"] = r.mean_seconds ? json(*r.mean_seconds) : json(nullptr);
        row["stddev_seconds"] = r.stddev_seconds ? json(*r.stddev_seconds) : json(nullptr);
        out.push_back(row);
      }
      std::cout << out.dump(2) << '\n';
    } else if (args.out.empty()) {
      bench::write_bench_csv(std::cout, rows);
    }
    for (const auto& r : rows) {
      if (!r.error.empty()) return kExitFailed;
    }
    return kExitOk;
  });
}

int run_count_params(const CountArgs& args) {
  return guarded([&] {
    const net::NetSpec spec = load_spec(args.config, std::nullopt);
    const net::ParamReport report = net::count_params_network(spec);
    net::Network<float> built(spec, spec.seed);
    const std::uint64_t enumerated = built.trainable_count();
    if (enumerated != report.total) {
      fail(kExitFailed, "closed-form total " + std::to_string(report.total) +
                            " differs from the built network (" +
                            std::to_string(enumerated) + ")");
    }

    if (args.json) {
      json blocks = json::array();
      for (const auto& e : report.entries) {
        json layers_j = json::array();
        for (const auto& l : e.layers) {
          layers_j.push_back({{"name", l.name}, {"kind", l.kind},
                              {"c", l.in_channels}, {"n", l.window},
                              {"f", l.out_channels}, {"params", l.params}});
        }
        blocks.push_back({{"name", e.name}, {"kind", e.kind},
                          {"params", e.params}, {"layers", layers_j}});
      }
      std::cout << json{{"blocks", blocks}, {"total", report.total}}.dump(2) << '\n';
      return kExitOk;
    }

    std::printf("%-28s %-16s %12s %12s\n", "name", "kind", "params", "total");
    std::uint64_t running = 0;
    for (const auto& e : report.entries) {
      running += e.params;
      std::printf("%-28s %-16s %12llu %12llu\n", e.name.c_str(), e.kind.c_str(),
                  static_cast<unsigned long long>(e.params),
                  static_cast<unsigned long long>(running));
      for (const auto& l : e.layers) {
        std::printf("  %-26s %-16s %12llu\n", l.name.c_str(), l.kind.c_str(),
                    static_cast<unsigned long long>(l.params));
      }
    }
    std::printf("%-28s %-16s %12s %12llu\n", "total", "", "",
                static_cast<unsigned long long>(report.total));

    bool header = false;
    for (const auto& e : report.entries)
      for (const auto& l : e.layers) {
        if (l.kind != "stft-separable") continue;
        if (!header) {
          std::printf("\nper-layer closed forms at the same (c, n, f):\n");
          std::printf("%-28s %5s %3s %5s %12s %14s %12s\n", "layer", "c", "n", "f",
                      "standard", "depthwise-sep", "stft-sep");
          header = true;
        }
        auto count = [&](net::LayerKind k) {
          return static_cast<unsigned long long>(
              net::count_params_layer(k, l.in_channels, l.window, l.out_channels));
        };
        std::printf("%-28s %5llu %3llu %5llu %12llu %14llu %12llu\n", l.name.c_str(),
                    static_cast<unsigned long long>(l.in_channels),
                    static_cast<unsigned long long>(l.window),
                    static_cast<unsigned long long>(l.out_channels),
                    count(net::LayerKind::kStandard),
                    count(net::LayerKind::kDepthwiseSeparable),
                    count(net::LayerKind::kStftSeparable));
      }
    return kExitOk;
  });
}

int run_synth(const SynthArgs& args) {
  return guarded([&] {
    const data::CifarVariant variant = variant_of(args.variant);
    if (args.classes == 0 || args.classes > static_cast<std::size_t>(args.variant)) {
      fail(kExitSpec, "--classes must be in [1, " + std::to_string(args.variant) + "]");
    }
    auto train = data::make_synthetic(args.per_class, args.classes, args.seed,
                                      data::Split::kTrain);
    auto test = data::make_synthetic(args.test_per_class, args.classes,
                                     args.seed + 1, data::Split::kTest);
    train.classes = test.classes = static_cast<std::size_t>(args.variant);
    if (variant == data::CifarVariant::k100) {
      for (auto* ds : {&train, &test}) {
        ds->coarse_labels.clear();
        for (int l : ds->labels) ds->coarse_labels.push_back(static_cast<std::uint8_t>(l / 5));
      }
    }
    data::write_cifar_dir(args.out, train, test, variant);
    std::cerr << "wrote " << train.size() << " train / " << test.size()
              << " test images to " << args.out << '\n';
    return kExitOk;
  });
}

}  // namespace dwstft::cli
