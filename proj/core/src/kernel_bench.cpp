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

#include "dwstft/kernel_bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <tuple>
#include <utility>

#include "dwstft/stft.hpp"

namespace dwstft::bench {
namespace {

template <typename F>
std::pair<double, double> time_reps(std::size_t reps, F&& run) {
  std::vector<double> samples;
  samples.reserve(reps);
  for (std::size_t i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    run();
    samples.push_back(std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count());
  }
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(reps);
  double var = 0.0;
  for (double s : samples) var += (s - mean) * (s - mean);
  return {mean, reps > 1 ? std::sqrt(var / static_cast<double>(reps - 1)) : 0.0};
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<BenchRow> run_kernel_bench(const BenchOptions& options) {
  std::vector<BenchRow> rows;
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  for (int n : options.windows) {
    const stft::StftBasis basis(n);
    for (const Shape4& shape : options.shapes) {
      Tensor4<double> x(shape);
      for (double& v : x.data()) v = gauss(rng);

      stft::MacCounter direct_count, separable_count;
      const auto direct = stft::forward_direct(x, basis, &direct_count);
      auto separable = stft::forward_separable(x, basis, &separable_count);
      if (options.perturb_separable) separable.data()[0] += 1.0;
      const bool equivalent = max_rel_diff(direct, separable) <= kEquivalenceTolerance;

      const std::uint64_t planes = shape.batch * shape.channels;
      const std::uint64_t direct_macs =
          stft::flops_direct(n, planes, shape.height, shape.width);
      const std::uint64_t separable_macs =
          stft::flops_separable(n, planes, shape.height, shape.width);

      BenchRow d{"direct", n, shape, direct_macs, direct_count.macs, 1.0, 1.0,
                 options.reps, {}, {}, {}};
      BenchRow s{"separable", n, shape, separable_macs, separable_count.macs,
                 static_cast<double>(separable_macs) / static_cast<double>(direct_macs),
                 static_cast<double>(separable_count.macs) /
                     static_cast<double>(direct_count.macs),
                 options.reps, {}, {}, {}};

      if (!equivalent) {
        d.error = s.error = "equivalence-check-failed";
      } else if (options.reps > 0) {
        const Tensor4<float> xf = x.cast<float>();
        const auto [dm, ds] =
            time_reps(options.reps, [&] { (void)stft::forward_direct(xf, basis); });
        d.mean_seconds = dm;
        d.stddev_seconds = ds;
        const auto [sm, ss] =
            time_reps(options.reps, [&] { (void)stft::forward_separable(xf, basis); });
        s.mean_seconds = sm;
        s.stddev_seconds = ss;
      }
      rows.push_back(std::move(d));
      rows.push_back(std::move(s));
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    auto key = [](const BenchRow& r) {
      return std::make_tuple(r.n, r.shape.batch, r.shape.channels, r.shape.height,
                             r.shape.width, r.path);
    };
    return key(a) < key(b);
  });
  return rows;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << kBenchCsvHeader << '\n';
  for (const BenchRow& r : rows) {
    os << r.path << ',' << r.n << ',' << r.shape.batch << ',' << r.shape.channels
       << ',' << r.shape.height << ',' << r.shape.width << ',' << r.macs << ','
       << r.measured_macs << ',' << format_double(r.formula_ratio) << ','
       << format_double(r.measured_ratio) << ',' << r.reps << ','
       << (r.mean_seconds ? format_double(*r.mean_seconds) : "") << ','
       << (r.stddev_seconds ? format_double(*r.stddev_seconds) : "") << ','
       << r.error << '\n';
  }
}

Shape4 parse_shape(const std::string& text) {
  std::vector<std::size_t> dims;
  std::size_t value = 0;
  bool have = false;
  for (char ch : text + "x") {
    if (ch >= '0' && ch <= '9') {
      value = value * 10 + static_cast<std::size_t>(ch - '0');
      have = true;
    } else if (ch == 'x' || ch == 'X') {
      if (!have) throw ParameterError("malformed shape '" + text + "'");
      dims.push_back(value);
      value = 0;
      have = false;
    } else {
      throw ParameterError("malformed shape '" + text + "'");
    }
  }
  if (dims.size() != 4) {
    throw ParameterError("shape '" + text + "' must have 4 dims (BxCxHxW)");
  }
  const Shape4 s{dims[0], dims[1], dims[2], dims[3]};
  (void)s.elements();
  return s;
}

}  // namespace dwstft::bench
