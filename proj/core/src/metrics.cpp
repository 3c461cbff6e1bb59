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

#include "dwstft/metrics.hpp"

#include <cstdio>

namespace dwstft {

std::string format_epoch_row(const train::EpochRecord& r) {
  char buf[256];
  char test[32] = "";
  if (r.test_accuracy) std::snprintf(test, sizeof test, "%.6f", *r.test_accuracy);
  std::snprintf(buf, sizeof buf, "%zu,%.10g,%.6f,%s,%zu,%.3f", r.epoch,
                r.train_loss, r.train_accuracy, test, r.batch_size,
                r.wall_seconds);
  return buf;
}

void write_train_csv(std::ostream& os,
                     const std::vector<train::EpochRecord>& records) {
  os << kTrainCsvHeader << '\n';
  for (const auto& r : records) os << format_epoch_row(r) << '\n';
}

}  // namespace dwstft
