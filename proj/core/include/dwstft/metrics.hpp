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

#ifndef DWSTFT_METRICS_HPP
#define DWSTFT_METRICS_HPP

#include <ostream>
#include <string>
#include <vector>

#include "dwstft/train.hpp"

namespace dwstft {

/// Stable column order; wall-clock is the last column.
inline constexpr const char* kTrainCsvHeader =
    "epoch,train_loss,train_accuracy,test_accuracy,batch_size,wall_seconds";

std::string format_epoch_row(const train::EpochRecord& r);
void write_train_csv(std::ostream& os,
                     const std::vector<train::EpochRecord>& records);

}  // namespace dwstft

#endif  // DWSTFT_METRICS_HPP
