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

#ifndef DWSTFT_ERROR_HPP
#define DWSTFT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dwstft {

// All library failures derive from Error so callers can map them to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tensor shapes that do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Out-of-range or otherwise invalid scalar arguments.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A block or network description that violates its invariants.
class SpecError : public Error {
 public:
  using Error::Error;
};

// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// File contents do not follow the expected binary or text layout.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Data without spread (e.g. a constant channel) where statistics are needed.
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace dwstft

#endif  // DWSTFT_ERROR_HPP
