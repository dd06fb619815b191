/*
 * Copyright 2026 The qhtree Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef QHTREE_ERROR_HPP_
#define QHTREE_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qhtree {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Raised while reading a CSV stream. `row()` is 1-based and counts physical
// lines, header included.
class StreamError : public Error {
 public:
  StreamError(std::uint64_t row, const std::string& what)
      : Error("row " + std::to_string(row) + ": " + what), row_(row) {}

  std::uint64_t row() const { return row_; }

 private:
  std::uint64_t row_;
};

class SnapshotError : public Error {
 public:
  using Error::Error;
};

}  // namespace qhtree

#endif  // QHTREE_ERROR_HPP_
