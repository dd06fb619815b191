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

#ifndef QHTREE_CSV_STREAM_HPP_
#define QHTREE_CSV_STREAM_HPP_

#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qhtree/schema.hpp"

namespace qhtree {

// Pull-style source of samples. `next` overwrites `out` and returns false at
// end of stream; implementations reuse `out`'s storage.
class SampleSource {
 public:
  virtual ~SampleSource() = default;
  virtual bool next(Sample& out) = 0;
  // Numeric values that fell outside their declared range and were clamped.
  virtual std::uint64_t clamp_events() const { return 0; }
};

// Splits one CSV record into fields. Handles RFC-4180 quoting ("" escapes a
// quote); records never span lines. Returned views point into `line`, or into
// `scratch` for quoted fields.
void split_csv_record(std::string_view line, char delimiter,
                      std::vector<std::string_view>& fields,
                      std::deque<std::string>& scratch);

// Streams samples from a CSV file in file order, one record at a time.
class CsvSampleStream final : public SampleSource {
 public:
  CsvSampleStream(const std::filesystem::path& path, DatasetSchema schema);

  bool next(Sample& out) override;
  std::uint64_t clamp_events() const override { return clamp_events_; }

  std::uint64_t samples_read() const { return samples_read_; }
  const DatasetSchema& schema() const { return schema_; }

 private:
  DatasetSchema schema_;
  std::ifstream in_;
  std::string line_;
  std::vector<std::string_view> fields_;
  std::deque<std::string> scratch_;
  std::uint64_t line_no_ = 0;
  std::uint64_t samples_read_ = 0;
  std::uint64_t clamp_events_ = 0;
};

std::unique_ptr<CsvSampleStream> open_stream(const std::filesystem::path& path,
                                             const DatasetSchema& schema);

// In-memory source over a prepared vector; used by tests and generators.
class VectorSource final : public SampleSource {
 public:
  explicit VectorSource(std::vector<Sample> samples)
      : samples_(std::move(samples)) {}

  bool next(Sample& out) override {
    if (pos_ >= samples_.size()) return false;
    out = samples_[pos_++];
    return true;
  }
  void rewind() { pos_ = 0; }

 private:
  std::vector<Sample> samples_;
  std::size_t pos_ = 0;
};

// Rewrites a string-valued CSV into coded form: categorical fields become
// their index in the attribute's `values`, labels their index in
// `class_labels`. Attributes (or labels) without a value list must already be
// codes. Numeric fields, the header, column order and delimiter are kept, so
// the same schema reads both files. Returns the number of records written.
std::uint64_t encode_csv(const std::filesystem::path& in,
                         const std::filesystem::path& out,
                         const DatasetSchema& schema);

}  // namespace qhtree

#endif  // QHTREE_CSV_STREAM_HPP_
