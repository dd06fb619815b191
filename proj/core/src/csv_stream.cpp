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

#include "qhtree/csv_stream.hpp"

#include <charconv>
#include <cmath>
#include <unordered_map>

#include "qhtree/error.hpp"

namespace qhtree {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() &&
         std::isfinite(out);
}

bool parse_code(std::string_view text, std::uint32_t& out) {
  text = trim(text);
  if (text.empty()) return false;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec == std::errc() && ptr == text.data() + text.size()) return true;
  // Accept integral reals such as "3.0".
  double d = 0;
  if (!parse_double(text, d) || d < 0 || d != std::floor(d) || d > 4294967295.0) {
    return false;
  }
  out = static_cast<std::uint32_t>(d);
  return true;
}

}  // namespace

void split_csv_record(std::string_view line, char delimiter,
                      std::vector<std::string_view>& fields,
                      std::deque<std::string>& scratch) {
  fields.clear();
  scratch.clear();
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::size_t pos = 0;
  while (true) {
    std::size_t start = pos;
    while (start < line.size() && line[start] == ' ') ++start;
    if (start < line.size() && line[start] == '"') {
      std::string value;
      std::size_t i = start + 1;
      while (i < line.size()) {
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            value.push_back('"');
            i += 2;
            continue;
          }
          break;
        }
        value.push_back(line[i++]);
      }
      // Skip the closing quote and anything up to the next delimiter.
      const std::size_t end = line.find(delimiter, i);
      scratch.push_back(std::move(value));
      fields.push_back(scratch.back());
      if (end == std::string_view::npos) break;
      pos = end + 1;
    } else {
      const std::size_t end = line.find(delimiter, pos);
      if (end == std::string_view::npos) {
        fields.push_back(line.substr(pos));
        break;
      }
      fields.push_back(line.substr(pos, end - pos));
      pos = end + 1;
    }
  }
}

CsvSampleStream::CsvSampleStream(const std::filesystem::path& path,
                                 DatasetSchema schema)
    : schema_(std::move(schema)), in_(path) {
  schema_.validate();
  if (!in_) throw StreamError(0, "cannot open " + path.string());
  if (schema_.has_header) {
    if (std::getline(in_, line_)) ++line_no_;
  }
}

bool CsvSampleStream::next(Sample& out) {
  const std::size_t columns = schema_.column_count();
  const std::size_t label_col = schema_.label_index();
  while (std::getline(in_, line_)) {
    ++line_no_;
    if (trim(line_).empty()) continue;
    split_csv_record(line_, schema_.delimiter, fields_, scratch_);
    if (fields_.size() != columns) {
      throw StreamError(line_no_, "expected " + std::to_string(columns) +
                                      " columns, found " +
                                      std::to_string(fields_.size()));
    }
    out.values.resize(schema_.attribute_count());
    std::size_t attr = 0;
    for (std::size_t col = 0; col < columns; ++col) {
      const std::string_view field = fields_[col];
      if (col == label_col) {
        std::uint32_t label = 0;
        if (!parse_code(field, label)) {
          throw StreamError(line_no_, "unparseable class label '" +
                                          std::string(field) + "'");
        }
        if (label >= schema_.class_count) {
          throw StreamError(line_no_, "class label " + std::to_string(label) +
                                          " outside 0.." +
                                          std::to_string(schema_.class_count - 1));
        }
        out.label = label;
        continue;
      }
      const AttributeSpec& spec = schema_.attributes[attr];
      if (spec.is_numeric()) {
        double raw = 0;
        if (!parse_double(field, raw)) {
          throw StreamError(line_no_, "unparseable value '" + std::string(field) +
                                          "' for attribute '" + spec.name + "'");
        }
        if (out_of_range(raw, spec)) ++clamp_events_;
        out.values[attr] = normalize(raw, spec);
      } else {
        std::uint32_t code = 0;
        if (!parse_code(field, code)) {
          throw StreamError(line_no_, "unparseable code '" + std::string(field) +
                                          "' for attribute '" + spec.name + "'");
        }
        if (code >= spec.cardinality) {
          throw StreamError(line_no_, "unknown categorical code " +
                                          std::to_string(code) +
                                          " for attribute '" + spec.name + "'");
        }
        out.values[attr] = static_cast<double>(code);
      }
      ++attr;
    }
    ++samples_read_;
    return true;
  }
  if (in_.bad()) throw StreamError(line_no_, "read error");
  return false;
}

std::unique_ptr<CsvSampleStream> open_stream(const std::filesystem::path& path,
                                             const DatasetSchema& schema) {
  return std::make_unique<CsvSampleStream>(path, schema);
}

namespace {

std::unordered_map<std::string, std::uint32_t> index_of(
    const std::vector<std::string>& names) {
  std::unordered_map<std::string, std::uint32_t> m;
  for (std::uint32_t i = 0; i < names.size(); ++i) m.emplace(names[i], i);
  return m;
}

}  // namespace

std::uint64_t encode_csv(const std::filesystem::path& in,
                         const std::filesystem::path& out,
                         const DatasetSchema& schema) {
  schema.validate();
  std::ifstream src(in);
  if (!src) throw StreamError(0, "cannot open " + in.string());
  std::ofstream dst(out);
  if (!dst) throw StreamError(0, "cannot write " + out.string());

  const std::size_t columns = schema.column_count();
  const std::size_t label_col = schema.label_index();
  std::vector<std::unordered_map<std::string, std::uint32_t>> maps;
  for (const AttributeSpec& a : schema.attributes) maps.push_back(index_of(a.values));
  const auto labels = index_of(schema.class_labels);

  std::string line;
  std::vector<std::string_view> fields;
  std::deque<std::string> scratch;
  std::uint64_t line_no = 0;
  std::uint64_t written = 0;
  if (schema.has_header && std::getline(src, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    dst << line << '\n';
  }

  auto coded = [&](std::string_view field,
                   const std::unordered_map<std::string, std::uint32_t>& m,
                   std::uint32_t limit, const std::string& what) {
    const std::string key(trim(field));
    std::uint32_t code = 0;
    if (!m.empty()) {
      const auto it = m.find(key);
      if (it == m.end()) {
        throw StreamError(line_no, "unknown " + what + " value '" + key + "'");
      }
      return it->second;
    }
    if (!parse_code(key, code) || code >= limit) {
      throw StreamError(line_no, "bad " + what + " code '" + key + "'");
    }
    return code;
  };

  while (std::getline(src, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    split_csv_record(line, schema.delimiter, fields, scratch);
    if (fields.size() != columns) {
      throw StreamError(line_no, "expected " + std::to_string(columns) +
                                     " columns, found " +
                                     std::to_string(fields.size()));
    }
    std::size_t attr = 0;
    for (std::size_t col = 0; col < columns; ++col) {
      if (col > 0) dst << schema.delimiter;
      if (col == label_col) {
        dst << coded(fields[col], labels, schema.class_count, "class");
        continue;
      }
      const AttributeSpec& spec = schema.attributes[attr];
      if (spec.is_numeric()) {
        double v = 0;
        if (!parse_double(fields[col], v)) {
          throw StreamError(line_no, "unparseable value '" +
                                         std::string(fields[col]) +
                                         "' for attribute '" + spec.name + "'");
        }
        dst << trim(fields[col]);
      } else {
        dst << coded(fields[col], maps[attr], spec.cardinality,
                     "attribute '" + spec.name + "'");
      }
      ++attr;
    }
    dst << '\n';
    ++written;
  }
  if (src.bad()) throw StreamError(line_no, "read error");
  dst.flush();
  if (!dst) throw StreamError(line_no, "write failed: " + out.string());
  return written;
}

}  // namespace qhtree
