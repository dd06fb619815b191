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

#ifndef QHTREE_SCHEMA_HPP_
#define QHTREE_SCHEMA_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qhtree {

enum class AttributeKind : std::uint8_t { kNumeric = 0, kCategorical = 1 };

struct AttributeSpec {
  std::string name;
  AttributeKind kind = AttributeKind::kNumeric;
  // Numeric only: the declared range mapped onto [-1, 1].
  double declared_min = -1.0;
  double declared_max = 1.0;
  // Categorical only: codes run 0..cardinality-1.
  std::uint32_t cardinality = 0;
  // Optional raw spellings of the codes, consumed by the encoder.
  std::vector<std::string> values;

  bool is_numeric() const { return kind == AttributeKind::kNumeric; }
  bool is_categorical() const { return kind == AttributeKind::kCategorical; }
};

struct DatasetSchema {
  std::vector<AttributeSpec> attributes;
  std::uint32_t class_count = 0;
  // Optional raw spellings of the class labels, consumed by the encoder.
  std::vector<std::string> class_labels;
  // CSV column holding the label; empty means the last column.
  std::optional<std::size_t> label_column;
  bool has_header = false;
  char delimiter = ',';

  std::size_t attribute_count() const { return attributes.size(); }
  std::size_t column_count() const { return attributes.size() + 1; }
  std::size_t label_index() const {
    return label_column.value_or(attributes.size());
  }

  // Throws SchemaError when an invariant does not hold.
  void validate() const;
};

// One labeled observation. Numeric entries are normalized reals in [-1, 1];
// categorical entries hold their integral code.
struct Sample {
  std::vector<double> values;
  std::uint32_t label = 0;
};

DatasetSchema parse_schema(std::string_view json_text);
DatasetSchema load_schema(const std::filesystem::path& path);
std::string schema_to_json(const DatasetSchema& schema);

// Affine map of the declared range onto [-1, 1], clamped.
double normalize(double raw, const AttributeSpec& spec);
double denormalize(double normalized, const AttributeSpec& spec);
inline bool out_of_range(double raw, const AttributeSpec& spec) {
  return raw < spec.declared_min || raw > spec.declared_max;
}

}  // namespace qhtree

#endif  // QHTREE_SCHEMA_HPP_
