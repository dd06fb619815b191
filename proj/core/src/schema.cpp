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

#include "qhtree/schema.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qhtree/error.hpp"

namespace qhtree {

using nlohmann::json;

void DatasetSchema::validate() const {
  if (attributes.empty()) {
    throw SchemaError("schema declares no attributes");
  }
  if (class_count < 2) {
    throw SchemaError("schema needs at least 2 classes, got " +
                      std::to_string(class_count));
  }
  if (!class_labels.empty() && class_labels.size() != class_count) {
    throw SchemaError("class_labels has " + std::to_string(class_labels.size()) +
                      " entries but classes = " + std::to_string(class_count));
  }
  if (label_column && *label_column > attributes.size()) {
    throw SchemaError("label_column " + std::to_string(*label_column) +
                      " is outside the " + std::to_string(column_count()) +
                      " CSV columns");
  }
  for (const AttributeSpec& a : attributes) {
    if (a.is_categorical()) {
      if (a.cardinality < 2) {
        throw SchemaError("categorical attribute '" + a.name +
                          "' needs cardinality >= 2");
      }
      if (!a.values.empty() && a.values.size() != a.cardinality) {
        throw SchemaError("attribute '" + a.name + "' lists " +
                          std::to_string(a.values.size()) +
                          " values but cardinality is " +
                          std::to_string(a.cardinality));
      }
    } else {
      if (!std::isfinite(a.declared_min) || !std::isfinite(a.declared_max) ||
          !(a.declared_min < a.declared_max)) {
        throw SchemaError("numeric attribute '" + a.name +
                          "' needs finite min < max");
      }
    }
  }
}

namespace {

AttributeSpec parse_attribute(const json& j, std::size_t index) {
  if (!j.is_object()) {
    throw SchemaError("attribute #" + std::to_string(index) +
                      " is not an object");
  }
  AttributeSpec a;
  a.name = j.value("name", "attr" + std::to_string(index));
  const std::string kind = j.value("kind", "numeric");
  if (kind == "numeric") {
    a.kind = AttributeKind::kNumeric;
    if (!j.contains("min") || !j.contains("max")) {
      throw SchemaError("numeric attribute '" + a.name + "' needs min and max");
    }
    a.declared_min = j.at("min").get<double>();
    a.declared_max = j.at("max").get<double>();
  } else if (kind == "categorical") {
    a.kind = AttributeKind::kCategorical;
    if (j.contains("values")) {
      a.values = j.at("values").get<std::vector<std::string>>();
    }
    if (j.contains("cardinality")) {
      a.cardinality = j.at("cardinality").get<std::uint32_t>();
    } else {
      a.cardinality = static_cast<std::uint32_t>(a.values.size());
    }
  } else {
    throw SchemaError("attribute '" + a.name + "' has unknown kind '" + kind +
                      "'");
  }
  return a;
}

}  // namespace

DatasetSchema parse_schema(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed schema: ") + e.what());
  }
  if (!root.is_object()) throw SchemaError("schema must be a JSON object");

  DatasetSchema schema;
  try {
    if (!root.contains("attributes") || !root.at("attributes").is_array()) {
      throw SchemaError("schema needs an 'attributes' array");
    }
    const json& attrs = root.at("attributes");
    for (std::size_t i = 0; i < attrs.size(); ++i) {
      schema.attributes.push_back(parse_attribute(attrs[i], i));
    }
    if (root.contains("class_labels")) {
      schema.class_labels =
          root.at("class_labels").get<std::vector<std::string>>();
    }
    if (root.contains("classes")) {
      schema.class_count = root.at("classes").get<std::uint32_t>();
    } else {
      schema.class_count = static_cast<std::uint32_t>(schema.class_labels.size());
    }
    if (root.contains("label_column")) {
      const json& lc = root.at("label_column");
      if (lc.is_string()) {
        if (lc.get<std::string>() != "last") {
          throw SchemaError("label_column must be an integer or \"last\"");
        }
      } else {
        schema.label_column = lc.get<std::size_t>();
      }
    }
    schema.has_header = root.value("has_header", false);
    const std::string delim = root.value("delimiter", ",");
    if (delim.size() != 1 || delim[0] == '"' || delim[0] == '\n') {
      throw SchemaError("delimiter must be a single character other than quote");
    }
    schema.delimiter = delim[0];
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed schema: ") + e.what());
  }
  schema.validate();
  return schema;
}

DatasetSchema load_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open schema file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_schema(text.str());
}

std::string schema_to_json(const DatasetSchema& schema) {
  json root;
  json attrs = json::array();
  for (const AttributeSpec& a : schema.attributes) {
    json j;
    j["name"] = a.name;
    if (a.is_numeric()) {
      j["kind"] = "numeric";
      j["min"] = a.declared_min;
      j["max"] = a.declared_max;
    } else {
      j["kind"] = "categorical";
      j["cardinality"] = a.cardinality;
      if (!a.values.empty()) j["values"] = a.values;
    }
    attrs.push_back(std::move(j));
  }
  root["attributes"] = std::move(attrs);
  root["classes"] = schema.class_count;
  if (!schema.class_labels.empty()) root["class_labels"] = schema.class_labels;
  if (schema.label_column) {
    root["label_column"] = *schema.label_column;
  } else {
    root["label_column"] = "last";
  }
  root["has_header"] = schema.has_header;
  root["delimiter"] = std::string(1, schema.delimiter);
  return root.dump();
}

double normalize(double raw, const AttributeSpec& spec) {
  const double span = spec.declared_max - spec.declared_min;
  const double v = 2.0 * (raw - spec.declared_min) / span - 1.0;
  return std::clamp(v, -1.0, 1.0);
}

double denormalize(double normalized, const AttributeSpec& spec) {
  const double span = spec.declared_max - spec.declared_min;
  return (normalized + 1.0) * 0.5 * span + spec.declared_min;
}

}  // namespace qhtree
