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

#include "qhtree/synthetic.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "qhtree/error.hpp"

namespace qhtree {

namespace {

AttributeSpec numeric(std::string name) {
  AttributeSpec a;
  a.name = std::move(name);
  a.kind = AttributeKind::kNumeric;
  a.declared_min = -1.0;
  a.declared_max = 1.0;
  return a;
}

DatasetSchema two_class(std::vector<AttributeSpec> attrs) {
  DatasetSchema s;
  s.attributes = std::move(attrs);
  s.class_count = 2;
  s.class_labels = {"0", "1"};
  s.has_header = true;
  return s;
}

}  // namespace

std::string_view to_string(SyntheticKind k) {
  switch (k) {
    case SyntheticKind::kSeparable:
      return "separable";
    case SyntheticKind::kNoise:
      return "noise";
    case SyntheticKind::kConstant:
      return "constant";
    case SyntheticKind::kDuplicated:
      return "duplicated";
    case SyntheticKind::kHyperplane:
      return "hyperplane";
  }
  return "separable";
}

SyntheticKind parse_synthetic_kind(std::string_view text) {
  for (auto k : {SyntheticKind::kSeparable, SyntheticKind::kNoise, SyntheticKind::kConstant,
                 SyntheticKind::kDuplicated, SyntheticKind::kHyperplane}) {
    if (text == to_string(k)) return k;
  }
  throw ConfigError("unknown synthetic kind '" + std::string(text) +
                    "' (separable|noise|constant|duplicated|hyperplane)");
}

SyntheticStream make_synthetic(SyntheticKind kind, std::uint64_t rows, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  SyntheticStream out;
  out.samples.reserve(rows);

  switch (kind) {
    case SyntheticKind::kSeparable:
    case SyntheticKind::kNoise:
    case SyntheticKind::kConstant:
    case SyntheticKind::kDuplicated: {
      out.schema = two_class({numeric("a0"), numeric("a1")});
      std::bernoulli_distribution flip(0.1);
      for (std::uint64_t i = 0; i < rows; ++i) {
        Sample s;
        const double a0 = unit(rng);
        const double a1 = kind == SyntheticKind::kDuplicated ? a0 : unit(rng);
        s.values = {a0, a1};
        switch (kind) {
          case SyntheticKind::kSeparable:
            s.label = a0 > 0.1 ? 1 : 0;
            break;
          case SyntheticKind::kNoise:
            s.label = coin(rng) ? 1 : 0;
            break;
          case SyntheticKind::kConstant:
            s.label = 1;
            break;
          default:
            s.label = (a0 > 0.0) != flip(rng) ? 1 : 0;
            break;
        }
        out.samples.push_back(std::move(s));
      }
      break;
    }
    case SyntheticKind::kHyperplane: {
      AttributeSpec cat;
      cat.name = "c0";
      cat.kind = AttributeKind::kCategorical;
      cat.cardinality = 3;
      cat.values = {"low", "mid", "high"};
      out.schema = two_class({numeric("a0"), numeric("a1"), numeric("a2"), numeric("a3"), cat});
      constexpr std::array<double, 4> w = {0.9, -0.6, 0.4, 0.2};
      constexpr std::array<double, 3> offset = {-0.5, 0.0, 0.5};
      std::uniform_int_distribution<std::uint32_t> code(0, 2);
      std::bernoulli_distribution flip(0.05);
      for (std::uint64_t i = 0; i < rows; ++i) {
        Sample s;
        double dot = 0.0;
        for (double wi : w) {
          s.values.push_back(unit(rng));
          dot += wi * s.values.back();
        }
        const std::uint32_t c = code(rng);
        s.values.push_back(static_cast<double>(c));
        dot += offset[c];
        s.label = (dot > 0.0) != flip(rng) ? 1 : 0;
        out.samples.push_back(std::move(s));
      }
      break;
    }
  }
  return out;
}

void write_synthetic_csv(const SyntheticStream& stream, const std::filesystem::path& out) {
  std::ofstream f(out);
  if (!f) throw Error("cannot write " + out.string());
  for (const AttributeSpec& a : stream.schema.attributes) f << a.name << ',';
  f << "class\n";
  char buf[32];
  for (const Sample& s : stream.samples) {
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      if (stream.schema.attributes[i].is_numeric()) {
        std::snprintf(buf, sizeof buf, "%.17g,", s.values[i]);
      } else {
        std::snprintf(buf, sizeof buf, "%u,", static_cast<unsigned>(s.values[i]));
      }
      f << buf;
    }
    f << s.label << '\n';
  }
  if (!f) throw Error("write failed: " + out.string());
}

}  // namespace qhtree
