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

#ifndef QHTREE_SYNTHETIC_HPP_
#define QHTREE_SYNTHETIC_HPP_

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "qhtree/schema.hpp"

namespace qhtree {

// Streams with known ground truth, already normalized to [-1, 1].
enum class SyntheticKind : std::uint8_t {
  // label = [a0 > 0.1]; a1 is independent noise.
  kSeparable,
  // Two uniform attributes, labels uniform and independent of them.
  kNoise,
  // Every label is 1.
  kConstant,
  // a1 duplicates a0; label = [a0 > 0] flipped with probability 0.1.
  kDuplicated,
  // Four numeric attributes plus a categorical(3) offset; label is the side
  // of a fixed hyperplane, flipped with probability 0.05.
  kHyperplane,
};

std::string_view to_string(SyntheticKind k);
SyntheticKind parse_synthetic_kind(std::string_view text);

struct SyntheticStream {
  DatasetSchema schema;
  std::vector<Sample> samples;
};

SyntheticStream make_synthetic(SyntheticKind kind, std::uint64_t rows, std::uint64_t seed);

// Header row plus one coded record per sample; the matching schema has
// declared range [-1, 1] so the file reloads to identical values.
void write_synthetic_csv(const SyntheticStream& stream, const std::filesystem::path& out);

}  // namespace qhtree

#endif  // QHTREE_SYNTHETIC_HPP_
