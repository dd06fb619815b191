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

#ifndef QHTREE_TREE_CONFIG_HPP_
#define QHTREE_TREE_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace qhtree {

enum class Method : std::uint8_t { kQuantile = 0, kGaussian = 1 };
enum class NumericBackend : std::uint8_t { kFloat = 0, kFixed = 1 };

std::string_view to_string(Method m);
std::string_view to_string(NumericBackend b);
Method parse_method(std::string_view text);
NumericBackend parse_backend(std::string_view text);

// Learner parameters. Defaults are the reference configuration: n_min = 200,
// 10 split points, tau = 0.05, delta = 1e-3, lambda = 0.01, 8 quantiles,
// at most 1024 leaves and depth 15.
struct TreeConfig {
  double delta = 1e-3;
  double tau = 0.05;
  std::uint32_t n_min = 200;
  std::uint32_t split_points = 10;
  std::uint32_t quantile_count = 8;
  double lambda = 0.01;
  std::uint32_t max_leaves = 1024;
  std::uint32_t max_depth = 15;
  Method method = Method::kQuantile;
  NumericBackend numeric_backend = NumericBackend::kFloat;
  // Range R of the split measure in the Hoeffding bound.
  double hoeffding_range = 1.0;

  // Throws ConfigError when an invariant does not hold.
  void validate() const;

  friend bool operator==(const TreeConfig&, const TreeConfig&) = default;
};

}  // namespace qhtree

#endif  // QHTREE_TREE_CONFIG_HPP_
