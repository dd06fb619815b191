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

#ifndef QHTREE_EVAL_HARNESS_HPP_
#define QHTREE_EVAL_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qhtree/csv_stream.hpp"
#include "qhtree/hoeffding_tree.hpp"
#include "qhtree/schema.hpp"
#include "qhtree/tree_config.hpp"

namespace qhtree {

struct Metrics {
  std::string method;
  std::string numeric_backend;
  std::uint32_t quantiles = 0;
  std::uint64_t samples_seen = 0;
  std::uint64_t correct = 0;
  double accuracy = 0.0;
  std::uint64_t splits_taken = 0;
  std::uint64_t split_trials = 0;
  std::uint64_t frozen_leaves = 0;
  std::uint64_t leaf_count = 0;
  std::uint32_t depth = 0;
  double wall_time_s = 0.0;
  std::uint64_t clamp_events = 0;
  std::uint64_t saturation_events = 0;
  // Accuracy of each consecutive block of `window` samples (diagnostic only).
  std::uint64_t window = 0;
  std::vector<double> windowed_accuracy;
};

std::string metrics_to_json(const Metrics& m, bool include_wall_time = true);
std::string metrics_csv_header();
std::string metrics_csv_row(const Metrics& m);

struct EvalOptions {
  std::uint64_t window = 1000;
  // Stop after this many samples; 0 reads the whole stream.
  std::uint64_t limit = 0;
};

// Predict each sample, score it, then train on it. Accuracy covers the whole
// stream.
Metrics interleaved_test_then_train(HoeffdingTree& tree, SampleSource& stream,
                                    const EvalOptions& options = {});

// Convenience: fresh tree, CSV stream from `data`.
Metrics evaluate_file(const std::filesystem::path& data, const DatasetSchema& schema,
                      const TreeConfig& config, const EvalOptions& options = {});

struct SweepRow {
  std::uint32_t quantiles = 0;
  Metrics metrics;
};

// One independent run per entry of `quantile_list`, fanned out over at most
// `threads` workers (0 picks the hardware concurrency). Rows keep list order.
std::vector<SweepRow> sweep_quantiles(const std::filesystem::path& data,
                                      const DatasetSchema& schema,
                                      const std::vector<std::uint32_t>& quantile_list,
                                      const TreeConfig& config, unsigned threads = 0);

struct MethodComparison {
  Metrics quantile;
  Metrics gaussian;
};

MethodComparison compare_methods(const std::filesystem::path& data,
                                 const DatasetSchema& schema, const TreeConfig& config);

struct CdfRow {
  double x = 0.0;
  double exact = 0.0;
  double quantile = 0.0;
  double gaussian = 0.0;
};

struct CdfComparison {
  std::string attribute;
  std::uint64_t samples = 0;
  std::vector<CdfRow> rows;
  double quantile_sup_error = 0.0;
  double gaussian_sup_error = 0.0;
};

// Pools the first `sample_limit` values of numeric attribute `attr` (all
// classes, as a root leaf sees them), feeds one quantile set and one Gaussian
// estimator, and compares both against the sorted empirical CDF
// F(x) = #(v <= x) / n on `grid_points` evenly spaced x over the observed
// range. Throws for categorical attributes.
CdfComparison export_cdf_comparison(SampleSource& stream, const DatasetSchema& schema,
                                    std::size_t attr, std::uint64_t sample_limit,
                                    const TreeConfig& config, std::uint32_t grid_points = 201);

void write_cdf_csv(const CdfComparison& cmp, const std::filesystem::path& out);

}  // namespace qhtree

#endif  // QHTREE_EVAL_HARNESS_HPP_
