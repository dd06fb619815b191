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

#include "qhtree/eval_harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <thread>

#include <nlohmann/json.hpp>

#include "qhtree/error.hpp"
#include "qhtree/gaussian_stats.hpp"
#include "qhtree/quantile_sketch.hpp"

namespace qhtree {

std::string metrics_to_json(const Metrics& m, bool include_wall_time) {
  nlohmann::ordered_json j;
  j["method"] = m.method;
  j["numeric_backend"] = m.numeric_backend;
  j["quantiles"] = m.quantiles;
  j["samples_seen"] = m.samples_seen;
  j["correct"] = m.correct;
  j["accuracy"] = m.accuracy;
  j["splits_taken"] = m.splits_taken;
  j["split_trials"] = m.split_trials;
  j["frozen_leaves"] = m.frozen_leaves;
  j["leaf_count"] = m.leaf_count;
  j["depth"] = m.depth;
  if (include_wall_time) j["wall_time_s"] = m.wall_time_s;
  j["clamp_events"] = m.clamp_events;
  j["saturation_events"] = m.saturation_events;
  j["window"] = m.window;
  j["windowed_accuracy"] = m.windowed_accuracy;
  return j.dump(2);
}

std::string metrics_csv_header() {
  return "method,numeric_backend,quantiles,samples_seen,correct,accuracy,splits_taken,"
         "split_trials,frozen_leaves,leaf_count,depth,wall_time_s,clamp_events,"
         "saturation_events";
}

std::string metrics_csv_row(const Metrics& m) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%s,%u,%llu,%llu,%.6f,%llu,%llu,%llu,%llu,%u,%.6f,%llu,%llu",
                m.method.c_str(), m.numeric_backend.c_str(), m.quantiles,
                static_cast<unsigned long long>(m.samples_seen),
                static_cast<unsigned long long>(m.correct), m.accuracy,
                static_cast<unsigned long long>(m.splits_taken),
                static_cast<unsigned long long>(m.split_trials),
                static_cast<unsigned long long>(m.frozen_leaves),
                static_cast<unsigned long long>(m.leaf_count), m.depth, m.wall_time_s,
                static_cast<unsigned long long>(m.clamp_events),
                static_cast<unsigned long long>(m.saturation_events));
  return buf;
}

Metrics interleaved_test_then_train(HoeffdingTree& tree, SampleSource& stream,
                                    const EvalOptions& options) {
  Metrics m;
  const TreeConfig& config = tree.config();
  m.method = std::string(to_string(config.method));
  m.numeric_backend = std::string(to_string(config.numeric_backend));
  m.quantiles = config.method == Method::kQuantile ? config.quantile_count : 0;
  m.window = options.window;

  const auto start = std::chrono::steady_clock::now();
  Sample s;
  std::uint64_t window_correct = 0;
  std::uint64_t window_seen = 0;
  while ((options.limit == 0 || m.samples_seen < options.limit) && stream.next(s)) {
    const bool hit = tree.predict(s) == s.label;
    m.correct += hit ? 1 : 0;
    ++m.samples_seen;
    tree.train_one(s);
    if (options.window > 0) {
      window_correct += hit ? 1 : 0;
      if (++window_seen == options.window) {
        m.windowed_accuracy.push_back(static_cast<double>(window_correct) /
                                      static_cast<double>(window_seen));
        window_correct = 0;
        window_seen = 0;
      }
    }
  }
  if (window_seen > 0) {
    m.windowed_accuracy.push_back(static_cast<double>(window_correct) /
                                  static_cast<double>(window_seen));
  }
  m.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  m.accuracy = m.samples_seen == 0 ? 0.0
                                   : static_cast<double>(m.correct) /
                                         static_cast<double>(m.samples_seen);
  const TreeStats st = tree.stats();
  m.splits_taken = st.splits_taken;
  m.split_trials = st.split_trials;
  m.frozen_leaves = st.frozen_leaves;
  m.leaf_count = st.leaf_count;
  m.depth = st.depth;
  m.saturation_events = st.saturations;
  m.clamp_events = stream.clamp_events();
  return m;
}

Metrics evaluate_file(const std::filesystem::path& data, const DatasetSchema& schema,
                      const TreeConfig& config, const EvalOptions& options) {
  CsvSampleStream stream(data, schema);
  HoeffdingTree tree(schema, config);
  return interleaved_test_then_train(tree, stream, options);
}

std::vector<SweepRow> sweep_quantiles(const std::filesystem::path& data,
                                      const DatasetSchema& schema,
                                      const std::vector<std::uint32_t>& quantile_list,
                                      const TreeConfig& config, unsigned threads) {
  if (quantile_list.empty()) throw ConfigError("sweep: empty quantile list");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  for (std::uint32_t q : quantile_list) {
    TreeConfig c = config;
    c.quantile_count = q;
    c.validate();
  }

  std::vector<SweepRow> rows(quantile_list.size());
  for (std::size_t begin = 0; begin < quantile_list.size(); begin += threads) {
    const std::size_t end = std::min(quantile_list.size(), begin + threads);
    std::vector<std::future<Metrics>> cells;
    for (std::size_t i = begin; i < end; ++i) {
      TreeConfig c = config;
      c.method = Method::kQuantile;
      c.quantile_count = quantile_list[i];
      cells.push_back(std::async(std::launch::async,
                                 [&data, &schema, c] { return evaluate_file(data, schema, c); }));
    }
    for (std::size_t i = begin; i < end; ++i) {
      rows[i].quantiles = quantile_list[i];
      rows[i].metrics = cells[i - begin].get();
    }
  }
  return rows;
}

MethodComparison compare_methods(const std::filesystem::path& data,
                                 const DatasetSchema& schema, const TreeConfig& config) {
  TreeConfig q = config;
  q.method = Method::kQuantile;
  TreeConfig g = config;
  g.method = Method::kGaussian;
  return {evaluate_file(data, schema, q), evaluate_file(data, schema, g)};
}

namespace {

template <typename Rep>
std::vector<double> quantile_column(std::span<const double> values,
                                    std::span<const double> grid_x,
                                    const QuantileGrid& grid) {
  QuantileSet<Rep> qs(grid);
  for (double v : values) qs.update(v, grid);
  std::vector<double> out;
  out.reserve(grid_x.size());
  for (double x : grid_x) out.push_back(qs.fraction_below(x));
  return out;
}

}  // namespace

CdfComparison export_cdf_comparison(SampleSource& stream, const DatasetSchema& schema,
                                    std::size_t attr, std::uint64_t sample_limit,
                                    const TreeConfig& config, std::uint32_t grid_points) {
  if (attr >= schema.attribute_count()) throw ConfigError("cdf-export: attribute out of range");
  if (!schema.attributes[attr].is_numeric()) {
    throw ConfigError("cdf-export: attribute '" + schema.attributes[attr].name +
                      "' is categorical");
  }
  if (grid_points < 2) throw ConfigError("cdf-export: need at least 2 grid points");

  std::vector<double> values;
  Sample s;
  while ((sample_limit == 0 || values.size() < sample_limit) && stream.next(s)) {
    values.push_back(s.values[attr]);
  }
  CdfComparison cmp;
  cmp.attribute = schema.attributes[attr].name;
  cmp.samples = values.size();
  if (values.empty()) return cmp;

  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();
  std::vector<double> xs(grid_points);
  for (std::uint32_t i = 0; i < grid_points; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_points - 1);
  }

  const QuantileGrid grid = QuantileGrid::evenly_spaced(config.quantile_count, config.lambda);
  const std::vector<double> quantile =
      config.numeric_backend == NumericBackend::kFixed
          ? quantile_column<Fixed30>(values, xs, grid)
          : quantile_column<double>(values, xs, grid);
  GaussianStats gs;
  for (double v : values) gs.update(v);

  const auto n = static_cast<double>(values.size());
  for (std::uint32_t i = 0; i < grid_points; ++i) {
    CdfRow row;
    row.x = xs[i];
    row.exact =
        static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), xs[i]) -
                            sorted.begin()) / n;
    row.quantile = quantile[i];
    row.gaussian = gs.cdf(xs[i]);
    cmp.quantile_sup_error = std::max(cmp.quantile_sup_error, std::abs(row.quantile - row.exact));
    cmp.gaussian_sup_error = std::max(cmp.gaussian_sup_error, std::abs(row.gaussian - row.exact));
    cmp.rows.push_back(row);
  }
  return cmp;
}

void write_cdf_csv(const CdfComparison& cmp, const std::filesystem::path& out) {
  std::ofstream f(out);
  if (!f) throw Error("cannot write " + out.string());
  f << "x,exact,quantile,gaussian\n";
  char buf[128];
  for (const CdfRow& r : cmp.rows) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g\n", r.x, r.exact, r.quantile,
                  r.gaussian);
    f << buf;
  }
  if (!f) throw Error("write failed: " + out.string());
}

}  // namespace qhtree
