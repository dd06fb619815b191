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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qhtree/fixed_point.hpp"
#include "qhtree/gaussian_stats.hpp"
#include "qhtree/hoeffding_tree.hpp"
#include "qhtree/quantile_sketch.hpp"
#include "qhtree/synthetic.hpp"

namespace {

using namespace qhtree;

std::vector<double> uniform_values(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> xs(n);
  for (double& x : xs) x = u(rng);
  return xs;
}

template <typename Rep>
void BM_QuantileUpdate(benchmark::State& state) {
  const QuantileGrid grid =
      QuantileGrid::evenly_spaced(static_cast<std::size_t>(state.range(0)), 0.01);
  const auto xs = uniform_values(1 << 16);
  QuantileSet<Rep> qs(grid);
  std::size_t i = 0;
  for (auto _ : state) {
    qs.update(xs[i++ & (xs.size() - 1)], grid);
    benchmark::DoNotOptimize(qs);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK_TEMPLATE(BM_QuantileUpdate, double)->Arg(8)->Arg(64)->Arg(512);
BENCHMARK_TEMPLATE(BM_QuantileUpdate, Fixed30)->Arg(8)->Arg(64)->Arg(512);

void BM_GaussianUpdate(benchmark::State& state) {
  const auto xs = uniform_values(1 << 16);
  GaussianStats gs;
  std::size_t i = 0;
  for (auto _ : state) {
    gs.update(xs[i++ & (xs.size() - 1)]);
    benchmark::DoNotOptimize(gs);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GaussianUpdate);

void BM_TrainHyperplane(benchmark::State& state) {
  const SyntheticStream s = make_synthetic(SyntheticKind::kHyperplane, 100000, 3);
  TreeConfig config;
  config.method = state.range(0) == 2 ? Method::kGaussian : Method::kQuantile;
  config.numeric_backend = state.range(0) == 1 ? NumericBackend::kFixed : NumericBackend::kFloat;
  for (auto _ : state) {
    HoeffdingTree tree(s.schema, config);
    for (const Sample& x : s.samples) {
      benchmark::DoNotOptimize(tree.predict(x));
      tree.train_one(x);
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.samples.size()));
  state.SetLabel(state.range(0) == 2 ? "gaussian" : state.range(0) == 1 ? "quantile/fixed"
                                                                        : "quantile/float");
}
BENCHMARK(BM_TrainHyperplane)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
