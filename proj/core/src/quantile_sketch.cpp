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

#include "qhtree/quantile_sketch.hpp"

#include <cmath>

#include "qhtree/error.hpp"

namespace qhtree {

double asym_signum(double z, double alpha) {
  return z < 0.0 ? -alpha : 1.0 - alpha;
}

std::vector<double> evenly_spaced_targets(std::size_t count) {
  std::vector<double> targets(count);
  for (std::size_t k = 0; k < count; ++k) {
    targets[k] = static_cast<double>(k + 1) / static_cast<double>(count + 1);
  }
  return targets;
}

QuantileGrid::QuantileGrid(std::vector<double> targets, double lambda)
    : targets_(std::move(targets)), lambda_(lambda) {
  if (targets_.empty()) throw ConfigError("quantile grid needs at least one target");
  if (!(lambda_ >= 0.0) || !std::isfinite(lambda_)) {
    throw ConfigError("quantile step size must be finite and non-negative");
  }
  for (std::size_t k = 0; k < targets_.size(); ++k) {
    const double a = targets_[k];
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("quantile targets must lie in (0, 1)");
    if (k > 0 && !(a > targets_[k - 1])) {
      throw ConfigError("quantile targets must be strictly increasing");
    }
  }
  rise_.reserve(targets_.size());
  fall_.reserve(targets_.size());
  for (double a : targets_) {
    rise_.push_back(lambda_ * a);
    fall_.push_back(lambda_ * (1.0 - a));
    fixed_rise_.push_back(to_fixed(rise_.back()));
    fixed_fall_.push_back(to_fixed(fall_.back()));
  }
}

QuantileGrid QuantileGrid::evenly_spaced(std::size_t count, double lambda) {
  return QuantileGrid(evenly_spaced_targets(count), lambda);
}

}  // namespace qhtree
