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

#include "qhtree/gaussian_stats.hpp"

#include <cmath>
#include <numbers>

namespace qhtree {

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

void GaussianStats::update(double x, double weight) {
  if (!initialized_) {
    weight_sum_ = weight;
    variance_sum_ = 0.0;
    mean_ = x;
    initialized_ = true;
    return;
  }
  weight_sum_ += weight;
  const double prior = mean_;
  mean_ += (x - prior) / weight_sum_;
  variance_sum_ += (x - prior) * (x - mean_);
}

std::optional<double> GaussianStats::variance() const {
  if (!initialized_ || weight_sum_ <= 1.0) return std::nullopt;
  return variance_sum_ / (weight_sum_ - 1.0);
}

double GaussianStats::cdf(double pt) const {
  const std::optional<double> v = variance();
  if (!v || *v <= 0.0) return pt < mean_ ? 0.0 : 1.0;
  return normal_cdf((pt - mean_) / std::sqrt(*v));
}

}  // namespace qhtree
