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

#ifndef QHTREE_GAUSSIAN_STATS_HPP_
#define QHTREE_GAUSSIAN_STATS_HPP_

#include <cstdint>
#include <optional>

#include "qhtree/binary_io.hpp"

namespace qhtree {

// Standard normal CDF.
double normal_cdf(double z);

struct GaussianParams {};

// Incremental Gaussian approximation (running mean plus variance sum), used
// as the baseline numeric estimator.
class GaussianStats {
 public:
  using Params = GaussianParams;

  GaussianStats() = default;
  explicit GaussianStats(const GaussianParams&) {}

  void reset() { *this = GaussianStats(); }

  // First call seeds mean = x, weight_sum = weight, variance_sum = 0.
  void update(double x, double weight = 1.0);

  double mean() const { return mean_; }
  double weight_sum() const { return weight_sum_; }
  double variance_sum() const { return variance_sum_; }
  bool initialized() const { return initialized_; }
  // variance_sum / (weight_sum - 1); empty while weight_sum <= 1.
  std::optional<double> variance() const;

  // Phi((pt - mean) / sd). Degenerate spread gives a step at the mean.
  double cdf(double pt) const;

  std::uint64_t observe(double x, const Params&) {
    update(x);
    return 0;
  }
  double left_fraction(double pt) const { return initialized_ ? cdf(pt) : 0.0; }

  void write(detail::BinaryWriter& w) const {
    w.put(weight_sum_);
    w.put(mean_);
    w.put(variance_sum_);
    w.put<std::uint8_t>(initialized_ ? 1 : 0);
  }
  void read(detail::BinaryReader& r) {
    weight_sum_ = r.get<double>();
    mean_ = r.get<double>();
    variance_sum_ = r.get<double>();
    initialized_ = r.get<std::uint8_t>() != 0;
  }

  friend bool operator==(const GaussianStats&, const GaussianStats&) = default;

 private:
  double weight_sum_ = 0.0;
  double mean_ = 0.0;
  double variance_sum_ = 0.0;
  bool initialized_ = false;
};

}  // namespace qhtree

#endif  // QHTREE_GAUSSIAN_STATS_HPP_
