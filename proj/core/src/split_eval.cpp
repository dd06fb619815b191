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

#include "qhtree/split_eval.hpp"

#include <cmath>
#include <numeric>

#include "qhtree/error.hpp"

namespace qhtree {

namespace {

double sum_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

double sum_sq(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

double gini(std::span<const double> counts) {
  const double total = sum_of(counts);
  if (total <= 0.0) return 0.0;
  double s = 0.0;
  for (double c : counts) {
    const double p = c / total;
    s += p * p;
  }
  return 1.0 - s;
}

double split_quality(std::span<const double> left, std::span<const double> right) {
  const double nl = sum_of(left);
  const double nr = sum_of(right);
  double q = 0.0;
  if (nl > 0.0) q += sum_sq(left) / nl;
  if (nr > 0.0) q += sum_sq(right) / nr;
  return q;
}

double gini_reduction(std::span<const double> total, const ClassDistPair& pair) {
  const double n = sum_of(total);
  if (n <= 0.0) return 0.0;
  const double nl = sum_of(pair.left);
  const double nr = sum_of(pair.right);
  return gini(total) - nl / n * gini(pair.left) - nr / n * gini(pair.right);
}

double gain_from_quality(double quality, double total_count, double total_gini) {
  if (total_count <= 0.0) return 0.0;
  return quality / total_count + total_gini - 1.0;
}

double hoeffding_bound(double range, double delta, std::uint64_t n) {
  if (!(range > 0.0) || !(delta > 0.0 && delta < 1.0) || n == 0) {
    throw Error("hoeffding_bound: need range > 0, 0 < delta < 1, n >= 1");
  }
  return std::sqrt(range * range * std::log(1.0 / delta) /
                   (2.0 * static_cast<double>(n)));
}

std::string_view to_string(SplitReason r) {
  switch (r) {
    case SplitReason::kGainExceedsBound:
      return "gain_exceeds_bound";
    case SplitReason::kTieBelowTau:
      return "tie_below_tau";
    case SplitReason::kNotTaken:
      break;
  }
  return "not_taken";
}

SplitReason judge_split(double best_gain, double second_gain, double epsilon,
                        double tau) {
  if (best_gain - second_gain > epsilon) return SplitReason::kGainExceedsBound;
  if (epsilon < tau) return SplitReason::kTieBelowTau;
  return SplitReason::kNotTaken;
}

}  // namespace qhtree
