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

#ifndef QHTREE_SPLIT_EVAL_HPP_
#define QHTREE_SPLIT_EVAL_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qhtree/fixed_point.hpp"
#include "qhtree/leaf_stats.hpp"
#include "qhtree/tree_config.hpp"

namespace qhtree {

// 1 - sum_j (c_j / S)^2; zero for an empty count vector.
double gini(std::span<const double> counts);

// sum_j left_j^2 / |S_L| + sum_j right_j^2 / |S_R|; an empty side adds 0.
double split_quality(std::span<const double> left, std::span<const double> right);
inline double split_quality(const ClassDistPair& pair) {
  return split_quality(pair.left, pair.right);
}

// Impurity reduction of a partition, in its weighted-gini form.
double gini_reduction(std::span<const double> total, const ClassDistPair& pair);

// The same reduction from a precomputed quality:
// quality / |S| + gini(S) - 1.
double gain_from_quality(double quality, double total_count, double total_gini);

// sqrt(R^2 ln(1/delta) / (2n)).
double hoeffding_bound(double range, double delta, std::uint64_t n);

struct SplitCandidate {
  std::size_t attribute = 0;
  // Threshold for numeric attributes, value code for categorical ones.
  double split_point = 0.0;
  bool categorical = false;
  double quality = 0.0;
  double full_gain = 0.0;
};

enum class SplitReason : std::uint8_t {
  kNotTaken = 0,
  kGainExceedsBound = 1,
  kTieBelowTau = 2,
};
std::string_view to_string(SplitReason r);

struct SplitDecision {
  bool taken = false;
  SplitReason reason = SplitReason::kNotTaken;
  std::optional<SplitCandidate> best;
  std::optional<SplitCandidate> second_best;
  double epsilon = 0.0;
};

// Split rule on the two best gains: take when the gap beats epsilon, or when
// epsilon itself has dropped below tau. A missing runner-up counts as gain 0.
SplitReason judge_split(double best_gain, double second_gain, double epsilon,
                        double tau);

namespace detail {

// Keeps `c` in `slot` when it scores strictly higher. Callers visit
// candidates in (attribute, split point) order, so ties stay with the
// earlier one.
inline void keep_better(std::optional<SplitCandidate>& slot, const SplitCandidate& c) {
  if (!slot || c.quality > slot->quality) slot = c;
}

}  // namespace detail

// One split trial over every attribute of the element.
template <NumericEstimator Est>
SplitDecision evaluate_split_trial(const LeafElement<Est>& el, const TreeConfig& config) {
  SplitDecision decision;
  const std::uint64_t n = el.sample_count();
  if (n == 0) return decision;
  decision.epsilon = hoeffding_bound(config.hoeffding_range, config.delta, n);

  const auto counts = el.class_counts();
  std::vector<double> total(counts.begin(), counts.end());
  const double total_count = static_cast<double>(n);
  const double total_gini = gini(total);
  const bool fixed = config.numeric_backend == NumericBackend::kFixed;

  std::vector<SplitCandidate> per_attribute;
  const LeafLayout& layout = el.layout();
  for (std::size_t a = 0; a < layout.attribute_count(); ++a) {
    std::optional<SplitCandidate> best;
    const AttributeSlot& slot = layout.slot(a);
    if (slot.kind == AttributeKind::kNumeric) {
      for (double pt : el.split_points(a, config.split_points)) {
        // The fixed pipeline compares on the Q2.30 grid; store what it sees.
        if (fixed) pt = quantize(pt);
        const ClassDistPair pair = el.deduce_partitions(a, pt);
        detail::keep_better(best, SplitCandidate{a, pt, false, split_quality(pair), 0.0});
      }
    } else {
      for (std::uint32_t v = 0; v < slot.cardinality; ++v) {
        const ClassDistPair pair = el.categorical_partitions(a, v);
        detail::keep_better(best, SplitCandidate{a, static_cast<double>(v), true,
                                                 split_quality(pair), 0.0});
      }
    }
    if (best) {
      best->full_gain = gain_from_quality(best->quality, total_count, total_gini);
      per_attribute.push_back(*best);
    }
  }
  if (per_attribute.empty()) return decision;

  for (const SplitCandidate& c : per_attribute) {
    if (!decision.best || c.quality > decision.best->quality) {
      if (decision.best) detail::keep_better(decision.second_best, *decision.best);
      decision.best = c;
    } else {
      detail::keep_better(decision.second_best, c);
    }
  }

  const double g_best = decision.best->full_gain;
  // Nothing to gain (pure leaf or no informative partition): splitting would
  // only spend pool elements.
  if (!(g_best > 1e-12)) return decision;
  const double g_second = decision.second_best ? decision.second_best->full_gain : 0.0;
  decision.reason = judge_split(g_best, g_second, decision.epsilon, config.tau);
  decision.taken = decision.reason != SplitReason::kNotTaken;
  return decision;
}

}  // namespace qhtree

#endif  // QHTREE_SPLIT_EVAL_HPP_
