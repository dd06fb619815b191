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

#ifndef QHTREE_LEAF_STATS_HPP_
#define QHTREE_LEAF_STATS_HPP_

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <span>
#include <vector>

#include "qhtree/binary_io.hpp"
#include "qhtree/error.hpp"
#include "qhtree/schema.hpp"

namespace qhtree {

// Per-(attribute, class) distribution estimator kept for numeric attributes:
// QuantileSet<double>, QuantileSet<Fixed30> or GaussianStats.
template <typename E>
concept NumericEstimator =
    requires(E e, const E ce, double x, const typename E::Params& params,
             detail::BinaryWriter& w, detail::BinaryReader& r) {
      E(params);
      { e.observe(x, params) } -> std::convertible_to<std::uint64_t>;
      { ce.left_fraction(x) } -> std::convertible_to<double>;
      e.reset();
      ce.write(w);
      e.read(r);
    };

// Where an attribute's statistics live inside a leaf element.
struct AttributeSlot {
  AttributeKind kind = AttributeKind::kNumeric;
  // Numeric: index among numeric attributes. Categorical: first histogram cell.
  std::uint32_t offset = 0;
  std::uint32_t cardinality = 0;
};

class LeafLayout {
 public:
  explicit LeafLayout(const DatasetSchema& schema) : class_count_(schema.class_count) {
    std::uint32_t numeric = 0;
    std::uint32_t cells = 0;
    for (const AttributeSpec& a : schema.attributes) {
      AttributeSlot slot;
      slot.kind = a.kind;
      if (a.is_numeric()) {
        slot.offset = numeric++;
      } else {
        slot.offset = cells;
        slot.cardinality = a.cardinality;
        cells += a.cardinality * class_count_;
      }
      slots_.push_back(slot);
    }
    numeric_count_ = numeric;
    histogram_cells_ = cells;
  }

  std::size_t attribute_count() const { return slots_.size(); }
  std::uint32_t class_count() const { return class_count_; }
  std::uint32_t numeric_count() const { return numeric_count_; }
  std::uint32_t histogram_cells() const { return histogram_cells_; }
  const AttributeSlot& slot(std::size_t attr) const { return slots_.at(attr); }

 private:
  std::vector<AttributeSlot> slots_;
  std::uint32_t class_count_ = 0;
  std::uint32_t numeric_count_ = 0;
  std::uint32_t histogram_cells_ = 0;
};

// Per-class counts on both sides of a candidate split. By construction
// left[j] + right[j] equals the class count at the leaf.
struct ClassDistPair {
  std::vector<double> left;
  std::vector<double> right;
  double split_point = 0.0;
};

// Training statistics for one active leaf: class counts, per numeric
// attribute the observed range and one estimator per class, per categorical
// attribute a value-by-class histogram. Elements are recycled through the
// tree's pool; `generation` tells incarnations apart.
template <NumericEstimator Est>
class LeafElement {
 public:
  using Params = typename Est::Params;

  LeafElement(std::shared_ptr<const LeafLayout> layout, const Params& params)
      : layout_(std::move(layout)),
        class_counts_(layout_->class_count(), 0),
        min_(layout_->numeric_count()),
        max_(layout_->numeric_count()),
        estimators_(std::size_t{layout_->numeric_count()} * layout_->class_count(),
                    Est(params)),
        histogram_(layout_->histogram_cells(), 0) {
    reset(0);
  }

  // Fresh statistics for a new incarnation; storage is kept.
  void reset(std::uint64_t generation) {
    generation_ = generation;
    n_ = 0;
    std::fill(class_counts_.begin(), class_counts_.end(), 0);
    std::fill(min_.begin(), min_.end(), std::numeric_limits<double>::infinity());
    std::fill(max_.begin(), max_.end(), -std::numeric_limits<double>::infinity());
    for (Est& e : estimators_) e.reset();
    std::fill(histogram_.begin(), histogram_.end(), 0);
  }

  // Only the estimators of the sample's own class are updated. Returns the
  // number of fixed-point saturation events.
  std::uint64_t observe(const Sample& s, const Params& params) {
    const std::uint32_t c = layout_->class_count();
    ++n_;
    ++class_counts_[s.label];
    std::uint64_t saturations = 0;
    for (std::size_t i = 0; i < layout_->attribute_count(); ++i) {
      const AttributeSlot& slot = layout_->slot(i);
      const double v = s.values[i];
      if (slot.kind == AttributeKind::kNumeric) {
        const std::uint32_t a = slot.offset;
        if (v > max_[a]) max_[a] = v;
        if (v < min_[a]) min_[a] = v;
        saturations += estimators_[std::size_t{a} * c + s.label].observe(v, params);
      } else {
        const auto code = static_cast<std::uint32_t>(v);
        ++histogram_[slot.offset + std::size_t{code} * c + s.label];
      }
    }
    return saturations;
  }

  // Evenly spaced candidate thresholds strictly inside the observed range;
  // empty when the attribute has been constant.
  std::vector<double> split_points(std::size_t attr, std::uint32_t count) const {
    const AttributeSlot& slot = numeric_slot(attr);
    std::vector<double> points;
    const double lo = min_[slot.offset];
    const double hi = max_[slot.offset];
    if (n_ < 2 || !(hi > lo)) return points;
    points.reserve(count);
    for (std::uint32_t p = 1; p <= count; ++p) {
      points.push_back((hi - lo) / static_cast<double>(count + 1) * p + lo);
    }
    return points;
  }

  ClassDistPair deduce_partitions(std::size_t attr, double pt) const {
    const AttributeSlot& slot = numeric_slot(attr);
    const std::uint32_t c = layout_->class_count();
    ClassDistPair pair{std::vector<double>(c, 0.0), std::vector<double>(c, 0.0), pt};
    for (std::uint32_t j = 0; j < c; ++j) {
      const auto total = static_cast<double>(class_counts_[j]);
      if (class_counts_[j] == 0) continue;
      const double left =
          estimators_[std::size_t{slot.offset} * c + j].left_fraction(pt) * total;
      pair.left[j] = left;
      pair.right[j] = total - left;
    }
    return pair;
  }

  // One-vs-rest split: samples whose value equals `code` go left.
  ClassDistPair categorical_partitions(std::size_t attr, std::uint32_t code) const {
    const AttributeSlot& slot = layout_->slot(attr);
    if (slot.kind != AttributeKind::kCategorical || code >= slot.cardinality) {
      throw Error("categorical_partitions: bad attribute or code");
    }
    const std::uint32_t c = layout_->class_count();
    ClassDistPair pair{std::vector<double>(c, 0.0), std::vector<double>(c, 0.0),
                       static_cast<double>(code)};
    for (std::uint32_t j = 0; j < c; ++j) {
      const std::uint64_t left = histogram_[slot.offset + std::size_t{code} * c + j];
      pair.left[j] = static_cast<double>(left);
      pair.right[j] = static_cast<double>(class_counts_[j] - left);
    }
    return pair;
  }

  // argmax of the class counts, lowest index on ties; `fallback` when empty.
  std::uint32_t majority_class(std::uint32_t fallback) const {
    if (n_ == 0) return fallback;
    const auto it = std::max_element(class_counts_.begin(), class_counts_.end());
    return static_cast<std::uint32_t>(it - class_counts_.begin());
  }

  std::uint64_t generation() const { return generation_; }
  std::uint64_t sample_count() const { return n_; }
  std::span<const std::uint64_t> class_counts() const { return class_counts_; }
  const LeafLayout& layout() const { return *layout_; }
  double min_value(std::size_t attr) const { return min_[numeric_slot(attr).offset]; }
  double max_value(std::size_t attr) const { return max_[numeric_slot(attr).offset]; }
  const Est& estimator(std::size_t attr, std::uint32_t cls) const {
    return estimators_[std::size_t{numeric_slot(attr).offset} *
                           layout_->class_count() + cls];
  }
  // Direct access for restoring or seeding estimator state.
  Est& mutable_estimator(std::size_t attr, std::uint32_t cls) {
    return estimators_[std::size_t{numeric_slot(attr).offset} *
                           layout_->class_count() + cls];
  }
  std::uint64_t histogram(std::size_t attr, std::uint32_t code, std::uint32_t cls) const {
    const AttributeSlot& slot = layout_->slot(attr);
    return histogram_[slot.offset + std::size_t{code} * layout_->class_count() + cls];
  }

  // Count conservation and range ordering.
  bool invariants_hold() const {
    const std::uint64_t sum =
        std::accumulate(class_counts_.begin(), class_counts_.end(), std::uint64_t{0});
    if (sum != n_) return false;
    if (n_ > 0) {
      for (std::size_t a = 0; a < min_.size(); ++a) {
        if (!(min_[a] <= max_[a])) return false;
      }
    }
    const std::uint32_t c = layout_->class_count();
    for (std::size_t i = 0; i < layout_->attribute_count(); ++i) {
      const AttributeSlot& slot = layout_->slot(i);
      if (slot.kind != AttributeKind::kCategorical) continue;
      for (std::uint32_t j = 0; j < c; ++j) {
        std::uint64_t per_class = 0;
        for (std::uint32_t v = 0; v < slot.cardinality; ++v) {
          per_class += histogram_[slot.offset + std::size_t{v} * c + j];
        }
        if (per_class != class_counts_[j]) return false;
      }
    }
    return true;
  }

  void write(detail::BinaryWriter& w) const {
    w.put(generation_);
    w.put(n_);
    w.put_span(std::span<const std::uint64_t>(class_counts_));
    w.put_span(std::span<const double>(min_));
    w.put_span(std::span<const double>(max_));
    for (const Est& e : estimators_) e.write(w);
    w.put_span(std::span<const std::uint64_t>(histogram_));
  }

  void read(detail::BinaryReader& r) {
    generation_ = r.get<std::uint64_t>();
    n_ = r.get<std::uint64_t>();
    r.get_vector(class_counts_);
    r.get_vector(min_);
    r.get_vector(max_);
    for (Est& e : estimators_) e.read(r);
    r.get_vector(histogram_);
    if (class_counts_.size() != layout_->class_count() ||
        min_.size() != layout_->numeric_count() ||
        max_.size() != layout_->numeric_count() ||
        histogram_.size() != layout_->histogram_cells()) {
      throw SnapshotError("leaf element does not match the schema layout");
    }
  }

  friend bool operator==(const LeafElement& a, const LeafElement& b) {
    return a.generation_ == b.generation_ && a.n_ == b.n_ &&
           a.class_counts_ == b.class_counts_ && a.min_ == b.min_ &&
           a.max_ == b.max_ && a.estimators_ == b.estimators_ &&
           a.histogram_ == b.histogram_;
  }

 private:
  const AttributeSlot& numeric_slot(std::size_t attr) const {
    const AttributeSlot& slot = layout_->slot(attr);
    if (slot.kind != AttributeKind::kNumeric) {
      throw Error("attribute " + std::to_string(attr) + " is not numeric");
    }
    return slot;
  }

  std::shared_ptr<const LeafLayout> layout_;
  std::uint64_t generation_ = 0;
  std::uint64_t n_ = 0;
  std::vector<std::uint64_t> class_counts_;
  std::vector<double> min_;
  std::vector<double> max_;
  std::vector<Est> estimators_;
  std::vector<std::uint64_t> histogram_;
};

}  // namespace qhtree

#endif  // QHTREE_LEAF_STATS_HPP_
