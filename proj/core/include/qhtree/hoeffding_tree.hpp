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

#ifndef QHTREE_HOEFFDING_TREE_HPP_
#define QHTREE_HOEFFDING_TREE_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qhtree/gaussian_stats.hpp"
#include "qhtree/leaf_stats.hpp"
#include "qhtree/quantile_sketch.hpp"
#include "qhtree/schema.hpp"
#include "qhtree/split_eval.hpp"
#include "qhtree/tree_config.hpp"

namespace qhtree {

using NodeId = std::uint32_t;
using ElementId = std::uint32_t;
inline constexpr std::int32_t kFrozenElement = -1;

struct InternalNode {
  std::uint32_t attribute = 0;
  // Numeric: value <= threshold goes left. Categorical: value == code goes left.
  double threshold = 0.0;
  bool categorical = false;
  NodeId left = 0;
  NodeId right = 0;
  std::uint32_t depth = 0;
};

struct LeafNode {
  // Pool element holding the leaf's statistics, or kFrozenElement.
  std::int32_t element = kFrozenElement;
  std::uint32_t cached_majority = 0;
  std::uint32_t depth = 0;
  // Class counts of a frozen leaf; empty while the leaf owns an element.
  std::vector<std::uint64_t> frozen_counts;

  bool frozen() const { return element == kFrozenElement; }
};

using TreeNode = std::variant<InternalNode, LeafNode>;

struct SplitEvent {
  std::uint64_t sample_index = 0;
  NodeId leaf = 0;
  std::uint32_t depth = 0;
  SplitCandidate best;
  double second_gain = 0.0;
  double epsilon = 0.0;
  SplitReason reason = SplitReason::kNotTaken;
  // False when a resource or depth cap froze the leaf instead.
  bool applied = false;
};

struct TreeStats {
  std::uint64_t samples_trained = 0;
  std::uint64_t split_trials = 0;
  std::uint64_t splits_taken = 0;
  std::uint64_t frozen_leaves = 0;
  std::uint64_t leaf_count = 0;
  std::uint64_t internal_count = 0;
  std::uint32_t depth = 0;
  std::uint64_t free_elements = 0;
  std::uint64_t saturations = 0;
};

// Fixed-size pool of leaf elements. Ids are dense; the free list hands out
// the lowest id first on a fresh pool. Elements are built on first use.
template <NumericEstimator Est>
class ElementPool {
 public:
  using Params = typename Est::Params;

  ElementPool() = default;
  ElementPool(std::shared_ptr<const LeafLayout> layout, std::uint32_t capacity);

  ElementId allocate(NodeId leaf, const Params& params);
  void release(ElementId id);

  LeafElement<Est>& at(ElementId id) { return *elements_.at(id); }
  const LeafElement<Est>& at(ElementId id) const { return *elements_.at(id); }

  std::uint32_t capacity() const { return static_cast<std::uint32_t>(owner_.size()); }
  std::uint32_t free_count() const { return static_cast<std::uint32_t>(free_.size()); }
  std::uint32_t allocated_count() const { return capacity() - free_count(); }
  // Node-element table: owning leaf of each element, or -1 when free.
  std::span<const std::int64_t> owners() const { return owner_; }

  void write(detail::BinaryWriter& w) const;
  void read(detail::BinaryReader& r, const Params& params);

 private:
  std::shared_ptr<const LeafLayout> layout_;
  std::vector<std::optional<LeafElement<Est>>> elements_;
  std::vector<ElementId> free_;
  std::vector<std::int64_t> owner_;
  std::uint64_t next_generation_ = 1;
};

// Hoeffding tree over one numeric estimator type.
template <NumericEstimator Est>
class BasicHoeffdingTree {
 public:
  using Params = typename Est::Params;

  BasicHoeffdingTree(DatasetSchema schema, TreeConfig config);

  NodeId sort_to_leaf(const Sample& s) const;
  std::optional<SplitEvent> train_one(const Sample& s);
  std::uint32_t predict(const Sample& s) const;

  // Turns `leaf` into an internal node on decision.best, or freezes it when
  // the pool, leaf cap or depth cap forbids growth.
  SplitEvent apply_split(NodeId leaf, const SplitDecision& decision);

  const TreeNode& node(NodeId id) const { return nodes_.at(id); }
  std::size_t node_count() const { return nodes_.size(); }
  const ElementPool<Est>& pool() const { return pool_; }
  const LeafElement<Est>* element_of(NodeId leaf) const;
  const DatasetSchema& schema() const { return schema_; }
  const TreeConfig& config() const { return config_; }
  const Params& params() const { return params_; }

  TreeStats stats() const;
  // Empty when every structural invariant holds, otherwise a description.
  std::string check_invariants() const;

  std::vector<std::uint8_t> snapshot() const;
  static BasicHoeffdingTree restore(std::span<const std::uint8_t> bytes);

 private:
  double route_value(const Sample& s, std::uint32_t attribute) const;
  const Sample& prepare(const Sample& s);

  DatasetSchema schema_;
  TreeConfig config_;
  Params params_;
  std::shared_ptr<const LeafLayout> layout_;
  std::vector<TreeNode> nodes_;
  ElementPool<Est> pool_;
  Sample scratch_;
  std::uint64_t samples_trained_ = 0;
  std::uint64_t split_trials_ = 0;
  std::uint64_t splits_taken_ = 0;
  std::uint64_t frozen_events_ = 0;
  std::uint64_t saturations_ = 0;
};

using QuantileTree = BasicHoeffdingTree<QuantileSet<double>>;
using FixedQuantileTree = BasicHoeffdingTree<QuantileSet<Fixed30>>;
using GaussianTree = BasicHoeffdingTree<GaussianStats>;

extern template class ElementPool<QuantileSet<double>>;
extern template class ElementPool<QuantileSet<Fixed30>>;
extern template class ElementPool<GaussianStats>;
extern template class BasicHoeffdingTree<QuantileSet<double>>;
extern template class BasicHoeffdingTree<QuantileSet<Fixed30>>;
extern template class BasicHoeffdingTree<GaussianStats>;

// Picks the estimator from config.method and config.numeric_backend. The
// Gaussian method with the fixed backend runs on Q2.30-quantized inputs.
class HoeffdingTree {
 public:
  using Variant = std::variant<QuantileTree, FixedQuantileTree, GaussianTree>;

  HoeffdingTree(DatasetSchema schema, TreeConfig config);

  std::optional<SplitEvent> train_one(const Sample& s) {
    return std::visit([&](auto& t) { return t.train_one(s); }, impl_);
  }
  std::uint32_t predict(const Sample& s) const {
    return std::visit([&](const auto& t) { return t.predict(s); }, impl_);
  }
  NodeId sort_to_leaf(const Sample& s) const {
    return std::visit([&](const auto& t) { return t.sort_to_leaf(s); }, impl_);
  }
  TreeStats stats() const {
    return std::visit([](const auto& t) { return t.stats(); }, impl_);
  }
  std::string check_invariants() const {
    return std::visit([](const auto& t) { return t.check_invariants(); }, impl_);
  }
  const TreeConfig& config() const {
    return std::visit([](const auto& t) -> const TreeConfig& { return t.config(); }, impl_);
  }
  const DatasetSchema& schema() const {
    return std::visit([](const auto& t) -> const DatasetSchema& { return t.schema(); },
                      impl_);
  }

  std::vector<std::uint8_t> snapshot() const {
    return std::visit([](const auto& t) { return t.snapshot(); }, impl_);
  }
  static HoeffdingTree restore(std::span<const std::uint8_t> bytes);

  Variant& variant() { return impl_; }
  const Variant& variant() const { return impl_; }

 private:
  explicit HoeffdingTree(Variant impl) : impl_(std::move(impl)) {}
  Variant impl_;
};

}  // namespace qhtree

#endif  // QHTREE_HOEFFDING_TREE_HPP_
