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

#include "qhtree/hoeffding_tree.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <type_traits>

#include "qhtree/binary_io.hpp"
#include "qhtree/error.hpp"
#include "qhtree/fixed_point.hpp"

namespace qhtree {

namespace {

constexpr std::array<char, 4> kMagic = {'Q', 'H', 'T', 'S'};
constexpr std::uint32_t kSnapshotVersion = 1;

enum class EstimatorTag : std::uint8_t { kQuantile = 0, kFixedQuantile = 1, kGaussian = 2 };

template <typename Est>
constexpr EstimatorTag tag_of() {
  if constexpr (std::is_same_v<Est, QuantileSet<double>>) {
    return EstimatorTag::kQuantile;
  } else if constexpr (std::is_same_v<Est, QuantileSet<Fixed30>>) {
    return EstimatorTag::kFixedQuantile;
  } else {
    return EstimatorTag::kGaussian;
  }
}

template <typename Est>
typename Est::Params make_params(const TreeConfig& config) {
  if constexpr (std::is_same_v<typename Est::Params, QuantileGrid>) {
    return QuantileGrid::evenly_spaced(config.quantile_count, config.lambda);
  } else {
    return typename Est::Params{};
  }
}

std::uint64_t fnv1a(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

void write_config(detail::BinaryWriter& w, const TreeConfig& c) {
  w.put(c.delta);
  w.put(c.tau);
  w.put(c.n_min);
  w.put(c.split_points);
  w.put(c.quantile_count);
  w.put(c.lambda);
  w.put(c.max_leaves);
  w.put(c.max_depth);
  w.put(static_cast<std::uint8_t>(c.method));
  w.put(static_cast<std::uint8_t>(c.numeric_backend));
  w.put(c.hoeffding_range);
}

TreeConfig read_config(detail::BinaryReader& r) {
  TreeConfig c;
  c.delta = r.get<double>();
  c.tau = r.get<double>();
  c.n_min = r.get<std::uint32_t>();
  c.split_points = r.get<std::uint32_t>();
  c.quantile_count = r.get<std::uint32_t>();
  c.lambda = r.get<double>();
  c.max_leaves = r.get<std::uint32_t>();
  c.max_depth = r.get<std::uint32_t>();
  const auto method = r.get<std::uint8_t>();
  const auto backend = r.get<std::uint8_t>();
  if (method > 1 || backend > 1) throw SnapshotError("snapshot: bad method or backend");
  c.method = static_cast<Method>(method);
  c.numeric_backend = static_cast<NumericBackend>(backend);
  c.hoeffding_range = r.get<double>();
  try {
    c.validate();
  } catch (const ConfigError& e) {
    throw SnapshotError(std::string("snapshot: ") + e.what());
  }
  return c;
}

// Envelope: magic, version, estimator tag, payload length, payload, FNV-1a
// of the payload.
std::vector<std::uint8_t> seal(EstimatorTag tag, const std::vector<std::uint8_t>& payload) {
  detail::BinaryWriter w;
  for (char c : kMagic) w.put(c);
  w.put(kSnapshotVersion);
  w.put(static_cast<std::uint8_t>(tag));
  w.put<std::uint64_t>(payload.size());
  auto& out = w.bytes();
  out.insert(out.end(), payload.begin(), payload.end());
  w.put(fnv1a(payload));
  return std::move(out);
}

struct Envelope {
  EstimatorTag tag;
  std::span<const std::uint8_t> payload;
};

Envelope open_envelope(std::span<const std::uint8_t> bytes) {
  detail::BinaryReader r(bytes);
  for (char c : kMagic) {
    if (r.get<char>() != c) throw SnapshotError("snapshot: bad magic");
  }
  const auto version = r.get<std::uint32_t>();
  if (version != kSnapshotVersion) {
    throw SnapshotError("snapshot: unsupported version " + std::to_string(version));
  }
  const auto tag = r.get<std::uint8_t>();
  if (tag > 2) throw SnapshotError("snapshot: unknown estimator");
  const auto size = r.get<std::uint64_t>();
  if (size + sizeof(std::uint64_t) != r.remaining()) {
    throw SnapshotError("snapshot: payload length mismatch");
  }
  const std::size_t start = bytes.size() - r.remaining();
  const auto payload = bytes.subspan(start, size);
  std::uint64_t stored;
  std::memcpy(&stored, bytes.data() + start + size, sizeof stored);
  if (stored != fnv1a(payload)) throw SnapshotError("snapshot: checksum mismatch");
  return {static_cast<EstimatorTag>(tag), payload};
}

std::uint32_t argmax_lowest(std::span<const std::uint64_t> counts, std::uint32_t fallback) {
  std::uint64_t best = 0;
  std::uint32_t arg = fallback;
  for (std::uint32_t j = 0; j < counts.size(); ++j) {
    if (counts[j] > best) {
      best = counts[j];
      arg = j;
    }
  }
  return arg;
}

}  // namespace

// ---------------------------------------------------------------------------
// ElementPool

template <NumericEstimator Est>
ElementPool<Est>::ElementPool(std::shared_ptr<const LeafLayout> layout,
                              std::uint32_t capacity)
    : layout_(std::move(layout)), elements_(capacity), owner_(capacity, -1) {
  free_.reserve(capacity);
  for (std::uint32_t i = capacity; i-- > 0;) free_.push_back(i);
}

template <NumericEstimator Est>
ElementId ElementPool<Est>::allocate(NodeId leaf, const Params& params) {
  if (free_.empty()) throw Error("element pool exhausted");
  const ElementId id = free_.back();
  free_.pop_back();
  auto& slot = elements_[id];
  if (!slot) slot.emplace(layout_, params);
  slot->reset(next_generation_++);
  owner_[id] = leaf;
  return id;
}

template <NumericEstimator Est>
void ElementPool<Est>::release(ElementId id) {
  if (owner_.at(id) < 0) throw Error("releasing a free element");
  owner_[id] = -1;
  free_.push_back(id);
}

template <NumericEstimator Est>
void ElementPool<Est>::write(detail::BinaryWriter& w) const {
  w.put<std::uint32_t>(capacity());
  w.put(next_generation_);
  w.put_span(std::span<const ElementId>(free_));
  w.put_span(std::span<const std::int64_t>(owner_));
  for (const auto& slot : elements_) {
    w.put<std::uint8_t>(slot ? 1 : 0);
    if (slot) slot->write(w);
  }
}

template <NumericEstimator Est>
void ElementPool<Est>::read(detail::BinaryReader& r, const Params& params) {
  const auto capacity = r.get<std::uint32_t>();
  next_generation_ = r.get<std::uint64_t>();
  r.get_vector(free_);
  r.get_vector(owner_);
  if (owner_.size() != capacity || free_.size() > capacity) {
    throw SnapshotError("snapshot: pool tables do not match capacity");
  }
  elements_.assign(capacity, std::nullopt);
  for (auto& slot : elements_) {
    const auto present = r.get<std::uint8_t>();
    if (present == 0) continue;
    slot.emplace(layout_, params);
    slot->read(r);
  }
  for (ElementId id : free_) {
    if (id >= capacity || owner_[id] != -1) throw SnapshotError("snapshot: bad free list");
  }
}

// ---------------------------------------------------------------------------
// BasicHoeffdingTree

template <NumericEstimator Est>
BasicHoeffdingTree<Est>::BasicHoeffdingTree(DatasetSchema schema, TreeConfig config)
    : schema_(std::move(schema)), config_(config), params_(make_params<Est>(config_)) {
  schema_.validate();
  config_.validate();
  layout_ = std::make_shared<const LeafLayout>(schema_);
  pool_ = ElementPool<Est>(layout_, config_.max_leaves);
  LeafNode root;
  root.element = static_cast<std::int32_t>(pool_.allocate(0, params_));
  nodes_.emplace_back(std::move(root));
  scratch_.values.resize(schema_.attribute_count());
}

template <NumericEstimator Est>
double BasicHoeffdingTree<Est>::route_value(const Sample& s, std::uint32_t attribute) const {
  const double v = s.values[attribute];
  if (config_.numeric_backend == NumericBackend::kFixed &&
      schema_.attributes[attribute].is_numeric()) {
    return quantize(v);
  }
  return v;
}

template <NumericEstimator Est>
NodeId BasicHoeffdingTree<Est>::sort_to_leaf(const Sample& s) const {
  NodeId id = 0;
  while (const auto* in = std::get_if<InternalNode>(&nodes_[id])) {
    const double v = route_value(s, in->attribute);
    const bool left = in->categorical ? v == in->threshold : v <= in->threshold;
    id = left ? in->left : in->right;
  }
  return id;
}

// In fixed mode the learner sees Q2.30-quantized numeric values.
template <NumericEstimator Est>
const Sample& BasicHoeffdingTree<Est>::prepare(const Sample& s) {
  if (config_.numeric_backend != NumericBackend::kFixed) return s;
  scratch_.label = s.label;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    scratch_.values[i] = schema_.attributes[i].is_numeric()
                             ? to_real(to_fixed(s.values[i], saturations_))
                             : s.values[i];
  }
  return scratch_;
}

template <NumericEstimator Est>
std::optional<SplitEvent> BasicHoeffdingTree<Est>::train_one(const Sample& raw) {
  const Sample& s = prepare(raw);
  const NodeId id = sort_to_leaf(s);
  ++samples_trained_;
  auto& leaf = std::get<LeafNode>(nodes_[id]);
  if (leaf.frozen()) {
    ++leaf.frozen_counts[s.label];
    return std::nullopt;
  }
  auto& el = pool_.at(static_cast<ElementId>(leaf.element));
  saturations_ += el.observe(s, params_);
  if (el.sample_count() % config_.n_min != 0) return std::nullopt;
  ++split_trials_;
  const SplitDecision decision = evaluate_split_trial(el, config_);
  if (!decision.taken) return std::nullopt;
  return apply_split(id, decision);
}

template <NumericEstimator Est>
std::uint32_t BasicHoeffdingTree<Est>::predict(const Sample& s) const {
  const auto& leaf = std::get<LeafNode>(nodes_[sort_to_leaf(s)]);
  if (leaf.frozen()) return argmax_lowest(leaf.frozen_counts, leaf.cached_majority);
  return pool_.at(static_cast<ElementId>(leaf.element)).majority_class(leaf.cached_majority);
}

template <NumericEstimator Est>
SplitEvent BasicHoeffdingTree<Est>::apply_split(NodeId id, const SplitDecision& decision) {
  if (!decision.taken || !decision.best) throw Error("apply_split: decision not taken");
  auto* leaf = std::get_if<LeafNode>(&nodes_.at(id));
  if (leaf == nullptr || leaf->frozen()) throw Error("apply_split: not an active leaf");

  SplitEvent event;
  event.sample_index = samples_trained_;
  event.leaf = id;
  event.depth = leaf->depth;
  event.best = *decision.best;
  event.second_gain = decision.second_best ? decision.second_best->full_gain : 0.0;
  event.epsilon = decision.epsilon;
  event.reason = decision.reason;

  const auto parent_element = static_cast<ElementId>(leaf->element);
  const auto& parent = pool_.at(parent_element);
  const std::uint32_t majority = parent.majority_class(leaf->cached_majority);

  std::uint64_t leaves = 0;
  for (const TreeNode& n : nodes_) leaves += std::holds_alternative<LeafNode>(n) ? 1 : 0;
  const bool exhausted = pool_.free_count() < 2 || leaves + 1 > config_.max_leaves;
  if (exhausted || leaf->depth + 1 > config_.max_depth) {
    const auto counts = parent.class_counts();
    leaf->frozen_counts.assign(counts.begin(), counts.end());
    leaf->cached_majority = majority;
    leaf->element = kFrozenElement;
    pool_.release(parent_element);
    ++frozen_events_;
    return event;
  }

  const std::uint32_t depth = leaf->depth + 1;
  pool_.release(parent_element);
  const auto left_id = static_cast<NodeId>(nodes_.size());
  const NodeId right_id = left_id + 1;
  LeafNode left;
  left.cached_majority = majority;
  left.depth = depth;
  left.element = static_cast<std::int32_t>(pool_.allocate(left_id, params_));
  LeafNode right = left;
  right.element = static_cast<std::int32_t>(pool_.allocate(right_id, params_));

  InternalNode in;
  in.attribute = static_cast<std::uint32_t>(decision.best->attribute);
  in.threshold = decision.best->split_point;
  in.categorical = decision.best->categorical;
  in.left = left_id;
  in.right = right_id;
  in.depth = depth - 1;
  nodes_[id] = in;
  nodes_.emplace_back(std::move(left));
  nodes_.emplace_back(std::move(right));
  ++splits_taken_;
  event.applied = true;
  return event;
}

template <NumericEstimator Est>
const LeafElement<Est>* BasicHoeffdingTree<Est>::element_of(NodeId id) const {
  const auto* leaf = std::get_if<LeafNode>(&nodes_.at(id));
  if (leaf == nullptr || leaf->frozen()) return nullptr;
  return &pool_.at(static_cast<ElementId>(leaf->element));
}

template <NumericEstimator Est>
TreeStats BasicHoeffdingTree<Est>::stats() const {
  TreeStats st;
  st.samples_trained = samples_trained_;
  st.split_trials = split_trials_;
  st.splits_taken = splits_taken_;
  st.saturations = saturations_;
  st.free_elements = pool_.free_count();
  for (const TreeNode& n : nodes_) {
    if (const auto* leaf = std::get_if<LeafNode>(&n)) {
      ++st.leaf_count;
      st.frozen_leaves += leaf->frozen() ? 1 : 0;
      st.depth = std::max(st.depth, leaf->depth);
    } else {
      ++st.internal_count;
    }
  }
  return st;
}

template <NumericEstimator Est>
std::string BasicHoeffdingTree<Est>::check_invariants() const {
  const std::uint32_t classes = schema_.class_count;
  std::uint64_t leaves = 0;
  std::uint64_t active = 0;
  std::vector<int> visits(nodes_.size(), 0);
  std::vector<std::pair<NodeId, std::uint32_t>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [id, depth] = stack.back();
    stack.pop_back();
    if (id >= nodes_.size()) return "child id out of range";
    if (++visits[id] > 1) return "node " + std::to_string(id) + " reachable twice";
    if (depth > config_.max_depth) return "depth exceeds max_depth";
    if (const auto* in = std::get_if<InternalNode>(&nodes_[id])) {
      if (in->depth != depth) return "internal node depth mismatch";
      if (in->attribute >= schema_.attribute_count()) return "split attribute out of range";
      stack.emplace_back(in->left, depth + 1);
      stack.emplace_back(in->right, depth + 1);
      continue;
    }
    const auto& leaf = std::get<LeafNode>(nodes_[id]);
    ++leaves;
    if (leaf.depth != depth) return "leaf depth mismatch";
    if (leaf.cached_majority >= classes) return "cached majority out of range";
    if (leaf.frozen()) {
      if (leaf.frozen_counts.size() != classes) return "frozen leaf without counts";
      continue;
    }
    ++active;
    const auto e = static_cast<ElementId>(leaf.element);
    if (e >= pool_.capacity()) return "element id out of range";
    if (pool_.owners()[e] != static_cast<std::int64_t>(id)) {
      return "node-element table disagrees for element " + std::to_string(e);
    }
    if (!pool_.at(e).invariants_hold()) {
      return "element " + std::to_string(e) + " count conservation violated";
    }
  }
  if (std::find(visits.begin(), visits.end(), 0) != visits.end()) return "unreachable node";
  if (leaves > config_.max_leaves) return "leaf count exceeds max_leaves";
  if (pool_.allocated_count() != active) return "allocated elements != active leaves";
  std::uint64_t owned = 0;
  for (std::int64_t o : pool_.owners()) owned += o >= 0 ? 1 : 0;
  if (owned + pool_.free_count() != pool_.capacity()) return "pool conservation violated";
  return {};
}

template <NumericEstimator Est>
std::vector<std::uint8_t> BasicHoeffdingTree<Est>::snapshot() const {
  detail::BinaryWriter w;
  w.put_string(schema_to_json(schema_));
  write_config(w, config_);
  w.put(samples_trained_);
  w.put(split_trials_);
  w.put(splits_taken_);
  w.put(frozen_events_);
  w.put(saturations_);
  w.put<std::uint64_t>(nodes_.size());
  for (const TreeNode& n : nodes_) {
    if (const auto* in = std::get_if<InternalNode>(&n)) {
      w.put<std::uint8_t>(0);
      w.put(in->attribute);
      w.put(in->threshold);
      w.put<std::uint8_t>(in->categorical ? 1 : 0);
      w.put(in->left);
      w.put(in->right);
      w.put(in->depth);
    } else {
      const auto& leaf = std::get<LeafNode>(n);
      w.put<std::uint8_t>(1);
      w.put(leaf.element);
      w.put(leaf.cached_majority);
      w.put(leaf.depth);
      w.put_span(std::span<const std::uint64_t>(leaf.frozen_counts));
    }
  }
  pool_.write(w);
  return seal(tag_of<Est>(), w.bytes());
}

template <NumericEstimator Est>
BasicHoeffdingTree<Est> BasicHoeffdingTree<Est>::restore(std::span<const std::uint8_t> bytes) {
  const Envelope env = open_envelope(bytes);
  if (env.tag != tag_of<Est>()) throw SnapshotError("snapshot: estimator type mismatch");
  detail::BinaryReader r(env.payload);
  DatasetSchema schema;
  try {
    schema = parse_schema(r.get_string());
  } catch (const SchemaError& e) {
    throw SnapshotError(std::string("snapshot: ") + e.what());
  }
  BasicHoeffdingTree tree(std::move(schema), read_config(r));
  tree.samples_trained_ = r.get<std::uint64_t>();
  tree.split_trials_ = r.get<std::uint64_t>();
  tree.splits_taken_ = r.get<std::uint64_t>();
  tree.frozen_events_ = r.get<std::uint64_t>();
  tree.saturations_ = r.get<std::uint64_t>();
  const auto count = r.get<std::uint64_t>();
  if (count == 0 || count > r.remaining()) throw SnapshotError("snapshot: bad node count");
  tree.nodes_.clear();
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto kind = r.get<std::uint8_t>();
    if (kind == 0) {
      InternalNode in;
      in.attribute = r.get<std::uint32_t>();
      in.threshold = r.get<double>();
      in.categorical = r.get<std::uint8_t>() != 0;
      in.left = r.get<NodeId>();
      in.right = r.get<NodeId>();
      in.depth = r.get<std::uint32_t>();
      tree.nodes_.emplace_back(in);
    } else if (kind == 1) {
      LeafNode leaf;
      leaf.element = r.get<std::int32_t>();
      leaf.cached_majority = r.get<std::uint32_t>();
      leaf.depth = r.get<std::uint32_t>();
      r.get_vector(leaf.frozen_counts);
      tree.nodes_.emplace_back(std::move(leaf));
    } else {
      throw SnapshotError("snapshot: bad node tag");
    }
  }
  tree.pool_.read(r, tree.params_);
  if (r.remaining() != 0) throw SnapshotError("snapshot: trailing bytes");
  if (const std::string why = tree.check_invariants(); !why.empty()) {
    throw SnapshotError("snapshot: " + why);
  }
  return tree;
}

template class ElementPool<QuantileSet<double>>;
template class ElementPool<QuantileSet<Fixed30>>;
template class ElementPool<GaussianStats>;
template class BasicHoeffdingTree<QuantileSet<double>>;
template class BasicHoeffdingTree<QuantileSet<Fixed30>>;
template class BasicHoeffdingTree<GaussianStats>;

// ---------------------------------------------------------------------------
// HoeffdingTree

namespace {

HoeffdingTree::Variant make_variant(DatasetSchema schema, const TreeConfig& config) {
  if (config.method == Method::kGaussian) {
    return GaussianTree(std::move(schema), config);
  }
  if (config.numeric_backend == NumericBackend::kFixed) {
    return FixedQuantileTree(std::move(schema), config);
  }
  return QuantileTree(std::move(schema), config);
}

}  // namespace

HoeffdingTree::HoeffdingTree(DatasetSchema schema, TreeConfig config)
    : impl_(make_variant(std::move(schema), config)) {}

HoeffdingTree HoeffdingTree::restore(std::span<const std::uint8_t> bytes) {
  switch (open_envelope(bytes).tag) {
    case EstimatorTag::kQuantile:
      return HoeffdingTree(Variant(QuantileTree::restore(bytes)));
    case EstimatorTag::kFixedQuantile:
      return HoeffdingTree(Variant(FixedQuantileTree::restore(bytes)));
    case EstimatorTag::kGaussian:
      break;
  }
  return HoeffdingTree(Variant(GaussianTree::restore(bytes)));
}

}  // namespace qhtree
