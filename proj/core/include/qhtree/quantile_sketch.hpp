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

#ifndef QHTREE_QUANTILE_SKETCH_HPP_
#define QHTREE_QUANTILE_SKETCH_HPP_

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <span>
#include <vector>

#include "qhtree/binary_io.hpp"
#include "qhtree/fixed_point.hpp"

namespace qhtree {

// Asymmetric signum: -alpha below zero, (1 - alpha) at or above zero. With
// this sign the update below is the Robbins-Monro quantile tracker.
double asym_signum(double z, double alpha);

// alpha_k = k / (count + 1), k = 1..count.
std::vector<double> evenly_spaced_targets(std::size_t count);

// Target probabilities and step size shared by every QuantileSet of a tree.
// Per-quantile step magnitudes are precomputed for both numeric backends.
class QuantileGrid {
 public:
  QuantileGrid(std::vector<double> targets, double lambda);
  static QuantileGrid evenly_spaced(std::size_t count, double lambda);

  std::size_t size() const { return targets_.size(); }
  double lambda() const { return lambda_; }
  std::span<const double> targets() const { return targets_; }

  // lambda * alpha_k: upward move when the sample lies above the estimate.
  double rise(std::size_t k) const { return rise_[k]; }
  // lambda * (1 - alpha_k): downward move otherwise.
  double fall(std::size_t k) const { return fall_[k]; }
  Fixed30 fixed_rise(std::size_t k) const { return fixed_rise_[k]; }
  Fixed30 fixed_fall(std::size_t k) const { return fixed_fall_[k]; }

 private:
  std::vector<double> targets_;
  double lambda_;
  std::vector<double> rise_;
  std::vector<double> fall_;
  std::vector<Fixed30> fixed_rise_;
  std::vector<Fixed30> fixed_fall_;
};

template <typename Rep>
concept QuantileRep = std::same_as<Rep, double> || std::same_as<Rep, Fixed30>;

// |Q| independently tracked quantile estimates for one stream. Values are not
// kept sorted; each one follows its own target.
template <QuantileRep Rep>
class QuantileSet {
 public:
  using Params = QuantileGrid;

  QuantileSet() = default;
  explicit QuantileSet(const QuantileGrid& grid) : values_(grid.size()) {}

  static QuantileSet from_values(std::span<const double> values) {
    QuantileSet qs;
    qs.values_.resize(values.size());
    std::transform(values.begin(), values.end(), qs.values_.begin(),
                   [](double v) { return from_real(v); });
    qs.seen_ = 1;
    return qs;
  }

  void reset() {
    std::fill(values_.begin(), values_.end(), Rep{});
    seen_ = 0;
  }

  // The first observation seeds every quantile; each later one moves every
  // quantile by one signum step. Returns fixed-point saturation events.
  std::uint64_t update(double x, const QuantileGrid& grid) {
    std::uint64_t saturations = 0;
    if constexpr (std::same_as<Rep, double>) {
      if (seen_++ == 0) {
        std::fill(values_.begin(), values_.end(), x);
        return 0;
      }
      for (std::size_t k = 0; k < values_.size(); ++k) {
        values_[k] += values_[k] >= x ? -grid.fall(k) : grid.rise(k);
      }
    } else {
      const Fixed30 xf = to_fixed(x, saturations);
      if (seen_++ == 0) {
        std::fill(values_.begin(), values_.end(), xf);
        return saturations;
      }
      for (std::size_t k = 0; k < values_.size(); ++k) {
        values_[k] = values_[k] >= xf
                         ? fixed_sub(values_[k], grid.fixed_fall(k), saturations)
                         : fixed_add(values_[k], grid.fixed_rise(k), saturations);
      }
    }
    return saturations;
  }

  // Round-down CDF reconstruction: share of quantiles strictly below pt.
  double fraction_below(double pt) const {
    if (values_.empty()) return 0.0;
    const Rep p = from_real(pt);
    const auto below = std::count_if(values_.begin(), values_.end(),
                                     [p](Rep v) { return v < p; });
    return static_cast<double>(below) / static_cast<double>(values_.size());
  }

  // Estimator interface used by leaf statistics.
  std::uint64_t observe(double x, const Params& grid) { return update(x, grid); }
  double left_fraction(double pt) const { return fraction_below(pt); }

  std::size_t size() const { return values_.size(); }
  double value(std::size_t k) const { return to_double(values_[k]); }
  std::span<const Rep> raw_values() const { return values_; }
  std::uint64_t seen_count() const { return seen_; }
  bool initialized() const { return seen_ > 0; }

  void write(detail::BinaryWriter& w) const {
    w.put_span(std::span<const Rep>(values_));
    w.put(seen_);
  }
  void read(detail::BinaryReader& r) {
    r.get_vector(values_);
    seen_ = r.get<std::uint64_t>();
  }

  friend bool operator==(const QuantileSet&, const QuantileSet&) = default;

 private:
  static Rep from_real(double v) {
    if constexpr (std::same_as<Rep, double>) {
      return v;
    } else {
      return to_fixed(v);
    }
  }
  static double to_double(Rep v) {
    if constexpr (std::same_as<Rep, double>) {
      return v;
    } else {
      return to_real(v);
    }
  }

  std::vector<Rep> values_;
  std::uint64_t seen_ = 0;
};

}  // namespace qhtree

#endif  // QHTREE_QUANTILE_SKETCH_HPP_
