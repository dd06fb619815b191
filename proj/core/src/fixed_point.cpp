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

#include "qhtree/fixed_point.hpp"

#include <cmath>
#include <limits>

namespace qhtree {

namespace {

constexpr std::int64_t kRawMax = std::numeric_limits<std::int32_t>::max();
constexpr std::int64_t kRawMin = std::numeric_limits<std::int32_t>::min();

Fixed30 saturate(std::int64_t wide, std::uint64_t& saturations) {
  if (wide > kRawMax) {
    ++saturations;
    return Fixed30::from_raw(static_cast<std::int32_t>(kRawMax));
  }
  if (wide < kRawMin) {
    ++saturations;
    return Fixed30::from_raw(static_cast<std::int32_t>(kRawMin));
  }
  return Fixed30::from_raw(static_cast<std::int32_t>(wide));
}

}  // namespace

Fixed30 to_fixed(double x, std::uint64_t& saturations) {
  if (std::isnan(x)) {
    ++saturations;
    return Fixed30{};
  }
  const double scaled = x * Fixed30::kScale;
  if (scaled >= static_cast<double>(kRawMax)) {
    if (scaled > static_cast<double>(kRawMax) + 0.5) ++saturations;
    return Fixed30::from_raw(static_cast<std::int32_t>(kRawMax));
  }
  if (scaled <= static_cast<double>(kRawMin)) {
    if (scaled < static_cast<double>(kRawMin) - 0.5) ++saturations;
    return Fixed30::from_raw(static_cast<std::int32_t>(kRawMin));
  }
  // Scaling by a power of two is exact, so nearbyint sees the true value and
  // rounds ties to even under the default rounding mode.
  return Fixed30::from_raw(static_cast<std::int32_t>(std::nearbyint(scaled)));
}

Fixed30 to_fixed(double x) {
  std::uint64_t ignored = 0;
  return to_fixed(x, ignored);
}

Fixed30 fixed_add(Fixed30 a, Fixed30 b, std::uint64_t& saturations) {
  return saturate(std::int64_t{a.raw} + b.raw, saturations);
}

Fixed30 fixed_sub(Fixed30 a, Fixed30 b, std::uint64_t& saturations) {
  return saturate(std::int64_t{a.raw} - b.raw, saturations);
}

Fixed30 fixed_mul(Fixed30 a, Fixed30 b, std::uint64_t& saturations) {
  const std::int64_t product = std::int64_t{a.raw} * b.raw;
  // Round half to even when dropping the low 30 bits.
  constexpr std::int64_t kHalf = std::int64_t{1} << (Fixed30::kFractionBits - 1);
  constexpr std::int64_t kMask = (std::int64_t{1} << Fixed30::kFractionBits) - 1;
  std::int64_t q = product >> Fixed30::kFractionBits;  // floor
  const std::int64_t rem = product & kMask;
  if (rem > kHalf || (rem == kHalf && (q & 1) != 0)) ++q;
  return saturate(q, saturations);
}

Fixed30 fixed_add(Fixed30 a, Fixed30 b) {
  std::uint64_t ignored = 0;
  return fixed_add(a, b, ignored);
}

Fixed30 fixed_sub(Fixed30 a, Fixed30 b) {
  std::uint64_t ignored = 0;
  return fixed_sub(a, b, ignored);
}

Fixed30 fixed_mul(Fixed30 a, Fixed30 b) {
  std::uint64_t ignored = 0;
  return fixed_mul(a, b, ignored);
}

}  // namespace qhtree
