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

#ifndef QHTREE_FIXED_POINT_HPP_
#define QHTREE_FIXED_POINT_HPP_

#include <compare>
#include <cstdint>

namespace qhtree {

// Q2.30: 32-bit two's complement, value = raw / 2^30, range [-2, 2 - 2^-30].
struct Fixed30 {
  static constexpr int kFractionBits = 30;
  static constexpr double kScale = 1073741824.0;  // 2^30
  static constexpr double kResolution = 1.0 / kScale;
  static constexpr double kMax = 2.0 - kResolution;
  static constexpr double kMin = -2.0;

  std::int32_t raw = 0;

  static constexpr Fixed30 from_raw(std::int32_t r) { return Fixed30{r}; }

  friend constexpr auto operator<=>(Fixed30, Fixed30) = default;
};

// Round-to-nearest-even conversion; out-of-range inputs (and NaN, mapped to
// zero) saturate and bump `saturations`.
Fixed30 to_fixed(double x, std::uint64_t& saturations);
Fixed30 to_fixed(double x);

constexpr double to_real(Fixed30 f) {
  return static_cast<double>(f.raw) / Fixed30::kScale;
}

// Saturating arithmetic. The overloads without a counter discard it.
Fixed30 fixed_add(Fixed30 a, Fixed30 b, std::uint64_t& saturations);
Fixed30 fixed_sub(Fixed30 a, Fixed30 b, std::uint64_t& saturations);
Fixed30 fixed_mul(Fixed30 a, Fixed30 b, std::uint64_t& saturations);
Fixed30 fixed_add(Fixed30 a, Fixed30 b);
Fixed30 fixed_sub(Fixed30 a, Fixed30 b);
Fixed30 fixed_mul(Fixed30 a, Fixed30 b);

// Snap a real onto the Q2.30 grid.
inline double quantize(double x) { return to_real(to_fixed(x)); }

}  // namespace qhtree

#endif  // QHTREE_FIXED_POINT_HPP_
