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

#include "qhtree/tree_config.hpp"

#include <cmath>

#include "qhtree/error.hpp"

namespace qhtree {

std::string_view to_string(Method m) {
  return m == Method::kQuantile ? "quantile" : "gaussian";
}

std::string_view to_string(NumericBackend b) {
  return b == NumericBackend::kFloat ? "float" : "fixed";
}

Method parse_method(std::string_view text) {
  if (text == "quantile") return Method::kQuantile;
  if (text == "gaussian") return Method::kGaussian;
  throw ConfigError("unknown method '" + std::string(text) +
                    "' (expected quantile or gaussian)");
}

NumericBackend parse_backend(std::string_view text) {
  if (text == "float") return NumericBackend::kFloat;
  if (text == "fixed") return NumericBackend::kFixed;
  throw ConfigError("unknown numeric backend '" + std::string(text) +
                    "' (expected float or fixed)");
}

void TreeConfig::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("tau must be positive");
  if (n_min < 1) throw ConfigError("n_min must be at least 1");
  if (split_points < 1) throw ConfigError("split_points must be at least 1");
  if (quantile_count < 2) throw ConfigError("quantile_count must be at least 2");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("lambda must be positive");
  }
  if (max_leaves < 2) throw ConfigError("max_leaves must be at least 2");
  if (max_depth < 1) throw ConfigError("max_depth must be at least 1");
  if (!(hoeffding_range > 0.0) || !std::isfinite(hoeffding_range)) {
    throw ConfigError("hoeffding_range must be positive");
  }
}

}  // namespace qhtree
