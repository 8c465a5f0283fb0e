/*
 * Copyright 2026 The avgenergy Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "avgenergy/game.hpp"

namespace avgen::detail {

constexpr std::int64_t kTop = std::numeric_limits<std::int64_t>::max();

struct Measure {
    std::vector<std::int64_t> f;
    std::int64_t ceiling = 0;
};

/** Least fixpoint of the lifting operator for per-edge weights `w`. */
Measure progress_measure(const GameGraph &g, std::span<const std::int64_t> w, Player protagonist);

/** Lowest-index move realizing the measure on protagonist states with finite value. */
std::vector<std::optional<std::size_t>> measure_strategy(const GameGraph &g, std::span<const std::int64_t> w,
                                                         Player protagonist, const Measure &m);

}  // namespace avgen::detail
