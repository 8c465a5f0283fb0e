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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "avgenergy/expansion.hpp"
#include "avgenergy/game.hpp"
#include "avgenergy/numeric.hpp"
#include "avgenergy/strategy.hpp"

namespace avgen {

struct BoundOptions {
    /** Constant in front of the exponent of M'. */
    Rational exponent_multiplier{1};
    /** M' is reported as overflowing when its exponent exceeds this many bits. */
    std::size_t bit_budget = 1024;
};

/**
 * N bounds the length of a minimal good cycle, M the level of critical
 * nodes, and M' the cap at which AEL and AELU coincide.
 */
struct BoundSet {
    BigInt N;
    BigInt M;
    BigInt mprime_exponent;
    /** Empty when the exponent exceeds the bit budget. */
    std::optional<BigInt> Mprime;
    Rational exponent_multiplier{1};
};

/**
 * N = ceil(8 max(t1,1) t2 (t+1)^3 |S|^2), M = max(ceil(t + W(N+1)), 1) and
 * M' = 2^ceil(mult (M + |S| + |E| W + |S| (ceil(t)+1))).
 */
BoundSet compute_bounds(const GameGraph &g, const Threshold &t, const BoundOptions &options = {});

enum class Outcome { Win, Lose, Inconclusive };
std::string to_string(Outcome o);

struct SolveVerdict {
    Outcome outcome = Outcome::Inconclusive;
    std::int64_t cap_used = 0;
    std::optional<FiniteMemoryStrategy> strategy;
    BoundSet bounds;
    /** LOSE established at a cap >= M' (relative to the configured multiplier). */
    bool conclusive_lose = false;
    /** Caps solved, in order. */
    std::vector<std::int64_t> caps_tried;
};

/** AE <= t with energy kept in [0, U]. */
SolveVerdict solve_aelu(const GameGraph &g, const Threshold &t, std::int64_t upper, std::int64_t credit = 0,
                        const BoundOptions &options = {});

struct CapSchedule {
    /** First cap tried (raised to the credit if smaller). */
    std::int64_t start = 0;
    /** Largest cap tried unless M' is smaller. */
    std::int64_t budget = 4096;
    /** After the first winning cap, search down for the smallest winning one. */
    bool minimize = true;
    BoundOptions bounds;
};

/** AE <= t with energy >= 0, by iterative deepening over caps. */
SolveVerdict solve_ael(const GameGraph &g, const Threshold &t, const CapSchedule &schedule = {},
                       std::int64_t credit = 0);

/** AE <= t without energy constraints, by enumeration of positional strategies. */
SolveVerdict solve_ae(const GameGraph &g, const Threshold &t, std::uint64_t budget = 1000000);

/**
 * Earliest good cycle of an expanded prefix: the smallest j, then the largest
 * i, with config(i-1) = config(j), level <= t and MP(p[i..j]) <= t. Indices
 * are 1-based step positions.
 */
std::optional<std::pair<std::size_t, std::size_t>> find_good_cycle(const ExpandedPrefix &p, const Threshold &t);

using ConfigPredicate = std::function<bool(const Configuration &)>;

/** Configurations with level at most t. */
ConfigPredicate level_at_most(const Threshold &t);

/** Share of positions 1..length whose configuration satisfies the predicate. */
Rational density(const ConfigPredicate &gamma, const ExpandedPrefix &p);

/** t~ / (2 (t + 1)). */
Rational density_bound(const Threshold &t);

}  // namespace avgen
