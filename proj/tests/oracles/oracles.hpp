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

// Reference solvers used only by the tests. They read a GameGraph through
// its public accessors and share no code with the library's solvers.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "avgenergy/game.hpp"

namespace oracle {

struct Arc {
    std::size_t to;
    std::int64_t w;
};

struct Arena {
    std::vector<int> owner;  // 0 minimizes, 1 maximizes
    std::vector<std::vector<Arc>> adj;
    std::size_t init = 0;
    std::size_t size() const { return adj.size(); }
};

/** Copy of a one-dimensional game. */
Arena from_game(const avgen::GameGraph &g);

/** Same arena with every weight replaced by t2 * w - t1. */
Arena shifted(const Arena &a, std::int64_t t1, std::int64_t t2);

struct ViStats {
    std::size_t certified = 0;
    std::size_t fallback = 0;
};

/**
 * Does the minimizer keep limsup mean payoff <= 0 from `from`?
 * Finite-horizon value iteration; positional strategies read off the
 * iterates are checked with Bellman-Ford, and the classical horizon
 * bound for mean-payoff games settles whatever they leave open.
 */
bool mp_nonpositive(const Arena &a, std::size_t from, ViStats *stats = nullptr);

/** Winning set for MP <= t1/t2, one call per state. */
std::vector<bool> mp_at_most(const avgen::GameGraph &g, std::int64_t t1, std::int64_t t2, ViStats *stats = nullptr);

/**
 * Configuration graph over (state, level), level in [0, cap], plus a
 * losing sink; arcs carry t2 * level - t1 and the sink loop +1.
 */
Arena expand_shifted(const avgen::GameGraph &g, std::int64_t t1, std::int64_t t2, std::int64_t cap);

/** AE <= t1/t2 with energy kept in [0, cap], from (initial, 0). */
bool aelu_wins(const avgen::GameGraph &g, std::int64_t t1, std::int64_t t2, std::int64_t cap,
               ViStats *stats = nullptr);

/** Energy >= 0 from the given credit, by enumerating memoryless P0 strategies. */
bool egl_wins(const avgen::GameGraph &g, std::int64_t credit = 0);

/** Energy kept in [0, cap], by a safety fixpoint on levels. */
bool eglu_wins(const avgen::GameGraph &g, std::int64_t cap, std::int64_t credit = 0);

/**
 * One-counter reachability with blocking moves: P0 wins on reaching a
 * non-initial state with counter 0 or a P1 state without enabled moves.
 * Counters above `cap` lose for P0.
 */
bool soc_wins(const avgen::GameGraph &g, std::int64_t cap);

/** Random one-dimensional game; every state gets one to three moves. */
avgen::GameGraph random_game(std::mt19937_64 &rng, std::size_t max_states, std::int64_t max_weight);

}  // namespace oracle
