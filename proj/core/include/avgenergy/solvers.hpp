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
#include <optional>
#include <vector>

#include "avgenergy/expansion.hpp"
#include "avgenergy/game.hpp"
#include "avgenergy/numeric.hpp"
#include "avgenergy/strategy.hpp"

namespace avgen {

// ---------------------------------------------------------------- attractors

enum class AttractorGoal { Reach, Safety };

struct AttractorResult {
    /** States from which the protagonist achieves the goal. */
    std::vector<bool> winning;
    /** Lowest-index winning move for protagonist states in the winning set. */
    std::vector<std::optional<std::size_t>> strategy;
    /** Reach: number of rounds needed (0 on targets). Unused entries are SIZE_MAX. */
    std::vector<std::size_t> rank;
};

/**
 * Reach: protagonist forces a visit to `set`. Safety: protagonist keeps the
 * play outside `set` forever.
 */
AttractorResult solve_safety_reachability(const GameGraph &g, const std::vector<bool> &set, Player protagonist,
                                          AttractorGoal goal);

// ------------------------------------------------------------------- energy

enum class CreditMode {
    /** Win iff the given initial credit (default 0) suffices. */
    Zero,
    /** Win iff some finite initial credit suffices. */
    Any,
};

struct EnergyResult {
    /** Minimal initial credit per state; empty when no finite credit suffices. */
    std::vector<std::optional<std::int64_t>> min_credit;
    std::vector<bool> winning;
    /** Memoryless protagonist strategy on states with finite credit. */
    std::vector<std::optional<std::size_t>> strategy;
    /** Values above this bound are infinite. */
    std::int64_t ceiling = 0;
};

/**
 * Progress-measure (value lifting) solver. The ceiling is the sum over states
 * of the largest negative out-weight magnitude; a finite minimal credit never
 * exceeds it.
 */
EnergyResult solve_energy_game(const GameGraph &g, Player protagonist, CreditMode mode = CreditMode::Zero,
                               std::int64_t credit = 0);

// ---------------------------------------------------------------- mean payoff

struct MeanPayoffResult {
    /** value(s) <= t. */
    std::vector<bool> p0_wins;
    /** Positional witness for P0 on P0 states where P0 wins. */
    std::vector<std::optional<std::size_t>> p0_strategy;
    /** Positional witness for P1 on P1 states where P0 loses. */
    std::vector<std::optional<std::size_t>> p1_strategy;
};

/** Decides MP-sup <= t (P0 minimizes) for every state. */
MeanPayoffResult solve_mp_threshold(const GameGraph &g, const Threshold &t, bool with_strategies = true);

// ------------------------------------------------------------------- cycles

struct WeightedDigraph {
    struct Arc {
        std::size_t from;
        std::size_t to;
        std::int64_t weight;
    };
    std::size_t num_nodes = 0;
    std::vector<Arc> arcs;
};

WeightedDigraph to_digraph(const GameGraph &g);

struct CycleMeanResult {
    std::vector<std::size_t> component;
    /** Extremal cycle mean inside each strongly connected component; empty if acyclic. */
    std::vector<std::optional<Rational>> component_mean;
    /** Extremal mean over all cycles reachable from each node. */
    std::vector<std::optional<Rational>> reachable;
};

/** Karp's dynamic program per component, exact. */
CycleMeanResult max_cycle_mean(const WeightedDigraph &d);
CycleMeanResult min_cycle_mean(const WeightedDigraph &d);
CycleMeanResult max_cycle_mean(const GameGraph &g);

/** A simple cycle reachable from `source` with mean strictly above `bound`, as arc indices. */
std::optional<std::vector<std::size_t>> find_cycle_mean_above(const WeightedDigraph &d, std::size_t source,
                                                              const Rational &bound);
/** A simple cycle reachable from `source` with mean strictly below `bound`. */
std::optional<std::vector<std::size_t>> find_cycle_mean_below(const WeightedDigraph &d, std::size_t source,
                                                              const Rational &bound);
/** Shortest arc path from source to target (BFS), if any. */
std::optional<std::vector<std::size_t>> find_path(const WeightedDigraph &d, std::size_t source, std::size_t target);

// ------------------------------------------------------------ energy bounds

struct GameResult {
    Player winner = Player::P1;
    std::optional<FiniteMemoryStrategy> strategy;
};

/** Lower bound 0 only. */
GameResult solve_egl(const GameGraph &g, std::int64_t credit = 0);
/** Energy kept within [0, U]: safety on the cap-U expansion. */
GameResult solve_eglu(const GameGraph &g, std::int64_t upper, std::int64_t credit = 0);

struct ReachabilityResult {
    bool win = false;
    /** Smallest cap at which the targets are reachable (the requested cap on a loss). */
    std::int64_t cap_used = 0;
    /** Largest level visited by the strategy before reaching a target. */
    std::optional<std::int64_t> max_level;
    std::optional<FiniteMemoryStrategy> strategy;
};

/**
 * P0 forces a visit to one of `targets` in the cap-bounded configuration graph
 * without underflow. The strategy is the attractor strategy at the smallest
 * winning cap, so the reported maximal level is the same for every larger cap.
 */
ReachabilityResult bounded_counter_reachability(const GameGraph &g, const Threshold &t, const Configuration &start,
                                                const std::vector<Configuration> &targets, std::int64_t cap);

}  // namespace avgen
