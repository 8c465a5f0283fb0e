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
#include <random>
#include <string>
#include <vector>

#include "avgenergy/game.hpp"
#include "avgenergy/numeric.hpp"
#include "avgenergy/play.hpp"
#include "avgenergy/strategy.hpp"

namespace avgen {

enum class VerifyObjective {
    /** Energy never below zero. */
    EGL,
    /** Energy within [0, U]. */
    EGLU,
    /** Energy within [0, U] and AE <= t. */
    AELU,
    /** Same check as AELU; an accepted strategy also wins AE <= t under the lower bound alone. */
    AELSound,
};

struct VerifyWitness {
    PlayPrefix stem;
    /** Set when the violation is a repeated cycle rather than a single bad step. */
    std::optional<PlayPrefix> cycle;
    std::string reason;
};

struct VerifyResult {
    bool accepted = false;
    std::optional<VerifyWitness> witness;
    /** Reachable nodes of the strategy product. */
    std::size_t product_size = 0;
};

/**
 * Explores the product of the strategy with the game (energy tracked up to U
 * for the bounded objectives) and checks the objective on it. Throws
 * StrategyError if a reachable (memory, state) pair has no choice or update.
 */
VerifyResult verify_strategy(const GameGraph &g, const Threshold &t, std::int64_t upper,
                             const FiniteMemoryStrategy &sigma, VerifyObjective objective, std::int64_t credit = 0);

struct Adversary {
    enum class Kind { Random, Script, GreedyMaxLevel };
    Kind kind = Kind::Random;
    std::uint64_t seed = 0;
    /** Edges chosen at successive P1 decisions. */
    std::vector<std::size_t> script;

    static Adversary random(std::uint64_t seed) { return {Kind::Random, seed, {}}; }
    static Adversary scripted(std::vector<std::size_t> edges) { return {Kind::Script, 0, std::move(edges)}; }
    static Adversary greedy() { return {Kind::GreedyMaxLevel, 0, {}}; }
};

struct SimulationTrace {
    PlayPrefix play;
    /** levels[i] after step i + 1, per dimension. */
    std::vector<std::vector<std::int64_t>> levels;
    /** Running sum of levels, same indexing. */
    std::vector<std::vector<std::int64_t>> level_sums;
    /** Memory state after each step. */
    std::vector<std::size_t> memory;

    std::vector<Rational> average_energy(std::size_t step) const;
};

/** Plays sigma (P0) against the adversary (P1) for `steps` steps. */
SimulationTrace simulate(const GameGraph &g, const FiniteMemoryStrategy &sigma, const Adversary &adversary,
                         std::size_t steps, std::int64_t credit = 0);

}  // namespace avgen
