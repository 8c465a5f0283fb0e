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
#include <string>
#include <string_view>
#include <vector>

#include "avgenergy/game.hpp"
#include "avgenergy/numeric.hpp"

namespace avgen {

/** Number of halving stages for weight -w: the least k >= 1 with 2^k >= w. */
std::size_t blocking_stages(std::int64_t w);

/** (2^k - 1) - (w - 1). */
std::int64_t blocking_entry_weight(std::int64_t w);

/**
 * Standalone blocking gadget for an edge (s, -w, s'). From "s" at level c,
 * P0 reaches "sink" at level 0 without underflow iff c <= w - 1.
 */
GameGraph build_blocking_gadget(std::int64_t w);

/** Output of a reduction: a game and the threshold it is meant to be played for. */
struct Reduction {
    GameGraph game;
    std::vector<Threshold> threshold;
    /** "ae" or "ael". */
    std::string objective;
    std::string source;
};

/**
 * One-counter game under blocking semantics (moves to a negative level are
 * disabled). P0 wants a state other than the initial one at level 0.
 */
struct SuccinctOneCounterGame {
    GameGraph arena;
};

/** AEL instance with threshold 0 that P0 wins iff P0 wins the one-counter game. */
Reduction reduce_soc_game(const SuccinctOneCounterGame &r);

/** Two-dimensional robot game: one state per player and initial counters. */
struct RobotGame {
    GameGraph arena;
    std::int64_t x0 = 0;
    std::int64_t y0 = 0;
};

/** Three-dimensional AE instance with threshold (0, 0, 0). */
Reduction reduce_robot_game(const RobotGame &r);

struct Instruction {
    enum class Op { Inc, Dec, Jz, Goto, Halt };
    Op op = Op::Halt;
    /** 1 or 2. */
    int counter = 1;
    std::size_t target = 0;
};

struct TwoCounterMachine {
    std::vector<Instruction> program;
};

/** Two-dimensional AEL instance with threshold (0, 0) that P0 wins iff the machine halts. */
Reduction reduce_2cm(const TwoCounterMachine &m);

SuccinctOneCounterGame parse_soc_game(std::string_view text);
RobotGame parse_robot_game(std::string_view text);
TwoCounterMachine parse_2cm(std::string_view text);

/** {"source", "objective", "dimension", "threshold"} describing a reduction output. */
std::string serialize_manifest(const Reduction &r);

}  // namespace avgen
