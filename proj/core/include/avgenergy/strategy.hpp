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
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "avgenergy/game.hpp"

namespace avgen {

class ExpandedGame;

class StrategyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * Deterministic transducer strategy for P0. Memory states are 0..size-1 with
 * optional printable labels. Both tables are partial; verification reports
 * missing entries that are actually reached.
 */
class FiniteMemoryStrategy {
  public:
    using Memory = std::size_t;

    FiniteMemoryStrategy() = default;
    explicit FiniteMemoryStrategy(std::size_t memory_size, Memory initial = 0);

    std::size_t memory_size() const { return size_; }
    Memory initial() const { return initial_; }

    void set_update(Memory m, std::size_t edge, Memory next);
    void set_choice(Memory m, std::size_t state, std::size_t edge);
    std::optional<Memory> update(Memory m, std::size_t edge) const;
    std::optional<std::size_t> choice(Memory m, std::size_t state) const;

    /** Entries sorted by (memory, edge) and (memory, state). */
    struct UpdateEntry {
        Memory memory;
        std::size_t edge;
        Memory next;
    };
    struct ChoiceEntry {
        Memory memory;
        std::size_t state;
        std::size_t edge;
    };
    std::vector<UpdateEntry> updates() const;
    std::vector<ChoiceEntry> choices() const;

    void set_labels(std::vector<std::string> labels);
    /** The label of m, or its index when no labels are set. */
    std::string label(Memory m) const;
    bool has_labels() const { return !labels_.empty(); }

  private:
    static std::uint64_t key(Memory m, std::size_t x) { return (static_cast<std::uint64_t>(m) << 32) | x; }
    std::size_t size_ = 1;
    Memory initial_ = 0;
    std::unordered_map<std::uint64_t, Memory> update_;
    std::unordered_map<std::uint64_t, std::size_t> choice_;
    std::vector<std::string> labels_;
};

/** One memory state; choice[s] is used for P0 states where it is set. */
FiniteMemoryStrategy memoryless_strategy(const GameGraph &g, std::span<const std::optional<std::size_t>> choice);

/**
 * Strategy of the base game induced by a positional strategy of the cap-truncated
 * expansion: memory is the current energy level in [0, cap].
 */
FiniteMemoryStrategy energy_tracking_strategy(const ExpandedGame &x,
                                              std::span<const std::optional<std::size_t>> arena_choice);

/** Level-threshold rules: at (state, level) pick the first rule that matches. */
struct LevelRule {
    std::string state;
    std::int64_t min_level;
    std::string target;
};
FiniteMemoryStrategy level_rule_strategy(const GameGraph &g, std::int64_t cap, const std::vector<LevelRule> &rules);

std::string serialize_strategy(const GameGraph &g, const FiniteMemoryStrategy &s);
FiniteMemoryStrategy parse_strategy(const GameGraph &g, std::string_view text);

}  // namespace avgen
