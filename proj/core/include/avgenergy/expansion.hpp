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
#include <unordered_map>
#include <vector>

#include "avgenergy/game.hpp"
#include "avgenergy/numeric.hpp"
#include "avgenergy/play.hpp"

namespace avgen {

/** A pair (state, energy level), or the sink. */
struct Configuration {
    static constexpr std::size_t kBottom = static_cast<std::size_t>(-1);

    std::size_t state = kBottom;
    std::int64_t level = 0;

    static Configuration bottom() { return {}; }
    bool is_bottom() const { return state == kBottom; }

    friend bool operator==(const Configuration &a, const Configuration &b) {
        return a.state == b.state && (a.is_bottom() || a.level == b.level);
    }
};

struct ConfigurationHash {
    std::size_t operator()(const Configuration &c) const {
        if (c.is_bottom()) return 0x9e3779b97f4a7c15ull;
        return std::hash<std::size_t>()(c.state) * 1000003u ^ std::hash<std::int64_t>()(c.level);
    }
};

/** "s@c" for real configurations and "BOT" for the sink. */
std::string configuration_id(const GameGraph &base, const Configuration &c);

enum class OverflowPolicy {
    /** Moves above the cap go to the sink. */
    OverflowLoses,
    /** Moves above the cap are dropped; states left without moves are recorded as dead. */
    OverflowForbidden,
};

enum class ExpansionScope { Reachable, Full };

struct ExpansionOptions {
    ExpansionScope scope = ExpansionScope::Reachable;
    /** Initial configuration; defaults to (initial state, 0). */
    std::optional<Configuration> start;
};

/**
 * Finite truncation of the configuration graph. The arena is a regular
 * one-dimensional GameGraph whose edge weights are the new energy levels.
 */
class ExpandedGame {
  public:
    const GameGraph &arena() const { return arena_; }
    const GameGraph &base() const { return base_; }
    const Threshold &threshold() const { return threshold_; }
    std::int64_t cap() const { return cap_; }
    OverflowPolicy policy() const { return policy_; }
    /** Weight of sink edges: ceil(t) + 1. */
    std::int64_t bottom_weight() const { return bottom_weight_; }

    const Configuration &configuration(std::size_t arena_state) const { return configs_[arena_state]; }
    std::optional<std::size_t> find(const Configuration &c) const;
    std::optional<std::size_t> bottom() const { return find(Configuration::bottom()); }
    std::size_t num_real_configurations() const;

    /** Base edge that induced an arena edge; empty for the sink loop. */
    std::optional<std::size_t> base_edge(std::size_t arena_edge) const { return base_edge_of_[arena_edge]; }
    /** Arena edge taken when base edge e is played from arena state x. */
    std::optional<std::size_t> arena_edge(std::size_t x, std::size_t base_edge) const;

    /** Real configurations without moves under OverflowForbidden (routed to the sink). */
    const std::vector<Configuration> &dead_configurations() const { return dead_; }

  private:
    friend ExpandedGame build_expanded(const GameGraph &, const Threshold &, std::int64_t, OverflowPolicy,
                                       const ExpansionOptions &);
    GameGraph base_;
    GameGraph arena_;
    Threshold threshold_;
    std::int64_t cap_ = 0;
    OverflowPolicy policy_ = OverflowPolicy::OverflowLoses;
    std::int64_t bottom_weight_ = 1;
    std::vector<Configuration> configs_;
    std::unordered_map<Configuration, std::size_t, ConfigurationHash> index_;
    std::vector<std::optional<std::size_t>> base_edge_of_;
    std::vector<std::vector<std::optional<std::size_t>>> arena_edge_of_;
    std::vector<Configuration> dead_;
};

ExpandedGame build_expanded(const GameGraph &g, const Threshold &t, std::int64_t cap,
                            OverflowPolicy policy = OverflowPolicy::OverflowLoses,
                            const ExpansionOptions &options = {});

/**
 * Multi-dimensional expansion over S x [0,U1] x ... x [0,Uk] plus a sink.
 * Any bound violation in any dimension goes to the sink. For k = 1 the output
 * equals build_expanded(..., OverflowLoses).arena().
 */
GameGraph build_multidim_expanded(const GameGraph &g, const std::vector<Threshold> &t,
                                  const std::vector<std::int64_t> &caps,
                                  ExpansionScope scope = ExpansionScope::Reachable);

struct ExpandedStep {
    Configuration target;
    std::int64_t weight;
};

/** A play of the (untruncated) configuration graph. */
struct ExpandedPrefix {
    Configuration start;
    std::vector<ExpandedStep> steps;

    std::size_t length() const { return steps.size(); }
    /** config(0) is the start, config(i) the configuration after i steps. */
    const Configuration &config(std::size_t i) const { return i == 0 ? start : steps[i - 1].target; }
    bool reaches_bottom() const;
};

/** Lifts a play of g; the level starts at `credit`. */
ExpandedPrefix lift_play(const GameGraph &g, const Threshold &t, const PlayPrefix &p, std::int64_t credit = 0);

/** Prefix of the truncated arena, viewed as a configuration play. */
ExpandedPrefix to_expanded_prefix(const ExpandedGame &x, const PlayPrefix &p);

Rational mean_payoff(const ExpandedPrefix &p);

}  // namespace avgen
