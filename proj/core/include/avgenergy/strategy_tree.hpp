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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "avgenergy/expansion.hpp"
#include "avgenergy/numeric.hpp"
#include "avgenergy/strategy.hpp"

namespace avgen {

class TreeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * Finite unfolding of a strategy on an expanded game. Every leaf carries a
 * back-edge to a strict ancestor with the same configuration.
 */
struct StrategyTree {
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    struct Node {
        /** Arena state of the configuration. */
        std::size_t arena_state = 0;
        std::size_t parent = kNone;
        /** Arena edge from the parent. */
        std::size_t in_edge = kNone;
        std::vector<std::size_t> children;
        std::size_t back = kNone;
        std::size_t depth = 0;
    };

    std::vector<Node> nodes;

    std::size_t root() const { return 0; }
    bool is_leaf(std::size_t n) const { return nodes[n].children.empty(); }
    std::size_t size() const { return nodes.size(); }
    std::vector<std::size_t> leaves() const;
};

struct StrategyTreeResult {
    std::optional<StrategyTree> tree;
    /** Why the unfolding failed. */
    std::string diagnostic;
};

/**
 * Unfolds the outcomes of sigma (a strategy of the base game, played from the
 * start configuration of x) and cuts each branch at its first good cycle.
 */
StrategyTreeResult build_strategy_tree(const ExpandedGame &x, const FiniteMemoryStrategy &sigma,
                                       std::size_t node_budget = 1000000);

/** Throws TreeError naming the first broken invariant. */
void validate_tree(const ExpandedGame &x, const StrategyTree &tree);

/** Every back-edge segment has level average <= t. */
bool is_good_tree(const ExpandedGame &x, const StrategyTree &tree, const Threshold &t);

/** The root and the nodes just below back-edge segments, in index order. */
std::vector<std::size_t> critical_nodes(const StrategyTree &tree);

struct Decomposition {
    /** Closed cycles, as arena edge lists. */
    std::vector<std::vector<std::size_t>> cycles;
    /** Tree node reached by the prefix. */
    std::size_t last = 0;
    /**
     * Tree path from the root whose levels make up the remainder. At a leaf
     * this ends at the back-edge target.
     */
    std::vector<std::size_t> residual;
};

/** Reads an outcome of the tree strategy from the start configuration. */
Decomposition decompose(const ExpandedGame &x, const StrategyTree &tree, const ExpandedPrefix &outcome);

/** Strategy of the base game whose memory is a token moving in the tree. */
FiniteMemoryStrategy tree_strategy(const ExpandedGame &x, const StrategyTree &tree);

/** Node array with parent and back-edge indices. */
std::string serialize_tree(const ExpandedGame &x, const StrategyTree &tree);

}  // namespace avgen
