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
#include <string_view>
#include <vector>

#include "avgenergy/game.hpp"
#include "avgenergy/numeric.hpp"

namespace avgen {

/** A start state followed by a chain of edge indices. Length is the number of edges. */
struct PlayPrefix {
    std::size_t start = 0;
    std::vector<std::size_t> edges;

    std::size_t length() const { return edges.size(); }
    bool empty() const { return edges.empty(); }
    std::size_t last(const GameGraph &g) const { return edges.empty() ? start : g.edge(edges.back()).to; }
};

/** Builds a prefix and checks that the edges chain. */
PlayPrefix make_prefix(const GameGraph &g, std::size_t start, std::vector<std::size_t> edges);

/**
 * Parses a comma-separated state path such as "s0,s2,s0". A hop may carry an
 * explicit weight ("s2#4", or "s2#1:0" for vectors) to pick among parallel edges.
 */
PlayPrefix parse_path(const GameGraph &g, std::string_view text);

/** Ultimately periodic play stem . cycle^omega. The stem may be empty. */
struct LassoPlay {
    PlayPrefix stem;
    PlayPrefix cycle;
};

void validate_lasso(const GameGraph &g, const LassoPlay &l);

/** Follows the lowest-index edge from the initial state until a state repeats. */
LassoPlay first_edge_lasso(const GameGraph &g);

std::vector<std::int64_t> energy_level(const GameGraph &g, const PlayPrefix &p);
std::vector<Rational> mean_payoff(const GameGraph &g, const PlayPrefix &p);
std::vector<Rational> average_energy(const GameGraph &g, const PlayPrefix &p);

/** levels[i] is the energy vector after i + 1 steps, starting from `credit` in every dimension. */
std::vector<std::vector<std::int64_t>> running_levels(const GameGraph &g, const PlayPrefix &p,
                                                      std::int64_t credit = 0);

struct LassoPayoffs {
    std::vector<PayoffValue> mp_sup;
    std::vector<PayoffValue> ae_sup;
    std::vector<PayoffValue> el_sup;
    std::vector<PayoffValue> el_inf;
};

/**
 * Limit payoffs of a lasso. MP is the cycle mean. A cycle with nonzero sum
 * drives AE and both EL limits to the matching infinity; otherwise they are
 * the mean, max and min of the levels seen along one period.
 */
LassoPayoffs lasso_payoffs(const GameGraph &g, const LassoPlay &l);

}  // namespace avgen
