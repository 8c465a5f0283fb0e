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

#include <deque>
#include <stdexcept>

#include "avgenergy/solvers.hpp"

namespace avgen {

namespace {

constexpr std::size_t kNoRank = static_cast<std::size_t>(-1);

/** Controlled-predecessor fixpoint. rank[v] = rounds needed, kNoRank outside. */
std::vector<std::size_t> attractor(const GameGraph &g, const std::vector<bool> &target, Player who) {
    const std::size_t n = g.num_states();
    std::vector<std::size_t> rank(n, kNoRank);
    std::vector<std::size_t> remaining(n);
    std::deque<std::size_t> queue;
    for (std::size_t v = 0; v < n; ++v) {
        remaining[v] = g.out_degree(v);
        if (target[v]) {
            rank[v] = 0;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t e : g.in_edges(u)) {
            std::size_t v = g.edge(e).from;
            if (rank[v] != kNoRank) continue;
            if (g.owner(v) == who || --remaining[v] == 0) {
                rank[v] = rank[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return rank;
}

}  // namespace

AttractorResult solve_safety_reachability(const GameGraph &g, const std::vector<bool> &set, Player protagonist,
                                          AttractorGoal goal) {
    const std::size_t n = g.num_states();
    if (set.size() != n) throw std::invalid_argument("set size differs from the number of states");
    AttractorResult r;
    r.strategy.assign(n, std::nullopt);
    if (goal == AttractorGoal::Reach) {
        r.rank = attractor(g, set, protagonist);
        r.winning.resize(n);
        for (std::size_t v = 0; v < n; ++v) r.winning[v] = r.rank[v] != kNoRank;
        for (std::size_t v = 0; v < n; ++v) {
            if (!r.winning[v] || g.owner(v) != protagonist) continue;
            for (std::size_t e : g.out_edges(v)) {
                std::size_t to = g.edge(e).to;
                // On a target any move will do; elsewhere the move must make progress.
                if (r.rank[v] == 0 || r.rank[to] < r.rank[v]) {
                    r.strategy[v] = e;
                    break;
                }
            }
        }
    } else {
        std::vector<std::size_t> lose = attractor(g, set, opponent(protagonist));
        r.rank.assign(n, kNoRank);
        r.winning.resize(n);
        for (std::size_t v = 0; v < n; ++v) r.winning[v] = lose[v] == kNoRank;
        for (std::size_t v = 0; v < n; ++v) {
            if (!r.winning[v] || g.owner(v) != protagonist) continue;
            for (std::size_t e : g.out_edges(v)) {
                if (r.winning[g.edge(e).to]) {
                    r.strategy[v] = e;
                    break;
                }
            }
        }
    }
    return r;
}

}  // namespace avgen
