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

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "avgenergy/solvers.hpp"

namespace avgen {

namespace {

struct Attempt {
    ExpandedGame x;
    AttractorResult a;
    std::vector<bool> target;
    bool win;
};

Attempt attempt(const GameGraph &g, const Threshold &t, const Configuration &start,
                const std::vector<Configuration> &targets, std::int64_t cap) {
    ExpansionOptions opt;
    opt.start = start;
    Attempt r{build_expanded(g, t, cap, OverflowPolicy::OverflowLoses, opt), {}, {}, false};
    r.target.assign(r.x.arena().num_states(), false);
    for (const auto &c : targets)
        if (auto i = r.x.find(c)) r.target[*i] = true;
    r.a = solve_safety_reachability(r.x.arena(), r.target, Player::P0, AttractorGoal::Reach);
    r.win = r.a.winning[r.x.arena().initial()];
    return r;
}

}  // namespace

ReachabilityResult bounded_counter_reachability(const GameGraph &g, const Threshold &t, const Configuration &start,
                                                const std::vector<Configuration> &targets, std::int64_t cap) {
    if (g.dimension() != 1) throw GameError("bounded-counter reachability requires one dimension");
    if (start.is_bottom() || start.state >= g.num_states()) throw std::invalid_argument("invalid start configuration");
    if (start.level < 0 || start.level > cap) throw std::invalid_argument("start level must lie in [0, cap]");
    for (const auto &c : targets) {
        if (c.is_bottom() || c.state >= g.num_states()) throw std::invalid_argument("invalid target configuration");
        if (c.level < 0 || Rational(c.level) > t.value())
            throw std::invalid_argument("target " + configuration_id(g, c) + " has level above the threshold " +
                                        t.str());
    }

    ReachabilityResult r;
    r.cap_used = cap;
    if (!attempt(g, t, start, targets, cap).win) return r;

    std::int64_t lo = start.level, hi = cap;
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (attempt(g, t, start, targets, mid).win) hi = mid;
        else lo = mid + 1;
    }
    Attempt best = attempt(g, t, start, targets, lo);
    r.win = true;
    r.cap_used = lo;
    r.strategy = energy_tracking_strategy(best.x, best.a.strategy);

    const GameGraph &arena = best.x.arena();
    std::vector<bool> seen(arena.num_states(), false);
    std::deque<std::size_t> q{arena.initial()};
    seen[arena.initial()] = true;
    std::int64_t max_level = start.level;
    while (!q.empty()) {
        std::size_t v = q.front();
        q.pop_front();
        max_level = std::max(max_level, best.x.configuration(v).level);
        if (best.target[v]) continue;
        auto visit = [&](std::size_t e) {
            std::size_t w = arena.edge(e).to;
            if (!seen[w]) {
                seen[w] = true;
                q.push_back(w);
            }
        };
        if (arena.owner(v) == Player::P0) {
            visit(*best.a.strategy[v]);
        } else {
            for (std::size_t e : arena.out_edges(v)) visit(e);
        }
    }
    r.max_level = max_level;
    return r;
}

}  // namespace avgen
