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
#include "solvers_internal.hpp"

namespace avgen {

namespace detail {

namespace {

inline std::int64_t step(std::int64_t x, std::int64_t w, std::int64_t ceiling) {
    if (x == kTop) return kTop;
    std::int64_t need = x - w;  // |x| <= ceiling and |w| <= ceiling + W, no overflow
    if (need < 0) need = 0;
    return need > ceiling ? kTop : need;
}

}  // namespace

Measure progress_measure(const GameGraph &g, std::span<const std::int64_t> w, Player protagonist) {
    const std::size_t n = g.num_states();
    Measure m;
    for (std::size_t v = 0; v < n; ++v) {
        std::int64_t worst = 0;
        for (std::size_t e : g.out_edges(v)) worst = std::min(worst, w[e]);
        m.ceiling = checked_add(m.ceiling, -worst);
    }
    // Keeps x - w representable for every finite x <= ceiling.
    for (std::size_t e = 0; e < g.num_edges(); ++e) checked_add(m.ceiling, w[e] < 0 ? -w[e] : w[e]);

    m.f.assign(n, 0);
    auto lift = [&](std::size_t v) {
        const bool mine = g.owner(v) == protagonist;
        std::int64_t best = mine ? kTop : 0;
        for (std::size_t e : g.out_edges(v)) {
            std::int64_t s = step(m.f[g.edge(e).to], w[e], m.ceiling);
            best = mine ? std::min(best, s) : std::max(best, s);
        }
        return best;
    };

    std::deque<std::size_t> queue;
    std::vector<char> queued(n, 1);
    for (std::size_t v = 0; v < n; ++v) queue.push_back(v);
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        queued[v] = 0;
        if (m.f[v] == kTop) continue;
        std::int64_t nv = lift(v);
        if (nv <= m.f[v]) continue;
        m.f[v] = nv;
        for (std::size_t e : g.in_edges(v)) {
            std::size_t u = g.edge(e).from;
            if (!queued[u] && m.f[u] != kTop) {
                queued[u] = 1;
                queue.push_back(u);
            }
        }
    }
    return m;
}

std::vector<std::optional<std::size_t>> measure_strategy(const GameGraph &g, std::span<const std::int64_t> w,
                                                         Player protagonist, const Measure &m) {
    std::vector<std::optional<std::size_t>> s(g.num_states());
    for (std::size_t v = 0; v < g.num_states(); ++v) {
        if (g.owner(v) != protagonist || m.f[v] == kTop) continue;
        for (std::size_t e : g.out_edges(v)) {
            if (step(m.f[g.edge(e).to], w[e], m.ceiling) <= m.f[v]) {
                s[v] = e;
                break;
            }
        }
    }
    return s;
}

}  // namespace detail

EnergyResult solve_energy_game(const GameGraph &g, Player protagonist, CreditMode mode, std::int64_t credit) {
    if (g.dimension() != 1) throw GameError("energy games require one dimension");
    if (credit < 0) throw std::invalid_argument("credit must be nonnegative");
    std::vector<std::int64_t> w(g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e) w[e] = g.weight(e);
    detail::Measure m = detail::progress_measure(g, w, protagonist);

    EnergyResult r;
    r.ceiling = m.ceiling;
    r.min_credit.resize(g.num_states());
    r.winning.resize(g.num_states());
    for (std::size_t v = 0; v < g.num_states(); ++v) {
        if (m.f[v] != detail::kTop) r.min_credit[v] = m.f[v];
        r.winning[v] = m.f[v] != detail::kTop && (mode == CreditMode::Any || m.f[v] <= credit);
    }
    r.strategy = detail::measure_strategy(g, w, protagonist, m);
    return r;
}

GameResult solve_egl(const GameGraph &g, std::int64_t credit) {
    EnergyResult e = solve_energy_game(g, Player::P0, CreditMode::Zero, credit);
    GameResult r;
    r.winner = e.winning[g.initial()] ? Player::P0 : Player::P1;
    if (r.winner == Player::P0) r.strategy = memoryless_strategy(g, e.strategy);
    return r;
}

GameResult solve_eglu(const GameGraph &g, std::int64_t upper, std::int64_t credit) {
    if (g.dimension() != 1) throw GameError("energy games require one dimension");
    if (upper < 0) throw std::invalid_argument("upper bound must be nonnegative");
    GameResult r;
    if (credit > upper) return r;
    ExpansionOptions opt;
    opt.start = Configuration{g.initial(), credit};
    ExpandedGame x = build_expanded(g, Threshold(0), upper, OverflowPolicy::OverflowLoses, opt);
    std::vector<bool> unsafe(x.arena().num_states(), false);
    if (auto b = x.bottom()) unsafe[*b] = true;
    AttractorResult a = solve_safety_reachability(x.arena(), unsafe, Player::P0, AttractorGoal::Safety);
    if (a.winning[x.arena().initial()]) {
        r.winner = Player::P0;
        r.strategy = energy_tracking_strategy(x, a.strategy);
    }
    return r;
}

}  // namespace avgen
