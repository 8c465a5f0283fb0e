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

#include <stdexcept>

#include "avgenergy/solvers.hpp"
#include "solvers_internal.hpp"

namespace avgen {

MeanPayoffResult solve_mp_threshold(const GameGraph &g, const Threshold &t, bool with_strategies) {
    if (g.dimension() != 1) throw GameError("mean-payoff games require one dimension");
    const std::size_t n = g.num_states();
    const std::int64_t t1 = to_int64(t.t1());
    const std::int64_t t2 = to_int64(t.t2());
    const std::int64_t scale = static_cast<std::int64_t>(n);

    // P1 maximizes n(t2 w - t1) - 1: a finite credit means every cycle has mean > t.
    std::vector<std::int64_t> up(g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e)
        up[e] = checked_add(checked_mul(scale, checked_add(checked_mul(t2, g.weight(e)), -t1)), -1);
    detail::Measure m1 = detail::progress_measure(g, up, Player::P1);

    MeanPayoffResult r;
    r.p0_wins.resize(n);
    for (std::size_t v = 0; v < n; ++v) r.p0_wins[v] = m1.f[v] == detail::kTop;
    if (!with_strategies) return r;

    r.p1_strategy = detail::measure_strategy(g, up, Player::P1, m1);

    // P0 keeps t1 - t2 w from draining: every reachable cycle has mean <= t.
    std::vector<std::int64_t> down(g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e) down[e] = checked_add(t1, -checked_mul(t2, g.weight(e)));
    detail::Measure m0 = detail::progress_measure(g, down, Player::P0);
    for (std::size_t v = 0; v < n; ++v) {
        if ((m0.f[v] != detail::kTop) != r.p0_wins[v])
            throw std::logic_error("mean-payoff witness games disagree at state '" + g.id(v) + "'");
    }
    r.p0_strategy = detail::measure_strategy(g, down, Player::P0, m0);
    return r;
}

}  // namespace avgen
