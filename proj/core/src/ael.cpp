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

#include "avgenergy/ael.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "avgenergy/play.hpp"
#include "avgenergy/solvers.hpp"

namespace avgen {

BoundSet compute_bounds(const GameGraph &g, const Threshold &t, const BoundOptions &options) {
    if (g.dimension() != 1) throw GameError("bounds require one dimension");
    if (options.exponent_multiplier <= 0) throw std::invalid_argument("exponent multiplier must be positive");
    const BigInt n = g.num_states();
    const BigInt edges = g.num_edges();
    const BigInt W = g.max_abs_weight();

    BoundSet b;
    b.exponent_multiplier = options.exponent_multiplier;
    Rational tp1 = t.value() + 1;
    Rational n_raw = Rational(8 * std::max(t.t1(), BigInt(1)) * t.t2()) * tp1 * tp1 * tp1 * Rational(n * n);
    b.N = ceil(n_raw);
    b.M = std::max(ceil(t.value() + Rational(W * (b.N + 1))), BigInt(1));
    Rational inner = Rational(b.M + n + edges * W + n * (t.ceil() + 1));
    b.mprime_exponent = ceil(options.exponent_multiplier * inner);
    if (b.mprime_exponent <= BigInt(options.bit_budget)) {
        b.Mprime = BigInt(1) << static_cast<unsigned>(b.mprime_exponent);
    }
    return b;
}

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Win: return "WIN";
        case Outcome::Lose: return "LOSE";
        default: return "INCONCLUSIVE";
    }
}

namespace {

bool reaches_mprime(const BoundSet &b, std::int64_t cap) { return b.Mprime && BigInt(cap) >= *b.Mprime; }

SolveVerdict aelu_core(const GameGraph &g, const Threshold &t, std::int64_t upper, std::int64_t credit,
                       const BoundSet &bounds) {
    SolveVerdict v;
    v.bounds = bounds;
    v.cap_used = upper;
    v.caps_tried.push_back(upper);
    v.outcome = Outcome::Lose;
    if (credit <= upper) {
        ExpansionOptions opt;
        opt.start = Configuration{g.initial(), credit};
        ExpandedGame x = build_expanded(g, t, upper, OverflowPolicy::OverflowLoses, opt);
        MeanPayoffResult mp = solve_mp_threshold(x.arena(), t);
        if (mp.p0_wins[x.arena().initial()]) {
            v.outcome = Outcome::Win;
            v.strategy = energy_tracking_strategy(x, mp.p0_strategy);
        }
    }
    v.conclusive_lose = v.outcome == Outcome::Lose && reaches_mprime(bounds, upper);
    return v;
}

}  // namespace

SolveVerdict solve_aelu(const GameGraph &g, const Threshold &t, std::int64_t upper, std::int64_t credit,
                        const BoundOptions &options) {
    if (upper < 0) throw std::invalid_argument("upper bound must be nonnegative");
    if (credit < 0) throw std::invalid_argument("credit must be nonnegative");
    return aelu_core(g, t, upper, credit, compute_bounds(g, t, options));
}

SolveVerdict solve_ael(const GameGraph &g, const Threshold &t, const CapSchedule &schedule, std::int64_t credit) {
    if (credit < 0) throw std::invalid_argument("credit must be nonnegative");
    if (schedule.budget < 0 || schedule.start < 0) throw std::invalid_argument("caps must be nonnegative");
    const BoundSet bounds = compute_bounds(g, t, schedule.bounds);

    std::int64_t limit = schedule.budget;
    if (bounds.Mprime && *bounds.Mprime < BigInt(limit)) limit = static_cast<std::int64_t>(*bounds.Mprime);
    std::int64_t cap = std::min(std::max(schedule.start, credit), limit);

    std::vector<std::int64_t> tried;
    std::int64_t last_lose = -1;
    while (true) {
        SolveVerdict v = aelu_core(g, t, cap, credit, bounds);
        tried.push_back(cap);
        if (v.outcome == Outcome::Win) {
            if (schedule.minimize) {
                // Winning is monotone in the cap: any strategy for cap u also works for u + 1.
                std::int64_t lo = std::max(last_lose + 1, credit), hi = cap;
                while (lo < hi) {
                    std::int64_t mid = lo + (hi - lo) / 2;
                    SolveVerdict m = aelu_core(g, t, mid, credit, bounds);
                    tried.push_back(mid);
                    if (m.outcome == Outcome::Win) {
                        hi = mid;
                        v = std::move(m);
                    } else {
                        lo = mid + 1;
                    }
                }
                if (v.cap_used != hi) v = aelu_core(g, t, hi, credit, bounds);
            }
            v.caps_tried = std::move(tried);
            return v;
        }
        last_lose = cap;
        if (cap >= limit) break;
        cap = std::min(limit, std::max<std::int64_t>(1, cap > limit / 2 ? limit : cap * 2));
    }

    SolveVerdict v;
    v.bounds = bounds;
    v.cap_used = cap;
    v.caps_tried = std::move(tried);
    if (reaches_mprime(bounds, cap)) {
        v.outcome = Outcome::Lose;
        v.conclusive_lose = true;
    } else {
        v.outcome = Outcome::Inconclusive;
    }
    return v;
}

namespace {

/** Lasso from the initial state when both players play positionally. */
LassoPlay positional_lasso(const GameGraph &g, const std::vector<std::size_t> &succ_edge) {
    std::unordered_map<std::size_t, std::size_t> seen;
    std::vector<std::size_t> path;
    std::size_t cur = g.initial();
    while (!seen.count(cur)) {
        seen.emplace(cur, path.size());
        path.push_back(succ_edge[cur]);
        cur = g.edge(succ_edge[cur]).to;
    }
    std::size_t k = seen.at(cur);
    return {PlayPrefix{g.initial(), std::vector<std::size_t>(path.begin(), path.begin() + k)},
            PlayPrefix{cur, std::vector<std::size_t>(path.begin() + k, path.end())}};
}

/** Odometer over the choices of `states`; false when exhausted. */
bool advance(const GameGraph &g, const std::vector<std::size_t> &states, std::vector<std::size_t> &choice) {
    for (std::size_t s : states) {
        auto range = g.out_edges(s);
        if (++choice[s] < *range.end()) return true;
        choice[s] = *range.begin();
    }
    return false;
}

}  // namespace

SolveVerdict solve_ae(const GameGraph &g, const Threshold &t, std::uint64_t budget) {
    if (g.dimension() != 1) throw GameError("AE solving requires one dimension");
    SolveVerdict v;
    v.bounds = compute_bounds(g, t);
    std::vector<std::size_t> p0, p1;
    std::uint64_t combos = 1;
    for (std::size_t s = 0; s < g.num_states(); ++s) {
        (g.owner(s) == Player::P0 ? p0 : p1).push_back(s);
        std::uint64_t d = g.out_degree(s);
        if (combos > budget / d) {
            combos = budget + 1;
        } else {
            combos *= d;
        }
    }
    if (combos > budget) {
        v.outcome = Outcome::Inconclusive;
        return v;
    }

    const PayoffValue bound(t.value());
    std::vector<std::size_t> choice(g.num_states());
    for (std::size_t s = 0; s < g.num_states(); ++s) choice[s] = *g.out_edges(s).begin();
    do {
        for (std::size_t s : p1) choice[s] = *g.out_edges(s).begin();
        bool good = true;
        do {
            LassoPayoffs lp = lasso_payoffs(g, positional_lasso(g, choice));
            if (!(lp.ae_sup[0] <= bound)) good = false;
        } while (good && advance(g, p1, choice));
        if (good) {
            std::vector<std::optional<std::size_t>> sigma(g.num_states());
            for (std::size_t s : p0) sigma[s] = choice[s];
            v.outcome = Outcome::Win;
            v.strategy = memoryless_strategy(g, sigma);
            return v;
        }
    } while (advance(g, p0, choice));
    v.outcome = Outcome::Lose;
    return v;
}

}  // namespace avgen
