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
#include <stdexcept>

#include "avgenergy/verify.hpp"

namespace avgen {

std::vector<Rational> SimulationTrace::average_energy(std::size_t step) const {
    if (step == 0 || step > level_sums.size()) throw std::out_of_range("step out of range");
    std::vector<Rational> r;
    for (std::int64_t s : level_sums[step - 1]) r.emplace_back(Rational(s, static_cast<std::int64_t>(step)));
    return r;
}

SimulationTrace simulate(const GameGraph &g, const FiniteMemoryStrategy &sigma, const Adversary &adversary,
                         std::size_t steps, std::int64_t credit) {
    if (steps == 0) throw std::invalid_argument("simulate needs at least one step");
    const std::size_t k = g.dimension();
    std::mt19937_64 rng(adversary.seed);
    std::size_t script_pos = 0;

    SimulationTrace tr;
    tr.play.start = g.initial();
    tr.play.edges.reserve(steps);
    tr.levels.reserve(steps);
    tr.level_sums.reserve(steps);
    tr.memory.reserve(steps);
    std::vector<std::int64_t> level(k, credit), sums(k, 0);
    std::size_t state = g.initial();
    std::size_t mem = sigma.initial();

    for (std::size_t i = 0; i < steps; ++i) {
        std::size_t e;
        if (g.owner(state) == Player::P0) {
            auto c = sigma.choice(mem, state);
            if (!c) throw StrategyError("strategy has no choice at memory " + sigma.label(mem) + ", state '" +
                                        g.id(state) + "'");
            e = *c;
        } else {
            auto range = g.out_edges(state);
            switch (adversary.kind) {
                case Adversary::Kind::Random:
                    e = *range.begin() + static_cast<std::size_t>(rng() % g.out_degree(state));
                    break;
                case Adversary::Kind::Script: {
                    if (script_pos >= adversary.script.size())
                        throw std::invalid_argument("script exhausted at entry " + std::to_string(script_pos));
                    e = adversary.script[script_pos];
                    if (e >= g.num_edges() || g.edge(e).from != state)
                        throw std::invalid_argument("script entry " + std::to_string(script_pos) +
                                                    " is not available at state '" + g.id(state) + "'");
                    ++script_pos;
                    break;
                }
                default: {
                    e = *range.begin();
                    for (std::size_t f : range) {
                        auto wf = g.weights(f), we = g.weights(e);
                        if (std::lexicographical_compare(we.begin(), we.end(), wf.begin(), wf.end())) e = f;
                    }
                }
            }
        }
        auto next = sigma.update(mem, e);
        if (!next) throw StrategyError("strategy has no update at memory " + sigma.label(mem) + " for edge " +
                                       g.edge_str(e));
        mem = *next;
        for (std::size_t d = 0; d < k; ++d) {
            level[d] = checked_add(level[d], g.weight(e, d));
            sums[d] = checked_add(sums[d], level[d]);
        }
        state = g.edge(e).to;
        tr.play.edges.push_back(e);
        tr.levels.push_back(level);
        tr.level_sums.push_back(sums);
        tr.memory.push_back(mem);
    }
    return tr;
}

}  // namespace avgen
