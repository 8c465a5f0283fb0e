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

#include "avgenergy/strategy.hpp"

#include <algorithm>

#include "avgenergy/expansion.hpp"

namespace avgen {

FiniteMemoryStrategy::FiniteMemoryStrategy(std::size_t memory_size, Memory initial)
    : size_(memory_size), initial_(initial) {
    if (size_ == 0) throw StrategyError("a strategy needs at least one memory state");
    if (initial_ >= size_) throw StrategyError("initial memory out of range");
    if (size_ > 0xffffffffu) throw StrategyError("memory too large");
}

void FiniteMemoryStrategy::set_update(Memory m, std::size_t edge, Memory next) {
    if (m >= size_ || next >= size_) throw StrategyError("memory state out of range");
    update_[key(m, edge)] = next;
}

void FiniteMemoryStrategy::set_choice(Memory m, std::size_t state, std::size_t edge) {
    if (m >= size_) throw StrategyError("memory state out of range");
    choice_[key(m, state)] = edge;
}

std::optional<FiniteMemoryStrategy::Memory> FiniteMemoryStrategy::update(Memory m, std::size_t edge) const {
    auto it = update_.find(key(m, edge));
    if (it == update_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> FiniteMemoryStrategy::choice(Memory m, std::size_t state) const {
    auto it = choice_.find(key(m, state));
    if (it == choice_.end()) return std::nullopt;
    return it->second;
}

std::vector<FiniteMemoryStrategy::UpdateEntry> FiniteMemoryStrategy::updates() const {
    std::vector<UpdateEntry> r;
    r.reserve(update_.size());
    for (const auto &[k, next] : update_) r.push_back({k >> 32, static_cast<std::size_t>(k & 0xffffffffu), next});
    std::sort(r.begin(), r.end(), [](const UpdateEntry &a, const UpdateEntry &b) {
        return a.memory != b.memory ? a.memory < b.memory : a.edge < b.edge;
    });
    return r;
}

std::vector<FiniteMemoryStrategy::ChoiceEntry> FiniteMemoryStrategy::choices() const {
    std::vector<ChoiceEntry> r;
    r.reserve(choice_.size());
    for (const auto &[k, e] : choice_) r.push_back({k >> 32, static_cast<std::size_t>(k & 0xffffffffu), e});
    std::sort(r.begin(), r.end(), [](const ChoiceEntry &a, const ChoiceEntry &b) {
        return a.memory != b.memory ? a.memory < b.memory : a.state < b.state;
    });
    return r;
}

void FiniteMemoryStrategy::set_labels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != size_) throw StrategyError("label count differs from memory size");
    labels_ = std::move(labels);
}

std::string FiniteMemoryStrategy::label(Memory m) const {
    return labels_.empty() ? std::to_string(m) : labels_[m];
}

FiniteMemoryStrategy memoryless_strategy(const GameGraph &g, std::span<const std::optional<std::size_t>> choice) {
    FiniteMemoryStrategy s(1, 0);
    for (std::size_t e = 0; e < g.num_edges(); ++e) s.set_update(0, e, 0);
    for (std::size_t v = 0; v < g.num_states() && v < choice.size(); ++v) {
        if (g.owner(v) != Player::P0 || !choice[v]) continue;
        if (g.edge(*choice[v]).from != v) throw StrategyError("choice is not an edge of its state");
        s.set_choice(0, v, *choice[v]);
    }
    return s;
}

FiniteMemoryStrategy energy_tracking_strategy(const ExpandedGame &x,
                                              std::span<const std::optional<std::size_t>> arena_choice) {
    const GameGraph &g = x.base();
    const std::int64_t cap = x.cap();
    const Configuration &start = x.configuration(x.arena().initial());
    FiniteMemoryStrategy s(static_cast<std::size_t>(cap) + 1, static_cast<std::size_t>(start.level));
    for (std::int64_t m = 0; m <= cap; ++m) {
        for (std::size_t e = 0; e < g.num_edges(); ++e) {
            std::int64_t next = m + g.weight(e);
            if (next >= 0 && next <= cap)
                s.set_update(static_cast<std::size_t>(m), e, static_cast<std::size_t>(next));
        }
    }
    for (std::size_t a = 0; a < x.arena().num_states() && a < arena_choice.size(); ++a) {
        const Configuration &c = x.configuration(a);
        if (c.is_bottom() || g.owner(c.state) != Player::P0 || !arena_choice[a]) continue;
        auto be = x.base_edge(*arena_choice[a]);
        if (be) s.set_choice(static_cast<std::size_t>(c.level), c.state, *be);
    }
    return s;
}

FiniteMemoryStrategy level_rule_strategy(const GameGraph &g, std::int64_t cap, const std::vector<LevelRule> &rules) {
    FiniteMemoryStrategy s(static_cast<std::size_t>(cap) + 1, 0);
    for (std::int64_t m = 0; m <= cap; ++m) {
        for (std::size_t e = 0; e < g.num_edges(); ++e) {
            std::int64_t next = m + g.weight(e);
            if (next >= 0 && next <= cap)
                s.set_update(static_cast<std::size_t>(m), e, static_cast<std::size_t>(next));
        }
        for (std::size_t v = 0; v < g.num_states(); ++v) {
            if (g.owner(v) != Player::P0) continue;
            for (const auto &r : rules) {
                if (r.state != g.id(v) || m < r.min_level) continue;
                auto es = g.edges_between(v, g.state(r.target));
                if (es.empty()) throw StrategyError("rule names a missing edge " + r.state + " -> " + r.target);
                s.set_choice(static_cast<std::size_t>(m), v, es.front());
                break;
            }
        }
    }
    return s;
}

}  // namespace avgen
