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

#include "avgenergy/expansion.hpp"

#include <deque>
#include <map>
#include <stdexcept>

namespace avgen {

namespace {

constexpr std::size_t kBot = Configuration::kBottom;

std::string multi_id(const GameGraph &g, std::size_t s, const std::vector<std::int64_t> &lv) {
    if (s == kBot) return "BOT";
    std::string id = g.id(s) + "@";
    for (std::size_t d = 0; d < lv.size(); ++d) {
        if (d) id += ",";
        id += std::to_string(lv[d]);
    }
    return id;
}

struct RawEdge {
    std::size_t from, to;
    std::vector<std::int64_t> weight;
    std::optional<std::size_t> base;
};

struct RawExpansion {
    std::vector<std::pair<std::size_t, std::vector<std::int64_t>>> configs;
    std::vector<RawEdge> edges;
    std::vector<std::size_t> dead;
    std::size_t start = 0;
    std::optional<std::size_t> bottom;
};

/** Shared by the scalar and the multi-dimensional builders so both agree exactly. */
RawExpansion expand(const GameGraph &g, const std::vector<std::int64_t> &bottom_weight,
                    const std::vector<std::int64_t> &caps, bool overflow_loses, ExpansionScope scope,
                    std::size_t start_state, const std::vector<std::int64_t> &start_levels) {
    const std::size_t k = caps.size();
    RawExpansion r;
    std::map<std::pair<std::size_t, std::vector<std::int64_t>>, std::size_t> index;
    std::deque<std::size_t> queue;

    auto intern = [&](std::size_t s, std::vector<std::int64_t> lv) {
        auto key = std::make_pair(s, std::move(lv));
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        std::size_t id = r.configs.size();
        index.emplace(key, id);
        r.configs.push_back(std::move(key));
        queue.push_back(id);
        if (s == kBot) r.bottom = id;
        return id;
    };

    r.start = intern(start_state, start_levels);
    if (scope == ExpansionScope::Full) {
        for (std::size_t s = 0; s < g.num_states(); ++s) {
            std::vector<std::int64_t> lv(k, 0);
            while (true) {
                intern(s, lv);
                std::size_t d = 0;
                while (d < k && lv[d] == caps[d]) lv[d++] = 0;
                if (d == k) break;
                ++lv[d];
            }
        }
        intern(kBot, {});
    }

    while (!queue.empty()) {
        std::size_t x = queue.front();
        queue.pop_front();
        const std::size_t s = r.configs[x].first;
        if (s == kBot) {
            r.edges.push_back({x, x, bottom_weight, std::nullopt});
            continue;
        }
        const std::vector<std::int64_t> lv = r.configs[x].second;
        bool to_bottom = false;
        std::size_t moves = 0;
        for (std::size_t e : g.out_edges(s)) {
            std::vector<std::int64_t> next(k);
            bool under = false, over = false;
            for (std::size_t d = 0; d < k; ++d) {
                next[d] = checked_add(lv[d], g.weight(e, d));
                under |= next[d] < 0;
                over |= next[d] > caps[d];
            }
            if (under || over) {
                if (!under && !overflow_loses) continue;
                ++moves;
                if (to_bottom) continue;
                to_bottom = true;
                std::size_t b = intern(kBot, {});
                r.edges.push_back({x, b, bottom_weight, e});
                continue;
            }
            ++moves;
            std::size_t y = intern(g.edge(e).to, next);
            r.edges.push_back({x, y, next, e});
        }
        if (moves == 0) {
            r.dead.push_back(x);
            std::size_t b = intern(kBot, {});
            r.edges.push_back({x, b, bottom_weight, std::nullopt});
        }
    }
    return r;
}

GameGraph assemble(const GameGraph &g, const RawExpansion &r, std::size_t k, std::vector<std::size_t> &arena_index) {
    GameBuilder b(k);
    std::vector<std::string> ids;
    ids.reserve(r.configs.size());
    for (const auto &[s, lv] : r.configs) {
        ids.push_back(multi_id(g, s, lv));
        b.add_state(ids.back(), s == kBot ? Player::P1 : g.owner(s));
    }
    for (const auto &e : r.edges) b.add_edge(ids[e.from], e.weight, ids[e.to]);
    b.set_initial(ids[r.start]);
    GameGraph arena = b.build();
    arena_index.resize(r.configs.size());
    for (std::size_t i = 0; i < r.configs.size(); ++i) arena_index[i] = arena.state(ids[i]);
    return arena;
}

std::int64_t bottom_weight_of(const Threshold &t) { return checked_add(to_int64(t.ceil()), 1); }

}  // namespace

std::string configuration_id(const GameGraph &base, const Configuration &c) {
    if (c.is_bottom()) return "BOT";
    return base.id(c.state) + "@" + std::to_string(c.level);
}

std::optional<std::size_t> ExpandedGame::find(const Configuration &c) const {
    auto it = index_.find(c);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t ExpandedGame::num_real_configurations() const {
    return configs_.size() - (bottom() ? 1 : 0);
}

std::optional<std::size_t> ExpandedGame::arena_edge(std::size_t x, std::size_t base_edge) const {
    const Configuration &c = configs_[x];
    if (c.is_bottom()) return std::nullopt;
    const auto range = base_.out_edges(c.state);
    if (base_edge < *range.begin() || base_edge >= *range.end()) return std::nullopt;
    return arena_edge_of_[x][base_edge - *range.begin()];
}

ExpandedGame build_expanded(const GameGraph &g, const Threshold &t, std::int64_t cap, OverflowPolicy policy,
                            const ExpansionOptions &options) {
    if (g.dimension() != 1) throw GameError("expansion requires one dimension");
    if (cap < 0) throw std::invalid_argument("cap must be nonnegative");
    Configuration start = options.start.value_or(Configuration{g.initial(), 0});
    if (start.is_bottom() || start.state >= g.num_states())
        throw std::invalid_argument("invalid start configuration");
    if (start.level < 0 || start.level > cap)
        throw std::invalid_argument("start level " + std::to_string(start.level) + " outside [0, cap]");

    ExpandedGame x;
    x.base_ = g;
    x.threshold_ = t;
    x.cap_ = cap;
    x.policy_ = policy;
    x.bottom_weight_ = bottom_weight_of(t);

    RawExpansion r = expand(g, {x.bottom_weight_}, {cap}, policy == OverflowPolicy::OverflowLoses, options.scope,
                            start.state, {start.level});
    std::vector<std::size_t> arena_index;
    x.arena_ = assemble(g, r, 1, arena_index);

    const std::size_t n = x.arena_.num_states();
    x.configs_.assign(n, Configuration::bottom());
    for (std::size_t i = 0; i < r.configs.size(); ++i) {
        const auto &[s, lv] = r.configs[i];
        Configuration c = s == kBot ? Configuration::bottom() : Configuration{s, lv[0]};
        x.configs_[arena_index[i]] = c;
        x.index_.emplace(c, arena_index[i]);
    }
    for (std::size_t d : r.dead) x.dead_.push_back(x.configs_[arena_index[d]]);

    x.base_edge_of_.assign(x.arena_.num_edges(), std::nullopt);
    x.arena_edge_of_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        const Configuration &c = x.configs_[a];
        if (!c.is_bottom()) x.arena_edge_of_[a].assign(g.out_degree(c.state), std::nullopt);
    }
    for (const auto &e : r.edges) {
        std::size_t from = arena_index[e.from], to = arena_index[e.to];
        std::size_t ae = *x.arena_.find_edge(from, to, e.weight);
        if (!e.base) continue;
        if (!x.base_edge_of_[ae]) x.base_edge_of_[ae] = e.base;
    }
    // Every base edge from a real configuration, including the deduplicated sink moves.
    for (std::size_t a = 0; a < n; ++a) {
        const Configuration &c = x.configs_[a];
        if (c.is_bottom()) continue;
        std::size_t first = *g.out_edges(c.state).begin();
        for (std::size_t e : g.out_edges(c.state)) {
            std::int64_t next = checked_add(c.level, g.weight(e));
            std::optional<std::size_t> ae;
            if (next >= 0 && next <= cap) {
                ae = x.arena_.find_edge(a, *x.find(Configuration{g.edge(e).to, next}), std::vector{next});
            } else if (next < 0 || policy == OverflowPolicy::OverflowLoses) {
                ae = x.arena_.find_edge(a, *x.bottom(), std::vector{x.bottom_weight_});
            }
            x.arena_edge_of_[a][e - first] = ae;
        }
    }
    return x;
}

GameGraph build_multidim_expanded(const GameGraph &g, const std::vector<Threshold> &t,
                                  const std::vector<std::int64_t> &caps, ExpansionScope scope) {
    const std::size_t k = g.dimension();
    if (t.size() != k || caps.size() != k)
        throw GameError("dimension mismatch: game has dimension " + std::to_string(k) + ", got " +
                        std::to_string(t.size()) + " thresholds and " + std::to_string(caps.size()) + " bounds");
    std::vector<std::int64_t> bw;
    for (std::size_t d = 0; d < k; ++d) {
        if (caps[d] < 0) throw std::invalid_argument("upper bounds must be nonnegative");
        bw.push_back(bottom_weight_of(t[d]));
    }
    RawExpansion r = expand(g, bw, caps, true, scope, g.initial(), std::vector<std::int64_t>(k, 0));
    std::vector<std::size_t> arena_index;
    return assemble(g, r, k, arena_index);
}

bool ExpandedPrefix::reaches_bottom() const {
    if (start.is_bottom()) return true;
    for (const auto &s : steps)
        if (s.target.is_bottom()) return true;
    return false;
}

ExpandedPrefix lift_play(const GameGraph &g, const Threshold &t, const PlayPrefix &p, std::int64_t credit) {
    if (g.dimension() != 1) throw GameError("expansion requires one dimension");
    if (credit < 0) throw std::invalid_argument("credit must be nonnegative");
    make_prefix(g, p.start, p.edges);
    const std::int64_t bw = bottom_weight_of(t);
    ExpandedPrefix out{Configuration{p.start, credit}, {}};
    out.steps.reserve(p.length());
    Configuration cur = out.start;
    for (std::size_t e : p.edges) {
        if (!cur.is_bottom()) {
            std::int64_t next = checked_add(cur.level, g.weight(e));
            cur = next < 0 ? Configuration::bottom() : Configuration{g.edge(e).to, next};
        }
        out.steps.push_back({cur, cur.is_bottom() ? bw : cur.level});
    }
    return out;
}

ExpandedPrefix to_expanded_prefix(const ExpandedGame &x, const PlayPrefix &p) {
    make_prefix(x.arena(), p.start, p.edges);
    ExpandedPrefix out{x.configuration(p.start), {}};
    for (std::size_t e : p.edges)
        out.steps.push_back({x.configuration(x.arena().edge(e).to), x.arena().weight(e)});
    return out;
}

Rational mean_payoff(const ExpandedPrefix &p) {
    if (p.steps.empty()) throw std::invalid_argument("payoff of an empty prefix is undefined");
    BigInt sum = 0;
    for (const auto &s : p.steps) sum += s.weight;
    return Rational(sum, BigInt(p.length()));
}

}  // namespace avgen
