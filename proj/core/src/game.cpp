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

#include "avgenergy/game.hpp"

#include <algorithm>
#include <numeric>

namespace avgen {

namespace {

std::string location(std::size_t line, std::size_t column) {
    if (line == 0) return "";
    return " at line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::string weight_str(std::span<const std::int64_t> w) {
    if (w.size() == 1) return std::to_string(w[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(w[i]);
    }
    return s + ")";
}

}  // namespace

ParseError::ParseError(const std::string &what, std::size_t line, std::size_t column)
    : GameError(what + location(line, column)), line_(line), column_(column) {}

std::optional<std::size_t> GameGraph::find_state(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t GameGraph::state(std::string_view id) const {
    auto s = find_state(id);
    if (!s) throw GameError("unknown state '" + std::string(id) + "'");
    return *s;
}

std::optional<std::size_t> GameGraph::find_edge(std::size_t from, std::size_t to,
                                                std::span<const std::int64_t> w) const {
    for (std::size_t e : out_edges(from)) {
        if (edges_[e].to != to) continue;
        auto we = weights(e);
        if (std::equal(we.begin(), we.end(), w.begin(), w.end())) return e;
    }
    return std::nullopt;
}

std::vector<std::size_t> GameGraph::edges_between(std::size_t from, std::size_t to) const {
    std::vector<std::size_t> r;
    for (std::size_t e : out_edges(from))
        if (edges_[e].to == to) r.push_back(e);
    return r;
}

GameGraph GameGraph::with_initial(std::size_t s) const {
    if (s >= num_states()) throw GameError("initial state out of range");
    GameGraph g = *this;
    g.initial_ = s;
    return g;
}

std::string GameGraph::edge_str(std::size_t e) const {
    return "(" + ids_[edges_[e].from] + ", " + weight_str(weights(e)) + ", " + ids_[edges_[e].to] + ")";
}

GameBuilder::GameBuilder(std::size_t dimension) : dim_(dimension) {
    if (dim_ == 0) throw GameError("dimension must be at least one");
}

GameBuilder &GameBuilder::add_state(std::string id, Player owner) {
    if (!owner_of_.emplace(id, owner).second) {
        if (!duplicate_state_) duplicate_state_ = id;
        return *this;
    }
    states_.emplace_back(std::move(id), owner);
    return *this;
}

GameBuilder &GameBuilder::add_edge(std::string from, std::vector<std::int64_t> weight, std::string to) {
    edges_.push_back({std::move(from), std::move(weight), std::move(to)});
    return *this;
}

GameBuilder &GameBuilder::add_edge(std::string from, std::int64_t weight, std::string to) {
    return add_edge(std::move(from), std::vector<std::int64_t>{weight}, std::move(to));
}

GameBuilder &GameBuilder::set_initial(std::string id) {
    initial_ = std::move(id);
    return *this;
}

GameGraph GameBuilder::build() const {
    if (duplicate_state_) throw GameError("duplicate state id '" + *duplicate_state_ + "'");
    if (states_.empty()) throw GameError("game has no states");

    GameGraph g;
    g.dim_ = dim_;

    std::vector<std::size_t> order(states_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return states_[a].first < states_[b].first; });
    g.ids_.reserve(order.size());
    g.owners_.reserve(order.size());
    for (std::size_t i : order) {
        g.index_.emplace(states_[i].first, g.ids_.size());
        g.ids_.push_back(states_[i].first);
        g.owners_.push_back(states_[i].second);
    }

    struct Resolved {
        std::size_t from, to, src;
    };
    std::vector<Resolved> resolved;
    resolved.reserve(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto &pe = edges_[i];
        auto f = g.index_.find(pe.from);
        if (f == g.index_.end()) throw GameError("edge references unknown state '" + pe.from + "'");
        auto t = g.index_.find(pe.to);
        if (t == g.index_.end()) throw GameError("edge references unknown state '" + pe.to + "'");
        if (pe.weight.size() != dim_)
            throw GameError("dimension mismatch: edge (" + pe.from + ", " + weight_str(pe.weight) + ", " +
                            pe.to + ") has dimension " + std::to_string(pe.weight.size()) + ", expected " +
                            std::to_string(dim_));
        resolved.push_back({f->second, t->second, i});
    }
    std::sort(resolved.begin(), resolved.end(), [&](const Resolved &a, const Resolved &b) {
        if (a.from != b.from) return a.from < b.from;
        if (a.to != b.to) return a.to < b.to;
        return edges_[a.src].weight < edges_[b.src].weight;
    });
    for (std::size_t i = 1; i < resolved.size(); ++i) {
        const auto &a = resolved[i - 1], &b = resolved[i];
        if (a.from == b.from && a.to == b.to && edges_[a.src].weight == edges_[b.src].weight) {
            const auto &pe = edges_[b.src];
            throw GameError("duplicate edge (" + pe.from + ", " + weight_str(pe.weight) + ", " + pe.to + ")");
        }
    }

    const std::size_t n = g.ids_.size();
    g.edges_.reserve(resolved.size());
    g.weights_.reserve(resolved.size() * dim_);
    g.out_begin_.assign(n + 1, 0);
    for (const auto &r : resolved) {
        g.edges_.push_back({r.from, r.to});
        for (std::int64_t w : edges_[r.src].weight) {
            g.weights_.push_back(w);
            if (w == INT64_MIN) throw GameError("weight out of range");
            g.max_abs_ = std::max(g.max_abs_, w < 0 ? -w : w);
        }
        ++g.out_begin_[r.from + 1];
    }
    for (std::size_t s = 0; s < n; ++s) {
        if (g.out_begin_[s + 1] == 0) throw GameError("state '" + g.ids_[s] + "' has no outgoing edge");
        g.out_begin_[s + 1] += g.out_begin_[s];
    }

    g.in_begin_.assign(n + 1, 0);
    for (const auto &e : g.edges_) ++g.in_begin_[e.to + 1];
    for (std::size_t s = 0; s < n; ++s) g.in_begin_[s + 1] += g.in_begin_[s];
    g.in_edges_.resize(g.edges_.size());
    std::vector<std::size_t> fill(g.in_begin_.begin(), g.in_begin_.end() - 1);
    for (std::size_t e = 0; e < g.edges_.size(); ++e) g.in_edges_[fill[g.edges_[e].to]++] = e;

    if (!initial_) throw GameError("no initial state given");
    auto it = g.index_.find(*initial_);
    if (it == g.index_.end()) throw GameError("initial state '" + *initial_ + "' is not a declared state");
    g.initial_ = it->second;
    return g;
}

}  // namespace avgen
