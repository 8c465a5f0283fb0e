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

#include "avgenergy/verify.hpp"

#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "avgenergy/solvers.hpp"

namespace avgen {

namespace {

struct Node {
    std::size_t memory;
    std::size_t state;
    std::int64_t level;
    bool operator==(const Node &) const = default;
};

struct NodeHash {
    std::size_t operator()(const Node &n) const {
        std::size_t h = std::hash<std::size_t>{}(n.memory);
        h = h * 1000003u ^ std::hash<std::size_t>{}(n.state);
        return h * 1000003u ^ std::hash<std::int64_t>{}(n.level);
    }
};

struct Product {
    std::vector<Node> nodes;
    WeightedDigraph graph;
    /** Base edge of each product arc. */
    std::vector<std::size_t> edge_of;
    /** BFS parent arc of each node (SIZE_MAX at the root). */
    std::vector<std::size_t> parent;
};

PlayPrefix prefix_of(const Product &p, std::size_t start_state, const std::vector<std::size_t> &arcs) {
    PlayPrefix r;
    r.start = arcs.empty() ? start_state : p.nodes[p.graph.arcs[arcs.front()].from].state;
    for (std::size_t a : arcs) r.edges.push_back(p.edge_of[a]);
    return r;
}

std::vector<std::size_t> path_to(const Product &p, std::size_t node) {
    std::vector<std::size_t> arcs;
    while (p.parent[node] != std::numeric_limits<std::size_t>::max()) {
        arcs.push_back(p.parent[node]);
        node = p.graph.arcs[p.parent[node]].from;
    }
    return {arcs.rbegin(), arcs.rend()};
}

VerifyWitness lasso_witness(const Product &p, std::size_t initial, const std::vector<std::size_t> &cycle,
                            std::string reason) {
    std::size_t head = p.graph.arcs[cycle.front()].from;
    VerifyWitness w;
    w.stem = prefix_of(p, initial, path_to(p, head));
    w.stem.start = initial;
    w.cycle = prefix_of(p, initial, cycle);
    w.reason = std::move(reason);
    return w;
}

}  // namespace

VerifyResult verify_strategy(const GameGraph &g, const Threshold &t, std::int64_t upper,
                             const FiniteMemoryStrategy &sigma, VerifyObjective objective, std::int64_t credit) {
    if (g.dimension() != 1) throw GameError("verification requires one dimension");
    if (credit < 0) throw std::invalid_argument("credit must be nonnegative");
    const bool bounded = objective != VerifyObjective::EGL;
    if (bounded && upper < 0) throw std::invalid_argument("upper bound must be nonnegative");

    VerifyResult res;
    if (bounded && credit > upper) {
        res.witness = VerifyWitness{PlayPrefix{g.initial(), {}}, std::nullopt, "initial credit exceeds the upper bound"};
        return res;
    }

    Product p;
    std::unordered_map<Node, std::size_t, NodeHash> index;
    auto intern = [&](const Node &n, std::size_t parent_arc) {
        auto [it, fresh] = index.emplace(n, p.nodes.size());
        if (fresh) {
            p.nodes.push_back(n);
            p.parent.push_back(parent_arc);
        }
        return std::make_pair(it->second, fresh);
    };

    intern(Node{sigma.initial(), g.initial(), bounded ? credit : 0}, std::numeric_limits<std::size_t>::max());
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop_front();
        const Node n = p.nodes[u];
        std::vector<std::size_t> moves;
        if (g.owner(n.state) == Player::P0) {
            auto c = sigma.choice(n.memory, n.state);
            if (!c) throw StrategyError("strategy has no choice at memory " + sigma.label(n.memory) + ", state '" +
                                        g.id(n.state) + "'");
            if (*c >= g.num_edges() || g.edge(*c).from != n.state)
                throw StrategyError("strategy chooses an edge not leaving '" + g.id(n.state) + "'");
            moves.push_back(*c);
        } else {
            for (std::size_t e : g.out_edges(n.state)) moves.push_back(e);
        }
        for (std::size_t e : moves) {
            auto next = sigma.update(n.memory, e);
            if (!next) throw StrategyError("strategy has no update at memory " + sigma.label(n.memory) +
                                           " for edge " + g.edge_str(e));
            std::int64_t w = g.weight(e);
            std::int64_t level = bounded ? checked_add(n.level, w) : 0;
            if (bounded && (level < 0 || level > upper)) {
                std::vector<std::size_t> arcs = path_to(p, u);
                VerifyWitness wit;
                wit.stem = prefix_of(p, g.initial(), arcs);
                wit.stem.start = g.initial();
                wit.stem.edges.push_back(e);
                wit.reason = level < 0 ? "energy drops below zero" : "energy exceeds the upper bound";
                res.product_size = p.nodes.size();
                res.witness = std::move(wit);
                return res;
            }
            std::size_t arc = p.graph.arcs.size();
            auto [v, fresh] = intern(Node{*next, g.edge(e).to, level}, arc);
            p.graph.arcs.push_back({u, v, bounded ? level : w});
            p.edge_of.push_back(e);
            if (fresh) queue.push_back(v);
        }
    }
    p.graph.num_nodes = p.nodes.size();
    res.product_size = p.nodes.size();

    if (objective == VerifyObjective::EGL) {
        if (auto cyc = find_cycle_mean_below(p.graph, 0, Rational(0))) {
            res.witness = lasso_witness(p, g.initial(), *cyc, "negative cycle");
            return res;
        }
        // No negative cycle: Bellman-Ford distances from the root are well defined.
        const std::size_t nn = p.graph.num_nodes;
        std::vector<std::int64_t> dist(nn, std::numeric_limits<std::int64_t>::max());
        std::vector<std::size_t> pred(nn, std::numeric_limits<std::size_t>::max());
        dist[0] = 0;
        for (std::size_t round = 0; round < nn; ++round) {
            bool changed = false;
            for (std::size_t a = 0; a < p.graph.arcs.size(); ++a) {
                const auto &arc = p.graph.arcs[a];
                if (dist[arc.from] == std::numeric_limits<std::int64_t>::max()) continue;
                std::int64_t d = checked_add(dist[arc.from], arc.weight);
                if (d < dist[arc.to]) {
                    dist[arc.to] = d;
                    pred[arc.to] = a;
                    changed = true;
                }
            }
            if (!changed) break;
        }
        std::size_t worst = 0;
        for (std::size_t v = 0; v < nn; ++v)
            if (dist[v] < dist[worst]) worst = v;
        if (dist[worst] < -credit) {
            std::vector<std::size_t> arcs;
            for (std::size_t v = worst; pred[v] != std::numeric_limits<std::size_t>::max();
                 v = p.graph.arcs[pred[v]].from)
                arcs.push_back(pred[v]);
            VerifyWitness wit;
            wit.stem = prefix_of(p, g.initial(), {arcs.rbegin(), arcs.rend()});
            wit.stem.start = g.initial();
            wit.reason = "energy drops below zero";
            res.witness = std::move(wit);
            return res;
        }
        res.accepted = true;
        return res;
    }

    if (objective == VerifyObjective::EGLU) {
        res.accepted = true;
        return res;
    }

    if (auto cyc = find_cycle_mean_above(p.graph, 0, t.value())) {
        res.witness = lasso_witness(p, g.initial(), *cyc, "average energy above the threshold");
        return res;
    }
    res.accepted = true;
    return res;
}

}  // namespace avgen
