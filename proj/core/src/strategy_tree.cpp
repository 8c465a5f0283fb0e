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

#include "avgenergy/strategy_tree.hpp"

#include <algorithm>

#include "int128.hpp"
#include "json_internal.hpp"

namespace avgen {

namespace {

constexpr std::size_t kNone = StrategyTree::kNone;

bool segment_good(detail::Int128 level_sum, std::size_t length, const Threshold &t) {
    const detail::Int128 t1 = to_int64(t.t1()), t2 = to_int64(t.t2());
    return t2 * level_sum <= t1 * static_cast<detail::Int128>(length);
}

}  // namespace

std::vector<std::size_t> StrategyTree::leaves() const {
    std::vector<std::size_t> r;
    for (std::size_t n = 0; n < nodes.size(); ++n)
        if (nodes[n].children.empty()) r.push_back(n);
    return r;
}

StrategyTreeResult build_strategy_tree(const ExpandedGame &x, const FiniteMemoryStrategy &sigma,
                                       std::size_t node_budget) {
    const GameGraph &a = x.arena();
    const Threshold &t = x.threshold();
    StrategyTreeResult res;
    auto fail = [&](std::string why) {
        res.diagnostic = std::move(why);
        return res;
    };
    if (a.initial() == x.bottom()) return fail("start configuration is the sink");

    StrategyTree tree;
    // Level sum along the branch, excluding the root.
    std::vector<std::int64_t> sum{0};
    std::vector<std::size_t> memory{sigma.initial()};
    tree.nodes.push_back({a.initial(), kNone, kNone, {}, kNone, 0});

    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        const std::size_t xs = tree.nodes[v].arena_state;
        const Configuration cfg = x.configuration(xs);
        const std::string where = configuration_id(x.base(), cfg);

        std::vector<std::size_t> moves;
        if (a.owner(xs) == Player::P0) {
            auto c = sigma.choice(memory[v], cfg.state);
            if (!c) return fail("strategy has no choice at " + where);
            auto ae = x.arena_edge(xs, *c);
            if (!ae) return fail("strategy plays a move unavailable at " + where);
            moves.push_back(*ae);
        } else {
            for (std::size_t e : a.out_edges(xs)) moves.push_back(e);
        }

        for (std::size_t ae : moves) {
            const std::size_t to = a.edge(ae).to;
            if (to == x.bottom()) return fail("an outcome reaches the sink from " + where);
            auto base = x.base_edge(ae);
            auto next = sigma.update(memory[v], *base);
            if (!next) return fail("strategy has no update at " + where + " for edge " + x.base().edge_str(*base));
            if (tree.nodes.size() >= node_budget)
                return fail("unfolding exceeds the node budget of " + std::to_string(node_budget));

            const std::size_t n = tree.nodes.size();
            const std::size_t depth = tree.nodes[v].depth + 1;
            tree.nodes.push_back({to, v, ae, {}, kNone, depth});
            tree.nodes[v].children.push_back(n);
            const std::int64_t level = x.configuration(to).level;
            sum.push_back(checked_add(sum[v], level));
            memory.push_back(*next);

            if (segment_good(level, 1, t)) {
                for (std::size_t u = v; u != kNone; u = tree.nodes[u].parent) {
                    if (tree.nodes[u].arena_state != to) continue;
                    if (segment_good(sum[n] - sum[u], depth - tree.nodes[u].depth, t)) {
                        tree.nodes[n].back = u;
                        break;
                    }
                }
            }
            if (tree.nodes[n].back == kNone) stack.push_back(n);
        }
    }
    res.tree = std::move(tree);
    return res;
}

void validate_tree(const ExpandedGame &x, const StrategyTree &tree) {
    const GameGraph &a = x.arena();
    const auto &nodes = tree.nodes;
    if (nodes.size() < 2) throw TreeError("tree has fewer than two nodes");
    if (nodes[0].parent != kNone) throw TreeError("root has a parent");
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        const auto &nd = nodes[n];
        if (nd.arena_state >= a.num_states()) throw TreeError("node label outside the arena");
        if (n > 0) {
            if (nd.parent >= nodes.size() || nd.parent == n) throw TreeError("node without a valid parent");
            const auto &p = nodes[nd.parent];
            if (std::find(p.children.begin(), p.children.end(), n) == p.children.end())
                throw TreeError("parent does not list its child");
            if (nd.in_edge >= a.num_edges() || a.edge(nd.in_edge).from != p.arena_state ||
                a.edge(nd.in_edge).to != nd.arena_state)
                throw TreeError("tree edge is not a move of the expanded game");
            if (nd.depth != p.depth + 1) throw TreeError("inconsistent depth");
        }
        if (nd.children.empty()) {
            if (nd.back == kNone) throw TreeError("leaf without a back-edge");
            bool ancestor = false;
            for (std::size_t u = nd.parent; u != kNone; u = nodes[u].parent)
                if (u == nd.back) ancestor = true;
            if (!ancestor) throw TreeError("back-edge target is not a strict ancestor");
            if (nodes[nd.back].arena_state != nd.arena_state)
                throw TreeError("back-edge joins different configurations");
            continue;
        }
        if (nd.back != kNone) throw TreeError("internal node with a back-edge");
        std::vector<std::size_t> got;
        for (std::size_t c : nd.children) got.push_back(nodes[c].in_edge);
        std::sort(got.begin(), got.end());
        if (std::adjacent_find(got.begin(), got.end()) != got.end()) throw TreeError("two children for one move");
        if (a.owner(nd.arena_state) == Player::P0) {
            if (got.size() != 1) throw TreeError("P0 node must have exactly one child");
        } else {
            auto range = a.out_edges(nd.arena_state);
            std::vector<std::size_t> want(range.begin(), range.end());
            if (got != want) throw TreeError("P1 node must have one child per move");
        }
    }
}

bool is_good_tree(const ExpandedGame &x, const StrategyTree &tree, const Threshold &t) {
    for (std::size_t leaf : tree.leaves()) {
        const std::size_t top = tree.nodes[leaf].back;
        detail::Int128 s = 0;
        std::size_t len = 0;
        for (std::size_t u = leaf; u != top; u = tree.nodes[u].parent) {
            s += x.configuration(tree.nodes[u].arena_state).level;
            ++len;
        }
        if (!segment_good(s, len, t)) return false;
    }
    return true;
}

std::vector<std::size_t> critical_nodes(const StrategyTree &tree) {
    std::vector<bool> on_segment(tree.size(), false);
    for (std::size_t leaf : tree.leaves()) {
        const std::size_t top = tree.nodes[leaf].back;
        for (std::size_t u = leaf;; u = tree.nodes[u].parent) {
            on_segment[u] = true;
            if (u == top) break;
        }
    }
    std::vector<std::size_t> r{tree.root()};
    for (std::size_t n = 1; n < tree.size(); ++n)
        if (!on_segment[n] && on_segment[tree.nodes[n].parent]) r.push_back(n);
    return r;
}

Decomposition decompose(const ExpandedGame &x, const StrategyTree &tree, const ExpandedPrefix &outcome) {
    if (!(x.configuration(tree.nodes[tree.root()].arena_state) == outcome.start))
        throw TreeError("outcome does not start at the root configuration");
    Decomposition d;
    std::size_t cur = tree.root();
    for (std::size_t i = 0; i < outcome.length(); ++i) {
        std::size_t from = tree.is_leaf(cur) ? tree.nodes[cur].back : cur;
        std::size_t next = kNone;
        for (std::size_t c : tree.nodes[from].children)
            if (x.configuration(tree.nodes[c].arena_state) == outcome.steps[i].target) next = c;
        if (next == kNone) throw TreeError("outcome leaves the tree strategy at step " + std::to_string(i + 1));
        cur = next;
        if (tree.is_leaf(cur)) {
            std::vector<std::size_t> cyc;
            for (std::size_t u = cur; u != tree.nodes[cur].back; u = tree.nodes[u].parent)
                cyc.push_back(tree.nodes[u].in_edge);
            std::reverse(cyc.begin(), cyc.end());
            d.cycles.push_back(std::move(cyc));
        }
    }
    d.last = cur;
    std::size_t end = tree.is_leaf(cur) ? tree.nodes[cur].back : cur;
    for (std::size_t u = end; u != tree.root(); u = tree.nodes[u].parent) d.residual.push_back(u);
    std::reverse(d.residual.begin(), d.residual.end());
    return d;
}

FiniteMemoryStrategy tree_strategy(const ExpandedGame &x, const StrategyTree &tree) {
    FiniteMemoryStrategy s(tree.size(), tree.root());
    const GameGraph &g = x.base();
    for (std::size_t n = 0; n < tree.size(); ++n) {
        const auto &nd = tree.nodes[n];
        if (nd.children.empty()) continue;
        const std::size_t state = x.configuration(nd.arena_state).state;
        for (std::size_t c : nd.children) {
            const std::size_t e = *x.base_edge(tree.nodes[c].in_edge);
            const std::size_t token = tree.is_leaf(c) ? tree.nodes[c].back : c;
            s.set_update(n, e, token);
            if (g.owner(state) == Player::P0) s.set_choice(n, state, e);
        }
    }
    return s;
}

std::string serialize_tree(const ExpandedGame &x, const StrategyTree &tree) {
    using ojson = nlohmann::ordered_json;
    std::string out = "{\n  \"nodes\": [";
    for (std::size_t n = 0; n < tree.size(); ++n) {
        const auto &nd = tree.nodes[n];
        ojson j;
        j["id"] = n;
        j["config"] = configuration_id(x.base(), x.configuration(nd.arena_state));
        j["parent"] = nd.parent == kNone ? ojson(nullptr) : ojson(nd.parent);
        j["back"] = nd.back == kNone ? ojson(nullptr) : ojson(nd.back);
        out += (n ? ",\n    " : "\n    ") + j.dump();
    }
    out += "\n  ]\n}\n";
    return out;
}

}  // namespace avgen
