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
#include <limits>
#include <stdexcept>

#include "avgenergy/solvers.hpp"
#include "int128.hpp"

namespace avgen {

namespace {

constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min();
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct Adjacency {
    std::vector<std::size_t> begin;
    std::vector<std::size_t> arcs;
};

Adjacency outgoing(const WeightedDigraph &d) {
    Adjacency a;
    a.begin.assign(d.num_nodes + 1, 0);
    for (const auto &arc : d.arcs) ++a.begin[arc.from + 1];
    for (std::size_t v = 0; v < d.num_nodes; ++v) a.begin[v + 1] += a.begin[v];
    a.arcs.resize(d.arcs.size());
    std::vector<std::size_t> fill(a.begin.begin(), a.begin.end() - 1);
    for (std::size_t i = 0; i < d.arcs.size(); ++i) a.arcs[fill[d.arcs[i].from]++] = i;
    return a;
}

/** Iterative Tarjan; components are numbered in reverse topological order. */
std::vector<std::size_t> components(const WeightedDigraph &d, const Adjacency &adj, std::size_t &count) {
    const std::size_t n = d.num_nodes;
    std::vector<std::size_t> comp(n, kNone), index(n, kNone), low(n, 0), stack;
    std::vector<char> on_stack(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> call;
    std::size_t next_index = 0;
    count = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kNone) continue;
        call.push_back({root, adj.begin[root]});
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto &[v, it] = call.back();
            if (it < adj.begin[v + 1]) {
                std::size_t w = d.arcs[adj.arcs[it++]].to;
                if (index[w] == kNone) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, adj.begin[w]});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            std::size_t done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == index[done]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = count;
                } while (w != done);
                ++count;
            }
        }
    }
    return comp;
}

/** a/b < c/d for positive b, d. */
bool frac_less(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return static_cast<detail::Int128>(a) * d < static_cast<detail::Int128>(c) * b;
}

/**
 * Karp's maximum cycle mean of one strongly connected component, with two
 * rolling passes so memory stays linear.
 */
std::optional<Rational> karp(const WeightedDigraph &d, const std::vector<std::size_t> &nodes,
                             const std::vector<std::size_t> &arcs, const std::vector<std::size_t> &local) {
    const std::size_t m = nodes.size();
    if (arcs.empty()) return std::nullopt;
    auto round = [&](std::vector<std::int64_t> &cur, std::vector<std::int64_t> &nxt) {
        std::fill(nxt.begin(), nxt.end(), kNegInf);
        for (std::size_t a : arcs) {
            const auto &arc = d.arcs[a];
            std::int64_t x = cur[local[arc.from]];
            if (x == kNegInf) continue;
            std::int64_t y = checked_add(x, arc.weight);
            std::int64_t &slot = nxt[local[arc.to]];
            if (y > slot) slot = y;
        }
        cur.swap(nxt);
    };
    std::vector<std::int64_t> cur(m, kNegInf), nxt(m);
    cur[0] = 0;
    for (std::size_t k = 0; k < m; ++k) round(cur, nxt);
    const std::vector<std::int64_t> dm = cur;

    // best[v] = min_k (Dm(v) - Dk(v)) / (m - k), stored as numerator/denominator.
    std::vector<std::int64_t> num(m, 0), den(m, 0);
    std::fill(cur.begin(), cur.end(), kNegInf);
    cur[0] = 0;
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t v = 0; v < m; ++v) {
            if (dm[v] == kNegInf || cur[v] == kNegInf) continue;
            std::int64_t a = checked_add(dm[v], -cur[v]);
            std::int64_t b = static_cast<std::int64_t>(m - k);
            if (den[v] == 0 || frac_less(a, b, num[v], den[v])) {
                num[v] = a;
                den[v] = b;
            }
        }
        round(cur, nxt);
    }
    std::optional<std::pair<std::int64_t, std::int64_t>> best;
    for (std::size_t v = 0; v < m; ++v) {
        if (den[v] == 0) continue;
        if (!best || frac_less(best->first, best->second, num[v], den[v])) best = {num[v], den[v]};
    }
    if (!best) return std::nullopt;
    return Rational(best->first, best->second);
}

CycleMeanResult max_mean(const WeightedDigraph &d) {
    Adjacency adj = outgoing(d);
    std::size_t count = 0;
    CycleMeanResult r;
    r.component = components(d, adj, count);
    std::vector<std::vector<std::size_t>> nodes(count), arcs(count);
    std::vector<std::size_t> local(d.num_nodes);
    for (std::size_t v = 0; v < d.num_nodes; ++v) {
        local[v] = nodes[r.component[v]].size();
        nodes[r.component[v]].push_back(v);
    }
    for (std::size_t a = 0; a < d.arcs.size(); ++a) {
        std::size_t c = r.component[d.arcs[a].from];
        if (c == r.component[d.arcs[a].to]) arcs[c].push_back(a);
    }
    r.component_mean.resize(count);
    for (std::size_t c = 0; c < count; ++c) r.component_mean[c] = karp(d, nodes[c], arcs[c], local);

    std::vector<std::optional<Rational>> reach(count);
    for (std::size_t c = 0; c < count; ++c) {
        reach[c] = r.component_mean[c];
        for (std::size_t v : nodes[c]) {
            for (std::size_t i = adj.begin[v]; i < adj.begin[v + 1]; ++i) {
                std::size_t c2 = r.component[d.arcs[adj.arcs[i]].to];
                if (c2 == c || !reach[c2]) continue;
                if (!reach[c] || *reach[c] < *reach[c2]) reach[c] = reach[c2];
            }
        }
    }
    r.reachable.resize(d.num_nodes);
    for (std::size_t v = 0; v < d.num_nodes; ++v) r.reachable[v] = reach[r.component[v]];
    return r;
}

WeightedDigraph negated(const WeightedDigraph &d) {
    WeightedDigraph n = d;
    for (auto &a : n.arcs) {
        if (a.weight == kNegInf) throw ArithmeticOverflow("weight out of range");
        a.weight = -a.weight;
    }
    return n;
}

std::vector<bool> reachable_from(const WeightedDigraph &d, const Adjacency &adj, std::size_t source) {
    std::vector<bool> seen(d.num_nodes, false);
    std::deque<std::size_t> q{source};
    seen[source] = true;
    while (!q.empty()) {
        std::size_t v = q.front();
        q.pop_front();
        for (std::size_t i = adj.begin[v]; i < adj.begin[v + 1]; ++i) {
            std::size_t w = d.arcs[adj.arcs[i]].to;
            if (!seen[w]) {
                seen[w] = true;
                q.push_back(w);
            }
        }
    }
    return seen;
}

}  // namespace

WeightedDigraph to_digraph(const GameGraph &g) {
    if (g.dimension() != 1) throw GameError("cycle means require one dimension");
    WeightedDigraph d;
    d.num_nodes = g.num_states();
    d.arcs.reserve(g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e) d.arcs.push_back({g.edge(e).from, g.edge(e).to, g.weight(e)});
    return d;
}

CycleMeanResult max_cycle_mean(const WeightedDigraph &d) { return max_mean(d); }

CycleMeanResult min_cycle_mean(const WeightedDigraph &d) {
    CycleMeanResult r = max_mean(negated(d));
    for (auto &m : r.component_mean)
        if (m) *m = -*m;
    for (auto &m : r.reachable)
        if (m) *m = -*m;
    return r;
}

CycleMeanResult max_cycle_mean(const GameGraph &g) { return max_mean(to_digraph(g)); }

std::optional<std::vector<std::size_t>> find_cycle_mean_above(const WeightedDigraph &d, std::size_t source,
                                                              const Rational &bound) {
    if (source >= d.num_nodes) throw std::invalid_argument("source out of range");
    Adjacency adj = outgoing(d);
    std::vector<bool> seen = reachable_from(d, adj, source);
    CycleMeanResult cm = max_mean(d);

    // Lowest-numbered qualifying component among those reachable.
    std::optional<std::size_t> target;
    for (std::size_t v = 0; v < d.num_nodes; ++v) {
        if (!seen[v]) continue;
        const auto &m = cm.component_mean[cm.component[v]];
        if (m && *m > bound && (!target || cm.component[v] < *target)) target = cm.component[v];
    }
    if (!target) return std::nullopt;

    const std::int64_t num = to_int64(boost::multiprecision::numerator(bound));
    const std::int64_t den = to_int64(boost::multiprecision::denominator(bound));
    std::vector<std::size_t> nodes;
    for (std::size_t v = 0; v < d.num_nodes; ++v)
        if (cm.component[v] == *target) nodes.push_back(v);
    std::vector<std::size_t> arcs;
    std::vector<std::int64_t> w(d.arcs.size(), 0);
    for (std::size_t a = 0; a < d.arcs.size(); ++a) {
        if (cm.component[d.arcs[a].from] != *target || cm.component[d.arcs[a].to] != *target) continue;
        arcs.push_back(a);
        w[a] = checked_add(checked_mul(d.arcs[a].weight, den), -num);
    }

    // Longest-path Bellman-Ford; a relaxation in round |C| exposes a positive cycle.
    std::vector<std::int64_t> dist(d.num_nodes, kNegInf);
    std::vector<std::size_t> pred(d.num_nodes, kNone);
    dist[nodes.front()] = 0;
    std::size_t witness = kNone;
    for (std::size_t round = 0; round < nodes.size(); ++round) {
        witness = kNone;
        for (std::size_t a : arcs) {
            const auto &arc = d.arcs[a];
            if (dist[arc.from] == kNegInf) continue;
            std::int64_t y = checked_add(dist[arc.from], w[a]);
            if (y > dist[arc.to]) {
                dist[arc.to] = y;
                pred[arc.to] = a;
                witness = arc.to;
            }
        }
        if (witness == kNone) break;
    }
    if (witness == kNone) throw std::logic_error("positive cycle expected but not found");
    for (std::size_t i = 0; i < nodes.size(); ++i) witness = d.arcs[pred[witness]].from;
    std::vector<std::size_t> cycle;
    std::size_t v = witness;
    do {
        std::size_t a = pred[v];
        cycle.push_back(a);
        v = d.arcs[a].from;
    } while (v != witness);
    std::reverse(cycle.begin(), cycle.end());
    return cycle;
}

std::optional<std::vector<std::size_t>> find_cycle_mean_below(const WeightedDigraph &d, std::size_t source,
                                                              const Rational &bound) {
    return find_cycle_mean_above(negated(d), source, -bound);
}

std::optional<std::vector<std::size_t>> find_path(const WeightedDigraph &d, std::size_t source, std::size_t target) {
    Adjacency adj = outgoing(d);
    std::vector<std::size_t> via(d.num_nodes, kNone);
    std::vector<bool> seen(d.num_nodes, false);
    std::deque<std::size_t> q{source};
    seen[source] = true;
    while (!q.empty()) {
        std::size_t v = q.front();
        q.pop_front();
        if (v == target) break;
        for (std::size_t i = adj.begin[v]; i < adj.begin[v + 1]; ++i) {
            std::size_t a = adj.arcs[i];
            std::size_t w = d.arcs[a].to;
            if (!seen[w]) {
                seen[w] = true;
                via[w] = a;
                q.push_back(w);
            }
        }
    }
    if (!seen[target]) return std::nullopt;
    std::vector<std::size_t> path;
    for (std::size_t v = target; v != source; v = d.arcs[via[v]].from) path.push_back(via[v]);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace avgen
