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

#include "avgenergy/play.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace avgen {

namespace {

void require_nonempty(const PlayPrefix &p) {
    if (p.empty()) throw std::invalid_argument("payoff of an empty prefix is undefined");
}

std::vector<std::int64_t> parse_weight(std::string_view s) {
    std::vector<std::int64_t> w;
    std::size_t pos = 0;
    while (true) {
        auto colon = s.find(':', pos);
        auto tok = s.substr(pos, colon == std::string_view::npos ? std::string_view::npos : colon - pos);
        Rational r = parse_rational(tok);
        if (boost::multiprecision::denominator(r) != 1) throw GameError("weight must be an integer");
        w.push_back(to_int64(boost::multiprecision::numerator(r)));
        if (colon == std::string_view::npos) break;
        pos = colon + 1;
    }
    return w;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

PlayPrefix make_prefix(const GameGraph &g, std::size_t start, std::vector<std::size_t> edges) {
    if (start >= g.num_states()) throw GameError("prefix start out of range");
    std::size_t cur = start;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i] >= g.num_edges()) throw GameError("edge index out of range");
        if (g.edge(edges[i]).from != cur)
            throw GameError("edge " + std::to_string(i) + " " + g.edge_str(edges[i]) + " does not start at '" +
                            g.id(cur) + "'");
        cur = g.edge(edges[i]).to;
    }
    return PlayPrefix{start, std::move(edges)};
}

PlayPrefix parse_path(const GameGraph &g, std::string_view text) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (true) {
        auto comma = text.find(',', pos);
        tokens.push_back(trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                                : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (tokens.empty() || tokens[0].empty()) throw GameError("empty path");
    PlayPrefix p{g.state(tokens[0]), {}};
    std::size_t cur = p.start;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        auto hash = tokens[i].find('#');
        std::size_t to = g.state(tokens[i].substr(0, hash));
        std::size_t chosen;
        if (hash != std::string_view::npos) {
            auto w = parse_weight(tokens[i].substr(hash + 1));
            auto e = g.find_edge(cur, to, w);
            if (!e) throw GameError("no edge with the given weight from '" + g.id(cur) + "' to '" + g.id(to) + "'");
            chosen = *e;
        } else {
            auto es = g.edges_between(cur, to);
            if (es.empty()) throw GameError("no edge from '" + g.id(cur) + "' to '" + g.id(to) + "'");
            if (es.size() > 1)
                throw GameError("ambiguous hop '" + g.id(cur) + "' -> '" + g.id(to) + "'; add '#weight'");
            chosen = es[0];
        }
        p.edges.push_back(chosen);
        cur = to;
    }
    return p;
}

void validate_lasso(const GameGraph &g, const LassoPlay &l) {
    make_prefix(g, l.stem.start, l.stem.edges);
    make_prefix(g, l.cycle.start, l.cycle.edges);
    if (l.cycle.empty()) throw GameError("lasso cycle must be non-empty");
    if (l.cycle.last(g) != l.cycle.start) throw GameError("lasso cycle does not return to its first state");
    if (l.stem.last(g) != l.cycle.start) throw GameError("lasso stem does not end where the cycle starts");
}

LassoPlay first_edge_lasso(const GameGraph &g) {
    std::unordered_map<std::size_t, std::size_t> seen;
    std::vector<std::size_t> path;
    std::size_t cur = g.initial();
    while (!seen.count(cur)) {
        seen.emplace(cur, path.size());
        std::size_t e = *g.out_edges(cur).begin();
        path.push_back(e);
        cur = g.edge(e).to;
    }
    std::size_t k = seen.at(cur);
    LassoPlay l;
    l.stem = PlayPrefix{g.initial(), std::vector<std::size_t>(path.begin(), path.begin() + k)};
    l.cycle = PlayPrefix{cur, std::vector<std::size_t>(path.begin() + k, path.end())};
    return l;
}

std::vector<std::int64_t> energy_level(const GameGraph &g, const PlayPrefix &p) {
    require_nonempty(p);
    std::vector<std::int64_t> sum(g.dimension(), 0);
    for (std::size_t e : p.edges)
        for (std::size_t d = 0; d < g.dimension(); ++d) sum[d] = checked_add(sum[d], g.weight(e, d));
    return sum;
}

std::vector<Rational> mean_payoff(const GameGraph &g, const PlayPrefix &p) {
    auto el = energy_level(g, p);
    std::vector<Rational> r;
    r.reserve(el.size());
    for (auto v : el) r.emplace_back(Rational(v, static_cast<std::int64_t>(p.length())));
    return r;
}

std::vector<std::vector<std::int64_t>> running_levels(const GameGraph &g, const PlayPrefix &p,
                                                      std::int64_t credit) {
    std::vector<std::vector<std::int64_t>> out;
    out.reserve(p.length());
    std::vector<std::int64_t> cur(g.dimension(), credit);
    for (std::size_t e : p.edges) {
        for (std::size_t d = 0; d < g.dimension(); ++d) cur[d] = checked_add(cur[d], g.weight(e, d));
        out.push_back(cur);
    }
    return out;
}

std::vector<Rational> average_energy(const GameGraph &g, const PlayPrefix &p) {
    require_nonempty(p);
    std::vector<BigInt> total(g.dimension(), 0);
    std::vector<std::int64_t> cur(g.dimension(), 0);
    for (std::size_t e : p.edges) {
        for (std::size_t d = 0; d < g.dimension(); ++d) {
            cur[d] = checked_add(cur[d], g.weight(e, d));
            total[d] += cur[d];
        }
    }
    std::vector<Rational> r;
    for (const auto &t : total) r.emplace_back(Rational(t, BigInt(p.length())));
    return r;
}

LassoPayoffs lasso_payoffs(const GameGraph &g, const LassoPlay &l) {
    validate_lasso(g, l);
    const std::size_t k = g.dimension();
    std::vector<std::int64_t> offset(k, 0);
    for (std::size_t e : l.stem.edges)
        for (std::size_t d = 0; d < k; ++d) offset[d] = checked_add(offset[d], g.weight(e, d));

    LassoPayoffs r;
    const std::int64_t len = static_cast<std::int64_t>(l.cycle.length());
    for (std::size_t d = 0; d < k; ++d) {
        std::int64_t level = offset[d], sum = 0, hi = INT64_MIN, lo = INT64_MAX;
        BigInt level_total = 0;
        for (std::size_t e : l.cycle.edges) {
            level = checked_add(level, g.weight(e, d));
            sum = checked_add(sum, g.weight(e, d));
            level_total += level;
            hi = std::max(hi, level);
            lo = std::min(lo, level);
        }
        r.mp_sup.emplace_back(Rational(sum, len));
        if (sum > 0) {
            r.ae_sup.push_back(PayoffValue::plus_infinity());
            r.el_sup.push_back(PayoffValue::plus_infinity());
            r.el_inf.push_back(PayoffValue::plus_infinity());
        } else if (sum < 0) {
            r.ae_sup.push_back(PayoffValue::minus_infinity());
            r.el_sup.push_back(PayoffValue::minus_infinity());
            r.el_inf.push_back(PayoffValue::minus_infinity());
        } else {
            r.ae_sup.emplace_back(Rational(level_total, BigInt(len)));
            r.el_sup.emplace_back(Rational(hi));
            r.el_inf.emplace_back(Rational(lo));
        }
    }
    return r;
}

}  // namespace avgen
