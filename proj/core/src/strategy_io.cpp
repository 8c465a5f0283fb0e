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

#include <map>

#include "avgenergy/strategy.hpp"
#include "json_internal.hpp"

namespace avgen {

namespace {

using ojson = nlohmann::ordered_json;
using detail::json;

ojson edge_json(const GameGraph &g, std::size_t e) {
    ojson j;
    j["from"] = g.id(g.edge(e).from);
    if (g.dimension() == 1) {
        j["weight"] = g.weight(e);
    } else {
        ojson w = ojson::array();
        for (std::size_t d = 0; d < g.dimension(); ++d) w.push_back(g.weight(e, d));
        j["weight"] = w;
    }
    j["to"] = g.id(g.edge(e).to);
    return j;
}

ojson memory_json(const FiniteMemoryStrategy &s, FiniteMemoryStrategy::Memory m) {
    if (s.has_labels()) return s.label(m);
    return m;
}

std::size_t edge_from_json(const GameGraph &g, const json &j, std::string_view what) {
    detail::check_keys(j, what, {"from", "weight", "to"});
    std::size_t from = g.state(detail::require_string(j, "from", what));
    std::size_t to = g.state(detail::require_string(j, "to", what));
    const json &w = detail::require(j, "weight", what);
    std::vector<std::int64_t> vec;
    if (w.is_array()) {
        for (const json &c : w) vec.push_back(detail::as_int(c, "weight"));
    } else {
        vec.push_back(detail::as_int(w, "weight"));
    }
    auto e = g.find_edge(from, to, vec);
    if (!e) throw StrategyError("strategy refers to an edge missing from the game (" + std::string(what) + ")");
    return *e;
}

}  // namespace

std::string serialize_strategy(const GameGraph &g, const FiniteMemoryStrategy &s) {
    ojson mem = ojson::array();
    for (std::size_t m = 0; m < s.memory_size(); ++m) mem.push_back(memory_json(s, m));
    std::string out = "{\n  \"memory\": " + mem.dump() + ",\n";
    out += "  \"initial\": " + memory_json(s, s.initial()).dump() + ",\n  \"update\": [";
    auto ups = s.updates();
    for (std::size_t i = 0; i < ups.size(); ++i) {
        ojson u;
        u["memory"] = memory_json(s, ups[i].memory);
        u["edge"] = edge_json(g, ups[i].edge);
        u["next"] = memory_json(s, ups[i].next);
        out += (i ? ",\n    " : "\n    ") + u.dump();
    }
    out += ups.empty() ? "],\n  \"choice\": [" : "\n  ],\n  \"choice\": [";
    auto chs = s.choices();
    for (std::size_t i = 0; i < chs.size(); ++i) {
        ojson c;
        c["memory"] = memory_json(s, chs[i].memory);
        c["state"] = g.id(chs[i].state);
        c["edge"] = edge_json(g, chs[i].edge);
        out += (i ? ",\n    " : "\n    ") + c.dump();
    }
    out += chs.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

FiniteMemoryStrategy parse_strategy(const GameGraph &g, std::string_view text) {
    json root = detail::parse_json(text);
    detail::check_keys(root, "strategy", {"memory", "initial", "update", "choice"});
    const json &mem = detail::require(root, "memory", "strategy");
    if (!mem.is_array() || mem.empty()) throw ParseError("'memory' must be a non-empty array");

    std::map<std::string, std::size_t> index;
    std::vector<std::string> labels;
    bool all_ints = true;
    for (const json &m : mem) {
        if (!m.is_string() && !m.is_number_integer()) throw ParseError("memory labels must be strings or integers");
        std::string l = m.is_string() ? m.get<std::string>() : std::to_string(m.get<std::int64_t>());
        if (m.is_string()) all_ints = false;
        if (!index.emplace(l, labels.size()).second) throw ParseError("duplicate memory label '" + l + "'");
        labels.push_back(l);
    }
    auto lookup = [&](const json &v) {
        std::string l = v.is_string() ? v.get<std::string>()
                        : v.is_number_integer() ? std::to_string(v.get<std::int64_t>())
                                                : throw ParseError("memory reference must be a string or integer");
        auto it = index.find(l);
        if (it == index.end()) throw ParseError("unknown memory state '" + l + "'");
        return it->second;
    };

    FiniteMemoryStrategy s(labels.size(), lookup(detail::require(root, "initial", "strategy")));
    bool identity_labels = all_ints;
    for (std::size_t i = 0; identity_labels && i < labels.size(); ++i) identity_labels = labels[i] == std::to_string(i);
    if (!identity_labels) s.set_labels(labels);

    const json &ups = detail::require(root, "update", "strategy");
    if (!ups.is_array()) throw ParseError("'update' must be an array");
    for (std::size_t i = 0; i < ups.size(); ++i) {
        std::string what = "update #" + std::to_string(i);
        detail::check_keys(ups[i], what, {"memory", "edge", "next"});
        s.set_update(lookup(detail::require(ups[i], "memory", what)),
                     edge_from_json(g, detail::require(ups[i], "edge", what), what),
                     lookup(detail::require(ups[i], "next", what)));
    }
    const json &chs = detail::require(root, "choice", "strategy");
    if (!chs.is_array()) throw ParseError("'choice' must be an array");
    for (std::size_t i = 0; i < chs.size(); ++i) {
        std::string what = "choice #" + std::to_string(i);
        detail::check_keys(chs[i], what, {"memory", "state", "edge"});
        std::size_t state = g.state(detail::require_string(chs[i], "state", what));
        std::size_t e = edge_from_json(g, detail::require(chs[i], "edge", what), what);
        if (g.edge(e).from != state) throw StrategyError(what + ": edge does not leave its state");
        if (g.owner(state) != Player::P0) throw StrategyError(what + ": state is not owned by P0");
        s.set_choice(lookup(detail::require(chs[i], "memory", what)), state, e);
    }
    return s;
}

}  // namespace avgen
