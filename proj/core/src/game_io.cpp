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
#include <fstream>
#include <sstream>

#include "json_internal.hpp"

namespace avgen {

namespace detail {

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        std::size_t line = 1, column = 1;
        std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < limit; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string msg = e.what();
        auto pos = msg.find("syntax error");
        throw ParseError(pos == std::string::npos ? msg : msg.substr(pos), line, column);
    }
}

void check_keys(const json &obj, std::string_view what, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) throw ParseError(std::string(what) + " must be a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw ParseError("unknown field '" + it.key() + "' in " + std::string(what));
    }
}

const json &require(const json &obj, std::string_view key, std::string_view what) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError("missing field '" + std::string(key) + "' in " + std::string(what));
    return *it;
}

std::string require_string(const json &obj, std::string_view key, std::string_view what) {
    const json &v = require(obj, key, what);
    if (!v.is_string())
        throw ParseError("field '" + std::string(key) + "' in " + std::string(what) + " must be a string");
    return v.get<std::string>();
}

std::int64_t as_int(const json &v, std::string_view what) {
    if (v.is_number_integer()) {
        if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
            throw ParseError(std::string(what) + " is out of range");
        return v.get<std::int64_t>();
    }
    throw ParseError(std::string(what) + " must be an integer");
}

std::int64_t require_int(const json &obj, std::string_view key, std::string_view what) {
    return as_int(require(obj, key, what), "field '" + std::string(key) + "' in " + std::string(what));
}

GameBuilder builder_from_json(const json &root, std::initializer_list<std::string_view> extra_keys) {
    if (!root.is_object()) throw ParseError("game file must be a JSON object");
    for (auto it = root.begin(); it != root.end(); ++it) {
        const std::string &k = it.key();
        if (k == "states" || k == "edges" || k == "initial") continue;
        if (std::find(extra_keys.begin(), extra_keys.end(), k) == extra_keys.end())
            throw ParseError("unknown field '" + k + "' in game file");
    }
    const json &states = require(root, "states", "game file");
    const json &edges = require(root, "edges", "game file");
    if (!states.is_array()) throw ParseError("'states' must be an array");
    if (!edges.is_array()) throw ParseError("'edges' must be an array");

    std::size_t dim = 0;
    std::vector<std::vector<std::int64_t>> weights;
    weights.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const json &e = edges[i];
        std::string what = "edge #" + std::to_string(i);
        check_keys(e, what, {"from", "weight", "to"});
        const json &w = require(e, "weight", what);
        std::vector<std::int64_t> vec;
        if (w.is_array()) {
            if (w.empty()) throw ParseError("empty weight vector in " + what);
            for (const json &c : w) vec.push_back(as_int(c, "weight component in " + what));
        } else {
            vec.push_back(as_int(w, "weight in " + what));
        }
        if (dim == 0) dim = vec.size();
        else if (vec.size() != dim)
            throw GameError("dimension mismatch: " + what + " has dimension " + std::to_string(vec.size()) +
                            ", expected " + std::to_string(dim));
        weights.push_back(std::move(vec));
    }

    GameBuilder b(dim == 0 ? 1 : dim);
    for (std::size_t i = 0; i < states.size(); ++i) {
        const json &s = states[i];
        std::string what = "state #" + std::to_string(i);
        check_keys(s, what, {"id", "owner"});
        std::string id = require_string(s, "id", what);
        if (id.empty()) throw ParseError("empty state id in " + what);
        std::int64_t owner = require_int(s, "owner", what);
        if (owner != 0 && owner != 1) throw ParseError("owner of '" + id + "' must be 0 or 1");
        b.add_state(std::move(id), owner == 0 ? Player::P0 : Player::P1);
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        std::string what = "edge #" + std::to_string(i);
        b.add_edge(require_string(edges[i], "from", what), std::move(weights[i]),
                   require_string(edges[i], "to", what));
    }
    b.set_initial(require_string(root, "initial", "game file"));
    return b;
}

std::string quote(const std::string &s) { return json(s).dump(); }

}  // namespace detail

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GameGraph parse_game(std::string_view text) {
    return detail::builder_from_json(detail::parse_json(text), {}).build();
}

GameGraph load_game(const std::string &path) { return parse_game(read_file(path)); }

std::string serialize_game(const GameGraph &g) {
    using detail::quote;
    std::string out = "{\n  \"states\": [\n";
    for (std::size_t s = 0; s < g.num_states(); ++s) {
        out += "    {\"id\": " + quote(g.id(s)) + ", \"owner\": " + (g.owner(s) == Player::P0 ? "0" : "1") + "}";
        out += s + 1 < g.num_states() ? ",\n" : "\n";
    }
    out += "  ],\n  \"edges\": [\n";
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        out += "    {\"from\": " + quote(g.id(g.edge(e).from)) + ", \"weight\": ";
        if (g.dimension() == 1) {
            out += std::to_string(g.weight(e));
        } else {
            out += "[";
            for (std::size_t d = 0; d < g.dimension(); ++d) {
                if (d) out += ", ";
                out += std::to_string(g.weight(e, d));
            }
            out += "]";
        }
        out += ", \"to\": " + quote(g.id(g.edge(e).to)) + "}";
        out += e + 1 < g.num_edges() ? ",\n" : "\n";
    }
    out += "  ],\n  \"initial\": " + quote(g.id(g.initial())) + "\n}\n";
    return out;
}

}  // namespace avgen
