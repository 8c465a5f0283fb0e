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

#include "avgenergy/gadgets.hpp"
#include "json_internal.hpp"

namespace avgen {

namespace {

using detail::json;

void require_semantics(const json &root, std::string_view expected) {
    std::string got = detail::require_string(root, "semantics", "game file");
    if (got != expected)
        throw ParseError("expected \"semantics\": \"" + std::string(expected) + "\", got \"" + got + "\"");
}

}  // namespace

SuccinctOneCounterGame parse_soc_game(std::string_view text) {
    json root = detail::parse_json(text);
    GameBuilder b = detail::builder_from_json(root, {"semantics"});
    require_semantics(root, "blocking");
    return {b.build()};
}

RobotGame parse_robot_game(std::string_view text) {
    json root = detail::parse_json(text);
    GameBuilder b = detail::builder_from_json(root, {"semantics", "counters"});
    require_semantics(root, "robot");
    const json &c = detail::require(root, "counters", "robot game");
    if (!c.is_array() || c.size() != 2) throw ParseError("'counters' must be an array of two integers");
    return {b.build(), detail::as_int(c[0], "counter"), detail::as_int(c[1], "counter")};
}

TwoCounterMachine parse_2cm(std::string_view text) {
    json root = detail::parse_json(text);
    if (!root.is_array()) throw ParseError("a counter machine is a JSON array of instructions");
    TwoCounterMachine m;
    for (std::size_t i = 0; i < root.size(); ++i) {
        const json &j = root[i];
        std::string what = "instruction #" + std::to_string(i);
        detail::check_keys(j, what, {"op", "counter", "target"});
        std::string op = detail::require_string(j, "op", what);
        Instruction ins;
        bool counter = true, target = false;
        if (op == "INC") {
            ins.op = Instruction::Op::Inc;
        } else if (op == "DEC") {
            ins.op = Instruction::Op::Dec;
        } else if (op == "JZ") {
            ins.op = Instruction::Op::Jz;
            target = true;
        } else if (op == "GOTO") {
            ins.op = Instruction::Op::Goto;
            counter = false;
            target = true;
        } else if (op == "HALT") {
            ins.op = Instruction::Op::Halt;
            counter = false;
        } else {
            throw ParseError(what + ": unknown op '" + op + "'");
        }
        if (counter) ins.counter = static_cast<int>(detail::require_int(j, "counter", what));
        else if (j.contains("counter")) throw ParseError(what + ": " + op + " takes no counter");
        if (target) {
            std::int64_t t = detail::require_int(j, "target", what);
            if (t < 0) throw ParseError(what + ": negative jump target");
            ins.target = static_cast<std::size_t>(t);
        } else if (j.contains("target")) {
            throw ParseError(what + ": " + op + " takes no target");
        }
        m.program.push_back(ins);
    }
    return m;
}

std::string serialize_manifest(const Reduction &r) {
    nlohmann::ordered_json j;
    j["source"] = r.source;
    j["objective"] = r.objective;
    j["dimension"] = r.game.dimension();
    nlohmann::ordered_json t = nlohmann::ordered_json::array();
    for (const Threshold &x : r.threshold) t.push_back(x.str());
    j["threshold"] = t;
    return j.dump(2) + "\n";
}

}  // namespace avgen
