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

#include <set>
#include <stdexcept>

namespace avgen {

std::size_t blocking_stages(std::int64_t w) {
    if (w < 1) throw std::invalid_argument("blocking gadget needs w >= 1");
    std::size_t k = 1;
    while (k < 62 && (std::int64_t{1} << k) < w) ++k;
    return k;
}

std::int64_t blocking_entry_weight(std::int64_t w) {
    const std::int64_t top = std::int64_t{1} << blocking_stages(w);
    return (top - 1) - (w - 1);
}

namespace {

std::string stage_id(std::int64_t w, std::int64_t step) {
    return "blk_" + std::to_string(w) + "_" + std::to_string(step);
}

class Emitter {
  public:
    explicit Emitter(std::size_t dim) : b_(dim) {}

    /** Adds a fresh state once; a clash with an input state is an error. */
    void fresh(const std::string &id, Player p) {
        if (ours_.count(id)) return;
        if (b_.has_state(id)) throw GameError("generated state '" + id + "' clashes with an input state");
        ours_.insert(id);
        b_.add_state(id, p);
    }
    void input(const std::string &id, Player p) {
        if (ours_.count(id)) throw GameError("generated state '" + id + "' clashes with an input state");
        b_.add_state(id, p);
    }
    void edge(const std::string &from, std::vector<std::int64_t> w, const std::string &to) {
        auto key = std::make_tuple(from, w, to);
        if (edges_.insert(key).second) b_.add_edge(from, std::move(w), to);
    }
    GameBuilder &builder() { return b_; }

  private:
    GameBuilder b_;
    std::set<std::string> ours_;
    std::set<std::tuple<std::string, std::vector<std::int64_t>, std::string>> edges_;
};

/** Stages for -w, shared by every gadget with the same w; returns the first stage. */
std::string emit_stages(Emitter &out, std::int64_t w, const std::string &sink) {
    const std::size_t k = blocking_stages(w);
    for (std::size_t i = k; i-- > 0;) {
        const std::int64_t step = std::int64_t{1} << i;
        out.fresh(stage_id(w, step), Player::P0);
    }
    for (std::size_t i = k; i-- > 0;) {
        const std::int64_t step = std::int64_t{1} << i;
        const std::string next = i == 0 ? sink : stage_id(w, step >> 1);
        out.edge(stage_id(w, step), {-step}, next);
        out.edge(stage_id(w, step), {0}, next);
    }
    return stage_id(w, std::int64_t{1} << (k - 1));
}

}  // namespace

GameGraph build_blocking_gadget(std::int64_t w) {
    if (w < 1) throw std::invalid_argument("blocking gadget needs w >= 1");
    Emitter out(1);
    out.fresh("s", Player::P1);
    out.fresh("s_e", Player::P0);
    out.fresh("s_prime", Player::P0);
    out.fresh("sink", Player::P0);
    out.edge("sink", {0}, "sink");
    out.edge("s_prime", {0}, "s_prime");
    std::string first = emit_stages(out, w, "sink");
    out.edge("s", {0}, "s_e");
    out.edge("s_e", {-w}, "s_prime");
    out.edge("s_e", {blocking_entry_weight(w)}, first);
    out.builder().set_initial("s");
    return out.builder().build();
}

Reduction reduce_soc_game(const SuccinctOneCounterGame &r) {
    const GameGraph &g = r.arena;
    if (g.dimension() != 1) throw GameError("one-counter games have one dimension");
    for (std::size_t e = 0; e < g.num_edges(); ++e)
        if (g.edges_between(g.edge(e).from, g.edge(e).to).size() > 1)
            throw GameError("one-counter games have no parallel edges: " + g.edge_str(e));

    const std::size_t init = g.initial();
    const std::string sink = "sink";
    Emitter out(1);
    for (std::size_t s = 0; s < g.num_states(); ++s) out.input(g.id(s), g.owner(s));
    out.fresh(sink, Player::P0);
    out.edge(sink, {0}, sink);

    // Entry point for moves into s: P1 states get a P0 stop choice in front.
    auto entry = [&](std::size_t s) {
        if (s == init || g.owner(s) == Player::P0) return g.id(s);
        std::string stop = "stop_" + g.id(s);
        out.fresh(stop, Player::P0);
        out.edge(stop, {0}, g.id(s));
        out.edge(stop, {0}, sink);
        return stop;
    };

    for (std::size_t s = 0; s < g.num_states(); ++s)
        if (s != init && g.owner(s) == Player::P0) out.edge(g.id(s), {0}, sink);

    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const std::size_t from = g.edge(e).from, to = g.edge(e).to;
        const std::int64_t w = g.weight(e);
        if (from == init && to == init && w == 0) {
            // A level-0 stutter at the initial state must not count as a zero-average play.
            out.fresh("init_loop", Player::P0);
            out.edge(g.id(init), {1}, "init_loop");
            out.edge("init_loop", {-1}, g.id(init));
            continue;
        }
        if (g.owner(from) == Player::P1 && w < 0) {
            std::string se = "e_" + g.id(from) + "_" + g.id(to);
            out.fresh(se, Player::P0);
            out.edge(g.id(from), {0}, se);
            out.edge(se, {w}, entry(to));
            out.edge(se, {blocking_entry_weight(-w)}, emit_stages(out, -w, sink));
            continue;
        }
        out.edge(g.id(from), {w}, entry(to));
    }
    out.builder().set_initial(g.id(init));
    return {out.builder().build(), {Threshold(0)}, "ael", "soc"};
}

Reduction reduce_robot_game(const RobotGame &r) {
    const GameGraph &g = r.arena;
    if (g.dimension() != 2) throw GameError("robot games have two dimensions");
    if (g.num_states() != 2 || g.owner(0) == g.owner(1))
        throw GameError("robot games have exactly one state per player");
    if (g.owner(g.initial()) != Player::P0) throw GameError("robot games start in the P0 state");
    const std::string q0 = g.id(g.initial());

    Emitter out(3);
    for (std::size_t s = 0; s < 2; ++s) out.input(g.id(s), g.owner(s));
    out.fresh("q_init", Player::P0);
    out.fresh("q_stop", Player::P0);
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        std::int64_t a = g.weight(e, 0), b = g.weight(e, 1);
        out.edge(g.id(g.edge(e).from), {a, b, -checked_add(a, b)}, g.id(g.edge(e).to));
    }
    out.edge(q0, {-1, -1, -1}, "q_stop");
    out.edge("q_stop", {0, 0, 0}, "q_stop");
    out.edge("q_init", {checked_add(r.x0, 1), checked_add(r.y0, 1), checked_add(-checked_add(r.x0, r.y0), 1)}, q0);
    out.builder().set_initial("q_init");
    return {out.builder().build(), {Threshold(0), Threshold(0), Threshold(0)}, "ae", "robot"};
}

Reduction reduce_2cm(const TwoCounterMachine &m) {
    const auto &prog = m.program;
    if (prog.empty()) throw GameError("empty counter machine program");
    auto q = [](std::size_t i) { return "q" + std::to_string(i); };
    auto unit = [](int c, std::int64_t v) {
        return c == 1 ? std::vector<std::int64_t>{v, 0} : std::vector<std::int64_t>{0, v};
    };
    for (std::size_t i = 0; i < prog.size(); ++i) {
        const Instruction &ins = prog[i];
        const std::string at = "instruction " + std::to_string(i);
        if (ins.op != Instruction::Op::Halt && ins.op != Instruction::Op::Goto && ins.counter != 1 && ins.counter != 2)
            throw GameError(at + ": counter must be 1 or 2");
        if ((ins.op == Instruction::Op::Jz || ins.op == Instruction::Op::Goto) && ins.target >= prog.size())
            throw GameError(at + ": jump target " + std::to_string(ins.target) + " is out of range");
        if (ins.op != Instruction::Op::Halt && ins.op != Instruction::Op::Goto && i + 1 >= prog.size())
            throw GameError(at + ": falls through past the end of the program");
    }

    Emitter out(2);
    out.fresh("init", Player::P0);
    for (std::size_t i = 0; i < prog.size(); ++i) out.fresh(q(i), Player::P0);
    out.edge("init", {1, 1}, q(0));

    auto positivity = [&]() {
        out.fresh("pos_1", Player::P0);
        out.fresh("pos_2", Player::P0);
        out.fresh("pos_3", Player::P0);
        out.edge("pos_1", {-1, 0}, "pos_1");
        out.edge("pos_1", {0, 0}, "pos_2");
        out.edge("pos_2", {0, -1}, "pos_2");
        out.edge("pos_2", {0, 0}, "pos_3");
        out.edge("pos_3", {0, 0}, "pos_3");
        return std::string("pos_1");
    };
    // Zero test on counter c: drain the other counter, the tested one must already be empty.
    auto zero_test = [&](int c) {
        const std::string a = "z" + std::to_string(c) + "a", b = "z" + std::to_string(c) + "b";
        out.fresh(a, Player::P0);
        out.fresh(b, Player::P0);
        out.edge(a, unit(3 - c, -1), a);
        out.edge(a, {0, 0}, b);
        out.edge(b, {0, 0}, b);
        return a;
    };

    for (std::size_t i = 0; i < prog.size(); ++i) {
        const Instruction &ins = prog[i];
        const std::string si = std::to_string(i);
        switch (ins.op) {
            case Instruction::Op::Inc:
            case Instruction::Op::Dec: {
                const std::string chk = "chk" + si;
                out.fresh(chk, Player::P1);
                out.edge(q(i), unit(ins.counter, ins.op == Instruction::Op::Inc ? 1 : -1), chk);
                out.edge(chk, {0, 0}, q(i + 1));
                out.edge(chk, {-1, -1}, positivity());
                break;
            }
            case Instruction::Op::Jz: {
                const std::string zc = "zc" + si, nz = "nz" + si, nzc = "nzc" + si;
                out.fresh(zc, Player::P1);
                out.fresh(nz, Player::P1);
                out.fresh(nzc, Player::P1);
                out.edge(q(i), {0, 0}, zc);
                out.edge(zc, {0, 0}, q(ins.target));
                out.edge(zc, unit(ins.counter, -1), zero_test(ins.counter));
                out.edge(q(i), {0, 0}, nz);
                out.edge(nz, {0, 0}, q(i + 1));
                out.edge(nz, unit(ins.counter, -1), nzc);
                out.edge(nzc, {-1, -1}, positivity());
                break;
            }
            case Instruction::Op::Goto:
                out.edge(q(i), {0, 0}, q(ins.target));
                break;
            case Instruction::Op::Halt:
                out.fresh("halt", Player::P0);
                out.edge(q(i), {-1, -1}, "halt");
                out.edge("halt", {0, 0}, "halt");
                break;
        }
    }
    out.builder().set_initial("init");
    return {out.builder().build(), {Threshold(0), Threshold(0)}, "ael", "2cm"};
}

}  // namespace avgen
