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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "avgenergy/ael.hpp"
#include "avgenergy/expansion.hpp"
#include "avgenergy/gadgets.hpp"
#include "avgenergy/play.hpp"
#include "avgenergy/solvers.hpp"
#include "avgenergy/strategy_tree.hpp"
#include "avgenergy/verify.hpp"
#include "oracles.hpp"

using namespace avgen;

namespace {

using Clock = std::chrono::steady_clock;

std::string data(const std::string &name) { return std::string(AVGEN_DATA_DIR) + "/" + name; }

struct Report {
    bool pass = true;
    std::ostringstream detail;
    void check(bool ok, const std::string &what) {
        if (!ok && pass) detail << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

int failures = 0;

void run(int id, const std::string &name, double limit_s, const std::function<void(Report &)> &body) {
    Report r;
    auto t0 = Clock::now();
    try {
        body(r);
    } catch (const std::exception &e) {
        r.check(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_s > 0) r.check(secs < limit_s, "time limit of " + std::to_string(limit_s) + " s exceeded");
    if (!r.pass) ++failures;
    std::printf("criterion %2d: %s  %s (%s%.2f s)\n", id, r.pass ? "PASS" : "FAIL", name.c_str(),
                r.detail.str().c_str(), secs);
    std::fflush(stdout);
}

// ----------------------------------------------------------- random suite

const char *const kThresholds[] = {"0", "1/2", "1", "11/4"};
constexpr int kGames = 600;
constexpr std::int64_t kMaxCap = 32;

struct Instance {
    GameGraph game;
    Threshold t;
    std::vector<bool> win;  // by cap 0..kMaxCap
    std::int64_t min_cap = -1;
    std::optional<FiniteMemoryStrategy> strategy;
};

std::vector<Instance> make_suite() {
    std::mt19937_64 rng(20260101);
    std::vector<Instance> v;
    for (int i = 0; i < kGames; ++i) {
        Instance in{oracle::random_game(rng, 5, 3), Threshold::parse(kThresholds[i % 4]), {}, -1, std::nullopt};
        v.push_back(std::move(in));
    }
    return v;
}

}  // namespace

int main() {
    const Threshold t114 = Threshold::parse("11/4");

    run(1, "simple arena: AEL win, verified strategy, greedy worst case", 1.0, [&](Report &r) {
        GameGraph g = load_game(data("three_state.game.json"));
        SolveVerdict v = solve_ael(g, t114);
        r.check(v.outcome == Outcome::Win, "AEL verdict is " + to_string(v.outcome));
        r.check(v.cap_used <= 6, "cap_used " + std::to_string(v.cap_used));
        FiniteMemoryStrategy s = parse_strategy(g, read_file(data("three_state_level_strategy.json")));
        r.check(verify_strategy(g, t114, 6, s, VerifyObjective::AELU).accepted, "level strategy rejected");
        SimulationTrace tr = simulate(g, s, Adversary::greedy(), 64);
        const std::int64_t period[] = {4, 6, 4, 4, 2, 2, 0, 0};
        for (std::size_t i = 0; i < tr.levels.size(); ++i)
            r.check(tr.levels[i][0] == period[i % 8], "level at step " + std::to_string(i + 1));
        r.check(tr.average_energy(8)[0] == Rational(11, 4), "AE at step 8 is " + to_string(tr.average_energy(8)[0]));
        r.detail << "cap_used " << v.cap_used << ", AE@8 " << to_string(tr.average_energy(8)[0]) << ", ";
    });

    run(2, "lasso payoffs of the two zero-mean plays", 1.0, [&](Report &r) {
        const std::pair<const char *, Rational> cases[] = {{"zero_mean_a.game.json", Rational(1, 2)},
                                                           {"zero_mean_b.game.json", Rational(3, 2)}};
        for (const auto &[file, ae] : cases) {
            GameGraph g = load_game(data(file));
            LassoPayoffs p = lasso_payoffs(g, first_edge_lasso(g));
            r.check(p.ae_sup[0] == PayoffValue(ae), std::string(file) + " ae_sup " + p.ae_sup[0].str());
            r.check(p.mp_sup[0] == PayoffValue(Rational(0)), std::string(file) + " mp_sup " + p.mp_sup[0].str());
            r.check(p.el_sup[0] == PayoffValue(Rational(3)), std::string(file) + " el_sup " + p.el_sup[0].str());
            r.check(p.el_inf[0] == PayoffValue(Rational(-1)), std::string(file) + " el_inf " + p.el_inf[0].str());
            r.detail << file << " ae_sup " << p.ae_sup[0].str() << ", ";
        }
    });

    run(3, "blocking gadget: sink at level 0 iff c <= w - 1", 30.0, [&](Report &r) {
        std::size_t checked = 0, bad = 0;
        for (std::int64_t w = 1; w <= 64; ++w) {
            GameGraph g = build_blocking_gadget(w);
            const std::size_t entry = g.state("s_e"), sink = g.state("sink");
            for (std::int64_t c = 0; c <= 2 * w; ++c) {
                ReachabilityResult res =
                    bounded_counter_reachability(g, Threshold(0), {entry, c}, {{sink, 0}}, 2 * w + 64);
                ++checked;
                if (res.win != (c <= w - 1)) {
                    ++bad;
                    r.check(false, "w=" + std::to_string(w) + " c=" + std::to_string(c));
                }
            }
        }
        r.detail << checked << " cases, " << bad << " counterexamples, ";
    });

    std::vector<Instance> suite = make_suite();

    run(4, "AELU vs brute force for caps 0..32; MP deciders agree", 300.0, [&](Report &r) {
        std::size_t runs = 0, bad_aelu = 0, bad_mp = 0, wins = 0;
        oracle::ViStats stats;
        for (Instance &in : suite) {
            const std::int64_t t1 = to_int64(in.t.t1()), t2 = to_int64(in.t.t2());
            std::vector<bool> lib_mp = solve_mp_threshold(in.game, in.t, false).p0_wins;
            if (lib_mp != oracle::mp_at_most(in.game, t1, t2, &stats)) {
                ++bad_mp;
                r.check(false, "MP deciders differ on " + serialize_game(in.game));
            }
            for (std::int64_t u = 0; u <= kMaxCap; ++u) {
                SolveVerdict v = solve_aelu(in.game, in.t, u);
                const bool lib = v.outcome == Outcome::Win;
                in.win.push_back(lib);
                if (lib && in.min_cap < 0) {
                    in.min_cap = u;
                    in.strategy = v.strategy;
                }
                ++runs;
                if (lib != oracle::aelu_wins(in.game, t1, t2, u, &stats)) {
                    ++bad_aelu;
                    r.check(false, "AELU differs at U=" + std::to_string(u) + " t=" + in.t.str());
                }
                // Second MP comparison, on the library's own expansion.
                ExpandedGame x = build_expanded(in.game, in.t, u);
                oracle::Arena a = oracle::shifted(oracle::from_game(x.arena()), t1, t2);
                const bool vi = oracle::mp_nonpositive(a, x.arena().initial(), &stats);
                if (vi != solve_mp_threshold(x.arena(), in.t, false).p0_wins[x.arena().initial()]) {
                    ++bad_mp;
                    r.check(false, "MP deciders differ on an expansion");
                }
            }
            if (in.min_cap >= 0) ++wins;
        }
        r.detail << suite.size() << " games, " << runs << " AELU runs, " << bad_aelu << " AELU and " << bad_mp
                 << " MP disagreements, " << wins << " winning instances, " << stats.certified << " certified / "
                 << stats.fallback << " horizon-bound oracle calls, ";
    });

    struct Outcomes {
        std::size_t sims = 0, no_cycle = 0, too_long = 0, density_bad = 0, never = 0;
    } oc;
    run(5, "winning outcomes contain an early good cycle", 300.0, [&](Report &r) {
        std::mt19937_64 rng(5);
        for (const Instance &in : suite) {
            if (in.min_cap < 0) continue;
            const BoundSet b = compute_bounds(in.game, in.t);
            const std::int64_t t1 = to_int64(in.t.t1()), t2 = to_int64(in.t.t2());
            const Rational db = density_bound(in.t);
            const auto p = static_cast<std::int64_t>(numerator(db)), q = static_cast<std::int64_t>(denominator(db));
            for (int k = 0; k < 100; ++k) {
                SimulationTrace tr = simulate(in.game, *in.strategy, Adversary::random(rng()), 10000);
                ExpandedPrefix e = lift_play(in.game, in.t, tr.play);
                ++oc.sims;
                if (e.reaches_bottom()) {
                    r.check(false, "winning strategy reached the sink");
                    continue;
                }
                auto c = find_good_cycle(e, in.t);
                if (!c) {
                    ++oc.no_cycle;
                    r.check(false, "no good cycle in 10^4 steps");
                } else if (BigInt(c->second - c->first + 1) > b.N) {
                    ++oc.too_long;
                    r.check(false, "good cycle longer than N");
                }
                // Density of levels <= t on positions 1..n, from the first n where the bound holds.
                std::int64_t hits = 0;
                bool holding = false;
                for (std::size_t n = 1; n <= e.length(); ++n) {
                    if (t2 * e.steps[n - 1].target.level <= t1) ++hits;
                    const bool ok = hits * q >= p * static_cast<std::int64_t>(n);
                    if (ok) holding = true;
                    else if (holding) {
                        ++oc.density_bad;
                        break;
                    }
                }
                if (!holding) ++oc.never;
            }
        }
        r.detail << oc.sims << " outcomes, " << oc.no_cycle << " without a good cycle, " << oc.too_long
                 << " longer than N, ";
    });

    run(6, "density of low levels stays above the bound once reached", 0, [&](Report &r) {
        r.check(oc.sims > 0, "no outcomes were simulated");
        r.check(oc.density_bad == 0, std::to_string(oc.density_bad) + " outcomes dropped below the bound");
        r.check(oc.never == 0, std::to_string(oc.never) + " outcomes never reached the bound");
        r.detail << oc.sims << " outcomes, " << oc.density_bad << " violations, " << oc.never << " never reached, ";
    });

    run(7, "inclusion chain AELU(U) => AELU(U+1) => AEL => EGL", 300.0, [&](Report &r) {
        std::size_t bad = 0, ael_wins = 0;
        CapSchedule sched;
        sched.budget = 2 * kMaxCap;
        for (const Instance &in : suite) {
            for (std::int64_t u = 0; u < kMaxCap; ++u)
                if (in.win[static_cast<std::size_t>(u)] && !in.win[static_cast<std::size_t>(u + 1)]) {
                    ++bad;
                    r.check(false, "AELU not monotone at U=" + std::to_string(u));
                }
            SolveVerdict ael = solve_ael(in.game, in.t, sched);
            const bool ael_win = ael.outcome == Outcome::Win;
            if (ael_win) ++ael_wins;
            if (in.min_cap >= 0 && !ael_win) {
                ++bad;
                r.check(false, "AELU win without AEL win");
            }
            if (ael_win && solve_egl(in.game).winner != Player::P0) {
                ++bad;
                r.check(false, "AEL win without EGL win");
            }
        }
        r.detail << suite.size() << " instances, " << ael_wins << " AEL wins, " << bad << " violations, ";
    });

    run(8, "single -1 loop at t = 0: conclusive AEL loss", 10.0, [&](Report &r) {
        GameGraph g = load_game(data("loop_minus1.game.json"));
        SolveVerdict v = solve_ael(g, Threshold(0));
        r.check(v.outcome == Outcome::Lose, "verdict " + to_string(v.outcome));
        r.check(v.conclusive_lose, "loss not conclusive");
        r.check(v.bounds.Mprime && *v.bounds.Mprime == 4096, "M' is not 4096");
        r.check(!v.caps_tried.empty() && v.caps_tried.back() == 4096, "last cap is not 4096");
        r.detail << "last cap " << (v.caps_tried.empty() ? -1 : v.caps_tried.back()) << ", ";
    });

    run(9, "strategy trees: good, decomposition identity, critical levels", 0, [&](Report &r) {
        std::mt19937_64 rng(9);
        std::size_t trees = 0, prefixes = 0, bad = 0, max_nodes = 0;
        for (const Instance &in : suite) {
            if (in.min_cap < 0) continue;
            ExpandedGame x = build_expanded(in.game, in.t, in.min_cap);
            StrategyTreeResult res = build_strategy_tree(x, *in.strategy);
            if (!res.tree) {
                ++bad;
                r.check(false, "no tree: " + res.diagnostic);
                continue;
            }
            const StrategyTree &tree = *res.tree;
            ++trees;
            max_nodes = std::max(max_nodes, tree.size());
            validate_tree(x, tree);
            if (!is_good_tree(x, tree, in.t)) {
                ++bad;
                r.check(false, "tree is not good");
            }
            const BoundSet b = compute_bounds(in.game, in.t);
            for (std::size_t n : critical_nodes(tree))
                if (BigInt(x.configuration(tree.nodes[n].arena_state).level) > b.M) {
                    ++bad;
                    r.check(false, "critical node above the bound");
                }
            FiniteMemoryStrategy ts = tree_strategy(x, tree);
            for (int k = 0; k < 100; ++k) {
                SimulationTrace tr = simulate(in.game, ts, Adversary::random(rng()), 1 + rng() % 300);
                ExpandedPrefix out = lift_play(in.game, in.t, tr.play);
                Decomposition d = decompose(x, tree, out);
                std::int64_t total = 0, parts = 0;
                for (const auto &s : out.steps) total += s.target.level;
                for (const auto &c : d.cycles)
                    for (std::size_t e : c) parts += x.arena().weight(e);
                for (std::size_t n : d.residual) parts += x.configuration(tree.nodes[n].arena_state).level;
                ++prefixes;
                if (total != parts) {
                    ++bad;
                    r.check(false, "decomposition identity fails");
                }
            }
        }
        r.detail << trees << " trees (largest " << max_nodes << " nodes), " << prefixes << " prefixes, " << bad
                 << " violations, ";
    });

    run(10, "reductions: robot invariant, counter machine, one-counter oracle", 120.0, [&](Report &r) {
        // Robot games: the level sum stays 3 until the stop move.
        RobotGame robot = parse_robot_game(read_file(data("robot_sample.game.json")));
        GameGraph rg = reduce_robot_game(robot).game;
        std::vector<std::optional<std::size_t>> choice(rg.num_states());
        for (std::size_t s = 0; s < rg.num_states(); ++s) {
            if (rg.owner(s) != Player::P0) continue;
            for (std::size_t e : rg.out_edges(s))
                if (rg.id(rg.edge(e).to) != "q_stop" || rg.id(s) == "q_stop") {
                    choice[s] = e;
                    break;
                }
        }
        std::size_t robot_bad = 0;
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            SimulationTrace tr = simulate(rg, memoryless_strategy(rg, choice), Adversary::random(seed), 10000);
            for (const auto &lv : tr.levels)
                if (lv[0] + lv[1] + lv[2] != 3) ++robot_bad;
        }
        r.check(robot_bad == 0, "robot level sum differs from 3");

        // Counter machine: follow the program honestly and let P1 never object.
        TwoCounterMachine m = parse_2cm(read_file(data("halting.2cm.json")));
        r.check(m.program.size() == 5, "sample program does not have 5 instructions");
        GameGraph cg = reduce_2cm(m).game;
        auto hop = [&](PlayPrefix &p, const std::string &to) {
            const std::size_t from = p.last(cg);
            p.edges.push_back(cg.edges_between(from, cg.state(to)).front());
        };
        PlayPrefix stem{cg.state("init"), {}};
        hop(stem, "q0");
        std::int64_t c[3] = {0, 0, 0};
        std::size_t pc = 0;
        for (int guard = 0; guard < 10000 && m.program[pc].op != Instruction::Op::Halt; ++guard) {
            const Instruction &ins = m.program[pc];
            const std::string si = std::to_string(pc);
            switch (ins.op) {
                case Instruction::Op::Inc:
                case Instruction::Op::Dec:
                    c[ins.counter] += ins.op == Instruction::Op::Inc ? 1 : -1;
                    hop(stem, "chk" + si);
                    pc += 1;
                    break;
                case Instruction::Op::Jz:
                    if (c[ins.counter] == 0) {
                        hop(stem, "zc" + si);
                        pc = ins.target;
                    } else {
                        hop(stem, "nz" + si);
                        pc += 1;
                    }
                    break;
                case Instruction::Op::Goto:
                    pc = ins.target;
                    break;
                case Instruction::Op::Halt:
                    break;
            }
            hop(stem, "q" + std::to_string(pc));
        }
        hop(stem, "halt");
        PlayPrefix loop{cg.state("halt"), {}};
        hop(loop, "halt");
        LassoPayoffs lp = lasso_payoffs(cg, {stem, loop});
        r.check(lp.ae_sup[0] == PayoffValue(Rational(0)) && lp.ae_sup[1] == PayoffValue(Rational(0)),
                "faithful play AE is (" + lp.ae_sup[0].str() + "," + lp.ae_sup[1].str() + ")");
        for (const auto &dim : running_levels(cg, stem))
            for (auto v : dim) r.check(v >= 0, "faithful play goes below zero");

        // One-counter games with blocking moves, at most three states.
        std::size_t machines = 0, disagree = 0, p0_wins = 0;
        constexpr std::int64_t kCap = 64;
        CapSchedule sched;
        sched.budget = kCap;
        auto compare = [&](const GameGraph &g) {
            Reduction red = reduce_soc_game({g});
            const bool lib = solve_ael(red.game, red.threshold[0], sched).outcome == Outcome::Win;
            const bool ora = oracle::soc_wins(g, kCap);
            ++machines;
            if (ora) ++p0_wins;
            if (lib != ora) {
                ++disagree;
                r.check(false, "one-counter disagreement on " + serialize_game(g));
            }
        };
        for (int owner = 0; owner < 2; ++owner)
            for (std::int64_t w = -13; w <= 13; ++w) {
                GameBuilder b;
                b.add_state("a", owner ? Player::P1 : Player::P0).add_edge("a", w, "a").set_initial("a");
                compare(b.build());
            }
        std::mt19937_64 rng(10);
        auto pick = [&](std::int64_t lo, std::int64_t hi) {
            return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
        };
        while (machines < 600) {
            const std::int64_t n = pick(2, 3);
            GameBuilder b;
            for (std::int64_t s = 0; s < n; ++s)
                b.add_state(std::string(1, static_cast<char>('a' + s)), pick(0, 1) ? Player::P1 : Player::P0);
            for (std::int64_t s = 0; s < n; ++s) {
                std::vector<std::int64_t> targets;
                for (std::int64_t t = 0; t < n; ++t)
                    if (pick(0, 1) || t == (s + 1) % n) targets.push_back(t);
                for (std::int64_t t : targets)
                    b.add_edge(std::string(1, static_cast<char>('a' + s)), pick(-13, 13),
                               std::string(1, static_cast<char>('a' + t)));
            }
            b.set_initial("a");
            compare(b.build());
        }
        r.detail << "robot steps checked 30000, faithful AE (" << lp.ae_sup[0].str() << "," << lp.ae_sup[1].str()
                 << "), " << machines << " one-counter games (" << p0_wins << " won by P0), " << disagree
                 << " disagreements, ";
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
