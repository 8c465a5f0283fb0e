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

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "avgenergy/ael.hpp"
#include "avgenergy/gadgets.hpp"
#include "avgenergy/game.hpp"
#include "avgenergy/play.hpp"
#include "avgenergy/solvers.hpp"
#include "avgenergy/strategy.hpp"
#include "avgenergy/verify.hpp"

#ifndef AVGEN_VERSION
#define AVGEN_VERSION "0.0.0"
#endif

using namespace avgen;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kWin = 0;
constexpr int kLose = 1;
constexpr int kInconclusive = 2;
constexpr int kInputError = 3;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fnv1a(const std::vector<std::string> &blobs) {
    std::uint64_t h = 14695981039346656037ull;
    for (const auto &b : blobs) {
        for (unsigned char c : b) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0xff;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

ojson state_list(const GameGraph &g, const PlayPrefix &p) {
    ojson a = ojson::array();
    a.push_back(g.id(p.start));
    for (std::size_t e : p.edges) a.push_back(g.id(g.edge(e).to));
    return a;
}

ojson payoff_list(const std::vector<PayoffValue> &v) {
    ojson a = ojson::array();
    for (const auto &x : v) a.push_back(x.str());
    return a;
}

ojson rational_list(const std::vector<Rational> &v) {
    ojson a = ojson::array();
    for (const auto &x : v) a.push_back(to_string(x));
    return a;
}

ojson bounds_json(const BoundSet &b) {
    ojson j;
    j["N"] = to_string(b.N);
    j["M"] = to_string(b.M);
    j["mprime_exponent"] = to_string(b.mprime_exponent);
    j["mprime"] = b.Mprime ? ojson(to_string(*b.Mprime)) : ojson(nullptr);
    j["exponent_multiplier"] = to_string(b.exponent_multiplier);
    return j;
}

/** Common report head; timing is appended last by finish(). */
struct Report {
    ojson j;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    Report(const std::string &command, const std::vector<std::string> &argv, const std::vector<std::string> &inputs) {
        j["report_version"] = 1;
        j["tool_version"] = AVGEN_VERSION;
        j["command"] = command;
        j["args"] = argv;
        j["input_digest"] = fnv1a(inputs);
    }
    void finish() {
        auto dt = std::chrono::steady_clock::now() - t0;
        j["timing_ms"] = std::chrono::duration<double, std::milli>(dt).count();
        std::cout << j.dump(2) << "\n";
    }
};

std::int64_t cap_budget_default() {
    if (const char *env = std::getenv("AEG_CAP_BUDGET")) {
        std::string s(env);
        try {
            std::size_t pos = 0;
            long long v = std::stoll(s, &pos);
            if (pos == s.size() && v >= 0) return v;
        } catch (const std::exception &) {
        }
        throw InputError("AEG_CAP_BUDGET must be a nonnegative integer");
    }
    return CapSchedule{}.budget;
}

/** "from->to" with an optional "#w" suffix. */
std::size_t parse_edge_ref(const GameGraph &g, const std::string &text) {
    auto arrow = text.find("->");
    if (arrow == std::string::npos) throw InputError("script entry '" + text + "' is not of the form from->to");
    std::string from = text.substr(0, arrow), rest = text.substr(arrow + 2), weight;
    if (auto h = rest.find('#'); h != std::string::npos) {
        weight = rest.substr(h + 1);
        rest = rest.substr(0, h);
    }
    auto cands = g.edges_between(g.state(from), g.state(rest));
    std::vector<std::size_t> keep;
    for (std::size_t e : cands)
        if (weight.empty() || std::to_string(g.weight(e)) == weight) keep.push_back(e);
    if (keep.size() != 1) throw InputError("script entry '" + text + "' does not name exactly one edge");
    return keep.front();
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> r;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            r.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    r.push_back(cur);
    return r;
}

// ------------------------------------------------------------------ solve

struct SolveArgs {
    std::string game;
    std::string objective;
    std::string threshold;
    std::optional<std::int64_t> upper;
    std::optional<std::int64_t> cap_budget;
    std::string mult = "1";
    std::int64_t credit = 0;
    std::size_t bit_budget = 1024;
    std::string strategy_out;
};

int cmd_solve(const SolveArgs &a, const std::vector<std::string> &argv) {
    std::string text = read_file(a.game);
    GameGraph g = parse_game(text);
    Report rep("solve", argv, {text});
    rep.j["objective"] = a.objective;

    const bool needs_t = a.objective == "mp" || a.objective == "ae" || a.objective == "aelu" || a.objective == "ael";
    const bool needs_u = a.objective == "eglu" || a.objective == "aelu";
    if (needs_t && a.threshold.empty()) throw InputError("--threshold is required for " + a.objective);
    if (needs_u && !a.upper) throw InputError("--upper is required for " + a.objective);
    if (a.credit < 0) throw InputError("--credit must be nonnegative");
    if (g.dimension() != 1) throw InputError("solving requires a one-dimensional game");
    Threshold t = needs_t ? Threshold::parse(a.threshold) : Threshold();
    if (needs_t) rep.j["threshold"] = t.str();
    if (needs_u) rep.j["upper"] = *a.upper;
    rep.j["credit"] = a.credit;

    BoundOptions bo;
    bo.exponent_multiplier = parse_rational(a.mult);
    bo.bit_budget = a.bit_budget;
    if (bo.exponent_multiplier <= 0) throw InputError("--mult must be positive");

    Outcome outcome = Outcome::Lose;
    std::optional<FiniteMemoryStrategy> strategy;
    if (a.objective == "mp") {
        MeanPayoffResult r = solve_mp_threshold(g, t);
        if (r.p0_wins[g.initial()]) {
            outcome = Outcome::Win;
            strategy = memoryless_strategy(g, r.p0_strategy);
        }
    } else if (a.objective == "egl" || a.objective == "eglu") {
        GameResult r = a.objective == "egl" ? solve_egl(g, a.credit) : solve_eglu(g, *a.upper, a.credit);
        if (r.winner == Player::P0) {
            outcome = Outcome::Win;
            strategy = r.strategy;
        }
    } else if (a.objective == "ae") {
        SolveVerdict v = solve_ae(g, t);
        outcome = v.outcome;
        strategy = v.strategy;
    } else if (a.objective == "aelu" || a.objective == "ael") {
        SolveVerdict v;
        if (a.objective == "aelu") {
            v = solve_aelu(g, t, *a.upper, a.credit, bo);
        } else {
            CapSchedule cs;
            cs.budget = a.cap_budget ? *a.cap_budget : cap_budget_default();
            cs.bounds = bo;
            rep.j["cap_budget"] = cs.budget;
            v = solve_ael(g, t, cs, a.credit);
        }
        outcome = v.outcome;
        strategy = v.strategy;
        rep.j["cap_used"] = v.cap_used;
        rep.j["caps_tried"] = v.caps_tried;
        rep.j["conclusive_lose"] = v.conclusive_lose;
        rep.j["bounds"] = bounds_json(v.bounds);
    } else {
        throw InputError("unknown objective '" + a.objective + "'");
    }
    rep.j["verdict"] = to_string(outcome);
    if (strategy && !a.strategy_out.empty()) {
        write_file(a.strategy_out, serialize_strategy(g, *strategy));
        rep.j["strategy"] = a.strategy_out;
    } else {
        rep.j["strategy"] = nullptr;
    }
    rep.finish();
    return outcome == Outcome::Win ? kWin : outcome == Outcome::Lose ? kLose : kInconclusive;
}

// ------------------------------------------------------------------- eval

struct EvalArgs {
    std::string game;
    std::optional<std::string> lasso;
    std::string prefix;
    std::optional<std::size_t> steps;
    bool csv = false;
};

void csv_trace(const GameGraph &g, const PlayPrefix &p, std::int64_t credit, std::ostream &os,
               const std::vector<std::vector<std::int64_t>> *levels_in = nullptr) {
    const std::size_t k = g.dimension();
    os << "step,state";
    for (std::size_t d = 0; d < k; ++d) os << ",level" << (k > 1 ? std::to_string(d) : "");
    for (std::size_t d = 0; d < k; ++d) os << ",ae" << (k > 1 ? std::to_string(d) : "");
    os << "\n";
    auto levels = levels_in ? *levels_in : running_levels(g, p, credit);
    std::vector<BigInt> sums(k, 0);
    for (std::size_t i = 0; i < p.length(); ++i) {
        os << (i + 1) << "," << g.id(g.edge(p.edges[i]).to);
        for (std::size_t d = 0; d < k; ++d) os << "," << levels[i][d];
        for (std::size_t d = 0; d < k; ++d) {
            sums[d] += levels[i][d];
            os << "," << to_string(Rational(sums[d], BigInt(i + 1)));
        }
        os << "\n";
    }
}

int cmd_eval(const EvalArgs &a, const std::vector<std::string> &argv) {
    std::string text = read_file(a.game);
    GameGraph g = parse_game(text);
    if (a.lasso.has_value() == !a.prefix.empty()) throw InputError("give exactly one of --lasso and --prefix");

    if (!a.prefix.empty()) {
        PlayPrefix p = parse_path(g, a.prefix);
        if (a.csv) {
            csv_trace(g, p, 0, std::cout);
            return 0;
        }
        Report rep("eval", argv, {text});
        rep.j["play"] = state_list(g, p);
        rep.j["energy_level"] = energy_level(g, p);
        rep.j["mean_payoff"] = rational_list(mean_payoff(g, p));
        rep.j["average_energy"] = rational_list(average_energy(g, p));
        rep.finish();
        return 0;
    }

    LassoPlay l;
    if (a.lasso->empty() || *a.lasso == "auto") {
        l = first_edge_lasso(g);
    } else {
        auto parts = split(*a.lasso, '|');
        if (parts.size() != 2) throw InputError("--lasso expects \"stem|cycle\" or auto");
        l.stem = parse_path(g, parts[0]);
        l.cycle = parse_path(g, parts[1]);
    }
    validate_lasso(g, l);
    if (a.csv) {
        std::size_t steps = a.steps ? *a.steps : l.stem.length() + l.cycle.length();
        PlayPrefix p{l.stem.start, {}};
        for (std::size_t i = 0; i < steps; ++i)
            p.edges.push_back(i < l.stem.length() ? l.stem.edges[i]
                                                  : l.cycle.edges[(i - l.stem.length()) % l.cycle.length()]);
        csv_trace(g, p, 0, std::cout);
        return 0;
    }
    LassoPayoffs lp = lasso_payoffs(g, l);
    Report rep("eval", argv, {text});
    rep.j["stem"] = state_list(g, l.stem);
    rep.j["cycle"] = state_list(g, l.cycle);
    rep.j["mp_sup"] = payoff_list(lp.mp_sup);
    rep.j["ae_sup"] = payoff_list(lp.ae_sup);
    rep.j["el_sup"] = payoff_list(lp.el_sup);
    rep.j["el_inf"] = payoff_list(lp.el_inf);
    rep.finish();
    return 0;
}

// --------------------------------------------------------------- simulate

struct SimArgs {
    std::string game;
    std::string strategy;
    std::string adversary = "random";
    std::string script;
    std::size_t steps = 100;
    std::uint64_t seed = 0;
    std::int64_t credit = 0;
    bool csv = false;
};

int cmd_simulate(const SimArgs &a, const std::vector<std::string> &argv) {
    std::string gt = read_file(a.game), st = read_file(a.strategy);
    GameGraph g = parse_game(gt);
    FiniteMemoryStrategy s = parse_strategy(g, st);
    Adversary adv;
    if (a.adversary == "random") {
        adv = Adversary::random(a.seed);
    } else if (a.adversary == "greedy") {
        adv = Adversary::greedy();
    } else if (a.adversary == "script") {
        std::vector<std::size_t> edges;
        if (!a.script.empty())
            for (const auto &e : split(a.script, ',')) edges.push_back(parse_edge_ref(g, e));
        adv = Adversary::scripted(std::move(edges));
    } else {
        throw InputError("unknown adversary '" + a.adversary + "'");
    }
    SimulationTrace tr = simulate(g, s, adv, a.steps, a.credit);
    if (a.csv) {
        csv_trace(g, tr.play, a.credit, std::cout, &tr.levels);
        return 0;
    }
    Report rep("simulate", argv, {gt, st});
    rep.j["adversary"] = a.adversary;
    rep.j["seed"] = a.seed;
    rep.j["play"] = state_list(g, tr.play);
    rep.j["levels"] = tr.levels;
    ojson ae = ojson::array();
    for (std::size_t i = 1; i <= tr.play.length(); ++i) ae.push_back(rational_list(tr.average_energy(i)));
    rep.j["average_energy"] = ae;
    rep.finish();
    return 0;
}

// ----------------------------------------------------------------- gadget

struct GadgetArgs {
    std::string kind;
    std::string param;
    std::string out;
    std::string manifest;
};

int cmd_gadget(const GadgetArgs &a) {
    std::optional<Reduction> red;
    GameGraph game;
    if (a.kind == "blocking") {
        std::int64_t w;
        try {
            std::size_t pos = 0;
            w = std::stoll(a.param, &pos);
            if (pos != a.param.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception &) {
            throw InputError("blocking gadget expects an integer weight");
        }
        game = build_blocking_gadget(w);
    } else if (a.kind == "soc") {
        red = reduce_soc_game(parse_soc_game(read_file(a.param)));
    } else if (a.kind == "robot") {
        red = reduce_robot_game(parse_robot_game(read_file(a.param)));
    } else if (a.kind == "2cm") {
        red = reduce_2cm(parse_2cm(read_file(a.param)));
    } else {
        throw InputError("unknown gadget kind '" + a.kind + "'");
    }
    if (red) game = red->game;
    std::string text = serialize_game(game);
    if (a.out.empty()) std::cout << text;
    else write_file(a.out, text);
    if (!a.manifest.empty()) {
        if (!red) throw InputError("--manifest applies to reductions only");
        write_file(a.manifest, serialize_manifest(*red));
    }
    return 0;
}

// ----------------------------------------------------------------- verify

struct VerifyArgs {
    std::string game;
    std::string strategy;
    std::string objective;
    std::string threshold = "0";
    std::optional<std::int64_t> upper;
    std::int64_t credit = 0;
};

int cmd_verify(const VerifyArgs &a, const std::vector<std::string> &argv) {
    std::string gt = read_file(a.game), st = read_file(a.strategy);
    GameGraph g = parse_game(gt);
    FiniteMemoryStrategy s = parse_strategy(g, st);
    VerifyObjective obj;
    if (a.objective == "egl") obj = VerifyObjective::EGL;
    else if (a.objective == "eglu") obj = VerifyObjective::EGLU;
    else if (a.objective == "aelu") obj = VerifyObjective::AELU;
    else if (a.objective == "ael") obj = VerifyObjective::AELSound;
    else throw InputError("unknown objective '" + a.objective + "'");
    if (obj != VerifyObjective::EGL && !a.upper) throw InputError("--upper is required for " + a.objective);
    Threshold t = Threshold::parse(a.threshold);

    VerifyResult r = verify_strategy(g, t, a.upper.value_or(0), s, obj, a.credit);
    Report rep("verify", argv, {gt, st});
    rep.j["objective"] = a.objective;
    rep.j["threshold"] = t.str();
    rep.j["upper"] = a.upper ? ojson(*a.upper) : ojson(nullptr);
    rep.j["verdict"] = r.accepted ? "ACCEPT" : "REJECT";
    rep.j["product_size"] = r.product_size;
    if (r.witness) {
        ojson w;
        w["reason"] = r.witness->reason;
        w["stem"] = state_list(g, r.witness->stem);
        w["cycle"] = r.witness->cycle ? state_list(g, *r.witness->cycle) : ojson(nullptr);
        rep.j["witness"] = w;
    } else {
        rep.j["witness"] = nullptr;
    }
    rep.finish();
    return r.accepted ? kWin : kLose;
}

}  // namespace

int main(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    CLI::App app{"Solver for energy, mean-payoff and average-energy games"};
    app.set_version_flag("--version", AVGEN_VERSION);
    app.require_subcommand(1);

    SolveArgs sa;
    auto *solve = app.add_subcommand("solve", "Decide a threshold objective");
    solve->add_option("game", sa.game, "Game file")->required();
    solve->add_option("--objective", sa.objective, "mp, egl, eglu, ae, aelu or ael")
        ->required()
        ->check(CLI::IsMember({"mp", "egl", "eglu", "ae", "aelu", "ael"}));
    solve->add_option("--threshold", sa.threshold, "t1/t2 or an integer");
    solve->add_option("--upper", sa.upper, "Upper energy bound U");
    solve->add_option("--cap-budget", sa.cap_budget, "Largest cap tried (default: $AEG_CAP_BUDGET or 4096)");
    solve->add_option("--mult", sa.mult, "Multiplier in the exponent of M'");
    solve->add_option("--bit-budget", sa.bit_budget, "Largest exponent of M' that is materialized");
    solve->add_option("--credit", sa.credit, "Initial energy");
    solve->add_option("--strategy-out", sa.strategy_out, "Write the winning strategy here");

    EvalArgs ea;
    auto *eval = app.add_subcommand("eval", "Payoffs of a lasso or a finite prefix");
    eval->add_option("game", ea.game, "Game file")->required();
    eval->add_option("--lasso", ea.lasso, "\"stem|cycle\" paths, or auto")->expected(0, 1);
    eval->add_option("--prefix", ea.prefix, "Comma-separated state path");
    eval->add_option("--steps", ea.steps, "Unrolled length for --csv on a lasso");
    eval->add_flag("--csv", ea.csv, "Print the level trace as CSV");

    SimArgs sm;
    auto *sim = app.add_subcommand("simulate", "Play a strategy against an adversary");
    sim->add_option("game", sm.game, "Game file")->required();
    sim->add_option("strategy", sm.strategy, "Strategy file")->required();
    sim->add_option("--adversary", sm.adversary, "random, greedy or script");
    sim->add_option("--script", sm.script, "Comma-separated from->to[#w] edges for P1");
    sim->add_option("--steps", sm.steps, "Number of steps");
    sim->add_option("--seed", sm.seed, "Seed of the random adversary");
    sim->add_option("--credit", sm.credit, "Initial energy");
    sim->add_flag("--csv", sm.csv, "Print the trace as CSV");

    GadgetArgs ga;
    auto *gad = app.add_subcommand("gadget", "Emit a gadget or reduction output");
    gad->add_option("kind", ga.kind, "blocking, soc, robot or 2cm")->required();
    gad->add_option("param", ga.param, "Weight for blocking, input file otherwise")->required();
    gad->add_option("-o,--output", ga.out, "Output game file (default: stdout)");
    gad->add_option("--manifest", ga.manifest, "Write the intended objective and threshold here");

    VerifyArgs va;
    auto *ver = app.add_subcommand("verify", "Check a strategy against an objective");
    ver->add_option("game", va.game, "Game file")->required();
    ver->add_option("strategy", va.strategy, "Strategy file")->required();
    ver->add_option("--objective", va.objective, "egl, eglu, aelu or ael")->required();
    ver->add_option("--threshold", va.threshold, "t1/t2 or an integer");
    ver->add_option("--upper", va.upper, "Upper energy bound U");
    ver->add_option("--credit", va.credit, "Initial energy");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*solve) return cmd_solve(sa, args);
        if (*eval) return cmd_eval(ea, args);
        if (*sim) return cmd_simulate(sm, args);
        if (*gad) return cmd_gadget(ga);
        if (*ver) return cmd_verify(va, args);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
